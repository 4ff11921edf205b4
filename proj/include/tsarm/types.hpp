#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace tsarm {

// One univariate sample: ordered real values, dimensionless.
using RealSeries = std::vector<double>;

// DFT of a RealSeries; bins.size() matches the source length.
struct Spectrum {
    std::vector<std::complex<double>> bins;
};

// Collection of samples with integer class labels and provenance.
struct LabeledDataset {
    std::vector<RealSeries> samples;
    std::vector<int> labels;
    std::string source_id;   // dataset name ("A1", a file path, ...)
    std::uint64_t seed = 0;  // generation seed when synthetic, else 0

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

}  // namespace tsarm
