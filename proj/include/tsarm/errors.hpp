#pragma once

#include <stdexcept>
#include <string>

namespace tsarm {

// Length/shape preconditions violated (empty series, mismatched lengths,
// ragged datasets).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameter outside its admissible range (window too small, bad fraction,
// k out of range).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An all-zero (or otherwise degenerate) vector where a direction is needed.
struct DegenerateVectorError : std::domain_error {
    using std::domain_error::domain_error;
};

// A class vanished from the training split after label-ratio subsetting.
struct StratificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The query matched neither trend nor seasonality template; carries the two
// divergence scores so callers can report why.
struct InapplicableError : std::runtime_error {
    InapplicableError(const std::string& msg, double ds_trend, double ds_season)
        : std::runtime_error(msg), ds_trend(ds_trend), ds_season(ds_season) {}
    double ds_trend;
    double ds_season;
};

// CSV parse failure with 1-based row/column location.
struct CsvError : std::runtime_error {
    CsvError(const std::string& msg, std::size_t row, std::size_t col)
        : std::runtime_error(msg + " (row " + std::to_string(row) + ", column " +
                             std::to_string(col) + ")"),
          row(row), col(col) {}
    std::size_t row;
    std::size_t col;
};

}  // namespace tsarm
