#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gasr {

/// Malformed or inconsistent input data (bad CSV, duplicate entries,
/// dimension mismatches). The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical routine cannot continue (non-finite intermediates,
/// degenerate statistics, broken state invariants). Exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Minimal dense row-major matrix. Holds synthetic ground truth and the
/// small matrices handled by the spectral checks; not a linalg library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double frobenius_norm() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

}  // namespace gasr
