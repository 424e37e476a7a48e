#pragma once

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qconcur {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Thrown when an input violates a documented precondition or invariant.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an eigenvalue/SVD routine fails to converge or produces
/// results outside the configured tolerances.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown on malformed state files.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerances applied when a density matrix is constructed. Operations
/// preserve these invariants, so they are not re-checked afterwards.
struct ValidationConfig {
  double tol_herm = 1e-8;
  double tol_trace = 1e-8;
  double tol_psd = 1e-8;
};

/// Tolerances used by the bound evaluators.
struct ToleranceConfig {
  /// Eigenvalues with modulus below eig_zero_tol * scale count as zero.
  /// Kept near round-off so square roots of spurious residues cannot leak
  /// into the spectral differences.
  double eig_zero_tol = 1e-12;
  /// Allowed imaginary part (relative to the spectral scale) on the
  /// nominally real spectra of rho * rho~.
  double imag_tol = 1e-8;
  /// Raw bound values with |raw| <= clamp_tol are reported as an exact
  /// zero without setting the clamped flag.
  double clamp_tol = 1e-12;
};

/// Ordered subsystem dimensions (d_1, ..., d_N). Subsystems are labeled
/// 1..N throughout the library; subsystem 1 is the most significant index
/// in the row-major amplitude ordering.
class DimSpec {
 public:
  explicit DimSpec(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw validation_error("DimSpec: empty dimension list");
    for (int d : dims_) {
      if (d < 2) throw validation_error("DimSpec: every dimension must be >= 2");
    }
  }

  int n_subsystems() const { return static_cast<int>(dims_.size()); }

  /// Product of all subsystem dimensions (the matrix side length).
  long total_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), 1L,
                           [](long a, int b) { return a * b; });
  }

  int dim_of(int subsystem) const { return dims_.at(subsystem - 1); }
  const std::vector<int>& dims() const { return dims_; }

  bool uniform() const {
    for (int d : dims_)
      if (d != dims_.front()) return false;
    return true;
  }

  bool operator==(const DimSpec& other) const = default;

 private:
  std::vector<int> dims_;
};

}  // namespace qconcur
