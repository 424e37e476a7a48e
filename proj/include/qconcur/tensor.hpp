#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qconcur/types.hpp"

namespace qconcur {

/// Number of unordered splits of N subsystems into two nonempty parts.
inline long num_bipartitions(int n_subsystems) {
  return (1L << (n_subsystems - 1)) - 1;
}

/// An ordered split of the subsystem labels {1..N} into two nonempty
/// disjoint parts. Stored in normal form: part1 holds the smallest label,
/// so each split appears exactly once.
class Bipartition {
 public:
  Bipartition(std::vector<int> part1, int n_subsystems);

  const std::vector<int>& part1() const { return part1_; }
  const std::vector<int>& part2() const { return part2_; }
  int n_subsystems() const { return n_; }

  std::string to_string() const;  // e.g. "1,2|3"

 private:
  std::vector<int> part1_, part2_;
  int n_;
};

/// All bipartitions of {1..N}, in a fixed deterministic order.
std::vector<Bipartition> all_bipartitions(int n_subsystems);

/// A generalized partial transposition: for each subsystem in
/// row_transposed the row index moves to the column group, and for each
/// subsystem in col_transposed the column index moves to the row group.
/// The empty spec is the identity map.
struct GptSpec {
  std::vector<int> row_transposed;
  std::vector<int> col_transposed;

  std::string to_string() const;  // e.g. "r{1}c{1}"
};

/// A density matrix over the given subsystems. Construction checks
/// Hermiticity, unit trace and positivity (within ValidationConfig);
/// use trusted() for matrices produced by invariant-preserving operations.
class DensityMatrix {
 public:
  DensityMatrix(DimSpec dims, Matrix mat, const ValidationConfig& cfg = {});

  static DensityMatrix trusted(DimSpec dims, Matrix mat);

  const DimSpec& dims() const { return dims_; }
  const Matrix& mat() const { return mat_; }
  long side() const { return mat_.rows(); }

 private:
  struct trusted_tag {};
  DensityMatrix(DimSpec dims, Matrix mat, trusted_tag);

  DimSpec dims_;
  Matrix mat_;
};

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

/// Reduced density matrix on the subsystems in `keep` (ascending label
/// order), tracing out the rest. Trace and Hermiticity are preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

/// Generalized partial transposition of rho.
///
/// rho is viewed as a 2N-index tensor rho[i_1..i_N; j_1..j_N]. Within each
/// regrouped index set, the surviving original members come first and the
/// moved indices after, each run ordered by subsystem label. Any fixed
/// convention yields the same singular values; this one makes the output
/// reproducible entry-for-entry.
Matrix gpt(const DensityMatrix& rho, const GptSpec& spec);

/// Sum of singular values.
double trace_norm(const Matrix& m);

/// Eigenvalues of a general (possibly non-Hermitian) square matrix,
/// in no particular order.
std::vector<Complex> general_eigenvalues(const Matrix& m);

/// The n(n-1)/2 antisymmetric generators L_jk = |j><k| - |k><j|, j < k,
/// ordered lexicographically by (j, k).
std::vector<Matrix> so_generators(int n);

/// Traceless Hermitian basis of d x d matrices with Tr(l_m l_n) = 2 delta_mn:
/// symmetric pairs, then antisymmetric pairs, then diagonal matrices.
/// For d = 2 this is (sigma_x, sigma_y, sigma_z).
std::vector<Matrix> gell_mann_basis(int d);

/// Reorder subsystems: position k of the result carries old subsystem
/// perm[k] (1-based). The spectrum is preserved.
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& perm);

}  // namespace qconcur
