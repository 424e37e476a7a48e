#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qconcur/states.hpp"
#include "qconcur/tensor.hpp"
#include "qconcur/types.hpp"

namespace qconcur {

enum class BoundKind {
  lower,           // certified lower bound on the multipartite concurrence
  upper,           // upper bound on the multipartite concurrence
  bipartite_lower  // lower bound on the concurrence across one cut
};

/// One evaluated bound. `value` is the clamped, reportable number; `raw`
/// keeps the pre-clamp value so threshold scans can bisect its sign change.
struct Bound {
  double value = 0.0;
  double raw = 0.0;
  bool clamped = false;
  BoundKind kind = BoundKind::lower;
  std::variant<std::monostate, Bipartition, GptSpec> witness;
  /// Set when the bound is only valid under an extra assumption; such
  /// entries are excluded from best_lower.
  std::string note;
};

/// Lower bound from the state purity and the marginal purities,
/// sqrt((4 - 2^(3-N)) Tr rho^2 - 2^(2-N) sum_a Tr rho_a^2), clamped at 0.
/// Coincides with pure_concurrence on pure states.
Bound purity_lower(const DensityMatrix& rho);

/// Upper bound sqrt(2^(2-N) [(2^N - 2) - sum_a Tr rho_a^2]).
Bound purity_upper(const DensityMatrix& rho);

/// Upper bound from the eigendecomposition: sum_i lambda_i C(psi_i) over
/// eigenvectors with lambda_i > eig_zero_tol. Under spectral degeneracy the
/// value depends on the eigenbasis the solver returns; any orthonormal
/// choice yields a valid upper bound.
Bound decomposition_upper(const DensityMatrix& rho, const ToleranceConfig& cfg = {});

struct TauResult {
  Bound bound;       // value = sqrt(tau); raw = largest unclamped spectral gap
  double tau = 0.0;  // the accumulated bound on C^2
};

/// Generator-pair lower bound for equal subsystem dimensions d.
///
/// For every bipartition (realized contiguously by permute_subsystems) and
/// every pair S = L_a (x) L_b of antisymmetric generators on the two sides,
/// the spectrum of rho S rho* S has at most four nonzero eigenvalues; the
/// clamped difference of their square roots enters a quadratic sum scaled
/// by d / (2 m (d-1)). The reported value is sqrt(tau), a lower bound on
/// the concurrence. For two qubits this reproduces the exact two-qubit
/// concurrence.
TauResult tau_n(const DensityMatrix& rho, const ToleranceConfig& cfg = {});

/// Tripartite bound from the nine index-regrouping classes: the best of
/// three scaled trace-norm excesses, for dims (m, n, p) with m <= n, p.
Bound gpt_tripartite_bound(const DensityMatrix& rho);

/// Per-cut lower bounds on the bipartite concurrence across `cut`
/// (M = smaller, Nx = larger effective dimension):
///  b1: sqrt(2/(M(M-1))) (max(||rho^T_A||, ||R(rho)||) - 1)
///  b2: (2||Cov(rho)|| - (1 - Tr rho_A^2) - (1 - Tr rho_B^2)) / sqrt(2M(M-1))
///  b3: sqrt(8/(M^3 Nx^2 (M-1))) (||T(rho)|| - sqrt(M Nx (M-1)(Nx-1))/2)
/// Cov uses orthonormal local observable bases; T is the correlation tensor
/// T_mn = (M Nx / 4) <l_m (x) l_n> over gell_mann_basis of each side.
Bound b1(const DensityMatrix& rho, const Bipartition& cut);
Bound b2(const DensityMatrix& rho, const Bipartition& cut);
Bound b3(const DensityMatrix& rho, const Bipartition& cut);

/// 2^((3-N)/2) max over cuts of max(b1, b2, b3); N >= 3.
Bound theorem3_bound(const DensityMatrix& rho);

/// Coefficient 2^((1-N)/2) sqrt(2^(N-M) + 2^M - 2) applied to the best
/// bipartite estimate of each cut with |part1| = M; never below the
/// theorem3 coefficient. For pure inputs the exact per-cut concurrence
/// replaces the bipartite estimate.
Bound theorem6_bound(const DensityMatrix& rho, const ToleranceConfig& cfg = {});

/// The theorem6 cut coefficient (exposed for sweep tests).
double theorem6_coefficient(int n_subsystems, int part1_size);

/// Qubit-only bound from partial-transpose and realignment norms across
/// every cut. Certified only for states that mix single-excitation
/// (W-class) pure states; the result carries a note saying so and is
/// excluded from best_lower.
Bound theorem7_wclass_bound(const DensityMatrix& rho);

struct BoundReport {
  std::map<std::string, Bound> entries;
  std::optional<double> best_lower;  // max over certified lower bounds
  std::optional<double> best_upper;  // min over upper bounds
};

/// All bound identifiers, in report order.
const std::vector<std::string>& all_bound_ids();

/// Evaluates every applicable bound (or the selected subset), skipping
/// entries whose preconditions the state does not meet.
BoundReport full_report(const DensityMatrix& rho, const ToleranceConfig& cfg = {},
                        const std::vector<std::string>& selection = {});

}  // namespace qconcur
