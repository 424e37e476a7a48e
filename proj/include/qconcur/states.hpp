#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qconcur/tensor.hpp"
#include "qconcur/types.hpp"

namespace qconcur {

/// A normalized pure state: amplitudes in row-major index order over the
/// given subsystem dimensions.
class PureState {
 public:
  PureState(DimSpec dims, Vector amp);

  const DimSpec& dims() const { return dims_; }
  const Vector& amp() const { return amp_; }
  long side() const { return amp_.size(); }

 private:
  DimSpec dims_;
  Vector amp_;
};

/// |W_N> = (|10..0> + |01..0> + ... + |00..1>) / sqrt(N).
PureState w_state(int n_qubits);

/// Single-excitation qubit state with the given amplitudes,
/// a_1|10..0> + a_2|01..0> + ... + a_N|00..1>.
PureState generalized_w(const std::vector<Complex>& coeffs);

/// cos(theta)|0..0> + sin(theta)|1..1> on n qubits.
PureState generalized_ghz(int n_qubits, double theta);

/// Weights of the three-qubit GHZ-basis-diagonal family: l0p and l0m for
/// the two j=0 basis states, l1..l3 shared by the +/- pair at j=1..3.
/// Must satisfy l0p + l0m + 2(l1 + l2 + l3) = 1.
struct DctWeights {
  double l0p = 1.0, l0m = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
};

/// Mixture diagonal in the GHZ basis |psi_j^pm> = (|j>_12|0>_3 pm
/// |3-j>_12|1>_3)/sqrt(2); its eigenvalues are exactly the eight weights.
DensityMatrix dct_state(const DctWeights& w);

/// (1-x) I/D + x rho.
DensityMatrix mix_with_noise(const DensityMatrix& rho, double x);

/// Projector |psi><psi|.
DensityMatrix projector(const PureState& psi);

/// Haar-random pure state (normalized complex Gaussian amplitudes).
/// Deterministic for a fixed seed.
PureState random_pure(const DimSpec& dims, std::uint64_t seed);

/// Random mixed state obtained by tracing a rank-dimensional environment
/// out of a Haar-random pure state. Deterministic for a fixed seed.
DensityMatrix random_mixed(const DimSpec& dims, int rank, std::uint64_t seed);

/// Purity of the reduced state of |psi><psi| on `part` (ascending labels).
double marginal_purity(const PureState& psi, const std::vector<int>& part);

/// Multipartite concurrence of a pure state,
/// 2^(1-N/2) sqrt((2^N - 2) - sum of all proper marginal purities).
double pure_concurrence(const PureState& psi);

/// Equal-dimension variant built from summed squared 2x2 minors of the
/// amplitude matrix across every bipartition; proportional to
/// pure_concurrence at fixed (N, d).
double pure_concurrence_cd(const PureState& psi);

/// Concurrence across a single cut, sqrt(2 (1 - Tr rho_part1^2)).
double bipartite_pure_concurrence(const PureState& psi, const Bipartition& cut);

/// A one-parameter family of states for threshold scans.
struct StateFamily {
  std::string id;
  std::string param_name;
  double default_from = 0.0;
  double default_to = 1.0;
  std::function<DensityMatrix(double)> make;
};

/// Families: "w-noise" and "ghz-noise" (noise weight p on n qubits),
/// "gen-ghz" (angle theta), "gen-w" (head amplitude weight t, remaining
/// weight spread uniformly), "dct-noise" (noise weight x; needs weights),
/// plus the fixed pure states "w" and "ghz".
/// Throws validation_error for unknown ids or missing parameters.
StateFamily make_family(const std::string& id, int n_qubits,
                        const std::vector<double>& weights = {});

}  // namespace qconcur
