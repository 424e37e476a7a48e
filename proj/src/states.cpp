#include "qconcur/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qconcur {
namespace {

constexpr double kNormTol = 1e-10;

// Amplitude tensor reshaped to a matrix: rows indexed by the subsystems in
// `part` (ascending), columns by the complement.
Matrix cut_matrix(const PureState& psi, const std::vector<int>& part) {
  const int n = psi.dims().n_subsystems();
  std::vector<int> p = part;
  std::sort(p.begin(), p.end());
  std::vector<int> q;
  for (int k = 1; k <= n; ++k) {
    if (!std::binary_search(p.begin(), p.end(), k)) q.push_back(k);
  }
  long Dr = 1, Dc = 1;
  for (int k : p) Dr *= psi.dims().dim_of(k);
  for (int k : q) Dc *= psi.dims().dim_of(k);

  Matrix out(Dr, Dc);
  const long D = psi.side();
  for (long x = 0; x < D; ++x) {
    long rem = x, ro = 0, co = 0;
    std::vector<int> digit(n);
    for (int k = n - 1; k >= 0; --k) {
      digit[k] = static_cast<int>(rem % psi.dims().dims()[k]);
      rem /= psi.dims().dims()[k];
    }
    for (int k : p) ro = ro * psi.dims().dim_of(k) + digit[k - 1];
    for (int k : q) co = co * psi.dims().dim_of(k) + digit[k - 1];
    out(ro, co) = psi.amp()(x);
  }
  return out;
}

std::mt19937_64 seeded_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

Vector gaussian_vector(long n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (long i = 0; i < n; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

}  // namespace

PureState::PureState(DimSpec dims, Vector amp)
    : dims_(std::move(dims)), amp_(std::move(amp)) {
  if (amp_.size() != dims_.total_dim()) {
    throw validation_error("PureState: amplitude count does not match dimensions");
  }
  if (std::abs(amp_.squaredNorm() - 1.0) > kNormTol) {
    throw validation_error("PureState: amplitudes are not normalized");
  }
}

PureState w_state(int n_qubits) {
  if (n_qubits < 2) throw validation_error("w_state: need at least 2 qubits");
  std::vector<Complex> coeffs(n_qubits, Complex(1.0 / std::sqrt(double(n_qubits)), 0.0));
  return generalized_w(coeffs);
}

PureState generalized_w(const std::vector<Complex>& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  if (n < 2) throw validation_error("generalized_w: need at least 2 amplitudes");
  double norm2 = 0.0;
  for (const Complex& a : coeffs) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw validation_error("generalized_w: amplitudes are not normalized");
  }
  Vector amp = Vector::Zero(1L << n);
  for (int k = 0; k < n; ++k) amp(1L << (n - 1 - k)) = coeffs[k];
  return PureState(DimSpec(std::vector<int>(n, 2)), std::move(amp));
}

PureState generalized_ghz(int n_qubits, double theta) {
  if (n_qubits < 2) throw validation_error("generalized_ghz: need at least 2 qubits");
  Vector amp = Vector::Zero(1L << n_qubits);
  amp(0) = std::cos(theta);
  amp(amp.size() - 1) = std::sin(theta);
  return PureState(DimSpec(std::vector<int>(n_qubits, 2)), std::move(amp));
}

DensityMatrix dct_state(const DctWeights& w) {
  const double ws[8] = {w.l0p, w.l0m, w.l1, w.l1, w.l2, w.l2, w.l3, w.l3};
  for (double v : {w.l0p, w.l0m, w.l1, w.l2, w.l3}) {
    if (v < -kNormTol) throw validation_error("dct_state: negative weight");
  }
  const double sum = w.l0p + w.l0m + 2.0 * (w.l1 + w.l2 + w.l3);
  if (std::abs(sum - 1.0) > kNormTol) {
    throw validation_error("dct_state: weights must sum to 1");
  }
  Matrix rho = Matrix::Zero(8, 8);
  const double inv = 1.0 / std::sqrt(2.0);
  int slot = 0;
  for (int j = 0; j < 4; ++j) {
    for (int sign : {+1, -1}) {
      Vector v = Vector::Zero(8);
      v(2 * j) = inv;                  // |j>_12 |0>_3
      v(2 * (3 - j) + 1) = sign * inv; // |3-j>_12 |1>_3
      rho += ws[slot++] * (v * v.adjoint());
    }
  }
  return DensityMatrix::trusted(DimSpec({2, 2, 2}), std::move(rho));
}

DensityMatrix mix_with_noise(const DensityMatrix& rho, double x) {
  if (x < 0.0 || x > 1.0) throw validation_error("mix_with_noise: x must be in [0, 1]");
  const long D = rho.side();
  Matrix out = x * rho.mat();
  out += Matrix::Identity(D, D) * ((1.0 - x) / double(D));
  return DensityMatrix::trusted(rho.dims(), std::move(out));
}

DensityMatrix projector(const PureState& psi) {
  return DensityMatrix::trusted(psi.dims(), psi.amp() * psi.amp().adjoint());
}

PureState random_pure(const DimSpec& dims, std::uint64_t seed) {
  auto rng = seeded_engine(seed);
  Vector v = gaussian_vector(dims.total_dim(), rng);
  v /= v.norm();
  return PureState(dims, std::move(v));
}

DensityMatrix random_mixed(const DimSpec& dims, int rank, std::uint64_t seed) {
  if (rank < 1) throw validation_error("random_mixed: rank must be >= 1");
  auto rng = seeded_engine(seed);
  const long D = dims.total_dim();
  Matrix B(D, rank);
  for (long r = 0; r < D; ++r) {
    for (int c = 0; c < rank; ++c) {
      std::normal_distribution<double> gauss(0.0, 1.0);
      const double re = gauss(rng);
      const double im = gauss(rng);
      B(r, c) = Complex(re, im);
    }
  }
  B /= B.norm();
  return DensityMatrix::trusted(dims, B * B.adjoint());
}

double marginal_purity(const PureState& psi, const std::vector<int>& part) {
  Matrix a = cut_matrix(psi, part);
  // Tr((A A^+)^2) via the smaller Gram matrix
  if (a.rows() <= a.cols()) {
    return (a * a.adjoint()).squaredNorm();
  }
  return (a.adjoint() * a).squaredNorm();
}

double pure_concurrence(const PureState& psi) {
  const int n = psi.dims().n_subsystems();
  // complementary marginals of a pure state share their purity
  double sum = 0.0;
  for (const Bipartition& cut : all_bipartitions(n)) {
    sum += 2.0 * marginal_purity(psi, cut.part1());
  }
  const double total = std::ldexp(1.0, n) - 2.0;  // 2^N - 2
  const double radicand = std::max(0.0, total - sum);
  return std::pow(2.0, 1.0 - 0.5 * n) * std::sqrt(radicand);
}

double pure_concurrence_cd(const PureState& psi) {
  if (!psi.dims().uniform()) {
    throw validation_error("pure_concurrence_cd: subsystem dimensions must be equal");
  }
  const int n = psi.dims().n_subsystems();
  const double d = psi.dims().dim_of(1);
  const double m = static_cast<double>(num_bipartitions(n));
  double total = 0.0;
  for (const Bipartition& cut : all_bipartitions(n)) {
    const Matrix a = cut_matrix(psi, cut.part1());
    // each unordered row/column pair contributes four ordered terms
    for (long r1 = 0; r1 < a.rows(); ++r1) {
      for (long r2 = r1 + 1; r2 < a.rows(); ++r2) {
        for (long c1 = 0; c1 < a.cols(); ++c1) {
          for (long c2 = c1 + 1; c2 < a.cols(); ++c2) {
            total += 4.0 * std::norm(a(r1, c1) * a(r2, c2) - a(r1, c2) * a(r2, c1));
          }
        }
      }
    }
  }
  return std::sqrt(d / (2.0 * m * (d - 1.0)) * total);
}

double bipartite_pure_concurrence(const PureState& psi, const Bipartition& cut) {
  if (cut.n_subsystems() != psi.dims().n_subsystems()) {
    throw validation_error("bipartite_pure_concurrence: cut does not match state");
  }
  const double p = marginal_purity(psi, cut.part1());
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - p)));
}

StateFamily make_family(const std::string& id, int n_qubits,
                        const std::vector<double>& weights) {
  if (n_qubits < 2) throw validation_error("make_family: need at least 2 qubits");
  if (n_qubits > 12) throw validation_error("make_family: at most 12 qubits supported");
  StateFamily f;
  f.id = id;
  if (id == "w-noise") {
    f.param_name = "p";
    const DensityMatrix base = projector(w_state(n_qubits));
    f.make = [base](double p) { return mix_with_noise(base, p); };
  } else if (id == "ghz-noise") {
    f.param_name = "p";
    const DensityMatrix base = projector(generalized_ghz(n_qubits, std::numbers::pi / 4));
    f.make = [base](double p) { return mix_with_noise(base, p); };
  } else if (id == "gen-ghz") {
    f.param_name = "theta";
    f.default_from = 0.0;
    f.default_to = std::numbers::pi / 2;
    f.make = [n_qubits](double theta) {
      return projector(generalized_ghz(n_qubits, theta));
    };
  } else if (id == "gen-w") {
    f.param_name = "t";
    f.make = [n_qubits](double t) {
      if (t < 0.0 || t > 1.0) throw validation_error("gen-w: t must be in [0, 1]");
      std::vector<Complex> coeffs(n_qubits);
      coeffs[0] = std::sqrt(t);
      for (int k = 1; k < n_qubits; ++k) {
        coeffs[k] = std::sqrt((1.0 - t) / (n_qubits - 1));
      }
      return projector(generalized_w(coeffs));
    };
  } else if (id == "dct-noise") {
    f.param_name = "x";
    if (weights.size() != 5) {
      throw validation_error("dct-noise: needs five weights l0p,l0m,l1,l2,l3");
    }
    const DensityMatrix base =
        dct_state({weights[0], weights[1], weights[2], weights[3], weights[4]});
    f.make = [base](double x) { return mix_with_noise(base, x); };
  } else if (id == "w") {
    f.param_name = "";
    const DensityMatrix state = projector(w_state(n_qubits));
    f.make = [state](double) { return state; };
  } else if (id == "ghz") {
    f.param_name = "";
    const DensityMatrix state = projector(generalized_ghz(n_qubits, std::numbers::pi / 4));
    f.make = [state](double) { return state; };
  } else {
    throw validation_error("make_family: unknown family id '" + id + "'");
  }
  return f;
}

}  // namespace qconcur
