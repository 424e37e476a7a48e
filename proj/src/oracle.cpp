#include "qconcur/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qconcur::oracle {
namespace {

Matrix spin_flip_operator() {
  Matrix sy(2, 2);
  sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  Matrix f(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      f.block(2 * i, 2 * j, 2, 2) = sy(i, j) * sy;
    }
  }
  return f;
}

double average_concurrence(const Matrix& ensemble, const DimSpec& dims) {
  double total = 0.0;
  for (long j = 0; j < ensemble.cols(); ++j) {
    Vector col = ensemble.col(j);
    const double p = col.squaredNorm();
    if (p < 1e-14) continue;
    col /= std::sqrt(p);
    total += p * pure_concurrence(PureState(dims, std::move(col)));
  }
  return total;
}

Matrix haar_unitary(long k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix z(k, k);
  for (long c = 0; c < k; ++c) {
    for (long r = 0; r < k; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long i = 0; i < k; ++i) {
    const Complex d = rmat(i, i);
    q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
  }
  return q;
}

}  // namespace

double wootters(const DensityMatrix& rho) {
  if (rho.dims().dims() != std::vector<int>{2, 2}) {
    throw validation_error("wootters: defined for 2x2 qubit states only");
  }
  static const Matrix flip = spin_flip_operator();
  const Matrix prod = rho.mat() * flip * rho.mat().conjugate() * flip;
  Eigen::ComplexEigenSolver<Matrix> es(prod, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw numerical_error("wootters: eigensolver failed");
  double scale = 0.0;
  for (long i = 0; i < 4; ++i) scale = std::max(scale, std::abs(es.eigenvalues()(i)));
  std::vector<double> roots;
  for (long i = 0; i < 4; ++i) {
    // residues at round-off level are exact zeros of the rank-deficient case
    const double re = es.eigenvalues()(i).real();
    roots.push_back(re > 1e-12 * scale ? std::sqrt(re) : 0.0);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

EnsembleEstimate convex_roof_estimate(const DensityMatrix& rho, int trials,
                                      std::uint64_t seed) {
  if (trials < 1) throw validation_error("convex_roof_estimate: trials must be >= 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat());
  if (es.info() != Eigen::Success) {
    throw numerical_error("convex_roof_estimate: eigensolver failed");
  }
  std::vector<long> keep;
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 1e-12) keep.push_back(i);
  }
  const long rank = static_cast<long>(keep.size());
  Matrix b(rho.side(), rank);
  for (long i = 0; i < rank; ++i) {
    b.col(i) = es.eigenvectors().col(keep[i]) * std::sqrt(es.eigenvalues()(keep[i]));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> size_draw(rank, 2 * rank);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  double best = std::numeric_limits<double>::infinity();
  int t = 0;
  constexpr int kStaleLimit = 400;
  while (t < trials) {
    // fresh decomposition: a Haar isometry applied to the square root
    const long k = std::max<long>(2, size_draw(rng));
    const Matrix u = haar_unitary(k, rng);
    Matrix ensemble = b * u.topRows(rank);
    std::vector<double> per(k);
    for (long j = 0; j < k; ++j) {
      per[j] = average_concurrence(ensemble.col(j), rho.dims());
    }
    double current = 0.0;
    for (double v : per) current += v;
    best = std::min(best, current);
    ++t;

    // refine by random pairwise rotations while they keep helping
    int stale = 0;
    std::uniform_int_distribution<long> pick(0, k - 1);
    while (t < trials && stale < kStaleLimit) {
      long i = pick(rng), j = pick(rng);
      ++t;
      if (i == j) continue;
      const double th = angle(rng), ph = angle(rng);
      const Complex e(std::cos(ph), std::sin(ph));
      const double c = std::cos(th), s = std::sin(th);
      const Vector ni = c * ensemble.col(i) - s * std::conj(e) * ensemble.col(j);
      const Vector nj = s * e * ensemble.col(i) + c * ensemble.col(j);
      const double ci = average_concurrence(ni, rho.dims());
      const double cj = average_concurrence(nj, rho.dims());
      if (ci + cj < per[i] + per[j] - 1e-15) {
        ensemble.col(i) = ni;
        ensemble.col(j) = nj;
        current += ci + cj - per[i] - per[j];
        per[i] = ci;
        per[j] = cj;
        best = std::min(best, current);
        stale = 0;
      } else {
        ++stale;
      }
    }
  }
  return {best, trials, seed};
}

double minor_sum_concurrence(const PureState& psi) {
  if (!psi.dims().uniform()) {
    throw validation_error("minor_sum_concurrence: subsystem dimensions must be equal");
  }
  const int n = psi.dims().n_subsystems();
  const double d = psi.dims().dim_of(1);
  const double m = static_cast<double>(num_bipartitions(n));

  double total = 0.0;
  for (const Bipartition& cut : all_bipartitions(n)) {
    // rebuild the cut matrix by explicit digit arithmetic
    long dr = 1, dc = 1;
    for (int k : cut.part1()) dr *= psi.dims().dim_of(k);
    for (int k : cut.part2()) dc *= psi.dims().dim_of(k);
    Matrix a(dr, dc);
    const int dloc = psi.dims().dim_of(1);
    for (long x = 0; x < psi.side(); ++x) {
      long rem = x;
      std::vector<int> digit(n);
      for (int k = n - 1; k >= 0; --k) {
        digit[k] = static_cast<int>(rem % dloc);
        rem /= dloc;
      }
      long ro = 0, co = 0;
      for (int k : cut.part1()) ro = ro * dloc + digit[k - 1];
      for (int k : cut.part2()) co = co * dloc + digit[k - 1];
      a(ro, co) = psi.amp()(x);
    }
    for (long a1 = 0; a1 < dr; ++a1) {
      for (long a2 = 0; a2 < dr; ++a2) {
        for (long b1 = 0; b1 < dc; ++b1) {
          for (long b2 = 0; b2 < dc; ++b2) {
            total += std::norm(a(a1, b1) * a(a2, b2) - a(a1, b2) * a(a2, b1));
          }
        }
      }
    }
  }
  return std::sqrt(d / (2.0 * m * (d - 1.0)) * total);
}

}  // namespace qconcur::oracle
