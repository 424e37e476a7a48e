#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qconcur/states.hpp"
#include "qconcur/tensor.hpp"
#include "qconcur/types.hpp"

// Independent reference implementations used only by the tests. These stay
// deliberately naive: direct index sums and explicit entry shuffles, with no
// calls into the code paths they validate.
namespace testoracle {

using qconcur::Complex;
using qconcur::DensityMatrix;
using qconcur::DimSpec;
using qconcur::Matrix;
using qconcur::Vector;

// Entrywise Frobenius purity, sum |rho_ij|^2.
inline double purity_frobenius(const Matrix& m) {
  double s = 0.0;
  for (long c = 0; c < m.cols(); ++c) {
    for (long r = 0; r < m.rows(); ++r) s += std::norm(m(r, c));
  }
  return s;
}

// Partial trace of a bipartite d1 x d2 state onto the second factor by a
// direct index sum: out(k, l) = sum_i rho[(i,k),(i,l)].
inline Matrix ptrace_first_oracle(const Matrix& m, long d1, long d2) {
  Matrix out = Matrix::Zero(d2, d2);
  for (long i = 0; i < d1; ++i) {
    for (long k = 0; k < d2; ++k) {
      for (long l = 0; l < d2; ++l) out(k, l) += m(i * d2 + k, i * d2 + l);
    }
  }
  return out;
}

// Explicit partial transpose on the first factor of a d1 x d2 system.
inline Matrix pt_oracle(const Matrix& m, long d1, long d2) {
  Matrix out(d1 * d2, d1 * d2);
  for (long i = 0; i < d1; ++i)
    for (long k = 0; k < d2; ++k)
      for (long j = 0; j < d1; ++j)
        for (long l = 0; l < d2; ++l)
          out(i * d2 + k, j * d2 + l) = m(j * d2 + k, i * d2 + l);
  return out;
}

// Explicit realignment R[(i,j),(k,l)] = rho[(i,k),(j,l)].
inline Matrix realign_oracle(const Matrix& m, long d1, long d2) {
  Matrix out(d1 * d1, d2 * d2);
  for (long i = 0; i < d1; ++i)
    for (long j = 0; j < d1; ++j)
      for (long k = 0; k < d2; ++k)
        for (long l = 0; l < d2; ++l)
          out(i * d1 + j, k * d2 + l) = m(i * d2 + k, j * d2 + l);
  return out;
}

inline std::vector<double> singular_values(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  std::vector<double> sv(svd.singularValues().data(),
                         svd.singularValues().data() + svd.singularValues().size());
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

// Characteristic polynomial coefficients by the trace-power recursion:
// p(x) = x^n + c_1 x^(n-1) + ... + c_n with c_k from Newton's identities.
inline std::vector<Complex> char_poly(const Matrix& m) {
  const long n = m.rows();
  std::vector<Complex> power_traces(n + 1);
  Matrix pw = Matrix::Identity(n, n);
  for (long k = 1; k <= n; ++k) {
    pw = pw * m;
    power_traces[k] = pw.trace();
  }
  std::vector<Complex> c(n + 1);
  c[0] = 1.0;
  for (long k = 1; k <= n; ++k) {
    Complex acc = power_traces[k];
    for (long j = 1; j < k; ++j) acc += c[j] * power_traces[k - j];
    c[k] = -acc / double(k);
  }
  return c;
}

// Roots of a monic polynomial via its companion matrix.
inline std::vector<Complex> companion_roots(const std::vector<Complex>& coeffs) {
  const long n = static_cast<long>(coeffs.size()) - 1;
  Matrix comp = Matrix::Zero(n, n);
  for (long i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (long i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[n - i];
  Eigen::ComplexEigenSolver<Matrix> es(comp, false);
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return roots;
}

// Greedy multiset match: largest absolute pairwise distance.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  double worst = 0.0;
  for (const Complex& x : a) {
    double best = 1e300;
    size_t arg = 0;
    for (size_t i = 0; i < b.size(); ++i) {
      if (std::abs(x - b[i]) < best) {
        best = std::abs(x - b[i]);
        arg = i;
      }
    }
    worst = std::max(worst, best);
    b.erase(b.begin() + arg);
  }
  return worst;
}

// Product of random single-qubit projectors mixed with random weights.
inline DensityMatrix random_separable(int n_qubits, std::uint64_t seed) {
  const int terms = 5;
  const long D = 1L << n_qubits;
  Matrix rho = Matrix::Zero(D, D);
  std::vector<double> w(terms);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    // deterministic weights derived from the seed
    w[t] = 0.5 + ((seed >> (7 * t)) % 97) / 97.0;
    total += w[t];
  }
  for (int t = 0; t < terms; ++t) {
    Matrix prod = Matrix::Identity(1, 1);
    for (int k = 0; k < n_qubits; ++k) {
      const Vector v =
          qconcur::random_pure(DimSpec({2}), seed * 131 + 1000003ULL * t + 17 * k).amp();
      prod = qconcur::kron(prod, v * v.adjoint());
    }
    rho += (w[t] / total) * prod;
  }
  return DensityMatrix::trusted(DimSpec(std::vector<int>(n_qubits, 2)), std::move(rho));
}

// Random product unitary U_1 (x) ... (x) U_N from seeded Gaussian QR.
inline Matrix random_product_unitary(const DimSpec& dims, std::uint64_t seed) {
  Matrix u = Matrix::Identity(1, 1);
  for (int k = 1; k <= dims.n_subsystems(); ++k) {
    const int d = dims.dim_of(k);
    Matrix z(d, d);
    for (int c = 0; c < d; ++c) {
      const Vector col = qconcur::random_pure(DimSpec({d}), seed + 7919 * k + c).amp();
      z.col(c) = col;
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    u = qconcur::kron(u, q);
  }
  return u;
}

inline DensityMatrix conjugated(const DensityMatrix& rho, const Matrix& u) {
  return DensityMatrix::trusted(rho.dims(), u * rho.mat() * u.adjoint());
}

}  // namespace testoracle
