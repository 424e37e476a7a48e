#include "qconcur/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qconcur/bounds.hpp"
#include "qconcur/oracle.hpp"
#include "qconcur/states.hpp"
#include "qconcur/tensor.hpp"

namespace qconcur {
namespace {

// Explicit single-subsystem partial transpose of a bipartite state.
Matrix pt_oracle(const Matrix& m, long d1, long d2) {
  Matrix out(d1 * d2, d1 * d2);
  for (long i = 0; i < d1; ++i)
    for (long k = 0; k < d2; ++k)
      for (long j = 0; j < d1; ++j)
        for (long l = 0; l < d2; ++l)
          out(i * d2 + k, j * d2 + l) = m(j * d2 + k, i * d2 + l);
  return out;
}

// Explicit realignment R[(i,j),(k,l)] = rho[(i,k),(j,l)].
Matrix realign_oracle(const Matrix& m, long d1, long d2) {
  Matrix out(d1 * d1, d2 * d2);
  for (long i = 0; i < d1; ++i)
    for (long j = 0; j < d1; ++j)
      for (long k = 0; k < d2; ++k)
        for (long l = 0; l < d2; ++l)
          out(i * d1 + j, k * d2 + l) = m(i * d2 + k, j * d2 + l);
  return out;
}

std::vector<double> singular_values(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  std::vector<double> sv(svd.singularValues().data(),
                         svd.singularValues().data() + svd.singularValues().size());
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

DensityMatrix random_separable(int n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  const int terms = 6;
  std::vector<double> w(terms);
  double total = 0.0;
  for (double& v : w) total += (v = expo(rng));
  const long D = 1L << n_qubits;
  Matrix rho = Matrix::Zero(D, D);
  std::uniform_int_distribution<std::uint64_t> subseed;
  for (int t = 0; t < terms; ++t) {
    Matrix prod = Matrix::Identity(1, 1);
    for (int k = 0; k < n_qubits; ++k) {
      const Vector v = random_pure(DimSpec({2}), subseed(rng)).amp();
      prod = kron(prod, v * v.adjoint());
    }
    rho += (w[t] / total) * prod;
  }
  return DensityMatrix::trusted(DimSpec(std::vector<int>(n_qubits, 2)), std::move(rho));
}

struct Failure {
  std::ostringstream msg;
  bool any = false;
};

void expect(Failure& f, bool ok, const std::string& what) {
  if (!ok) {
    if (f.any) f.msg << "; ";
    f.msg << what;
    f.any = true;
  }
}

SuiteResult finish(const std::string& name, Failure& f) {
  return {name, !f.any, f.any ? f.msg.str() : "ok"};
}

SuiteResult suite_tau2_wootters(const SelftestOptions& opt) {
  Failure f;
  const double scale = 1.0 + opt.injected_perturbation;
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_mixed(DimSpec({2, 2}), 4, opt.seed + i);
    const double lhs = scale * tau_n(rho).bound.value;
    const double rhs = oracle::wootters(rho);
    expect(f, std::abs(lhs - rhs) < 1e-8,
           "sqrt(tau2) != wootters at sample " + std::to_string(i));
    if (f.any) break;
  }
  return finish("tau2-vs-wootters", f);
}

SuiteResult suite_gpt_oracles(const SelftestOptions& opt) {
  Failure f;
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_mixed(DimSpec({2, 3}), 4, opt.seed + 1000 + i);
    const auto sv_pt = singular_values(gpt(rho, GptSpec{{1}, {1}}));
    const auto sv_pt_ref = singular_values(pt_oracle(rho.mat(), 2, 3));
    const auto sv_re = singular_values(gpt(rho, GptSpec{{2}, {1}}));
    const auto sv_re_ref = singular_values(realign_oracle(rho.mat(), 2, 3));
    for (size_t k = 0; k < sv_pt.size(); ++k) {
      expect(f, std::abs(sv_pt[k] - sv_pt_ref[k]) < 1e-10, "partial-transpose mismatch");
    }
    const size_t common = std::min(sv_re.size(), sv_re_ref.size());
    for (size_t k = 0; k < common; ++k) {
      expect(f, std::abs(sv_re[k] - sv_re_ref[k]) < 1e-10, "realignment mismatch");
    }
    if (f.any) break;
  }
  return finish("gpt-oracle-equivalence", f);
}

SuiteResult suite_sandwich(const SelftestOptions& opt) {
  Failure f;
  const DimSpec dims({2, 2, 2});
  for (int i = 0; i < 60 && !f.any; ++i) {
    const DensityMatrix rho = random_mixed(dims, 1 + i % 8, opt.seed + 2000 + i);
    const double lo = purity_lower(rho).value;
    const double up = purity_upper(rho).value;
    const double dec = decomposition_upper(rho).value;
    const double tau = tau_n(rho).bound.value;
    expect(f, lo <= up + 1e-8, "purity_lower above purity_upper");
    expect(f, lo <= dec + 1e-8, "purity_lower above decomp_upper");
    expect(f, tau <= dec + 1e-8, "sqrt(tau) above decomp_upper");
    expect(f, theorem3_bound(rho).value <= dec + 1e-8, "thm3 above decomp_upper");
    expect(f, theorem6_bound(rho).value <= dec + 1e-8, "thm6 above decomp_upper");
    expect(f, gpt_tripartite_bound(rho).value <= dec + 1e-8, "gpt above decomp_upper");
  }
  return finish("sandwich-3q", f);
}

SuiteResult suite_pure_collapse(const SelftestOptions& opt) {
  Failure f;
  const DimSpec dims({2, 2, 2});
  for (int i = 0; i < 30 && !f.any; ++i) {
    const PureState psi = random_pure(dims, opt.seed + 3000 + i);
    const double c = pure_concurrence(psi);
    const DensityMatrix rho = projector(psi);
    expect(f, std::abs(purity_lower(rho).value - c) <= 1e-10 * std::max(1.0, c),
           "purity_lower != C on pure state");
    expect(f, std::abs(purity_upper(rho).value - c) <= 1e-10 * std::max(1.0, c),
           "purity_upper != C on pure state");
    expect(f, std::abs(decomposition_upper(rho).value - c) <= 1e-10 * std::max(1.0, c),
           "decomp_upper != C on pure state");
  }
  return finish("pure-collapse", f);
}

SuiteResult suite_separability(const SelftestOptions& opt) {
  Failure f;
  for (int i = 0; i < 25 && !f.any; ++i) {
    const DensityMatrix rho = random_separable(3, opt.seed + 4000 + i);
    expect(f, tau_n(rho).bound.value == 0.0, "tau3 > 0 on separable state");
    expect(f, gpt_tripartite_bound(rho).value == 0.0, "gpt bound > 0 on separable state");
    expect(f, theorem6_bound(rho).value == 0.0, "thm6 > 0 on separable state");
  }
  return finish("separability-zeroing", f);
}

SuiteResult suite_cd_ratio(const SelftestOptions& opt) {
  Failure f;
  const DimSpec dims({2, 2, 2});
  std::vector<double> ratios;
  for (int i = 0; i < 50; ++i) {
    const PureState psi = random_pure(dims, opt.seed + 5000 + i);
    ratios.push_back(pure_concurrence_cd(psi) / pure_concurrence(psi));
  }
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= ratios.size();
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  const double rel = std::sqrt(var / ratios.size()) / mean;
  expect(f, rel < 1e-8, "minor-sum / purity-form ratio varies across states");
  return finish("cd-ratio", f);
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opt) {
  return {suite_tau2_wootters(opt), suite_gpt_oracles(opt), suite_sandwich(opt),
          suite_pure_collapse(opt), suite_separability(opt), suite_cd_ratio(opt)};
}

bool all_passed(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const SuiteResult& r) { return r.passed; });
}

}  // namespace qconcur
