#include "qconcur/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qconcur {
namespace {

constexpr double kClampTol = 1e-12;
constexpr double kPurityOneTol = 1e-10;

Bound make_bound(double raw, BoundKind kind) {
  Bound b;
  b.raw = raw;
  b.kind = kind;
  if (raw > kClampTol) {
    b.value = raw;
  } else {
    b.value = 0.0;
    b.clamped = raw < -kClampTol;
  }
  return b;
}

// Sum of Tr(rho_S^2) over all 2^N - 2 proper nonempty subsets S.
double marginal_purity_sum(const DensityMatrix& rho) {
  const int n = rho.dims().n_subsystems();
  double sum = 0.0;
  for (long mask = 1; mask + 1 < (1L << n); ++mask) {
    std::vector<int> keep;
    for (int k = 1; k <= n; ++k) {
      if (mask >> (k - 1) & 1) keep.push_back(k);
    }
    sum += purity(partial_trace(rho, keep));
  }
  return sum;
}

struct CutView {
  DensityMatrix bi;  // dims (d1, d2)
  long d1, d2;
};

CutView as_bipartite(const DensityMatrix& rho, const Bipartition& cut) {
  std::vector<int> perm = cut.part1();
  perm.insert(perm.end(), cut.part2().begin(), cut.part2().end());
  DensityMatrix rp = permute_subsystems(rho, perm);
  long d1 = 1, d2 = 1;
  for (int k : cut.part1()) d1 *= rho.dims().dim_of(k);
  for (int k : cut.part2()) d2 *= rho.dims().dim_of(k);
  return {DensityMatrix::trusted(DimSpec({static_cast<int>(d1), static_cast<int>(d2)}),
                                 rp.mat()),
          d1, d2};
}

// <l_m (x) l_n>, local expectation vectors and marginal purities for a
// bipartite state, with the Tr(l^2) = 2 basis on each side.
struct BipartiteCorrelations {
  RealMatrix corr;
  RealVector bloch_a, bloch_b;
  double purity_a = 0.0, purity_b = 0.0;
};

BipartiteCorrelations correlations(const CutView& cv) {
  const auto lam_a = gell_mann_basis(static_cast<int>(cv.d1));
  const auto lam_b = gell_mann_basis(static_cast<int>(cv.d2));
  const long d1 = cv.d1, d2 = cv.d2;
  const Matrix& m = cv.bi.mat();

  const DensityMatrix rho_a = partial_trace(cv.bi, {1});
  const DensityMatrix rho_b = partial_trace(cv.bi, {2});

  BipartiteCorrelations out;
  out.purity_a = purity(rho_a);
  out.purity_b = purity(rho_b);
  out.bloch_a.resize(lam_a.size());
  out.bloch_b.resize(lam_b.size());
  for (size_t i = 0; i < lam_a.size(); ++i) {
    out.bloch_a(i) = (rho_a.mat() * lam_a[i]).trace().real();
  }
  for (size_t j = 0; j < lam_b.size(); ++j) {
    out.bloch_b(j) = (rho_b.mat() * lam_b[j]).trace().real();
  }

  out.corr.resize(lam_a.size(), lam_b.size());
  for (size_t i = 0; i < lam_a.size(); ++i) {
    // Q = sum_{jk} lam_a(k, j) block_{jk}, so Tr(rho (X (x) Y)) = Tr(Q Y)
    Matrix q = Matrix::Zero(d2, d2);
    for (long j = 0; j < d1; ++j) {
      for (long k = 0; k < d1; ++k) {
        const Complex w = lam_a[i](k, j);
        if (w != Complex(0.0, 0.0)) {
          q += w * m.block(j * d2, k * d2, d2, d2);
        }
      }
    }
    for (size_t jj = 0; jj < lam_b.size(); ++jj) {
      out.corr(i, jj) = (q * lam_b[jj]).trace().real();
    }
  }
  return out;
}

double real_trace_norm(const RealMatrix& m) {
  Eigen::JacobiSVD<RealMatrix> svd(m);
  if (svd.info() != Eigen::Success) throw numerical_error("trace_norm: SVD failed");
  return svd.singularValues().sum();
}

double b1_raw(const CutView& cv) {
  const double m = static_cast<double>(std::min(cv.d1, cv.d2));
  const double pt = trace_norm(gpt(cv.bi, GptSpec{{1}, {1}}));
  const double re = trace_norm(gpt(cv.bi, GptSpec{{2}, {1}}));
  return std::sqrt(2.0 / (m * (m - 1.0))) * (std::max(pt, re) - 1.0);
}

double b2_raw(const CutView& cv, const BipartiteCorrelations& c) {
  const double m = static_cast<double>(std::min(cv.d1, cv.d2));
  // covariance matrix over orthonormal observables l / sqrt(2)
  const RealMatrix cov = 0.5 * (c.corr - c.bloch_a * c.bloch_b.transpose());
  const double num =
      2.0 * real_trace_norm(cov) - (1.0 - c.purity_a) - (1.0 - c.purity_b);
  return num / std::sqrt(2.0 * m * (m - 1.0));
}

double b3_raw(const CutView& cv, const BipartiteCorrelations& c) {
  const double m = static_cast<double>(std::min(cv.d1, cv.d2));
  const double nx = static_cast<double>(std::max(cv.d1, cv.d2));
  const RealMatrix t = (m * nx / 4.0) * c.corr;
  const double excess =
      real_trace_norm(t) - std::sqrt(m * nx * (m - 1.0) * (nx - 1.0)) / 2.0;
  return std::sqrt(8.0 / (m * m * m * nx * nx * (m - 1.0))) * excess;
}

struct CutEstimate {
  double raw;  // best of the three per-cut estimates before clamping
};

CutEstimate best_cut_estimate(const DensityMatrix& rho, const Bipartition& cut) {
  const CutView cv = as_bipartite(rho, cut);
  const BipartiteCorrelations c = correlations(cv);
  return {std::max({b1_raw(cv), b2_raw(cv, c), b3_raw(cv, c)})};
}

bool is_pure(const DensityMatrix& rho) { return purity(rho) >= 1.0 - kPurityOneTol; }

// Exact cut concurrence of a pure density matrix from its marginal purity.
double exact_cut_concurrence(const DensityMatrix& rho, const Bipartition& cut) {
  const double p = purity(partial_trace(rho, cut.part1()));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - p)));
}

}  // namespace

Bound purity_lower(const DensityMatrix& rho) {
  const int n = rho.dims().n_subsystems();
  if (n < 2) throw validation_error("purity_lower: need at least 2 subsystems");
  const double radicand = (4.0 - std::pow(2.0, 3.0 - n)) * purity(rho) -
                          std::pow(2.0, 2.0 - n) * marginal_purity_sum(rho);
  const double raw = std::copysign(std::sqrt(std::abs(radicand)), radicand);
  return make_bound(raw, BoundKind::lower);
}

Bound purity_upper(const DensityMatrix& rho) {
  const int n = rho.dims().n_subsystems();
  if (n < 2) throw validation_error("purity_upper: need at least 2 subsystems");
  const double radicand = std::pow(2.0, 2.0 - n) *
                          ((std::ldexp(1.0, n) - 2.0) - marginal_purity_sum(rho));
  Bound b = make_bound(std::sqrt(std::max(0.0, radicand)), BoundKind::upper);
  return b;
}

Bound decomposition_upper(const DensityMatrix& rho, const ToleranceConfig& cfg) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat());
  if (es.info() != Eigen::Success) {
    throw numerical_error("decomposition_upper: eigensolver failed");
  }
  double total = 0.0;
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam <= cfg.eig_zero_tol) continue;
    Vector v = es.eigenvectors().col(i);
    v /= v.norm();
    total += lam * pure_concurrence(PureState(rho.dims(), std::move(v)));
  }
  Bound b = make_bound(total, BoundKind::upper);
  return b;
}

TauResult tau_n(const DensityMatrix& rho, const ToleranceConfig& cfg) {
  if (!rho.dims().uniform()) {
    throw validation_error("tau_n: subsystem dimensions must be equal");
  }
  const int n = rho.dims().n_subsystems();
  if (n < 2) throw validation_error("tau_n: need at least 2 subsystems");
  const double d = rho.dims().dim_of(1);
  const double m = static_cast<double>(num_bipartitions(n));

  double total = 0.0;
  double max_diff = -std::numeric_limits<double>::infinity();
  std::optional<Bipartition> witness;

  for (const Bipartition& cut : all_bipartitions(n)) {
    std::vector<int> perm = cut.part1();
    perm.insert(perm.end(), cut.part2().begin(), cut.part2().end());
    const DensityMatrix rp = permute_subsystems(rho, perm);
    const Matrix conj = rp.mat().conjugate();

    long d1 = 1, d2 = 1;
    for (int k : cut.part1()) d1 *= rho.dims().dim_of(k);
    for (int k : cut.part2()) d2 *= rho.dims().dim_of(k);
    const auto gens_a = so_generators(static_cast<int>(d1));
    const auto gens_b = so_generators(static_cast<int>(d2));

    for (const Matrix& la : gens_a) {
      for (const Matrix& lb : gens_b) {
        const Matrix s = kron(la, lb);
        const Matrix prod = rp.mat() * (s * conj * s);
        const auto evs = general_eigenvalues(prod);

        double scale = 0.0;
        for (const Complex& e : evs) scale = std::max(scale, std::abs(e));
        std::vector<double> roots;
        roots.reserve(evs.size());
        for (const Complex& e : evs) {
          if (std::abs(e.imag()) > cfg.imag_tol * scale) {
            throw numerical_error("tau_n: eigenvalue with non-negligible imaginary part");
          }
          double re = e.real();
          if (re < cfg.eig_zero_tol * scale) re = 0.0;
          roots.push_back(std::sqrt(re));
        }
        std::sort(roots.begin(), roots.end(), std::greater<>());
        const double diff = roots[0] - roots[1] - roots[2] - roots[3];
        if (diff > max_diff) {
          max_diff = diff;
          witness = cut;
        }
        const double c = std::max(0.0, diff);
        total += c * c;
      }
    }
  }

  TauResult out;
  out.tau = d / (2.0 * m * (d - 1.0)) * total;
  out.bound = make_bound(max_diff, BoundKind::lower);
  out.bound.value = std::sqrt(out.tau);
  if (witness) out.bound.witness = *witness;
  return out;
}

Bound gpt_tripartite_bound(const DensityMatrix& rho) {
  if (rho.dims().n_subsystems() != 3) {
    throw validation_error("gpt_tripartite_bound: defined for tripartite states only");
  }
  const double m = rho.dims().dim_of(1);
  const double nn = rho.dims().dim_of(2);
  const double p = rho.dims().dim_of(3);
  if (m > nn || m > p) {
    throw validation_error(
        "gpt_tripartite_bound: first subsystem must have the smallest dimension");
  }
  const double q = std::min(nn, m * p);
  const double r = std::min(p, m * nn);

  struct Term {
    GptSpec spec;
    double scale;
  };
  const std::vector<Term> terms = {
      {GptSpec{{1}, {1}}, m},     {GptSpec{{2, 3}, {1}}, m},  // transpose A / rows BC
      {GptSpec{{2}, {2}}, q},     {GptSpec{{2}, {1, 3}}, q},  // transpose B / cols AC
      {GptSpec{{3}, {3}}, r},     {GptSpec{{3}, {1, 2}}, r},  // transpose C / cols AB
  };

  double best = -std::numeric_limits<double>::infinity();
  GptSpec best_spec;
  for (const Term& t : terms) {
    const double val = std::sqrt(1.0 / (t.scale * (t.scale - 1.0))) *
                       (trace_norm(gpt(rho, t.spec)) - 1.0);
    if (val > best) {
      best = val;
      best_spec = t.spec;
    }
  }
  Bound b = make_bound(best, BoundKind::lower);
  b.witness = best_spec;
  return b;
}

Bound b1(const DensityMatrix& rho, const Bipartition& cut) {
  const CutView cv = as_bipartite(rho, cut);
  Bound b = make_bound(b1_raw(cv), BoundKind::bipartite_lower);
  b.witness = cut;
  return b;
}

Bound b2(const DensityMatrix& rho, const Bipartition& cut) {
  const CutView cv = as_bipartite(rho, cut);
  Bound b = make_bound(b2_raw(cv, correlations(cv)), BoundKind::bipartite_lower);
  b.witness = cut;
  return b;
}

Bound b3(const DensityMatrix& rho, const Bipartition& cut) {
  const CutView cv = as_bipartite(rho, cut);
  Bound b = make_bound(b3_raw(cv, correlations(cv)), BoundKind::bipartite_lower);
  b.witness = cut;
  return b;
}

Bound theorem3_bound(const DensityMatrix& rho) {
  const int n = rho.dims().n_subsystems();
  if (n < 3) throw validation_error("theorem3_bound: need at least 3 subsystems");
  const double coeff = std::pow(2.0, 0.5 * (3.0 - n));
  double best = -std::numeric_limits<double>::infinity();
  std::optional<Bipartition> witness;
  for (const Bipartition& cut : all_bipartitions(n)) {
    const double est = best_cut_estimate(rho, cut).raw;
    if (est > best) {
      best = est;
      witness = cut;
    }
  }
  Bound b = make_bound(coeff * best, BoundKind::lower);
  if (witness) b.witness = *witness;
  return b;
}

double theorem6_coefficient(int n_subsystems, int part1_size) {
  const double n = n_subsystems, m = part1_size;
  return std::pow(2.0, 0.5 * (1.0 - n)) *
         std::sqrt(std::pow(2.0, n - m) + std::pow(2.0, m) - 2.0);
}

Bound theorem6_bound(const DensityMatrix& rho, const ToleranceConfig&) {
  const int n = rho.dims().n_subsystems();
  if (n < 3) throw validation_error("theorem6_bound: need at least 3 subsystems");
  const bool pure = is_pure(rho);
  double best = -std::numeric_limits<double>::infinity();
  std::optional<Bipartition> witness;
  for (const Bipartition& cut : all_bipartitions(n)) {
    const double coeff = theorem6_coefficient(n, static_cast<int>(cut.part1().size()));
    const double est =
        pure ? exact_cut_concurrence(rho, cut) : best_cut_estimate(rho, cut).raw;
    if (coeff * est > best) {
      best = coeff * est;
      witness = cut;
    }
  }
  Bound b = make_bound(best, BoundKind::lower);
  if (witness) b.witness = *witness;
  return b;
}

Bound theorem7_wclass_bound(const DensityMatrix& rho) {
  const int n = rho.dims().n_subsystems();
  for (int d : rho.dims().dims()) {
    if (d != 2) throw validation_error("theorem7_wclass_bound: qubit subsystems only");
  }
  const double prefactor = std::pow(2.0, 1.0 - 0.5 * n);
  double best = -std::numeric_limits<double>::infinity();
  std::optional<Bipartition> witness;
  for (const Bipartition& cut : all_bipartitions(n)) {
    const CutView cv = as_bipartite(rho, cut);
    const double pt_excess = trace_norm(gpt(cv.bi, GptSpec{{1}, {1}})) - 1.0;
    const int m = static_cast<int>(cut.part1().size());
    const double re_coeff =
        std::sqrt((std::pow(2.0, n - m) + std::pow(2.0, m) - 2.0) / 4.0);
    const double re_excess =
        re_coeff * (trace_norm(gpt(cv.bi, GptSpec{{2}, {1}})) - 1.0);
    const double cand = std::max(pt_excess, re_excess);
    if (cand > best) {
      best = cand;
      witness = cut;
    }
  }
  Bound b = make_bound(prefactor * best, BoundKind::lower);
  if (witness) b.witness = *witness;
  b.note = "assumes a decomposition into single-excitation states";
  return b;
}

const std::vector<std::string>& all_bound_ids() {
  static const std::vector<std::string> ids = {
      "purity_lower", "tau_n", "gpt_tripartite", "b1",           "b2",
      "b3",           "thm3",  "thm6",           "thm7_wclass",  "purity_upper",
      "decomp_upper"};
  return ids;
}

BoundReport full_report(const DensityMatrix& rho, const ToleranceConfig& cfg,
                        const std::vector<std::string>& selection) {
  const int n = rho.dims().n_subsystems();
  if (n < 2) throw validation_error("full_report: need at least 2 subsystems");

  auto selected = [&selection](const std::string& id) {
    return selection.empty() ||
           std::find(selection.begin(), selection.end(), id) != selection.end();
  };
  for (const std::string& id : selection) {
    if (std::find(all_bound_ids().begin(), all_bound_ids().end(), id) ==
        all_bound_ids().end()) {
      throw validation_error("full_report: unknown bound id '" + id + "'");
    }
  }

  const bool qubits = std::all_of(rho.dims().dims().begin(), rho.dims().dims().end(),
                                  [](int d) { return d == 2; });
  const bool tripartite_ordered =
      n == 3 && rho.dims().dim_of(1) <= std::min(rho.dims().dim_of(2), rho.dims().dim_of(3));

  BoundReport report;
  if (selected("purity_lower")) report.entries["purity_lower"] = purity_lower(rho);
  if (selected("purity_upper")) report.entries["purity_upper"] = purity_upper(rho);
  if (selected("decomp_upper")) {
    report.entries["decomp_upper"] = decomposition_upper(rho, cfg);
  }
  if (selected("tau_n") && rho.dims().uniform()) {
    report.entries["tau_n"] = tau_n(rho, cfg).bound;
  }
  if (selected("gpt_tripartite") && tripartite_ordered) {
    report.entries["gpt_tripartite"] = gpt_tripartite_bound(rho);
  }
  if (n >= 3) {
    if (selected("thm3")) report.entries["thm3"] = theorem3_bound(rho);
    if (selected("thm6")) report.entries["thm6"] = theorem6_bound(rho, cfg);
  }
  if (selected("thm7_wclass") && qubits) {
    report.entries["thm7_wclass"] = theorem7_wclass_bound(rho);
  }
  using CutBound = Bound (*)(const DensityMatrix&, const Bipartition&);
  const std::pair<const char*, CutBound> cut_bounds[] = {{"b1", &b1}, {"b2", &b2}, {"b3", &b3}};
  for (const auto& [id, fn] : cut_bounds) {
    if (!selected(id)) continue;
    Bound best;
    bool first = true;
    for (const Bipartition& cut : all_bipartitions(n)) {
      Bound cand = fn(rho, cut);
      if (first || cand.raw > best.raw) {
        best = cand;
        first = false;
      }
    }
    report.entries[std::string(id)] = best;
  }

  for (const auto& [id, bound] : report.entries) {
    if (bound.kind == BoundKind::lower && bound.note.empty()) {
      report.best_lower = std::max(report.best_lower.value_or(0.0), bound.value);
    } else if (bound.kind == BoundKind::upper) {
      report.best_upper = std::min(
          report.best_upper.value_or(std::numeric_limits<double>::infinity()),
          bound.value);
    }
  }
  return report;
}

}  // namespace qconcur
