#include "qconcur/tensor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qconcur {
namespace {

void check_subset(const std::vector<int>& subset, int n, const char* what) {
  std::set<int> seen;
  for (int k : subset) {
    if (k < 1 || k > n) {
      throw validation_error(std::string(what) + ": subsystem label out of range");
    }
    if (!seen.insert(k).second) {
      throw validation_error(std::string(what) + ": duplicate subsystem label");
    }
  }
}

// digits[k] = index of subsystem k+1 when x is decoded against dims
// (subsystem 1 most significant).
std::vector<std::vector<int>> digit_table(const DimSpec& dims) {
  const int n = dims.n_subsystems();
  const long D = dims.total_dim();
  std::vector<std::vector<int>> t(n, std::vector<int>(D));
  for (long x = 0; x < D; ++x) {
    long rem = x;
    for (int k = n - 1; k >= 0; --k) {
      t[k][x] = static_cast<int>(rem % dims.dims()[k]);
      rem /= dims.dims()[k];
    }
  }
  return t;
}

}  // namespace

Bipartition::Bipartition(std::vector<int> part1, int n_subsystems) : n_(n_subsystems) {
  if (n_subsystems < 2) throw validation_error("Bipartition: need at least 2 subsystems");
  check_subset(part1, n_subsystems, "Bipartition");
  if (part1.empty() || static_cast<int>(part1.size()) >= n_subsystems) {
    throw validation_error("Bipartition: both parts must be nonempty");
  }
  std::sort(part1.begin(), part1.end());
  std::vector<int> part2;
  for (int k = 1; k <= n_subsystems; ++k) {
    if (!std::binary_search(part1.begin(), part1.end(), k)) part2.push_back(k);
  }
  // normal form: part1 holds the smallest label
  if (part2.front() < part1.front()) std::swap(part1, part2);
  part1_ = std::move(part1);
  part2_ = std::move(part2);
}

std::string Bipartition::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < part1_.size(); ++i) os << (i ? "," : "") << part1_[i];
  os << '|';
  for (size_t i = 0; i < part2_.size(); ++i) os << (i ? "," : "") << part2_[i];
  return os.str();
}

std::vector<Bipartition> all_bipartitions(int n_subsystems) {
  std::vector<Bipartition> out;
  // subsystem 1 is always in part1; enumerate subsets of {2..N} joining it
  const long combos = 1L << (n_subsystems - 1);
  for (long mask = 0; mask + 1 < combos; ++mask) {
    std::vector<int> part1{1};
    for (int k = 2; k <= n_subsystems; ++k) {
      if (mask >> (k - 2) & 1) part1.push_back(k);
    }
    out.emplace_back(std::move(part1), n_subsystems);
  }
  return out;
}

std::string GptSpec::to_string() const {
  std::ostringstream os;
  os << "r{";
  for (size_t i = 0; i < row_transposed.size(); ++i) os << (i ? "," : "") << row_transposed[i];
  os << "}c{";
  for (size_t i = 0; i < col_transposed.size(); ++i) os << (i ? "," : "") << col_transposed[i];
  os << '}';
  return os.str();
}

DensityMatrix::DensityMatrix(DimSpec dims, Matrix mat, const ValidationConfig& cfg)
    : dims_(std::move(dims)), mat_(std::move(mat)) {
  const long D = dims_.total_dim();
  if (mat_.rows() != D || mat_.cols() != D) {
    throw validation_error("DensityMatrix: matrix side does not match dimension product");
  }
  const double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > cfg.tol_herm) {
    throw validation_error("DensityMatrix: not Hermitian (deviation " +
                           std::to_string(herm_dev) + ")");
  }
  const Complex tr = mat_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > cfg.tol_trace) {
    throw validation_error("DensityMatrix: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (mat_ + mat_.adjoint()),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw numerical_error("DensityMatrix: eigensolver failed during validation");
  }
  if (es.eigenvalues().minCoeff() < -cfg.tol_psd) {
    throw validation_error("DensityMatrix: negative eigenvalue " +
                           std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix::DensityMatrix(DimSpec dims, Matrix mat, trusted_tag)
    : dims_(std::move(dims)), mat_(std::move(mat)) {}

DensityMatrix DensityMatrix::trusted(DimSpec dims, Matrix mat) {
  return DensityMatrix(std::move(dims), std::move(mat), trusted_tag{});
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_in) {
  const int n = rho.dims().n_subsystems();
  std::vector<int> keep = keep_in;
  if (keep.empty()) throw validation_error("partial_trace: keep set is empty");
  check_subset(keep, n, "partial_trace");
  std::sort(keep.begin(), keep.end());

  const long D = rho.side();
  const auto digits = digit_table(rho.dims());
  std::vector<int> keep_dims;
  for (int k : keep) keep_dims.push_back(rho.dims().dim_of(k));

  // composite (kept, traced) index of every full index
  std::vector<long> kidx(D, 0), tidx(D, 0);
  for (long x = 0; x < D; ++x) {
    long kv = 0, tv = 0;
    for (int k = 1; k <= n; ++k) {
      if (std::binary_search(keep.begin(), keep.end(), k)) {
        kv = kv * rho.dims().dim_of(k) + digits[k - 1][x];
      } else {
        tv = tv * rho.dims().dim_of(k) + digits[k - 1][x];
      }
    }
    kidx[x] = kv;
    tidx[x] = tv;
  }

  long Dk = 1;
  for (int d : keep_dims) Dk *= d;
  Matrix out = Matrix::Zero(Dk, Dk);
  for (long c = 0; c < D; ++c) {
    for (long r = 0; r < D; ++r) {
      if (tidx[r] == tidx[c]) out(kidx[r], kidx[c]) += rho.mat()(r, c);
    }
  }
  return DensityMatrix::trusted(DimSpec(keep_dims), std::move(out));
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = ||rho||_F^2 for Hermitian rho
  return rho.mat().squaredNorm();
}

Matrix gpt(const DensityMatrix& rho, const GptSpec& spec) {
  const int n = rho.dims().n_subsystems();
  std::vector<int> rows = spec.row_transposed, cols = spec.col_transposed;
  check_subset(rows, n, "gpt row_transposed");
  check_subset(cols, n, "gpt col_transposed");
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());

  // each group entry: (from_row_side, subsystem label)
  struct Slot {
    bool from_row;
    int sub;
  };
  std::vector<Slot> row_group, col_group;
  for (int k = 1; k <= n; ++k) {
    if (!std::binary_search(rows.begin(), rows.end(), k)) row_group.push_back({true, k});
  }
  for (int k : cols) row_group.push_back({false, k});
  for (int k = 1; k <= n; ++k) {
    if (!std::binary_search(cols.begin(), cols.end(), k)) col_group.push_back({false, k});
  }
  for (int k : rows) col_group.push_back({true, k});

  const long D = rho.side();
  const auto digits = digit_table(rho.dims());
  long Dr = 1, Dc = 1;
  for (const Slot& s : row_group) Dr *= rho.dims().dim_of(s.sub);
  for (const Slot& s : col_group) Dc *= rho.dims().dim_of(s.sub);

  Matrix out(Dr, Dc);
  for (long c = 0; c < D; ++c) {
    for (long r = 0; r < D; ++r) {
      long ro = 0, co = 0;
      for (const Slot& s : row_group) {
        ro = ro * rho.dims().dim_of(s.sub) + digits[s.sub - 1][s.from_row ? r : c];
      }
      for (const Slot& s : col_group) {
        co = co * rho.dims().dim_of(s.sub) + digits[s.sub - 1][s.from_row ? r : c];
      }
      out(ro, co) = rho.mat()(r, c);
    }
  }
  return out;
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  if (svd.info() != Eigen::Success) throw numerical_error("trace_norm: SVD failed");
  return svd.singularValues().sum();
}

std::vector<Complex> general_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw validation_error("general_eigenvalues: matrix not square");
  Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw numerical_error("general_eigenvalues: eigensolver did not converge");
  }
  std::vector<Complex> out(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

std::vector<Matrix> so_generators(int n) {
  if (n < 2) throw validation_error("so_generators: n must be >= 2");
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix L = Matrix::Zero(n, n);
      L(j, k) = 1.0;
      L(k, j) = -1.0;
      out.push_back(std::move(L));
    }
  }
  return out;
}

std::vector<Matrix> gell_mann_basis(int d) {
  if (d < 2) throw validation_error("gell_mann_basis: d must be >= 2");
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(d) * d - 1);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      out.push_back(std::move(m));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(j, k) = Complex(0.0, -1.0);
      m(k, j) = Complex(0.0, 1.0);
      out.push_back(std::move(m));
    }
  }
  for (int l = 1; l < d; ++l) {
    Matrix m = Matrix::Zero(d, d);
    for (int j = 0; j < l; ++j) m(j, j) = 1.0;
    m(l, l) = -static_cast<double>(l);
    out.push_back(std::sqrt(2.0 / (l * (l + 1.0))) * m);
  }
  return out;
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& perm) {
  const int n = rho.dims().n_subsystems();
  if (static_cast<int>(perm.size()) != n) {
    throw validation_error("permute_subsystems: permutation length mismatch");
  }
  check_subset(perm, n, "permute_subsystems");

  std::vector<int> new_dims(n);
  for (int k = 0; k < n; ++k) new_dims[k] = rho.dims().dim_of(perm[k]);

  const long D = rho.side();
  const auto digits = digit_table(rho.dims());
  std::vector<long> map(D);
  for (long x = 0; x < D; ++x) {
    long y = 0;
    for (int k = 0; k < n; ++k) y = y * new_dims[k] + digits[perm[k] - 1][x];
    map[x] = y;
  }
  Matrix out(D, D);
  for (long c = 0; c < D; ++c) {
    for (long r = 0; r < D; ++r) out(map[r], map[c]) = rho.mat()(r, c);
  }
  return DensityMatrix::trusted(DimSpec(new_dims), std::move(out));
}

}  // namespace qconcur
