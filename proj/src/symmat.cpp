#include "coax/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coax {

namespace {

void requireDim(int dim) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("matrix dimension must be 2 or 3");
}

} // namespace

// ---- Matrix ----------------------------------------------------------------

Matrix::Matrix(int dim) : dim_(dim) { requireDim(dim); }

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobeniusNorm() const {
  double s = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
  Matrix c(a.dim_);
  for (int i = 0; i < a.dim_; ++i)
    for (int j = 0; j < a.dim_; ++j) {
      double s = 0;
      for (int k = 0; k < a.dim_; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
  Matrix c(a.dim_);
  for (int i = 0; i < a.dim_; ++i)
    for (int j = 0; j < a.dim_; ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

// ---- SymMatrix -------------------------------------------------------------

SymMatrix::SymMatrix(int dim) : dim_(dim) { requireDim(dim); }

int SymMatrix::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (dim_ == 2) {
    // xx yy xy
    if (i == j) return i;
    return 2;
  }
  // xx yy zz xy xz yz
  if (i == j) return i;
  if (i == 0) return j == 1 ? 3 : 4;
  return 5;
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim_; ++i) m.set(i, i, d[i]);
  return m;
}

SymMatrix SymMatrix::fromUpper(int dim, std::span<const double> upper) {
  requireDim(dim);
  const size_t expected = dim == 3 ? 6 : 3;
  if (upper.size() != expected)
    throw std::invalid_argument("wrong number of upper-triangle entries");
  SymMatrix m(dim);
  std::copy(upper.begin(), upper.end(), m.a_.begin());
  return m;
}

std::vector<double> SymMatrix::upper() const {
  return std::vector<double>(a_.begin(), a_.begin() + (dim_ == 3 ? 6 : 3));
}

double SymMatrix::trace() const {
  double s = 0;
  for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

double SymMatrix::frobeniusNorm() const {
  double s = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

bool SymMatrix::allFinite() const {
  const int n = dim_ == 3 ? 6 : 3;
  for (int k = 0; k < n; ++k)
    if (!std::isfinite(a_[k])) return false;
  return true;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

// ---- helpers ---------------------------------------------------------------

double clusterBand(double x, double y, double rel) {
  return std::max(tol::kClusterAbsFloor,
                  rel * std::max({1.0, std::abs(x), std::abs(y)}));
}

Matrix toMatrix(const SymMatrix& a) {
  Matrix m(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  return m;
}

Matrix multiply(const SymMatrix& a, const SymMatrix& b) {
  return toMatrix(a) * toMatrix(b);
}

SymMatrix symmetrize(const Matrix& m) {
  SymMatrix s(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

SymMatrix congruenceDiag(const Matrix& q, std::span<const double> d) {
  const int n = q.dim();
  SymMatrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = 0;
      for (int k = 0; k < n; ++k) v += q(i, k) * d[k] * q(j, k);
      s.set(i, j, v);
    }
  return s;
}

SymMatrix symSquare(const SymMatrix& a) { return symmetrize(multiply(a, a)); }

SymMatrix SpectralDecomposition::reconstruct() const {
  return congruenceDiag(basis, std::span<const double>(eigenvalues.data(), dim));
}

// ---- eigendecomposition ----------------------------------------------------

namespace {

// One cyclic Jacobi pass over the strict upper triangle of `a`, rotations
// accumulated into the columns of `v`.
void jacobiSweep(int n, double a[3][3], double v[3][3]) {
  for (int p = 0; p < n - 1; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const double apq = a[p][q];
      if (apq == 0.0) continue;
      const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
      const double t = (theta >= 0 ? 1.0 : -1.0) /
                       (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      const double tau = s / (1.0 + c);

      const double app = a[p][p], aqq = a[q][q];
      a[p][p] = app - t * apq;
      a[q][q] = aqq + t * apq;
      a[p][q] = a[q][p] = 0.0;
      for (int r = 0; r < n; ++r) {
        if (r != p && r != q) {
          const double arp = a[r][p], arq = a[r][q];
          a[r][p] = a[p][r] = arp - s * (arq + tau * arp);
          a[r][q] = a[q][r] = arq + s * (arp - tau * arq);
        }
        const double vrp = v[r][p], vrq = v[r][q];
        v[r][p] = vrp - s * (vrq + tau * vrp);
        v[r][q] = vrq + s * (vrp - tau * vrq);
      }
    }
  }
}

double offDiagonalNorm(int n, const double a[3][3]) {
  double s = 0;
  for (int p = 0; p < n - 1; ++p)
    for (int q = p + 1; q < n; ++q) s += 2.0 * a[p][q] * a[p][q];
  return std::sqrt(s);
}

void fixSign(int n, double v[3][3], int col) {
  for (int r = 0; r < n; ++r) {
    if (std::abs(v[r][col]) > 1e-13) {
      if (v[r][col] < 0)
        for (int k = 0; k < n; ++k) v[k][col] = -v[k][col];
      return;
    }
  }
}

std::vector<std::vector<int>> clusterSorted(std::span<const double> vals,
                                            double rel) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(vals.size()); ++i) {
    if (!groups.empty()) {
      const double prev = vals[groups.back().back()];
      if (std::abs(prev - vals[i]) <= clusterBand(prev, vals[i], rel)) {
        groups.back().push_back(i);
        continue;
      }
    }
    groups.push_back({i});
  }
  return groups;
}

} // namespace

SpectralDecomposition eigendecompose(const SymMatrix& m, double clusterTol) {
  if (!m.allFinite())
    throw std::invalid_argument("eigendecompose: non-finite entries");
  const int n = m.dim();
  double a[3][3] = {};
  double v[3][3] = {};
  for (int i = 0; i < n; ++i) {
    v[i][i] = 1.0;
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  }

  const double threshold = tol::kJacobiOffDiag * std::max(m.frobeniusNorm(), 1e-300);
  int sweep = 0;
  while (offDiagonalNorm(n, a) > threshold) {
    if (++sweep > tol::kJacobiMaxSweeps)
      throw ConvergenceError("Jacobi eigensolver: no convergence after " +
                             std::to_string(tol::kJacobiMaxSweeps) + " sweeps");
    jacobiSweep(n, a, v);
  }

  // sort descending, stable in the original index order
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.begin() + n,
                   [&](int i, int j) { return a[i][i] > a[j][j]; });

  SpectralDecomposition out;
  out.dim = n;
  out.basis = Matrix(n);
  for (int c = 0; c < n; ++c) {
    out.eigenvalues[c] = a[order[c]][order[c]];
    for (int r = 0; r < n; ++r) out.basis(r, c) = v[r][order[c]];
  }
  double vb[3][3];
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) vb[r][c] = out.basis(r, c);
  for (int c = 0; c < n; ++c) fixSign(n, vb, c);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.basis(r, c) = vb[r][c];

  out.clusters = clusterSorted(
      std::span<const double>(out.eigenvalues.data(), n), clusterTol);
  return out;
}

Invariants invariants(const SymMatrix& b) {
  if (b.dim() != 3)
    throw std::invalid_argument("invariants: defined for dim 3 only");
  Invariants inv;
  inv.i1 = b.trace();
  // sum of principal 2x2 minors
  inv.i2 = (b(0, 0) * b(1, 1) - b(0, 1) * b(0, 1)) +
           (b(0, 0) * b(2, 2) - b(0, 2) * b(0, 2)) +
           (b(1, 1) * b(2, 2) - b(1, 2) * b(1, 2));
  inv.i3 = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(1, 2)) -
           b(0, 1) * (b(0, 1) * b(2, 2) - b(1, 2) * b(0, 2)) +
           b(0, 2) * (b(0, 1) * b(1, 2) - b(1, 1) * b(0, 2));
  return inv;
}

bool commutes(const SymMatrix& a, const SymMatrix& b, double tolerance) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("commutes: dimension mismatch");
  const Matrix c = multiply(a, b) - multiply(b, a);
  return c.frobeniusNorm() <=
         tolerance * (1.0 + a.frobeniusNorm() * b.frobeniusNorm());
}

SimultaneousDiagonalization
simultaneousDiagonalize(const SymMatrix& a, const SymMatrix& b,
                        double clusterTol, double commuteTol) {
  if (!commutes(a, b, commuteTol))
    throw std::invalid_argument(
        "simultaneousDiagonalize: inputs do not commute within tolerance");

  const SpectralDecomposition ea = eigendecompose(a, clusterTol);
  const int n = ea.dim;

  // B in the eigenbasis of A; commuting pair => block diagonal over clusters
  const Matrix bq = ea.basis.transposed() * toMatrix(b) * ea.basis;

  SimultaneousDiagonalization out;
  out.dim = n;
  out.basis = ea.basis;
  out.clusters = ea.clusters;
  for (int i = 0; i < n; ++i) out.a[i] = ea.eigenvalues[i];

  for (const auto& cluster : ea.clusters) {
    const int m = static_cast<int>(cluster.size());
    if (m == 1) {
      out.b[cluster[0]] = bq(cluster[0], cluster[0]);
      continue;
    }
    // diagonalize B restricted to this eigenspace of A
    SymMatrix block(m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) block.set(i, j, bq(cluster[i], cluster[j]));
    const SpectralDecomposition eb = eigendecompose(block, clusterTol);
    for (int i = 0; i < m; ++i) out.b[cluster[i]] = eb.eigenvalues[i];
    // rotate the affected basis columns
    Matrix updated(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) updated(r, c) = out.basis(r, c);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c) {
        double s = 0;
        for (int k = 0; k < m; ++k)
          s += out.basis(r, cluster[k]) * eb.basis(k, c);
        updated(r, cluster[c]) = s;
      }
    out.basis = updated;
  }
  return out;
}

bool isCoaxial(const SymMatrix& a, const SymMatrix& b, double clusterTol) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("isCoaxial: dimension mismatch");
  if (!commutes(a, b)) return false;
  const SimultaneousDiagonalization sd =
      simultaneousDiagonalize(a, b, clusterTol);
  // equal eigenvalues of A must map to equal corresponding eigenvalues of B
  for (const auto& cluster : sd.clusters) {
    for (size_t i = 0; i + 1 < cluster.size(); ++i) {
      const double x = sd.b[cluster[i]], y = sd.b[cluster[i + 1]];
      if (std::abs(x - y) > clusterBand(x, y, clusterTol)) return false;
    }
  }
  return true;
}

bool isBicoaxial(const SymMatrix& a, const SymMatrix& b, double clusterTol) {
  return isCoaxial(a, b, clusterTol) && isCoaxial(b, a, clusterTol);
}

SymMatrix matSqrt(const SymMatrix& a) {
  return applyEigenFunction(a, [](double x) { return std::sqrt(x); }, true);
}

SymMatrix matLog(const SymMatrix& a) {
  return applyEigenFunction(a, [](double x) { return std::log(x); }, true);
}

SymMatrix matInverse(const SymMatrix& a) {
  return applyEigenFunction(a, [](double x) { return 1.0 / x; }, true);
}

SymMatrix dev3(const SymMatrix& a) {
  if (a.dim() != 3) throw std::invalid_argument("dev3: defined for dim 3 only");
  return a - (a.trace() / 3.0) * SymMatrix::identity(3);
}

std::array<double, 3> eigenvaluesFromInvariants(const Invariants& inv) {
  // depressed cubic y^3 + p y + q with x = y + i1/3
  const double shift = inv.i1 / 3.0;
  const double p = inv.i2 - inv.i1 * inv.i1 / 3.0;
  const double q = -2.0 * inv.i1 * inv.i1 * inv.i1 / 27.0 +
                   inv.i1 * inv.i2 / 3.0 - inv.i3;
  const double scale =
      std::max({1.0, std::abs(p) * std::abs(p) * std::abs(p), q * q});
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  if (disc < -1e-10 * scale)
    throw std::domain_error("eigenvaluesFromInvariants: complex roots");

  std::array<double, 3> x{};
  if (p >= -1e-14 * std::max(1.0, inv.i1 * inv.i1)) {
    // (near-)triple root
    x = {shift, shift, shift};
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      x[k] = shift + m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
    std::sort(x.begin(), x.end(), std::greater<>());
  }
  for (double v : x)
    if (!(v > 0))
      throw std::domain_error("eigenvaluesFromInvariants: non-positive root");
  return x;
}

} // namespace coax
