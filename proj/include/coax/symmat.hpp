#ifndef COAX_SYMMAT_HPP
#define COAX_SYMMAT_HPP

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coax {

/// Default numerical tolerances. All eigenvalue-equality decisions are
/// relative with an absolute floor; see clusterBand().
namespace tol {
inline constexpr double kClusterRel = 1e-8;       // eigenvalue equality, relative
inline constexpr double kClusterAbsFloor = 1e-12; // eigenvalue equality, absolute floor
inline constexpr double kCommute = 1e-10;         // commutator test, scale-invariant
inline constexpr double kJacobiOffDiag = 1e-14;   // Jacobi convergence, relative to ||A||_F
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kStrictBand = 1e-10;      // strict/non-strict sign bands
inline constexpr double kVandermondeCondWarn = 1e12;
inline constexpr double kReconstructRel = 1e-8;   // coefficient reconstruction residual
inline constexpr double kFdStep = 1e-6;           // central-difference step
inline constexpr double kNewtonResidual = 1e-10;
inline constexpr int kNewtonMaxIter = 100;
} // namespace tol

/// Iterative solver failed to converge within its iteration cap.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Refusal: an operation required one argument to be coaxial to another.
struct NotCoaxialError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Dense square matrix, dim 2 or 3. Used for orthogonal bases and for
/// products of symmetric matrices (which are not symmetric in general).
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(int dim);
  static Matrix identity(int dim);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return m_[3 * i + j]; }
  double& operator()(int i, int j) { return m_[3 * i + j]; }

  Matrix transposed() const;
  double frobeniusNorm() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);

private:
  int dim_ = 3;
  std::array<double, 9> m_{}; // row-major, 3x3 backing store for both dims
};

/// Symmetric matrix of dimension 2 or 3; only the upper triangle is stored,
/// so symmetry holds by construction. Wire order of the stored scalars is
/// (xx, yy, zz, xy, xz, yz) for dim 3 and (xx, yy, xy) for dim 2.
class SymMatrix {
public:
  SymMatrix() = default;            // 3x3 zero
  explicit SymMatrix(int dim);      // zero of given dim

  static SymMatrix identity(int dim = 3);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix fromUpper(int dim, std::span<const double> upper);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return a_[index(i, j)]; }
  void set(int i, int j, double v) { a_[index(i, j)] = v; }

  std::vector<double> upper() const; // wire order
  double trace() const;
  double frobeniusNorm() const;
  bool allFinite() const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

private:
  int index(int i, int j) const;
  int dim_ = 3;
  std::array<double, 6> a_{};
};

/// Principal invariants of a 3x3 symmetric tensor:
/// i1 = tr B, i2 = tr Cof B, i3 = det B.
struct Invariants {
  double i1 = 0, i2 = 0, i3 = 0;
};

/// Orthogonal eigendecomposition with multiplicity clustering.
/// Columns of `basis` are the eigenvectors; eigenvalues are sorted
/// descending and reconstruct() returns basis * diag * basis^T.
/// Clusters partition {0..dim-1} into groups equal within the cluster band.
struct SpectralDecomposition {
  int dim = 3;
  Matrix basis;
  std::array<double, 3> eigenvalues{};
  std::vector<std::vector<int>> clusters;

  SymMatrix reconstruct() const;
};

/// Joint diagonalization of a commuting pair: basis diagonalizes both,
/// a[i] and b[i] are the corresponding eigenvalues (consistent ordering).
/// `clusters` are the eigenvalue clusters of the first argument.
struct SimultaneousDiagonalization {
  int dim = 3;
  Matrix basis;
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  std::vector<std::vector<int>> clusters;
};

/// Equality band for two eigenvalues: max(absFloor, rel*max(1,|x|,|y|)).
double clusterBand(double x, double y, double rel = tol::kClusterRel);

// ---- products and elementwise helpers -------------------------------------

Matrix toMatrix(const SymMatrix& a);
Matrix multiply(const SymMatrix& a, const SymMatrix& b);
SymMatrix symmetrize(const Matrix& m);
/// Q * diag(d) * Q^T as a SymMatrix (congruence by an orthogonal basis).
SymMatrix congruenceDiag(const Matrix& q, std::span<const double> d);
/// a*a, symmetric by construction.
SymMatrix symSquare(const SymMatrix& a);

// ---- core operations -------------------------------------------------------

/// Cyclic Jacobi eigensolver for small dense symmetric matrices.
/// Deterministic output: eigenvalues descending, eigenvector sign fixed so
/// the first non-negligible component is positive. Throws ConvergenceError
/// if the off-diagonal norm has not dropped below kJacobiOffDiag*||A||_F
/// after kJacobiMaxSweeps sweeps.
SpectralDecomposition eigendecompose(const SymMatrix& a,
                                     double clusterTol = tol::kClusterRel);

/// (tr B, tr Cof B, det B) of a 3x3 symmetric tensor.
Invariants invariants(const SymMatrix& b);

/// True iff ||AB - BA||_F <= tol*(1 + ||A||_F*||B||_F).
bool commutes(const SymMatrix& a, const SymMatrix& b, double tolerance = tol::kCommute);

/// Joint diagonalization of a commuting pair: eigendecompose A with
/// clustering, then diagonalize B's block on each eigenspace of A.
/// Throws std::invalid_argument if the inputs do not commute within the
/// commutator tolerance.
SimultaneousDiagonalization
simultaneousDiagonalize(const SymMatrix& a, const SymMatrix& b,
                        double clusterTol = tol::kClusterRel,
                        double commuteTol = tol::kCommute);

/// A coaxial to B: every eigenvector of A is an eigenvector of B.
/// Decided by the clustered-eigenvalue criterion: A,B commute and equal
/// eigenvalues of A (same cluster) map to equal corresponding eigenvalues
/// of B. Non-commuting pairs simply return false.
bool isCoaxial(const SymMatrix& a, const SymMatrix& b,
               double clusterTol = tol::kClusterRel);

/// Coaxial in both directions.
bool isBicoaxial(const SymMatrix& a, const SymMatrix& b,
                 double clusterTol = tol::kClusterRel);

/// Spectral function Q diag(f(lambda)) Q^T. If requireSpd, throws
/// std::domain_error when any eigenvalue is <= 0.
template <class F>
SymMatrix applyEigenFunction(const SymMatrix& a, F&& f, bool requireSpd);

SymMatrix matSqrt(const SymMatrix& a);
SymMatrix matLog(const SymMatrix& a);
SymMatrix matInverse(const SymMatrix& a);
/// Deviatoric part A - (tr A / 3) id (dim 3 only).
SymMatrix dev3(const SymMatrix& a);

/// Roots of x^3 - i1 x^2 + i2 x - i3, sorted descending. Uses the
/// trigonometric form of the depressed cubic with the acos argument
/// clamped to [-1,1], which stays stable near triple roots. Throws
/// std::domain_error for complex or non-positive roots.
std::array<double, 3> eigenvaluesFromInvariants(const Invariants& inv);

// ---- template definition ---------------------------------------------------

template <class F>
SymMatrix applyEigenFunction(const SymMatrix& a, F&& f, bool requireSpd) {
  SpectralDecomposition e = eigendecompose(a);
  std::array<double, 3> mapped{};
  for (int i = 0; i < e.dim; ++i) {
    if (requireSpd && e.eigenvalues[i] <= 0.0)
      throw std::domain_error("matrix function requires a positive-definite argument");
    mapped[i] = f(e.eigenvalues[i]);
  }
  return congruenceDiag(e.basis, std::span<const double>(mapped.data(), e.dim));
}

} // namespace coax

#endif
