#include "coax/repr.hpp"

#include <cmath>
#include <limits>

namespace coax {

namespace {

// Gaussian elimination with partial pivoting, m <= 3.
std::array<double, 3> solveSmall(int m, double mat[3][3], std::array<double, 3> rhs) {
  for (int c = 0; c < m; ++c) {
    int piv = c;
    for (int r = c + 1; r < m; ++r)
      if (std::abs(mat[r][c]) > std::abs(mat[piv][c])) piv = r;
    if (mat[piv][c] == 0.0)
      throw std::domain_error("singular linear system");
    if (piv != c) {
      for (int k = 0; k < m; ++k) std::swap(mat[c][k], mat[piv][k]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (int r = c + 1; r < m; ++r) {
      const double f = mat[r][c] / mat[c][c];
      for (int k = c; k < m; ++k) mat[r][k] -= f * mat[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::array<double, 3> x{};
  for (int r = m - 1; r >= 0; --r) {
    double s = rhs[r];
    for (int k = r + 1; k < m; ++k) s -= mat[r][k] * x[k];
    x[r] = s / mat[r][r];
  }
  return x;
}

double norm1(int m, const double mat[3][3]) {
  double best = 0;
  for (int c = 0; c < m; ++c) {
    double s = 0;
    for (int r = 0; r < m; ++r) s += std::abs(mat[r][c]);
    best = std::max(best, s);
  }
  return best;
}

// 1-norm condition number via the explicit inverse (m <= 3).
double conditionEstimate1(int m, const double mat[3][3]) {
  double inv[3][3] = {};
  double work[3][3];
  for (int col = 0; col < m; ++col) {
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) work[r][c] = mat[r][c];
    std::array<double, 3> e{};
    e[col] = 1.0;
    std::array<double, 3> x;
    try {
      x = solveSmall(m, work, e);
    } catch (const std::domain_error&) {
      return std::numeric_limits<double>::infinity();
    }
    for (int r = 0; r < m; ++r) inv[r][col] = x[r];
  }
  return norm1(m, mat) * norm1(m, inv);
}

struct VandermondeResult {
  std::array<double, 3> coeff{}; // zero-padded to degree 2
  double condition = 1.0;
};

// Fit rhs_r = sum_k coeff[k] * nodes_r^k over m distinct nodes. The system
// is solved on nodes scaled by their largest magnitude and the coefficients
// unscaled afterwards; the reported condition estimate refers to the raw
// system.
VandermondeResult solveVandermonde(int m, const std::array<double, 3>& nodes,
                                   const std::array<double, 3>& rhs) {
  double raw[3][3];
  for (int r = 0; r < m; ++r) {
    double p = 1.0;
    for (int c = 0; c < m; ++c) {
      raw[r][c] = p;
      p *= nodes[r];
    }
  }
  VandermondeResult out;
  out.condition = conditionEstimate1(m, raw);

  double scale = 1.0;
  for (int r = 0; r < m; ++r) scale = std::max(scale, std::abs(nodes[r]));
  double mat[3][3];
  for (int r = 0; r < m; ++r) {
    double p = 1.0;
    for (int c = 0; c < m; ++c) {
      mat[r][c] = p;
      p *= nodes[r] / scale;
    }
  }
  std::array<double, 3> rhsCopy = rhs;
  const std::array<double, 3> scaled = solveSmall(m, mat, rhsCopy);
  double unscale = 1.0;
  for (int k = 0; k < m; ++k) {
    out.coeff[k] = scaled[k] / unscale;
    unscale *= scale;
  }
  return out;
}

// Cluster representatives (means) of corresponding value pairs.
void clusterMeans(const SimultaneousDiagonalization& sd, int& m,
                  std::array<double, 3>& nodes, std::array<double, 3>& values) {
  m = static_cast<int>(sd.clusters.size());
  for (int g = 0; g < m; ++g) {
    double sa = 0, sb = 0;
    for (int idx : sd.clusters[g]) {
      sa += sd.a[idx];
      sb += sd.b[idx];
    }
    const double inv = 1.0 / static_cast<double>(sd.clusters[g].size());
    nodes[g] = sa * inv;
    values[g] = sb * inv;
  }
}

double relativeResidual(const SymMatrix& b, const SymMatrix& sigma,
                        double p0, double p1, double p2) {
  const SymMatrix rec = p0 * SymMatrix::identity(b.dim()) + p1 * sigma +
                        p2 * symSquare(sigma);
  return (b - rec).frobeniusNorm() / std::max(b.frobeniusNorm(), 1e-300);
}

} // namespace

GammaCoefficients gammaCoefficients(const SymMatrix& a, const SymMatrix& b,
                                    double clusterTol) {
  if (!isCoaxial(a, b, clusterTol))
    throw NotCoaxialError("gammaCoefficients: first argument is not coaxial to second");
  const SimultaneousDiagonalization sd = simultaneousDiagonalize(a, b, clusterTol);

  int m = 0;
  std::array<double, 3> nodes{}, values{};
  clusterMeans(sd, m, nodes, values);
  const VandermondeResult v = solveVandermonde(m, nodes, values);

  GammaCoefficients out;
  out.gamma = v.coeff;
  out.conditionEstimate = v.condition;
  out.illConditioned = v.condition > tol::kVandermondeCondWarn;
  return out;
}

BetaCoefficients betaFromGamma(const GammaCoefficients& g, const Invariants& inv) {
  if (inv.i3 == 0.0)
    throw std::invalid_argument("betaFromGamma: i3 must be nonzero");
  BetaCoefficients b;
  b.beta1 = g.gamma[1] + g.gamma[2] * inv.i1;
  b.beta0 = g.gamma[0] - g.gamma[2] * inv.i2;
  b.betaMinus1 = g.gamma[2] * inv.i3;
  return b;
}

PsiCoefficients psiDirect(const SymMatrix& b, const SymMatrix& sigma,
                          double clusterTol) {
  if (!isCoaxial(sigma, b, clusterTol))
    throw NotCoaxialError(
        "psiDirect: stress is not coaxial to stretch (not semi-invertible here)");
  const SimultaneousDiagonalization sd =
      simultaneousDiagonalize(sigma, b, clusterTol);

  int m = 0;
  std::array<double, 3> nodes{}, values{};
  clusterMeans(sd, m, nodes, values);
  const VandermondeResult v = solveVandermonde(m, nodes, values);

  PsiCoefficients out;
  out.psi0 = v.coeff[0];
  out.psi1 = v.coeff[1];
  out.psi2 = v.coeff[2];
  return out;
}

PsiCoefficients psiFromBeta(const BetaCoefficients& b, const Invariants& inv) {
  const double bm = b.betaMinus1, b0 = b.beta0, b1 = b.beta1;
  const double scale = 1.0 + std::abs(bm) + std::abs(b0) + std::abs(b1);
  if (std::abs(bm) <= 1e-14 * scale)
    throw std::domain_error("psiFromBeta: betaMinus1 = 0 is degenerate; use psiDirect");

  const double tA1 = inv.i1 * b1 * b1;
  const double tA2 = -inv.i3 * b1 * b1 * b1 / bm;
  const double tA3 = bm * bm / inv.i3;
  const double tA4 = -(inv.i2 / inv.i3) * b1 * bm;
  const double normalizer = tA1 + tA2 + tA3 + tA4;
  const double aScale = std::max(
      {1e-300, std::abs(tA1), std::abs(tA2), std::abs(tA3), std::abs(tA4)});
  if (std::abs(normalizer) <= 1e-12 * aScale)
    throw std::domain_error(
        "psiFromBeta: normalizing factor vanishes; use psiDirect");

  const double psi0p =
      (b0 * b0 - 2.0 * bm * b1 + inv.i2 * b1 * b1 +
       inv.i3 * b0 * b1 * b1 / bm + inv.i1 * bm * bm +
       (inv.i2 / inv.i3) * b0 * bm) /
      normalizer;
  const double psi1p = -(2.0 * b0 + inv.i3 * b1 * b1 / bm +
                         (inv.i2 / inv.i3) * bm) /
                       normalizer;
  const double psi2p = 1.0 / normalizer;

  // validate on a diagonal representative reconstructed from the invariants
  const std::array<double, 3> x = eigenvaluesFromInvariants(inv);
  const SymMatrix bRep = SymMatrix::diagonal(x);
  std::array<double, 3> s{};
  for (int i = 0; i < 3; ++i) s[i] = b0 + b1 * x[i] + bm / x[i];
  const SymMatrix sigmaRep = SymMatrix::diagonal(s);

  PsiCoefficients direct = psiDirect(bRep, sigmaRep);
  const double printedResidual =
      relativeResidual(bRep, sigmaRep, psi0p, psi1p, psi2p);

  if (printedResidual <= tol::kReconstructRel) {
    PsiCoefficients out;
    out.psi0 = psi0p;
    out.psi1 = psi1p;
    out.psi2 = psi2p;
    out.printedFormulaAgrees = true;
    out.printedFormulaResidual = printedResidual;
    return out;
  }
  direct.printedFormulaAgrees = false;
  direct.printedFormulaResidual = printedResidual;
  return direct;
}

} // namespace coax
