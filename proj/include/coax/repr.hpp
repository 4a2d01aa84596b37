#ifndef COAX_REPR_HPP
#define COAX_REPR_HPP

#include "coax/symmat.hpp"

namespace coax {

/// Power-basis coefficients of a coaxial representation
/// B = gamma[0] id + gamma[1] A + gamma[2] A^2. Coefficients beyond the
/// number of distinct eigenvalues of the generator are zero (minimal
/// polynomial degree convention).
struct GammaCoefficients {
  std::array<double, 3> gamma{};
  bool illConditioned = false;   // Vandermonde condition estimate above 1e12
  double conditionEstimate = 1.0;
};

/// Coefficients of sigma = beta0 id + beta1 B + betaMinus1 B^-1.
struct BetaCoefficients {
  double betaMinus1 = 0, beta0 = 0, beta1 = 0;
};

/// Coefficients of the semi-inversion B = psi0 id + psi1 sigma + psi2 sigma^2.
/// When produced by psiFromBeta, `printedFormulaAgrees` records whether the
/// closed-form coefficient expressions matched the direct solve, and
/// `printedFormulaResidual` the relative reconstruction residual of the
/// closed-form values.
struct PsiCoefficients {
  double psi0 = 0, psi1 = 0, psi2 = 0;
  bool printedFormulaAgrees = true;
  double printedFormulaResidual = 0.0;
};

/// Solve for the power-basis coefficients of B over A. Requires A coaxial
/// to B (throws NotCoaxialError otherwise). The Vandermonde system is set
/// up on the distinct (clustered) eigenvalues of A only; an ill-conditioned
/// system attaches a warning to the result instead of failing.
GammaCoefficients gammaCoefficients(const SymMatrix& a, const SymMatrix& b,
                                    double clusterTol = tol::kClusterRel);

/// Convert power-basis coefficients to the {B^-1, id, B} basis using
/// B^2 = i1 B - i2 id + i3 B^-1. Requires dim 3 and i3 != 0.
BetaCoefficients betaFromGamma(const GammaCoefficients& g, const Invariants& inv);

/// Semi-inversion coefficients from the stress-response coefficients via
/// the closed-form expressions in terms of the invariants of B. The result
/// is validated against the independent direct solve on a diagonal
/// representative; on disagreement the direct-solve values are returned and
/// the discrepancy flagged. Throws std::domain_error when betaMinus1 = 0 or
/// the normalizing factor vanishes (callers should use psiDirect then).
PsiCoefficients psiFromBeta(const BetaCoefficients& b, const Invariants& inv);

/// Direct semi-inversion: Vandermonde solve of B over the distinct
/// eigenvalues of sigma. Requires sigma coaxial to B; the refusal
/// (NotCoaxialError) is exactly the failure of bi-coaxiality, i.e. of
/// semi-invertibility, at this point.
PsiCoefficients psiDirect(const SymMatrix& b, const SymMatrix& sigma,
                          double clusterTol = tol::kClusterRel);

} // namespace coax

#endif
