#ifndef COAX_CONSTITUTIVE_HPP
#define COAX_CONSTITUTIVE_HPP

#include "coax/repr.hpp"
#include "coax/symmat.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>

namespace coax {

/// Volumetric energy contribution f(i3) with f'(1) = 0 so the reference
/// configuration is stress free. QuadraticLog is f = kappa/8 (log i3)^2.
struct VolumetricPart {
  enum class Kind { None, QuadraticLog };
  Kind kind = Kind::None;
  double kappa = 1.0;

  double value(double i3) const;
  double derivative(double i3) const;
  bool operator==(const VolumetricPart&) const = default;
};

// ---- response model catalog ------------------------------------------------
// Hyperelastic models define an energy; Direct* models prescribe the stress
// response rule itself.

/// W = mu ||log U||^2 + lambda/2 (tr log U)^2, mu > 0, 3 lambda + 2 mu >= 0.
struct QuadraticHencky {
  double mu = 1.0;
  double lambda = 0.0;
};

/// W = mu/k exp(k ||dev3 log U||^2) + kappa/(2 khat) exp(khat (tr log U)^2),
/// all parameters positive.
struct ExponentialHencky {
  double mu = 1.0, k = 1.0, kappa = 1.0, khat = 1.0;
};

/// W = ||log U||^2.
struct LogNormSquared {};

/// W = f(||log U||^2) with f' > 0.
struct MonotoneOfLogNorm {
  std::string name = "exp";
  std::function<double(double)> f;
  std::function<double(double)> fprime;
};

/// W = w(||dev3 log U||^2, (tr log U)^2) with dw/dx1 > 0.
struct HenckyType {
  std::string name = "custom";
  std::function<double(double, double)> w;
  std::function<double(double, double)> dw_dx1;
  std::function<double(double, double)> dw_dx2;
};

/// W = mu/2 (i1 - 3) - mu/2 log(i3) + f(i3). The logarithmic term keeps
/// the reference configuration stress free for any f with f'(1) = 0.
struct NeoHookeCompressible {
  double mu = 1.0;
  VolumetricPart vol;
};

/// W = c1 (i1 - 3) + c2 (i2 - 3) + f(i3).
struct MooneyRivlinCompressible {
  double c1 = 1.0, c2 = 1.0;
  VolumetricPart vol;
};

/// Isochoric-volumetric split W = c1 (j1 - 3) + c2 (j2 - 3) + f(i3) with
/// j1 = i1 i3^(-1/3), j2 = i2 i3^(-2/3).
struct IsoVolSplit {
  double c1 = 1.0, c2 = 1.0;
  VolumetricPart vol;
};

/// sigma(B) = dev3 B. Satisfies the strict Baker-Ericksen inequalities but
/// is not injective (dev3 of any spherical tensor vanishes).
struct DirectDev3 {};

/// sigma(B) = id - B. Invertible but violates the Baker-Ericksen
/// inequalities everywhere off the spherical axis.
struct DirectIdMinusB {};

/// sigma(V) = (1 - h) V - id with h the squared-difference product of the
/// principal stretches. Uniaxial tension forces a simple extension, yet the
/// Baker-Ericksen inequalities fail at generic stretches.
struct MarzanoCounterexample {};

using ResponseModel =
    std::variant<QuadraticHencky, ExponentialHencky, LogNormSquared,
                 MonotoneOfLogNorm, HenckyType, NeoHookeCompressible,
                 MooneyRivlinCompressible, IsoVolSplit, DirectDev3,
                 DirectIdMinusB, MarzanoCounterexample>;

/// Principal stretches (eigenvalues of V = U) plus the orthogonal frame.
struct PrincipalState {
  std::array<double, 3> lambdas{1.0, 1.0, 1.0};
  Matrix basis = Matrix::identity(3);

  SymMatrix toB() const; // basis * diag(lambda^2) * basis^T
};

/// Partial derivatives of the energy with respect to the principal
/// invariants of B. `reducedAccuracy` is set when repeated stretches forced
/// the symmetric cluster-splitting fallback.
struct DerivativeTriple {
  double dW_dI1 = 0, dW_dI2 = 0, dW_dI3 = 0;
  bool reducedAccuracy = false;
};

enum class DerivativeScheme { Analytic, FiniteDifference };

bool isHyperelastic(const ResponseModel& model);
std::string modelTag(const ResponseModel& model);
/// Known invertibility of the stress response, where the catalog records it.
std::optional<bool> modelInvertible(const ResponseModel& model);

/// Validate parameter constraints; throws std::invalid_argument on violation.
void validateModel(const ResponseModel& model);

/// Energy of a hyperelastic model at the given principal stretches.
/// Throws std::invalid_argument for direct response models.
double energy(const ResponseModel& model, const PrincipalState& state);

/// Cauchy stress for B in PSym(3). Hyperelastic models are evaluated in
/// principal axes via sigma_i = lambda_i / J * dW/dlambda_i and assembled
/// in the eigenbasis of B.
SymMatrix cauchyStress(const ResponseModel& model, const SymMatrix& b);

/// dW/dI for a hyperelastic model. The finite-difference scheme central-
/// differences W in the principal stretches and solves the 3x3 system
/// [dI_k/dlambda_i] (dW/dI) = dW/dlambda; repeated stretches within the
/// cluster tolerance are split symmetrically (reduced accuracy, flagged).
/// The analytic scheme uses closed forms for the invariant-polynomial
/// models and the log-strain-measure decomposition for the Hencky family.
DerivativeTriple invariantDerivatives(const ResponseModel& model,
                                      const SymMatrix& b,
                                      DerivativeScheme scheme);

/// Stress-response coefficients: for hyperelastic models the invariant-
/// derivative formulas beta1 = 2/sqrt(i3) dW/dI1 etc.; for direct models
/// the power-basis route through gammaCoefficients and betaFromGamma.
BetaCoefficients betaCoefficients(const ResponseModel& model, const SymMatrix& b);

/// Average deformed length of unit vectors, sqrt(tr B / 3).
double averageDeformedLength(const SymMatrix& b);

/// Principal stresses for given principal stretches, in the order the
/// stretches are passed (no sorting).
std::array<double, 3> principalStresses(const ResponseModel& model,
                                        const std::array<double, 3>& lambdas);

/// Principal stresses paired with descending principal stretches:
/// diag entries of sigma in the eigenbasis of B.
struct PrincipalPair {
  std::array<double, 3> lambdas{}; // descending stretches
  std::array<double, 3> sigmas{};  // corresponding principal stresses
};
PrincipalPair principalStressPairs(const ResponseModel& model, const SymMatrix& b);

// Named factories for the function-valued catalog members.
MonotoneOfLogNorm makeExpOfLogNorm();
/// w(x1, x2) = x1 + x1^2/2 + x2/2, a generic member of the Hencky-type
/// family with dw/dx1 = 1 + x1 > 0.
HenckyType makePolyHenckyType();

} // namespace coax

#endif
