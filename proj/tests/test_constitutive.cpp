#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coax/constitutive.hpp"
#include "coax/sampling.hpp"
#include "coax/serialize.hpp"

#include <cmath>

using namespace coax;

namespace {

SymMatrix diag3(double a, double b, double c) {
  return SymMatrix::diagonal(std::array{a, b, c});
}

PrincipalState state(double l1, double l2, double l3) {
  PrincipalState s;
  s.lambdas = {l1, l2, l3};
  return s;
}

SymMatrix randomSpd(Rng& rng, double lo = 0.2, double hi = 5.0) {
  std::array<double, 3> lam{};
  for (double& l : lam) l = rng.logUniform(lo, hi);
  const std::array<double, 3> x{lam[0] * lam[0], lam[1] * lam[1], lam[2] * lam[2]};
  return congruenceDiag(rng.randomRotation(3), x);
}

} // namespace

TEST_CASE("energy: reference state, log-norm, and the Lame form") {
  CHECK(energy(QuadraticHencky{1.0, 0.0}, state(1, 1, 1)) == doctest::Approx(0.0));
  CHECK(energy(LogNormSquared{}, state(std::exp(1.0), 1, 1)) == doctest::Approx(1.0));
  // mu sum(log l)^2 + lambda/2 (sum log l)^2 = 3 + 9 = 12 at l = (e,e,e)
  CHECK(energy(QuadraticHencky{1.0, 2.0},
               state(std::exp(1.0), std::exp(1.0), std::exp(1.0))) ==
        doctest::Approx(12.0));
  CHECK_THROWS_AS(energy(DirectDev3{}, state(1, 1, 1)), std::invalid_argument);
}

TEST_CASE("cauchyStress: stress-free reference and uniaxial log stress") {
  const SymMatrix zero = cauchyStress(QuadraticHencky{1.0, 0.0}, SymMatrix::identity(3));
  CHECK(zero.frobeniusNorm() == doctest::Approx(0.0).epsilon(1e-14));

  // sigma_i = (2 mu log l_i + lambda tr log U) / J at B = diag(e^2, 1, 1)
  const SymMatrix sigma =
      cauchyStress(QuadraticHencky{1.0, 0.0}, diag3(std::exp(2.0), 1.0, 1.0));
  CHECK(sigma(0, 0) == doctest::Approx(2.0 / std::exp(1.0)));
  CHECK(sigma(1, 1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(sigma(2, 2) == doctest::Approx(0.0).epsilon(1e-14));

  CHECK_THROWS_AS(cauchyStress(QuadraticHencky{}, diag3(1, -1, 1)), std::domain_error);
}

TEST_CASE("cauchyStress: uniaxial-tension counterexample reverses the order") {
  // V = diag(3,2,1): weight h = (1*2*1)^2 * ... = 4, sigma = -3V - id
  const SymMatrix b = diag3(9, 4, 1);
  const SymMatrix sigma = cauchyStress(MarzanoCounterexample{}, b);
  CHECK(sigma(0, 0) == doctest::Approx(-10.0));
  CHECK(sigma(1, 1) == doctest::Approx(-7.0));
  CHECK(sigma(2, 2) == doctest::Approx(-4.0));
  // largest stretch carries the smallest stress
  CHECK(sigma(0, 0) < sigma(1, 1));
}

TEST_CASE("invariantDerivatives: closed forms for the polynomial models") {
  const SymMatrix b = diag3(4, 1, 1);
  const MooneyRivlinCompressible mr{2.0, 0.5, {}};
  const DerivativeTriple d = invariantDerivatives(mr, b, DerivativeScheme::Analytic);
  CHECK(d.dW_dI1 == doctest::Approx(2.0));
  CHECK(d.dW_dI2 == doctest::Approx(0.5));
  CHECK(d.dW_dI3 == doctest::Approx(0.0));

  const NeoHookeCompressible nh{3.0, {VolumetricPart::Kind::QuadraticLog, 2.0}};
  const Invariants inv = invariants(b);
  const DerivativeTriple dn = invariantDerivatives(nh, b, DerivativeScheme::Analytic);
  CHECK(dn.dW_dI1 == doctest::Approx(1.5));
  CHECK(dn.dW_dI3 == doctest::Approx(-3.0 / (2.0 * inv.i3) +
                                     2.0 / 4.0 * std::log(inv.i3) / inv.i3));

  CHECK_THROWS_AS(invariantDerivatives(DirectDev3{}, b, DerivativeScheme::Analytic),
                  std::invalid_argument);
}

TEST_CASE("invariantDerivatives: log-strain measures increase in i1 and i2") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const SymMatrix b = randomSpd(rng);
    const SpectralDecomposition e = eigendecompose(b);
    if (e.clusters.size() < 3) continue;
    const DerivativeTriple d =
        invariantDerivatives(LogNormSquared{}, b, DerivativeScheme::Analytic);
    CHECK(d.dW_dI1 > 0.0);
    CHECK(d.dW_dI2 > 0.0);
  }
}

TEST_CASE("invariantDerivatives: analytic and finite differences agree") {
  Rng rng(32);
  const std::vector<ResponseModel> models = catalogModels();
  for (const ResponseModel& model : models) {
    if (!isHyperelastic(model)) continue;
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
      // moderate stretches keep the energies in a well-scaled range for
      // the finite differences
      const SymMatrix b = randomSpd(rng, 0.6, 1.8);
      const DerivativeTriple da =
          invariantDerivatives(model, b, DerivativeScheme::Analytic);
      const DerivativeTriple df =
          invariantDerivatives(model, b, DerivativeScheme::FiniteDifference);
      const double scale = 1.0 + std::abs(da.dW_dI1) + std::abs(da.dW_dI2) +
                           std::abs(da.dW_dI3);
      worst = std::max({worst, std::abs(da.dW_dI1 - df.dW_dI1) / scale,
                        std::abs(da.dW_dI2 - df.dW_dI2) / scale,
                        std::abs(da.dW_dI3 - df.dW_dI3) / scale});
    }
    INFO(modelTag(model));
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("invariantDerivatives: repeated stretches fall back with a flag") {
  const QuadraticHencky model{1.0, 0.0};
  const DerivativeTriple da = invariantDerivatives(
      model, 2.0 * SymMatrix::identity(3), DerivativeScheme::Analytic);
  CHECK(da.reducedAccuracy);
  // continuity: the fallback value matches a nearby non-degenerate state
  const DerivativeTriple nearby = invariantDerivatives(
      model, diag3(2.001, 2.0, 1.999), DerivativeScheme::Analytic);
  CHECK_FALSE(nearby.reducedAccuracy);
  CHECK(da.dW_dI1 == doctest::Approx(nearby.dW_dI1).epsilon(1e-2));
  CHECK(da.dW_dI2 == doctest::Approx(nearby.dW_dI2).epsilon(1e-2));

  const DerivativeTriple df = invariantDerivatives(
      model, 2.0 * SymMatrix::identity(3), DerivativeScheme::FiniteDifference);
  CHECK(df.reducedAccuracy);
  CHECK(df.dW_dI1 == doctest::Approx(da.dW_dI1).epsilon(5e-2));
}

TEST_CASE("betaCoefficients: dev3 has beta = (0, -i1/3, 1)") {
  const SymMatrix b = diag3(4, 2, 1);
  const BetaCoefficients beta = betaCoefficients(DirectDev3{}, b);
  CHECK(beta.betaMinus1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(beta.beta0 == doctest::Approx(-7.0 / 3.0));
  CHECK(beta.beta1 == doctest::Approx(1.0));
}

TEST_CASE("betaCoefficients: Mooney-Rivlin substitution at diag(4,1,1)") {
  const MooneyRivlinCompressible mr{1.0, 1.0, {}};
  const BetaCoefficients beta = betaCoefficients(mr, diag3(4, 1, 1));
  CHECK(beta.beta1 == doctest::Approx(1.0));        // 2 c1 / sqrt(i3), i3 = 4
  CHECK(beta.betaMinus1 == doctest::Approx(-4.0));  // -2 sqrt(i3) c2
}

TEST_CASE("betaCoefficients: reconstruction for a rotated Hencky state") {
  Rng rng(33);
  const Matrix q = rng.randomRotation(3);
  const SymMatrix b = congruenceDiag(q, std::array{4.0, 0.25, 1.0});
  const BetaCoefficients beta = betaCoefficients(QuadraticHencky{1.0, 0.0}, b);
  const SymMatrix sigma = cauchyStress(QuadraticHencky{1.0, 0.0}, b);
  const SymMatrix rec = beta.beta0 * SymMatrix::identity(3) + beta.beta1 * b +
                        beta.betaMinus1 * matInverse(b);
  CHECK((sigma - rec).frobeniusNorm() <= 1e-8 * (1.0 + sigma.frobeniusNorm()));
}

TEST_CASE("averageDeformedLength and the arithmetic-geometric bound") {
  CHECK(averageDeformedLength(SymMatrix::identity(3)) == doctest::Approx(1.0));
  CHECK(averageDeformedLength(diag3(4, 1, 1)) == doctest::Approx(std::sqrt(2.0)));

  Rng rng(34);
  for (int trial = 0; trial < 500; ++trial) {
    const SymMatrix b = randomSpd(rng);
    const double l2 = averageDeformedLength(b) * averageDeformedLength(b);
    CHECK(l2 >= std::cbrt(invariants(b).i3) - 1e-12);
  }
  // equality exactly on the spherical axis
  const SymMatrix spherical = 2.7 * SymMatrix::identity(3);
  CHECK(averageDeformedLength(spherical) * averageDeformedLength(spherical) ==
        doctest::Approx(std::cbrt(invariants(spherical).i3)));
}

TEST_CASE("property: hyperelastic stress equals its coefficient expansion") {
  Rng rng(35);
  for (const ResponseModel& model : catalogModels()) {
    if (!isHyperelastic(model)) continue;
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const SymMatrix b = randomSpd(rng);
      const SpectralDecomposition e = eigendecompose(b);
      if (e.clusters.size() < 3) continue;
      const SymMatrix sigma = cauchyStress(model, b);
      const BetaCoefficients beta = betaCoefficients(model, b);
      const SymMatrix rec = beta.beta0 * SymMatrix::identity(3) + beta.beta1 * b +
                            beta.betaMinus1 * matInverse(b);
      worst = std::max(worst, (sigma - rec).frobeniusNorm() /
                                  (1.0 + sigma.frobeniusNorm()));
    }
    INFO(modelTag(model));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("property: stress responses are isotropic") {
  Rng rng(36);
  for (const ResponseModel& model : catalogModels()) {
    double worst = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const SymMatrix b = randomSpd(rng);
      const Matrix q = rng.randomRotation(3);
      // conjugated argument
      SymMatrix bq(3);
      {
        const Matrix m = q.transposed() * toMatrix(b) * q;
        bq = symmetrize(m);
      }
      const SymMatrix lhs = cauchyStress(model, bq);
      const Matrix rhsFull =
          q.transposed() * toMatrix(cauchyStress(model, b)) * q;
      const SymMatrix rhs = symmetrize(rhsFull);
      worst = std::max(worst, (lhs - rhs).frobeniusNorm() /
                                  (1.0 + rhs.frobeniusNorm()));
    }
    INFO(modelTag(model));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("property: stress-free reference for every hyperelastic model") {
  for (const ResponseModel& model : catalogModels()) {
    if (!isHyperelastic(model)) continue;
    // the plain polynomial Mooney-Rivlin form carries a reference pressure
    // 2 c1 + 4 c2; every other hyperelastic member is stress free at id
    if (std::holds_alternative<MooneyRivlinCompressible>(model)) {
      const SymMatrix ref = cauchyStress(model, SymMatrix::identity(3));
      CHECK(ref(0, 0) == doctest::Approx(6.0)); // c1 = c2 = 1
      continue;
    }
    INFO(modelTag(model));
    CHECK(cauchyStress(model, SymMatrix::identity(3)).frobeniusNorm() < 1e-12);
  }
}

TEST_CASE("model validation rejects bad parameters") {
  CHECK_THROWS_AS(validateModel(QuadraticHencky{-1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validateModel(QuadraticHencky{1.0, -10.0}), std::invalid_argument);
  CHECK_THROWS_AS(validateModel(ExponentialHencky{1.0, 0.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_NOTHROW(validateModel(QuadraticHencky{1.0, 0.0}));
}

TEST_CASE("model JSON round-trip") {
  for (const ResponseModel& model : catalogModels()) {
    const json j = modelToJson(model);
    const ResponseModel back = modelFromJson(j);
    CHECK(modelTag(back) == modelTag(model));
  }
  CHECK_THROWS_AS(makeModel("unknown", json::object()), std::invalid_argument);
}
