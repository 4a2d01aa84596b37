#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coax/checks.hpp"
#include "coax/serialize.hpp"

#include <cmath>

using namespace coax;

namespace {

SymMatrix diag3(double a, double b, double c) {
  return SymMatrix::diagonal(std::array{a, b, c});
}

SampleSpec smallSpec(std::uint64_t seed, long count = 1000) {
  SampleSpec spec;
  spec.count = count;
  spec.seed = seed;
  return spec;
}

} // namespace

TEST_CASE("checkBE: order-reversing response fails, deviatoric holds") {
  // sigma_i = 1 - lambda_i^2 reverses the order at diag(4,1,1)
  const StateVerdict fails = checkBE(DirectIdMinusB{}, diag3(4, 1, 1));
  CHECK_FALSE(fails.holds);

  Rng rng(40);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 3> x{};
    for (double& v : x) v = rng.logUniform(0.2, 5.0);
    const SymMatrix b = congruenceDiag(rng.randomRotation(3), x);
    CHECK(checkBE(DirectDev3{}, b).holds);
  }

  CHECK_FALSE(checkBE(MarzanoCounterexample{}, diag3(9, 4, 1)).holds);
}

TEST_CASE("checkBEplus: strictness across clusters") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 3> x{};
    for (double& v : x) v = rng.logUniform(0.2, 5.0);
    const SymMatrix b = congruenceDiag(rng.randomRotation(3), x);
    CHECK(checkBEplus(DirectDev3{}, b).holds);
    CHECK(checkBEplus(QuadraticHencky{1.0, 0.0}, b).holds);
  }
  CHECK_FALSE(checkBEplus(DirectIdMinusB{}, diag3(4, 1, 1)).holds);
  // spherical state: no distinct pair, nothing to claim
  CHECK(checkBEplus(DirectIdMinusB{}, 2.0 * SymMatrix::identity(3)).holds);
}

TEST_CASE("checkETSS: sign conditions") {
  // with no volumetric part beta0 = 2/sqrt(i3) i2 c2 > 0 for c2 > 0
  const MooneyRivlinCompressible mr{1.0, 1.0, {}};
  const StateVerdict v = checkETSS(mr, diag3(4, 1, 1));
  CHECK_FALSE(v.holds);
  CHECK(v.margins[1] < 0); // -beta0 < 0

  // all three signs right at a compressed state with a stiff volumetric part
  const MooneyRivlinCompressible compressed{
      1.0, 0.01, {VolumetricPart::Kind::QuadraticLog, 10.0}};
  const StateVerdict holds = checkETSS(compressed, diag3(0.25, 0.2, 0.2));
  CHECK(holds.holds);

  // volumetric expansion drives beta0 positive for the quadratic Hencky model
  bool foundWitness = false;
  for (int i = 1; i <= 20 && !foundWitness; ++i) {
    const double l = 1.0 + 0.1 * i;
    const StateVerdict etss =
        checkETSS(QuadraticHencky{1.0, 0.0}, l * SymMatrix::identity(3));
    if (!etss.holds && etss.margins[1] < 0) foundWitness = true;
  }
  CHECK(foundWitness);
}

TEST_CASE("checkWETSS: holds for the Hencky family, skips spherical states") {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    std::array<double, 3> x{};
    for (double& v : x) v = rng.logUniform(0.2, 5.0);
    const SymMatrix b = congruenceDiag(rng.randomRotation(3), x);
    const StateVerdict q = checkWETSS(QuadraticHencky{1.0, 0.0}, b);
    const StateVerdict e = checkWETSS(ExponentialHencky{}, b);
    if (q.applicable) CHECK(q.holds);
    if (e.applicable) CHECK(e.holds);
  }
  const StateVerdict spherical =
      checkWETSS(QuadraticHencky{1.0, 0.0}, 2.0 * SymMatrix::identity(3));
  CHECK_FALSE(spherical.applicable);

  CHECK_FALSE(checkWETSS(DirectIdMinusB{}, diag3(4, 1, 1)).holds);
}

TEST_CASE("checkSemiInvertibility: catalog responses reconstruct") {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, 3> x{};
    for (double& v : x) v = rng.logUniform(0.3, 4.0);
    const SymMatrix b = congruenceDiag(rng.randomRotation(3), x);
    CHECK(checkSemiInvertibility(DirectDev3{}, b).holds);
    CHECK(checkSemiInvertibility(DirectIdMinusB{}, b).holds);
    CHECK(checkSemiInvertibility(QuadraticHencky{1.0, 0.0}, b).holds);
  }
}

TEST_CASE("non-bi-coaxial pair: collapse of distinct stretches refuses") {
  const SymMatrix b = diag3(3, 1, 0.5);
  const SymMatrix sigma =
      applyEigenFunction(b, [](double x) { return (x - 2.0) * (x - 2.0); }, false);
  CHECK_FALSE(isBicoaxial(b, sigma));
  CHECK_THROWS_AS(psiDirect(b, sigma), NotCoaxialError);
}

TEST_CASE("runInequalitySweep: witnesses replay and engines agree") {
  const ResponseModel model = DirectIdMinusB{};
  const SampleSpec spec = smallSpec(50, 500);
  const CheckReport serial =
      runInequalitySweep(model, Inequality::BE, spec, Exec::Serial);
  const CheckReport parallel =
      runInequalitySweep(model, Inequality::BE, spec, Exec::OpenMP);
  CHECK_FALSE(serial.holds);
  REQUIRE(!serial.witnesses.empty());
  for (const Witness& w : serial.witnesses)
    CHECK(replayWitness(model, Inequality::BE, w));
  CHECK(toJson(serial).dump() == toJson(parallel).dump());
}

TEST_CASE("runInequalitySweep: weak empirical report carries uniform strictness") {
  const CheckReport r = runInequalitySweep(QuadraticHencky{1.0, 0.0},
                                           Inequality::WETSS, smallSpec(51, 500));
  CHECK(r.holds);
  CHECK(r.hasUniformInfo);
  // for the quadratic Hencky model both coefficients stay strict away from
  // the spherical axis
  CHECK(r.uniformStrictMinus);
  CHECK(r.uniformStrictPlus);
  CHECK(r.samplesSkipped > 0); // the volumetric grid is excluded
}

TEST_CASE("implicationAudit: chain sound for the Hencky model") {
  const ChainReport r =
      implicationAudit(QuadraticHencky{1.0, 0.0}, smallSpec(52, 1000));
  CHECK(r.violations.empty());
  REQUIRE(r.properties.size() == 6);
  CHECK(r.properties[1].holds);        // BE+
  CHECK_FALSE(r.properties[2].holds);  // E-TSS fails (volumetric grid)
  CHECK(r.properties[3].holds);        // WE-TSS
  CHECK(r.properties[4].holds);        // bi-coaxial
  CHECK(r.properties[5].holds);        // semi-invertible
}

TEST_CASE("implicationAudit: non-implication notes for the two direct models") {
  const ChainReport inv = implicationAudit(DirectIdMinusB{}, smallSpec(53, 500));
  CHECK(inv.violations.empty());
  REQUIRE(!inv.notes.empty());
  CHECK(inv.notes.front().find("invertible") != std::string::npos);

  const ChainReport dev = implicationAudit(DirectDev3{}, smallSpec(54, 500));
  CHECK(dev.violations.empty());
  REQUIRE(!dev.notes.empty());
  CHECK(dev.notes.front().find("not") != std::string::npos);
}

TEST_CASE("implicationAudit: serial and OpenMP produce identical reports") {
  const SampleSpec spec = smallSpec(55, 800);
  for (const ResponseModel& model :
       {ResponseModel{QuadraticHencky{1.0, 0.0}}, ResponseModel{MarzanoCounterexample{}}}) {
    const ChainReport a = implicationAudit(model, spec, Exec::Serial);
    const ChainReport b = implicationAudit(model, spec, Exec::OpenMP);
    CHECK(toJson(a).dump() == toJson(b).dump());
  }
}

TEST_CASE("weak empirical inequalities force strict Baker-Ericksen per state") {
  Rng rng(56);
  for (const ResponseModel& model : catalogModels()) {
    for (int trial = 0; trial < 200; ++trial) {
      std::array<double, 3> x{};
      for (double& v : x) v = rng.logUniform(0.2, 5.0);
      const SymMatrix b = congruenceDiag(rng.randomRotation(3), x);
      const StateVerdict wetss = checkWETSS(model, b);
      if (!wetss.applicable || !wetss.holds) continue;
      CHECK(checkBEplus(model, b).holds);
    }
  }
}

TEST_CASE("weak empirical verdict matches the energy-derivative signs") {
  Rng rng(57);
  for (const ResponseModel& model : catalogModels()) {
    if (!isHyperelastic(model)) continue;
    for (int trial = 0; trial < 200; ++trial) {
      std::array<double, 3> x{};
      for (double& v : x) v = rng.logUniform(0.2, 5.0);
      const SymMatrix b = congruenceDiag(rng.randomRotation(3), x);
      const StateVerdict wetss = checkWETSS(model, b);
      if (!wetss.applicable) continue;
      const DerivativeTriple d =
          invariantDerivatives(model, b, DerivativeScheme::Analytic);
      const double band = 1e-10 * (1.0 + std::max(std::abs(d.dW_dI1),
                                                  std::abs(d.dW_dI2)));
      const bool derivativeVerdict = d.dW_dI1 >= -band && d.dW_dI2 >= -band &&
                                     (d.dW_dI1 > band || d.dW_dI2 > band);
      INFO(modelTag(model));
      CHECK(wetss.holds == derivativeVerdict);
    }
  }
}

TEST_CASE("ssliCheck: fixed pairs") {
  const SsliResult r = ssliCheck({1, 1, 1}, {2, 1, 0.5});
  CHECK(r.hypothesesHold);
  CHECK(r.conclusionHolds);
  CHECK(r.strict);
  const double expected = 2.0 * std::log(2.0) * std::log(2.0);
  CHECK(r.conclusionMargin == doctest::Approx(expected));

  const SsliResult eq = ssliCheck({2, 1, 0.5}, {2, 1, 0.5});
  CHECK(eq.hypothesesHold);
  CHECK(eq.conclusionHolds);
  CHECK_FALSE(eq.strict);
  CHECK(eq.conclusionMargin == doctest::Approx(0.0));

  CHECK_THROWS_AS(ssliCheck({1, -1, 1}, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("ssli generator satisfies the hypotheses; fuzz finds no violation") {
  Rng rng(58);
  for (int trial = 0; trial < 2000; ++trial) {
    const SsliPair p = ssliGeneratePair(rng);
    CHECK(ssliCheck(p.a, p.b).hypothesesHold);
  }
  const SsliFuzzReport fuzz = ssliFuzz(10000, 59);
  CHECK(fuzz.hypothesisHolds == fuzz.trials);
  CHECK(fuzz.conclusionViolations == 0);
  CHECK(fuzz.strictnessMisses == 0);
}

TEST_CASE("volumetricEtssProbe: unbounded volumetric response exceeds the bound") {
  std::vector<double> grid;
  for (double l = 1.1; l < 120.0; l *= 1.15) grid.push_back(l);

  const IsoVolSplit model{1.0, 1.0, {VolumetricPart::Kind::QuadraticLog, 1.0}};
  const VolumetricProbeReport r = volumetricEtssProbe(model, grid);
  CHECK(r.bound == doctest::Approx(3.0));
  REQUIRE(r.firstExceeded.has_value());
  // g(l) = (3 kappa / 4) log l crosses c1 + 2 c2 = 3 at l = e^4
  CHECK(*r.firstExceeded > std::exp(4.0) / 1.2);
  CHECK(*r.firstExceeded < std::exp(4.0) * 1.2);
  CHECK(r.pressureMonotone);
  for (const auto& [l, g] : r.samples)
    CHECK(g == doctest::Approx(0.75 * std::log(l)).epsilon(1e-10));

  const IsoVolSplit noVol{1.0, 1.0, {}};
  const VolumetricProbeReport flat = volumetricEtssProbe(noVol, grid);
  CHECK_FALSE(flat.firstExceeded.has_value());
  CHECK_FALSE(flat.pressureMonotone); // f == 0 has no pressure growth
}

TEST_CASE("volumetric probe point carries positive beta0 for the split model") {
  const IsoVolSplit model{1.0, 1.0, {VolumetricPart::Kind::QuadraticLog, 1.0}};
  const double l = std::exp(4.0) * 1.1; // beyond the crossing
  const BetaCoefficients beta =
      betaCoefficients(model, l * SymMatrix::identity(3));
  CHECK(beta.beta0 > 0.0);
}

TEST_CASE("solveUniaxialTension: counterexample inverts to a simple extension") {
  const PrincipalState v = solveUniaxialTension(MarzanoCounterexample{}, 0.5);
  CHECK(v.lambdas[0] == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(v.lambdas[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(v.lambdas[2] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(uniaxialResidual(MarzanoCounterexample{}, v.lambdas, 0.5) <= 1e-10);
}

TEST_CASE("solveUniaxialTension: reference state at zero load") {
  const PrincipalState v = solveUniaxialTension(QuadraticHencky{1.0, 0.0}, 0.0);
  CHECK(v.lambdas[0] == doctest::Approx(1.0));
  CHECK(v.lambdas[1] == doctest::Approx(1.0));
  CHECK(v.lambdas[2] == doctest::Approx(1.0));
}

TEST_CASE("solveUniaxialTension: Hencky tension stretches axially, contracts laterally") {
  const PrincipalState v = solveUniaxialTension(QuadraticHencky{1.0, 0.5}, 0.3);
  CHECK(uniaxialResidual(QuadraticHencky{1.0, 0.5}, v.lambdas, 0.3) <= 1e-10);
  CHECK(v.lambdas[0] > 1.0);
  CHECK(v.lambdas[1] == doctest::Approx(v.lambdas[2]).epsilon(1e-9));
  CHECK(v.lambdas[1] < 1.0);
}

TEST_CASE("counterexampleSuite: every fixed example confirms") {
  const RegressionReport r = counterexampleSuite();
  for (const RegressionCase& c : r.cases) {
    INFO(c.id << ": " << c.detail);
    CHECK(c.pass);
  }
  CHECK(r.allPass);
  CHECK(r.cases.size() == 6);
}
