#ifndef COAX_CHECKS_HPP
#define COAX_CHECKS_HPP

#include "coax/constitutive.hpp"
#include "coax/sampling.hpp"

#include <optional>

namespace coax {

enum class Inequality { BE, BEplus, ETSS, WETSS, Bicoax, Semi };

std::string inequalityTag(Inequality ineq);
std::optional<Inequality> inequalityFromTag(const std::string& tag);

/// Outcome of one constitutive check at one state. `applicable` is false
/// when the definition excludes the state (spherical stretches for the
/// weak empirical inequalities). Margins are signed: the check holds when
/// every margin clears its band.
struct StateVerdict {
  bool applicable = true;
  bool holds = true;
  std::array<double, 3> margins{};
  int marginCount = 0;
  std::uint8_t strictFlags = 0; // per-margin strictness beyond the band
};

/// Baker-Ericksen: descending principal stretches must carry descending
/// principal stresses, within -kStrictBand*(1+scale) slack.
StateVerdict checkBE(const ResponseModel& model, const SymMatrix& b);

/// Strict Baker-Ericksen: strictly larger stretch (across eigenvalue
/// clusters) must carry strictly larger stress, margin above the band.
StateVerdict checkBEplus(const ResponseModel& model, const SymMatrix& b);

/// Empirical inequalities: betaMinus1 <= 0, beta0 <= 0, beta1 > 0.
StateVerdict checkETSS(const ResponseModel& model, const SymMatrix& b);

/// Weak empirical inequalities: betaMinus1 <= 0 and beta1 >= 0 with one
/// strict, away from spherical stretches (those are skipped).
StateVerdict checkWETSS(const ResponseModel& model, const SymMatrix& b);

/// Semi-invertibility at the state: B and sigma(B) bi-coaxial and the
/// direct semi-inversion reconstructs B within `tolerance` (relative).
StateVerdict checkSemiInvertibility(const ResponseModel& model, const SymMatrix& b,
                                    double tolerance = tol::kReconstructRel);

/// Bi-coaxiality of (B, sigma(B)).
bool stateBicoaxial(const ResponseModel& model, const SymMatrix& b);

/// A failure certificate: the state, the stress there, the margins that
/// broke the check, and a provenance note.
struct Witness {
  SymMatrix b;
  SymMatrix sigma;
  std::vector<double> margins;
  std::string note;
};

/// Sweep verdict for one inequality over random + structured states.
struct CheckReport {
  Inequality inequality = Inequality::BE;
  std::string model;
  bool holds = true; // holds-on-sample
  std::vector<Witness> witnesses;
  long samplesTested = 0;
  long samplesSkipped = 0;
  std::uint64_t seed = 0;
  // weak-empirical extras: whether one fixed coefficient was strict across
  // the whole sample (the uniform reading of the strictness requirement)
  bool hasUniformInfo = false;
  bool uniformStrictMinus = false;
  bool uniformStrictPlus = false;
};

CheckReport runInequalitySweep(const ResponseModel& model, Inequality ineq,
                               const SampleSpec& spec, Exec exec = Exec::OpenMP);

/// Re-evaluate a recorded witness; true when the original verdict
/// reproduces (the check still fails at the witness state).
bool replayWitness(const ResponseModel& model, Inequality ineq, const Witness& w);

/// Per-model audit of the implication chain
///   E-TSS => WE-TSS => BE+ => bi-coaxial <=> semi-invertible
/// over a seeded sample. Also records the catalog's two non-implication
/// witnesses: invertible without BE (id - B) and strict BE without
/// invertibility (dev3).
struct ChainViolation {
  std::string link;
  Witness witness;
};

struct PropertySummary {
  Inequality inequality = Inequality::BE;
  bool holds = true;
  long failures = 0;
  long skipped = 0;
  std::optional<Witness> witness;
};

struct ChainReport {
  std::string model;
  long samplesTested = 0;
  std::uint64_t seed = 0;
  std::vector<ChainViolation> violations; // empty = chain sound on sample
  std::vector<PropertySummary> properties; // BE, BE+, ETSS, WETSS, bicoax, semi
  std::vector<std::string> notes;
};

ChainReport implicationAudit(const ResponseModel& model, const SampleSpec& spec,
                             Exec exec = Exec::OpenMP);

/// Sum-of-squared-logarithms inequality at one pair of positive triples.
struct SsliResult {
  bool hypothesesHold = false;
  bool conclusionHolds = false;
  bool strict = false;
  double conclusionMargin = 0; // sum (log b)^2 - sum (log a)^2
};

SsliResult ssliCheck(const std::array<double, 3>& a, const std::array<double, 3>& b);

/// Constrained pair generator: b log-uniform, a shrunk toward the
/// geometric mean of b with the product preserved, which guarantees the
/// hypotheses by majorization.
struct SsliPair {
  std::array<double, 3> a{}, b{};
};
SsliPair ssliGeneratePair(Rng& rng, double lo = 0.2, double hi = 5.0);

/// True when the sorted triples differ beyond a 1e-12 relative band.
bool sortedTriplesDiffer(std::array<double, 3> a, std::array<double, 3> b);

struct SsliFuzzReport {
  long trials = 0;
  long hypothesisHolds = 0;
  long conclusionViolations = 0;
  long strictnessMisses = 0; // sorted triples differ but no strict margin
  double worstMargin = 0;    // smallest conclusion margin seen
};

SsliFuzzReport ssliFuzz(long trials, std::uint64_t seed, Exec exec = Exec::OpenMP);

/// Volumetric probe for isochorically-split energies: evaluates
/// g(l) = l^3 f'(l^3) along a grid of spherical expansions B = l id and
/// reports where it exceeds the constant bound dWiso/dJ1 + 2 dWiso/dJ2
/// at (3,3) (the point beyond which beta0 <= 0 cannot hold), plus whether
/// the pressure grows monotonically along the path.
struct VolumetricProbeReport {
  double bound = 0;
  std::optional<double> firstExceeded; // grid value of l, if any
  bool pressureMonotone = true;        // dW/dl > 0 for every grid l > 1
  std::vector<std::pair<double, double>> samples; // (l, g(l))
};

VolumetricProbeReport volumetricEtssProbe(const IsoVolSplit& model,
                                          std::span<const double> lambdaGrid);

/// Solve sigma(V) = diag(s, 0, 0) for the principal stretches by Newton
/// iteration with a finite-difference Jacobian, starting from the
/// reference state. Throws ConvergenceError after kNewtonMaxIter steps.
PrincipalState solveUniaxialTension(const ResponseModel& model, double s);

/// Residual of the uniaxial solve at a state (max-norm).
double uniaxialResidual(const ResponseModel& model,
                        const std::array<double, 3>& lambdas, double s);

/// Fixed literature examples: coaxiality asymmetry, the commuting
/// non-coaxial pair, the coaxial-but-not-isotropic 2x2 map, the dev3 and
/// id - B responses, and the uniaxial-tension counterexample.
struct RegressionCase {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct RegressionReport {
  std::vector<RegressionCase> cases;
  bool allPass = false;
};

RegressionReport counterexampleSuite();

} // namespace coax

#endif
