#include "coax/constitutive.hpp"

#include <cmath>

namespace coax {

namespace {

struct LogStrain {
  std::array<double, 3> e{};   // log lambda_i
  std::array<double, 3> dev{}; // e_i - tr/3
  double tr = 0;
  double devNormSq = 0; // ||dev3 log U||^2
  double trSq = 0;      // (tr log U)^2
};

LogStrain logStrain(const std::array<double, 3>& lambdas) {
  LogStrain ls;
  for (int i = 0; i < 3; ++i) {
    if (!(lambdas[i] > 0))
      throw std::domain_error("principal stretches must be positive");
    ls.e[i] = std::log(lambdas[i]);
    ls.tr += ls.e[i];
  }
  for (int i = 0; i < 3; ++i) {
    ls.dev[i] = ls.e[i] - ls.tr / 3.0;
    ls.devNormSq += ls.dev[i] * ls.dev[i];
  }
  ls.trSq = ls.tr * ls.tr;
  return ls;
}

Invariants invariantsFromSpectrum(const std::array<double, 3>& x) {
  Invariants inv;
  inv.i1 = x[0] + x[1] + x[2];
  inv.i2 = x[0] * x[1] + x[0] * x[2] + x[1] * x[2];
  inv.i3 = x[0] * x[1] * x[2];
  return inv;
}

// (dW/dx1, dW/dx2) at (x1, x2) = (||dev3 log U||^2, (tr log U)^2) for the
// Hencky-family tags; empty for other models.
std::optional<std::pair<double, double>>
henckyPartialPair(const ResponseModel& model, double x1, double x2) {
  if (const auto* m = std::get_if<QuadraticHencky>(&model))
    return std::make_pair(m->mu, m->mu / 3.0 + m->lambda / 2.0);
  if (const auto* m = std::get_if<ExponentialHencky>(&model))
    return std::make_pair(m->mu * std::exp(m->k * x1),
                          m->kappa / 2.0 * std::exp(m->khat * x2));
  if (std::holds_alternative<LogNormSquared>(model))
    return std::make_pair(1.0, 1.0 / 3.0);
  if (const auto* m = std::get_if<MonotoneOfLogNorm>(&model)) {
    const double fp = m->fprime(x1 + x2 / 3.0);
    return std::make_pair(fp, fp / 3.0);
  }
  if (const auto* m = std::get_if<HenckyType>(&model))
    return std::make_pair(m->dw_dx1(x1, x2), m->dw_dx2(x1, x2));
  return std::nullopt;
}

double energyLambdas(const ResponseModel& model,
                     const std::array<double, 3>& lambdas) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, QuadraticHencky>) {
          const LogStrain ls = logStrain(lambdas);
          const double normSq = ls.devNormSq + ls.trSq / 3.0;
          return m.mu * normSq + m.lambda / 2.0 * ls.trSq;
        } else if constexpr (std::is_same_v<T, ExponentialHencky>) {
          const LogStrain ls = logStrain(lambdas);
          return m.mu / m.k * std::exp(m.k * ls.devNormSq) +
                 m.kappa / (2.0 * m.khat) * std::exp(m.khat * ls.trSq);
        } else if constexpr (std::is_same_v<T, LogNormSquared>) {
          const LogStrain ls = logStrain(lambdas);
          return ls.devNormSq + ls.trSq / 3.0;
        } else if constexpr (std::is_same_v<T, MonotoneOfLogNorm>) {
          const LogStrain ls = logStrain(lambdas);
          return m.f(ls.devNormSq + ls.trSq / 3.0);
        } else if constexpr (std::is_same_v<T, HenckyType>) {
          const LogStrain ls = logStrain(lambdas);
          return m.w(ls.devNormSq, ls.trSq);
        } else if constexpr (std::is_same_v<T, NeoHookeCompressible>) {
          const Invariants inv = invariantsFromSpectrum(
              {lambdas[0] * lambdas[0], lambdas[1] * lambdas[1],
               lambdas[2] * lambdas[2]});
          return m.mu / 2.0 * (inv.i1 - 3.0) - m.mu / 2.0 * std::log(inv.i3) +
                 m.vol.value(inv.i3);
        } else if constexpr (std::is_same_v<T, MooneyRivlinCompressible>) {
          const Invariants inv = invariantsFromSpectrum(
              {lambdas[0] * lambdas[0], lambdas[1] * lambdas[1],
               lambdas[2] * lambdas[2]});
          return m.c1 * (inv.i1 - 3.0) + m.c2 * (inv.i2 - 3.0) +
                 m.vol.value(inv.i3);
        } else if constexpr (std::is_same_v<T, IsoVolSplit>) {
          const Invariants inv = invariantsFromSpectrum(
              {lambdas[0] * lambdas[0], lambdas[1] * lambdas[1],
               lambdas[2] * lambdas[2]});
          const double j1 = inv.i1 * std::pow(inv.i3, -1.0 / 3.0);
          const double j2 = inv.i2 * std::pow(inv.i3, -2.0 / 3.0);
          return m.c1 * (j1 - 3.0) + m.c2 * (j2 - 3.0) + m.vol.value(inv.i3);
        } else {
          throw std::invalid_argument(
              "energy: direct response models have no energy potential");
        }
      },
      model);
}

// Closed-form dW/dI for the invariant-polynomial models; empty otherwise.
std::optional<DerivativeTriple>
polynomialInvariantDerivs(const ResponseModel& model, const Invariants& inv) {
  if (const auto* m = std::get_if<NeoHookeCompressible>(&model)) {
    DerivativeTriple d;
    d.dW_dI1 = m->mu / 2.0;
    d.dW_dI2 = 0.0;
    d.dW_dI3 = -m->mu / (2.0 * inv.i3) + m->vol.derivative(inv.i3);
    return d;
  }
  if (const auto* m = std::get_if<MooneyRivlinCompressible>(&model)) {
    DerivativeTriple d;
    d.dW_dI1 = m->c1;
    d.dW_dI2 = m->c2;
    d.dW_dI3 = m->vol.derivative(inv.i3);
    return d;
  }
  if (const auto* m = std::get_if<IsoVolSplit>(&model)) {
    DerivativeTriple d;
    const double i3m13 = std::pow(inv.i3, -1.0 / 3.0);
    const double i3m23 = std::pow(inv.i3, -2.0 / 3.0);
    d.dW_dI1 = m->c1 * i3m13;
    d.dW_dI2 = m->c2 * i3m23;
    d.dW_dI3 = m->c1 * (-1.0 / 3.0) * inv.i1 * std::pow(inv.i3, -4.0 / 3.0) +
               m->c2 * (-2.0 / 3.0) * inv.i2 * std::pow(inv.i3, -5.0 / 3.0) +
               m->vol.derivative(inv.i3);
    return d;
  }
  return std::nullopt;
}

// Descending eigenvalues of B with SPD check.
std::array<double, 3> spdSpectrum(const SpectralDecomposition& e) {
  if (e.dim != 3)
    throw std::invalid_argument("stress evaluation requires dim 3");
  std::array<double, 3> x{e.eigenvalues[0], e.eigenvalues[1], e.eigenvalues[2]};
  if (!(x[2] > 0))
    throw std::domain_error("stretch tensor must be positive definite");
  return x;
}

// The invariant-derivative system degenerates linearly at a double and
// quadratically at a triple eigenvalue, so values this close get split
// symmetrically before the solve. The split width balances the roundoff
// amplification (~eps_rhs / delta^2 at a triple) against the O(delta)
// perturbation of the state: 1e-5 for exact right-hand sides, 1e-3 for
// central-difference ones.
constexpr double kSplitAnalytic = 1e-5;
constexpr double kSplitFd = 1e-3;

bool splitNearlyRepeated(std::array<double, 3>& x, double delta) {
  // x sorted descending; chain adjacent values within the relative band
  std::array<int, 3> group{0, 0, 0};
  for (int i = 1; i < 3; ++i) {
    const double band =
        std::max(1e-12, delta * std::max({1.0, std::abs(x[i - 1]), std::abs(x[i])}));
    group[i] = (x[i - 1] - x[i] <= band) ? group[i - 1] : group[i - 1] + 1;
  }
  bool split = false;
  if (group[2] == 0) { // triple
    x[0] *= 1.0 + delta;
    x[2] /= 1.0 + delta;
    split = true;
  } else if (group[0] == group[1]) { // upper pair
    x[0] *= 1.0 + delta;
    x[1] /= 1.0 + delta;
    split = true;
  } else if (group[1] == group[2]) { // lower pair
    x[1] *= 1.0 + delta;
    x[2] /= 1.0 + delta;
    split = true;
  }
  return split;
}

std::array<double, 3> solve3(double m[3][3], std::array<double, 3> rhs) {
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0)
      throw std::domain_error("singular invariant-derivative system");
    if (piv != c) {
      for (int k = 0; k < 3; ++k) std::swap(m[c][k], m[piv][k]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (int r = c + 1; r < 3; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 3; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::array<double, 3> out{};
  for (int r = 2; r >= 0; --r) {
    double s = rhs[r];
    for (int k = r + 1; k < 3; ++k) s -= m[r][k] * out[k];
    out[r] = s / m[r][r];
  }
  return out;
}

// Derivatives of the log-strain measure G = sum (log x_i)^2 with respect to
// the invariants, by solving [dI_k/dx_i] (dG/dI) = dG/dx_i exactly.
std::array<double, 3> logMeasureInvariantDerivs(const std::array<double, 3>& x) {
  double m[3][3];
  std::array<double, 3> rhs{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    m[i][0] = 1.0;
    m[i][1] = x[j] + x[k];
    m[i][2] = x[j] * x[k];
    rhs[i] = 2.0 * std::log(x[i]) / x[i];
  }
  return solve3(m, rhs);
}

// Hencky-family analytic derivatives. For k in {1,2} only the isochoric
// measure contributes (the trace term depends on i3 alone), so
// dW/dI_k = w_x1 * dG/dI_k / 4; the volumetric term enters dW/dI3 through
// d(log i3)^2/di3 = 2 log(i3)/i3.
DerivativeTriple henckyAnalyticDerivs(const ResponseModel& model,
                                      const SpectralDecomposition& e) {
  std::array<double, 3> x = spdSpectrum(e);
  DerivativeTriple out;
  out.reducedAccuracy = splitNearlyRepeated(x, kSplitAnalytic);

  const std::array<double, 3> g = logMeasureInvariantDerivs(x);
  const double i3 = x[0] * x[1] * x[2];
  const double logI3 = std::log(i3);
  const double dT = 2.0 * logI3 / i3;

  const double G = std::log(x[0]) * std::log(x[0]) +
                   std::log(x[1]) * std::log(x[1]) +
                   std::log(x[2]) * std::log(x[2]);
  const double x1 = (G - logI3 * logI3 / 3.0) / 4.0;
  const double x2 = logI3 * logI3 / 4.0;
  const auto partials = henckyPartialPair(model, x1, x2);
  if (!partials)
    throw std::invalid_argument("analytic derivatives unavailable for this model");
  const auto [w1, w2] = *partials;

  out.dW_dI1 = w1 * g[0] / 4.0;
  out.dW_dI2 = w1 * g[1] / 4.0;
  out.dW_dI3 = w1 * (g[2] - dT / 3.0) / 4.0 + w2 * dT / 4.0;
  return out;
}

DerivativeTriple finiteDifferenceDerivs(const ResponseModel& model,
                                        const SpectralDecomposition& e) {
  std::array<double, 3> x = spdSpectrum(e);
  DerivativeTriple out;
  out.reducedAccuracy = splitNearlyRepeated(x, kSplitFd);

  std::array<double, 3> lam{std::sqrt(x[0]), std::sqrt(x[1]), std::sqrt(x[2])};
  std::array<double, 3> dWdl{};
  for (int i = 0; i < 3; ++i) {
    const double h = std::max(tol::kFdStep, tol::kFdStep * lam[i]);
    std::array<double, 3> lp = lam, lm = lam;
    lp[i] += h;
    lm[i] -= h;
    dWdl[i] = (energyLambdas(model, lp) - energyLambdas(model, lm)) / (2.0 * h);
  }

  double m[3][3];
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    m[i][0] = 2.0 * lam[i];
    m[i][1] = 2.0 * lam[i] * (x[j] + x[k]);
    m[i][2] = 2.0 * lam[i] * x[j] * x[k];
  }
  const std::array<double, 3> d = solve3(m, dWdl);
  out.dW_dI1 = d[0];
  out.dW_dI2 = d[1];
  out.dW_dI3 = d[2];
  return out;
}

// dW/dlambda_i in principal axes, closed form per model.
std::array<double, 3> principalGradient(const ResponseModel& model,
                                        const std::array<double, 3>& lambdas) {
  const LogStrain ls = logStrain(lambdas);
  if (const auto hp = henckyPartialPair(model, ls.devNormSq, ls.trSq)) {
    const auto [w1, w2] = *hp;
    std::array<double, 3> g{};
    for (int i = 0; i < 3; ++i)
      g[i] = (w1 * 2.0 * ls.dev[i] + w2 * 2.0 * ls.tr) / lambdas[i];
    return g;
  }
  // invariant-polynomial models: chain rule through dI/dlambda
  const std::array<double, 3> x{lambdas[0] * lambdas[0],
                                lambdas[1] * lambdas[1],
                                lambdas[2] * lambdas[2]};
  const Invariants inv = invariantsFromSpectrum(x);
  const auto d = polynomialInvariantDerivs(model, inv);
  if (!d)
    throw std::invalid_argument("principal gradient unavailable for this model");
  std::array<double, 3> g{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    g[i] = d->dW_dI1 * 2.0 * lambdas[i] +
           d->dW_dI2 * 2.0 * lambdas[i] * (x[j] + x[k]) +
           d->dW_dI3 * 2.0 * lambdas[i] * x[j] * x[k];
  }
  return g;
}

double marzanoWeight(const std::array<double, 3>& lam) {
  const double d01 = lam[0] - lam[1];
  const double d02 = lam[0] - lam[2];
  const double d12 = lam[1] - lam[2];
  return d01 * d01 * d02 * d02 * d12 * d12;
}

} // namespace

// ---- VolumetricPart ----------------------------------------------------------

double VolumetricPart::value(double i3) const {
  switch (kind) {
    case Kind::None:
      return 0.0;
    case Kind::QuadraticLog: {
      const double l = std::log(i3);
      return kappa / 8.0 * l * l;
    }
  }
  return 0.0;
}

double VolumetricPart::derivative(double i3) const {
  switch (kind) {
    case Kind::None:
      return 0.0;
    case Kind::QuadraticLog:
      return kappa / 4.0 * std::log(i3) / i3;
  }
  return 0.0;
}

// ---- model metadata ----------------------------------------------------------

bool isHyperelastic(const ResponseModel& model) {
  return !(std::holds_alternative<DirectDev3>(model) ||
           std::holds_alternative<DirectIdMinusB>(model) ||
           std::holds_alternative<MarzanoCounterexample>(model));
}

std::string modelTag(const ResponseModel& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, QuadraticHencky>) return "quadratic-hencky";
        else if constexpr (std::is_same_v<T, ExponentialHencky>) return "exponential-hencky";
        else if constexpr (std::is_same_v<T, LogNormSquared>) return "log-norm-squared";
        else if constexpr (std::is_same_v<T, MonotoneOfLogNorm>) return "monotone-log-norm(" + m.name + ")";
        else if constexpr (std::is_same_v<T, HenckyType>) return "hencky-type(" + m.name + ")";
        else if constexpr (std::is_same_v<T, NeoHookeCompressible>) return "neo-hooke";
        else if constexpr (std::is_same_v<T, MooneyRivlinCompressible>) return "mooney-rivlin";
        else if constexpr (std::is_same_v<T, IsoVolSplit>) return "iso-vol-split";
        else if constexpr (std::is_same_v<T, DirectDev3>) return "dev3";
        else if constexpr (std::is_same_v<T, DirectIdMinusB>) return "id-minus-b";
        else return "marzano";
      },
      model);
}

std::optional<bool> modelInvertible(const ResponseModel& model) {
  if (std::holds_alternative<DirectIdMinusB>(model)) return true;
  if (std::holds_alternative<DirectDev3>(model)) return false;
  if (std::holds_alternative<ExponentialHencky>(model)) return true;
  return std::nullopt;
}

void validateModel(const ResponseModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, QuadraticHencky>) {
          if (!(m.mu > 0))
            throw std::invalid_argument("quadratic-hencky: mu must be positive");
          if (3.0 * m.lambda + 2.0 * m.mu < 0)
            throw std::invalid_argument("quadratic-hencky: 3 lambda + 2 mu must be >= 0");
        } else if constexpr (std::is_same_v<T, ExponentialHencky>) {
          if (!(m.mu > 0 && m.k > 0 && m.kappa > 0 && m.khat > 0))
            throw std::invalid_argument("exponential-hencky: parameters must be positive");
        } else if constexpr (std::is_same_v<T, MonotoneOfLogNorm>) {
          if (!m.f || !m.fprime)
            throw std::invalid_argument("monotone-log-norm: f and f' are required");
        } else if constexpr (std::is_same_v<T, HenckyType>) {
          if (!m.w || !m.dw_dx1 || !m.dw_dx2)
            throw std::invalid_argument("hencky-type: w and its partials are required");
        } else if constexpr (std::is_same_v<T, NeoHookeCompressible>) {
          if (!(m.mu > 0))
            throw std::invalid_argument("neo-hooke: mu must be positive");
        }
      },
      model);
}

// ---- evaluation ---------------------------------------------------------------

SymMatrix PrincipalState::toB() const {
  const std::array<double, 3> xsq{lambdas[0] * lambdas[0],
                                  lambdas[1] * lambdas[1],
                                  lambdas[2] * lambdas[2]};
  return congruenceDiag(basis, xsq);
}

double energy(const ResponseModel& model, const PrincipalState& state) {
  return energyLambdas(model, state.lambdas);
}

std::array<double, 3> principalStresses(const ResponseModel& model,
                                        const std::array<double, 3>& lambdas) {
  std::array<double, 3> sig{};
  if (std::holds_alternative<DirectDev3>(model)) {
    const std::array<double, 3> x{lambdas[0] * lambdas[0],
                                  lambdas[1] * lambdas[1],
                                  lambdas[2] * lambdas[2]};
    const double mean = (x[0] + x[1] + x[2]) / 3.0;
    for (int i = 0; i < 3; ++i) sig[i] = x[i] - mean;
  } else if (std::holds_alternative<DirectIdMinusB>(model)) {
    for (int i = 0; i < 3; ++i) sig[i] = 1.0 - lambdas[i] * lambdas[i];
  } else if (std::holds_alternative<MarzanoCounterexample>(model)) {
    const double h = marzanoWeight(lambdas);
    for (int i = 0; i < 3; ++i) sig[i] = (1.0 - h) * lambdas[i] - 1.0;
  } else {
    const std::array<double, 3> g = principalGradient(model, lambdas);
    const double j = lambdas[0] * lambdas[1] * lambdas[2];
    for (int i = 0; i < 3; ++i) sig[i] = lambdas[i] * g[i] / j;
  }
  return sig;
}

PrincipalPair principalStressPairs(const ResponseModel& model, const SymMatrix& b) {
  const SpectralDecomposition e = eigendecompose(b);
  const std::array<double, 3> x = spdSpectrum(e);
  PrincipalPair out;
  for (int i = 0; i < 3; ++i) out.lambdas[i] = std::sqrt(x[i]);
  out.sigmas = principalStresses(model, out.lambdas);
  return out;
}

SymMatrix cauchyStress(const ResponseModel& model, const SymMatrix& b) {
  const SpectralDecomposition e = eigendecompose(b);
  const std::array<double, 3> x = spdSpectrum(e);

  if (std::holds_alternative<DirectDev3>(model)) return dev3(b);
  if (std::holds_alternative<DirectIdMinusB>(model))
    return SymMatrix::identity(3) - b;

  std::array<double, 3> lam{std::sqrt(x[0]), std::sqrt(x[1]), std::sqrt(x[2])};
  if (std::holds_alternative<MarzanoCounterexample>(model)) {
    const double h = marzanoWeight(lam);
    const SymMatrix v = congruenceDiag(e.basis, lam);
    return (1.0 - h) * v - SymMatrix::identity(3);
  }

  const std::array<double, 3> g = principalGradient(model, lam);
  const double j = lam[0] * lam[1] * lam[2];
  std::array<double, 3> sig{};
  for (int i = 0; i < 3; ++i) sig[i] = lam[i] * g[i] / j;
  return congruenceDiag(e.basis, sig);
}

DerivativeTriple invariantDerivatives(const ResponseModel& model,
                                      const SymMatrix& b,
                                      DerivativeScheme scheme) {
  if (!isHyperelastic(model))
    throw std::invalid_argument(
        "invariantDerivatives: direct response models have no energy");
  const SpectralDecomposition e = eigendecompose(b);
  spdSpectrum(e); // SPD check
  if (scheme == DerivativeScheme::Analytic) {
    if (const auto d = polynomialInvariantDerivs(model, invariants(b)))
      return *d;
    return henckyAnalyticDerivs(model, e);
  }
  return finiteDifferenceDerivs(model, e);
}

BetaCoefficients betaCoefficients(const ResponseModel& model, const SymMatrix& b) {
  if (isHyperelastic(model)) {
    const DerivativeTriple d =
        invariantDerivatives(model, b, DerivativeScheme::Analytic);
    const Invariants inv = invariants(b);
    const double sq = std::sqrt(inv.i3);
    BetaCoefficients out;
    out.beta1 = 2.0 / sq * d.dW_dI1;
    out.betaMinus1 = -2.0 * sq * d.dW_dI2;
    out.beta0 = 2.0 / sq * (inv.i2 * d.dW_dI2 + inv.i3 * d.dW_dI3);
    return out;
  }
  const SymMatrix sigma = cauchyStress(model, b);
  const GammaCoefficients g = gammaCoefficients(b, sigma);
  return betaFromGamma(g, invariants(b));
}

double averageDeformedLength(const SymMatrix& b) {
  return std::sqrt(b.trace() / 3.0);
}

MonotoneOfLogNorm makeExpOfLogNorm() {
  MonotoneOfLogNorm m;
  m.name = "exp";
  m.f = [](double s) { return std::exp(s); };
  m.fprime = [](double s) { return std::exp(s); };
  return m;
}

HenckyType makePolyHenckyType() {
  HenckyType m;
  m.name = "poly";
  m.w = [](double x1, double x2) { return x1 + 0.5 * x1 * x1 + 0.5 * x2; };
  m.dw_dx1 = [](double x1, double) { return 1.0 + x1; };
  m.dw_dx2 = [](double, double) { return 0.5; };
  return m;
}

} // namespace coax
