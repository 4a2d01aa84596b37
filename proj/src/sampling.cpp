#include "coax/sampling.hpp"

#include <cmath>
#include <numbers>

namespace coax {

void SampleSpec::validate() const {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  if (!(lambdaLow > 0) || !(lambdaLow < lambdaHigh))
    throw std::invalid_argument("lambda range must satisfy 0 < low < high");
}

double Rng::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double Rng::logUniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::gaussian() {
  const double u1 = 1.0 - uniform01(); // (0, 1]
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Matrix Rng::randomRotation(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = gaussian();
  // modified Gram-Schmidt on the columns
  for (int c = 0; c < dim; ++c) {
    for (int p = 0; p < c; ++p) {
      double dot = 0;
      for (int r = 0; r < dim; ++r) dot += m(r, c) * m(r, p);
      for (int r = 0; r < dim; ++r) m(r, c) -= dot * m(r, p);
    }
    double norm = 0;
    for (int r = 0; r < dim; ++r) norm += m(r, c) * m(r, c);
    norm = std::sqrt(norm);
    if (norm < 1e-8) return randomRotation(dim); // degenerate draw, retry
    for (int r = 0; r < dim; ++r) m(r, c) /= norm;
  }
  // flip last column if needed so det = +1
  double det;
  if (dim == 2) {
    det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  } else {
    det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
          m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
          m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
  if (det < 0)
    for (int r = 0; r < dim; ++r) m(r, dim - 1) = -m(r, dim - 1);
  return m;
}

SymMatrix Rng::randomSymmetric(int dim) {
  SymMatrix s(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) s.set(i, j, gaussian());
  return s;
}

namespace {

bool sphericalStretches(const std::array<double, 3>& lam) {
  const double lo = std::min({lam[0], lam[1], lam[2]});
  const double hi = std::max({lam[0], lam[1], lam[2]});
  const double x0 = hi * hi, x2 = lo * lo;
  return x0 - x2 <= clusterBand(x0, x2);
}

} // namespace

std::vector<LabeledState> randomStates(const SampleSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<LabeledState> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (long n = 0; n < spec.count; ++n) {
    std::array<double, 3> lam{};
    for (int tries = 0; tries < 100; ++tries) {
      for (double& l : lam)
        l = spec.logUniform ? rng.logUniform(spec.lambdaLow, spec.lambdaHigh)
                            : rng.uniform(spec.lambdaLow, spec.lambdaHigh);
      if (!spec.excludeSpherical || !sphericalStretches(lam)) break;
    }
    const Matrix q = rng.randomRotation(3);
    const std::array<double, 3> xsq{lam[0] * lam[0], lam[1] * lam[1],
                                    lam[2] * lam[2]};
    out.push_back({congruenceDiag(q, xsq), "random"});
  }
  return out;
}

std::vector<LabeledState> structuredStates(bool excludeSpherical) {
  std::vector<LabeledState> out;
  auto push = [&out](std::string label, const SymMatrix& b) {
    out.push_back({b, std::move(label)});
  };

  for (double t : {0.25, 0.5, 2.0, 4.0}) {
    push("uniaxial", SymMatrix::diagonal(std::array{t, 1.0, 1.0}));
    push("equibiaxial", SymMatrix::diagonal(std::array{t, t, 1.0}));
  }
  if (!excludeSpherical) {
    // volumetric expansion grid covering (1, 3]
    for (int i = 1; i <= 20; ++i) {
      const double l = 1.0 + 0.1 * i;
      push("volumetric", SymMatrix::diagonal(std::array{l, l, l}));
    }
  }
  for (double gamma : {0.1, 0.5, 1.0, 2.0}) {
    SymMatrix b = SymMatrix::identity(3);
    b.set(0, 0, 1.0 + gamma * gamma);
    b.set(0, 1, gamma);
    push("simple-shear", b);
  }
  return out;
}

std::vector<LabeledState> sweepStates(const SampleSpec& spec) {
  std::vector<LabeledState> out = randomStates(spec);
  for (auto& s : structuredStates(spec.excludeSpherical))
    out.push_back(std::move(s));
  return out;
}

} // namespace coax
