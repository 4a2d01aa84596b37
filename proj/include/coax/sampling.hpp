#ifndef COAX_SAMPLING_HPP
#define COAX_SAMPLING_HPP

#include "coax/symmat.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace coax {

/// Randomized approximation of the "for all B in PSym(3)" quantifiers:
/// `count` seeded random states with log-uniform (or uniform) principal
/// stretches in [lambdaLow, lambdaHigh] and a random rotation. Spherical
/// states (all stretches equal within the cluster tolerance) are skipped
/// when excludeSpherical is set.
struct SampleSpec {
  long count = 10000;
  double lambdaLow = 0.2;
  double lambdaHigh = 5.0;
  bool logUniform = true;
  std::uint64_t seed = 0;
  bool excludeSpherical = false;

  void validate() const;
};

/// Deterministic random helpers on top of a fixed-width engine. The
/// uniform mapping and the Gaussian construction are spelled out here so
/// the draw sequence does not depend on the standard library's
/// distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01(); // in [0, 1)
  double uniform(double lo, double hi);
  double logUniform(double lo, double hi);
  double gaussian(); // Box-Muller

  /// Proper rotation from an orthonormalized Gaussian matrix.
  Matrix randomRotation(int dim = 3);
  /// Symmetric matrix with Gaussian entries (not necessarily definite).
  SymMatrix randomSymmetric(int dim = 3);

private:
  std::mt19937_64 eng_;
};

/// A sampled state plus a short provenance label ("random" or the name of
/// the structured family it came from).
struct LabeledState {
  SymMatrix b;
  std::string label;
};

/// Random states per the spec (exactly spec.count entries).
std::vector<LabeledState> randomStates(const SampleSpec& spec);

/// Fixed structured families appended to every sweep: uniaxial,
/// equibiaxial, volumetric (spherical; dropped when excludeSpherical) and
/// simple-shear states.
std::vector<LabeledState> structuredStates(bool excludeSpherical);

/// Random + structured states for a sweep.
std::vector<LabeledState> sweepStates(const SampleSpec& spec);

/// Execution policy for the data-parallel sample kernels. Both policies
/// produce identical results: samples are pre-generated, each kernel call
/// writes only its own slot, aggregation happens in index order.
enum class Exec { Serial, OpenMP };

template <class R, class T, class F>
std::vector<R> mapValues(const std::vector<T>& items, F&& kernel, Exec exec) {
  std::vector<R> out(items.size());
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = kernel(items[i]);
    return out;
  }
  const long n = static_cast<long>(items.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = kernel(items[i]);
  return out;
}

template <class R, class F>
std::vector<R> mapStates(const std::vector<LabeledState>& states, F&& kernel,
                         Exec exec) {
  return mapValues<R>(states, kernel, exec);
}

} // namespace coax

#endif
