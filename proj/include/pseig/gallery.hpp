#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pseig/types.hpp"

namespace pseig {

// Deterministic, portable random stream: mt19937_64 with doubles taken from
// the top 53 bits of each output word. No std::*_distribution is used, so the
// stream does not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal, Box-Muller on the uniform stream.
  double gaussian();

  Complex complex_gaussian() { return {gaussian(), gaussian()}; }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

ComplexMatrix grcar(int n, int k = 3);
ComplexMatrix kahan(int n, double theta = 1.2);
ComplexMatrix pentoep(int n, double a, double b, double c, double d, double e);

// i.i.d. uniform [0,1) real entries, row by row, from Rng(seed).
ComplexMatrix random_dense(int n, std::uint64_t seed);

// Q^H * diag(eigs) * Q for a Haar-distributed random unitary Q drawn from
// Rng(seed). The result is normal with the given spectrum.
ComplexMatrix normal_from_spectrum(const std::vector<Complex>& eigs,
                                   std::uint64_t seed);

ComplexMatrix diag_matrix(const std::vector<Complex>& entries);

enum class GalleryName { grcar, kahan, pentoep, random_dense, normal_from_spectrum, diag };

// Canonical text form `name(n,p1,...,pk)[@seed]`, e.g.
//   pentoep(32,0,0.5,0,0,1)   grcar(32)   kahan(32,1.2)
//   random_dense(32)@7        diag(1,2,3)
//   normal_from_spectrum(1,0,0,2)@42   (re,im pairs)
// For diag and normal_from_spectrum the arguments are the entries themselves
// and the order is implied.
struct GallerySpec {
  GalleryName name = GalleryName::diag;
  int n = 1;
  std::vector<double> params;
  std::optional<std::uint64_t> seed;

  static GallerySpec parse(const std::string& text);
  std::string to_string() const;
  ComplexMatrix build() const;
};

}  // namespace pseig
