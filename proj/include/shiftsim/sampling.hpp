#ifndef SHIFTSIM_SAMPLING_HPP
#define SHIFTSIM_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "shiftsim/houghton.hpp"

namespace shiftsim {

// Deterministic across platforms: mt19937_64 is fully specified and all
// derived draws avoid std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  Int below(Int n) { return static_cast<Int>(next() % static_cast<std::uint64_t>(n)); }
  Int range(Int lo, Int hi) { return lo + below(hi - lo + 1); }  // inclusive
  bool coin() { return next() & 1; }

 private:
  std::mt19937_64 engine_;
};

std::vector<Int> random_permutation_vector(Rng& rng, Int k);

// A random valid eventually periodic permutation: a short word in slides,
// residue permutations and finite-support pieces, resampled until the
// canonical threshold fits the bound.
EPPerm random_epperm(Rng& rng, Int max_period = 6, Int max_threshold = 24);

EPPerm random_class_member(Rng& rng, const GroupClass& cls);

Triple random_triple(Rng& rng, Int ray_count, const GroupClass& cls, Int max_points = 3,
                     Int max_index = 6);

}  // namespace shiftsim

#endif
