#include "shiftsim/sampling.hpp"

#include <algorithm>

namespace shiftsim {

std::vector<Int> random_permutation_vector(Rng& rng, Int k) {
  std::vector<Int> v(static_cast<std::size_t>(k));
  for (Int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  for (Int i = k - 1; i > 0; --i)
    std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(rng.below(i + 1))]);
  return v;
}

namespace {

EPPerm random_finite(Rng& rng, Int top) {
  // Trailing fixed point, so the period-1 recursion continues the identity.
  std::vector<Int> table = random_permutation_vector(rng, top);
  table.push_back(top + 1);
  return EPPerm::from_periodic(1, top + 1, std::move(table));
}

EPPerm random_slide(Rng& rng, Int p) {
  Int a = rng.range(1, p);
  Int b = rng.range(1, p - 1);
  if (b >= a) ++b;
  EPPerm s = make_slide(a, b, p);
  return rng.coin() ? s : inverse(s);
}

// Word in period-p pieces; residue permutations allowed only when the
// class does not demand residue preservation.
EPPerm random_word(Rng& rng, Int p, bool allow_residue_perms) {
  EPPerm g = EPPerm::identity();
  Int pieces = rng.range(1, 3);
  for (Int i = 0; i < pieces; ++i) {
    switch (rng.below(3)) {
      case 0:
        if (p >= 2) {
          g = compose(g, random_slide(rng, p));
          break;
        }
        [[fallthrough]];
      case 1:
        if (allow_residue_perms && p >= 2) {
          g = compose(g, make_residue_permutation(random_permutation_vector(rng, p)));
          break;
        }
        [[fallthrough]];
      default:
        g = compose(g, random_finite(rng, rng.range(2, 10)));
    }
  }
  return g;
}

}  // namespace

EPPerm random_epperm(Rng& rng, Int max_period, Int max_threshold) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Int p = rng.range(1, max_period);
    EPPerm g = random_word(rng, p, true);
    if (g.threshold() <= max_threshold) return g;
  }
  return make_residue_permutation(random_permutation_vector(rng, max_period));
}

EPPerm random_class_member(Rng& rng, const GroupClass& cls) {
  switch (cls.kind()) {
    case GroupClass::Kind::kTrivial:
      return EPPerm::identity();
    case GroupClass::Kind::kSym: {
      Int m = cls.parameter();
      std::vector<Int> table = random_permutation_vector(rng, m);
      table.push_back(m + 1);
      return EPPerm::from_periodic(1, m + 1, std::move(table));
    }
    case GroupClass::Kind::kSymFin:
      return random_finite(rng, rng.range(2, 12));
    case GroupClass::Kind::kPeriodic:
      return random_word(rng, cls.parameter(), true);
    case GroupClass::Kind::kHoughton:
      return random_word(rng, cls.parameter(), false);
    case GroupClass::Kind::kUniverse:
      return random_epperm(rng);
  }
  return EPPerm::identity();
}

Triple random_triple(Rng& rng, Int ray_count, const GroupClass& cls, Int max_points,
                     Int max_index) {
  Int size = rng.below(max_points + 1);
  auto sample_set = [&](void) {
    std::vector<Point> points;
    while (static_cast<Int>(points.size()) < size) {
      Point q{rng.range(1, ray_count), rng.range(1, max_index)};
      if (std::find(points.begin(), points.end(), q) == points.end()) points.push_back(q);
    }
    return FiniteSet(ray_count, std::move(points));
  };
  FiniteSet plus = sample_set();
  FiniteSet minus = sample_set();

  std::vector<Int> matching = random_permutation_vector(rng, size);
  std::vector<std::pair<Point, Point>> pairs;
  for (Int i = 0; i < size; ++i)
    pairs.emplace_back(plus.points()[static_cast<std::size_t>(i)],
                       minus.points()[static_cast<std::size_t>(matching[static_cast<std::size_t>(i)] - 1)]);

  std::vector<EPPerm> components;
  for (Int k = 0; k < ray_count; ++k) components.push_back(random_class_member(rng, cls));
  return Triple(ray_count, minus, SigmaMap(plus, minus, std::move(pairs)), std::move(components),
                plus, cls);
}

}  // namespace shiftsim
