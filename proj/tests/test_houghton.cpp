#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "shiftsim/json_io.hpp"
#include "shiftsim/sampling.hpp"
#include "shiftsim/shift.hpp"

using namespace shiftsim;

namespace {

// the two-ray element pulling (1,1) over to (2,1) and translating both rays
Triple translation_triple(const GroupClass& cls) {
  FiniteSet plus(2, {Point{1, 1}});
  FiniteSet minus(2, {Point{2, 1}});
  SigmaMap sigma(plus, minus, {{Point{1, 1}, Point{2, 1}}});
  return Triple(2, minus, sigma, {EPPerm::identity(), EPPerm::identity()}, plus, cls);
}

}  // namespace

TEST_CASE("quasi-ray enumeration") {
  FiniteSet empty = FiniteSet::empty(3);
  CHECK(beta(empty, 2, 3) == Point{2, 3});
  FiniteSet m(2, {Point{1, 1}, Point{1, 3}});
  CHECK(beta(m, 1, 1) == Point{1, 2});
  CHECK(beta(m, 1, 2) == Point{1, 4});
  FiniteSet head(2, {Point{1, 1}, Point{1, 2}});
  CHECK(beta(head, 1, 1) == Point{1, 3});
  CHECK(beta_inverse(head, Point{1, 3}) == 1);
  CHECK(beta_inverse(m, Point{1, 2}) == 1);
  CHECK(beta_inverse(m, Point{1, 4}) == 2);
  CHECK_THROWS_AS(beta_inverse(m, Point{1, 1}), DomainError);
  for (Int j = 1; j <= 20; ++j) CHECK(beta_inverse(m, beta(m, 1, j)) == j);
}

TEST_CASE("finite set and sigma validation") {
  CHECK_THROWS_AS(FiniteSet(2, {Point{3, 1}}), DomainError);
  CHECK_THROWS_AS(FiniteSet(2, {Point{1, 0}}), DomainError);
  CHECK_THROWS_AS(FiniteSet(2, {Point{1, 2}, Point{1, 2}}), DomainError);
  FiniteSet a(2, {Point{1, 1}});
  FiniteSet b(2, {Point{2, 2}});
  CHECK_THROWS_AS(SigmaMap(a, b, {{Point{1, 1}, Point{2, 1}}}), DomainError);
  CHECK_THROWS_AS(SigmaMap(a, FiniteSet::empty(2), {}), DomainError);
}

TEST_CASE("triple evaluation examples") {
  GroupClass e2 = GroupClass::periodic(2);
  CHECK(eval_triple(Triple::identity(2, e2)) == HoughtonElement::identity(2));

  Triple tr = translation_triple(e2);
  HoughtonElement e = eval_triple(tr);
  CHECK(e.flat() == EPPerm::from_periodic(2, 3, {2, 4, 1}));
  CHECK(chi(tr) == std::vector<Int>{-1, 1});

  // component acting like the slide on the first ray
  Triple emb = embed_components({slide(), EPPerm::identity()}, e2);
  EPPerm flat = eval_triple(emb).flat();
  CHECK(flat.apply(1) == 5);
  CHECK(flat.apply(3) == 1);
  CHECK(flat.apply(5) == 9);
  CHECK(flat.apply(7) == 3);
  for (Int i = 2; i <= 16; i += 2) CHECK(flat.apply(i) == i);
}

TEST_CASE("triple evaluation matches the partition description pointwise") {
  Rng rng(1717);
  for (int s = 0; s < 60; ++s) {
    Int n = 2 + s % 2;
    Triple t = random_triple(rng, n, GroupClass::periodic(2));
    HoughtonElement e = eval_triple(t);
    for (Int x = 1; x <= e.flat().threshold() + 2 * e.flat().period() + 2 * n; ++x) {
      Point q = unflatten_point(x, n);
      CHECK(e.flat().apply(x) == flatten_point(oracles::eval_point(t, q), n));
    }
  }
}

TEST_CASE("expansion keeps the represented element") {
  GroupClass e2 = GroupClass::periodic(2);
  Triple id2 = Triple::identity(2, e2);
  Triple expanded = expand(id2, 1);
  CHECK(expanded.plus() == FiniteSet(2, {Point{1, 1}}));
  CHECK(expanded.minus() == FiniteSet(2, {Point{1, 1}}));
  CHECK(eval_triple(expanded) == HoughtonElement::identity(2));

  Triple tr = translation_triple(e2);
  Triple tr2 = expand(tr, 2);
  CHECK(tr2.plus().contains(Point{2, 1}));
  CHECK(tr2.minus().contains(Point{2, 2}));
  CHECK(eval_triple(tr2) == eval_triple(tr));

  Rng rng(1818);
  for (int s = 0; s < 50; ++s) {
    Triple t = random_triple(rng, 2, e2);
    for (Int k = 1; k <= 2; ++k)
      for (Int j = 1; j <= 6; ++j) CHECK(eval_triple(general_expand(t, k, j)) == eval_triple(t));
    CHECK(eval_triple(general_expand(general_expand(t, 1, 2), 1, 2)) ==
          eval_triple(expand(expand(t, 1), 1)));
  }
}

TEST_CASE("minimal triple") {
  GroupClass e2 = GroupClass::periodic(2);
  Triple id_min = minimal_triple(HoughtonElement::identity(3), GroupClass::universe());
  CHECK(id_min.plus().size() == 0);
  for (const EPPerm& g : id_min.components()) CHECK(g.is_identity());

  // only (1,1) changes ray for the translation element
  Triple tr_min = minimal_triple(eval_triple(translation_triple(e2)), GroupClass::trivial());
  CHECK(tr_min.plus() == FiniteSet(2, {Point{1, 1}}));
  CHECK(tr_min.minus() == FiniteSet(2, {Point{2, 1}}));
  for (const EPPerm& g : tr_min.components()) CHECK(g.is_identity());

  Rng rng(1919);
  for (int s = 0; s < 60; ++s) {
    Int n = 2 + s % 2;
    GroupClass cls = (s % 2 == 0) ? e2 : GroupClass::symfin();
    Triple t = random_triple(rng, n, cls);
    HoughtonElement e = eval_triple(t);
    CHECK(eval_triple(minimal_triple(e, GroupClass::universe())) == e);
    CHECK(eval_triple(minimal_triple(e, cls)) == e);
  }

  // membership failure names the offending ray
  Triple bad = embed_components({slide(), EPPerm::identity()}, e2);
  try {
    minimal_triple(eval_triple(bad), GroupClass::trivial());
    FAIL("expected a membership failure");
  } catch (const DomainError& err) {
    CHECK(std::string(err.what()).find("ray 1") != std::string::npos);
  }
}

TEST_CASE("multiplication and inversion") {
  GroupClass e2 = GroupClass::periodic(2);
  Triple tr = translation_triple(e2);
  CHECK(eval_triple(multiply(tr, Triple::identity(2, e2))) == eval_triple(tr));
  CHECK(eval_triple(multiply(tr, invert_triple(tr))) == HoughtonElement::identity(2));
  CHECK(chi(multiply(tr, tr)) == std::vector<Int>{-2, 2});
  CHECK(chi(invert_triple(tr)) == std::vector<Int>{1, -1});
  CHECK(eval_triple(invert_triple(invert_triple(tr))) == eval_triple(tr));

  Rng rng(2020);
  for (int s = 0; s < 60; ++s) {
    Int n = 2 + s % 2;
    Triple a = random_triple(rng, n, e2);
    Triple b = random_triple(rng, n, e2);
    CHECK(eval_triple(multiply(a, b)) == multiply(eval_triple(a), eval_triple(b)));
    CHECK(eval_triple(invert_triple(a)) == inverse(eval_triple(a)));
    auto ca = chi(a), cb = chi(b), cab = chi(multiply(a, b));
    Int sum = 0;
    for (Int k = 0; k < n; ++k) {
      CHECK(cab[static_cast<std::size_t>(k)] ==
            ca[static_cast<std::size_t>(k)] + cb[static_cast<std::size_t>(k)]);
      sum += ca[static_cast<std::size_t>(k)];
    }
    CHECK(sum == 0);
  }
}

TEST_CASE("component embedding") {
  GroupClass e2 = GroupClass::periodic(2);
  CHECK(eval_triple(embed_components({EPPerm::identity(), EPPerm::identity()}, e2)) ==
        HoughtonElement::identity(2));
  CHECK_THROWS_AS(embed_components({flip()}, GroupClass::houghton(2), 1), DomainError);

  Rng rng(2121);
  for (int s = 0; s < 40; ++s) {
    EPPerm g = random_class_member(rng, e2);
    EPPerm h = random_class_member(rng, e2);
    Triple forward = embed_components({g, h}, e2);
    Triple backward = embed_components({inverse(g), inverse(h)}, e2);
    CHECK(eval_triple(multiply(forward, backward)) == HoughtonElement::identity(2));
    // injectivity on samples
    EPPerm g2 = random_class_member(rng, e2);
    if (!(g2 == g))
      CHECK_FALSE(eval_triple(embed_components({g2, h}, e2)) == eval_triple(forward));
  }
}

TEST_CASE("factorization into pure-Houghton and component factors") {
  GroupClass e2 = GroupClass::periodic(2);
  CHECK(factorize(Triple::identity(2, e2)).empty());

  std::vector<Triple> single = factorize(embed_components({slide(), EPPerm::identity()}, e2));
  CHECK(single.size() == 1);
  CHECK(single[0].plus().size() == 0);

  Rng seed_one(1);
  CHECK_THROWS_AS(factorize(random_triple(seed_one, 1, e2)), DomainError);

  Rng rng(2222);
  for (int s = 0; s < 60; ++s) {
    Triple t = random_triple(rng, 2, e2);
    std::vector<Triple> factors = factorize(t);
    CHECK(factors.size() <= 8);
    HoughtonElement product = HoughtonElement::identity(2);
    for (const Triple& f : factors) {
      bool pure_houghton = true;
      for (const EPPerm& g : f.components()) pure_houghton = pure_houghton && g.is_identity();
      bool embedded = f.plus().size() == 0 && f.minus().size() == 0;
      CHECK((pure_houghton || embedded));
      product = multiply(product, eval_triple(f));
    }
    CHECK(product == eval_triple(t));
  }
}

TEST_CASE("single-ray reduction into a strongly closed class") {
  GroupClass e2 = GroupClass::periodic(2);
  CHECK(reduce_h1(Triple::identity(1, e2), e2).is_identity());

  // a one-point triple around the slide
  FiniteSet m(1, {Point{1, 3}});
  Triple t(1, m, SigmaMap::identity_on(m), {slide()}, m, e2);
  EPPerm reduced = reduce_h1(t, e2);
  CHECK(e2.contains(reduced));
  CHECK(eval_triple(embed_components({reduced}, e2)) == eval_triple(t));

  // sigma a transposition of {1,2} with identity component
  FiniteSet two(1, {Point{1, 1}, Point{1, 2}});
  SigmaMap swap(two, two, {{Point{1, 1}, Point{1, 2}}, {Point{1, 2}, Point{1, 1}}});
  Triple swap_triple(1, two, swap, {EPPerm::identity()}, two, e2);
  CHECK(reduce_h1(swap_triple, e2) == EPPerm::from_cycles({{1, 2}}));

  CHECK_THROWS_AS(reduce_h1(swap_triple, GroupClass::sym(4)), DomainError);
  CHECK_THROWS_AS(reduce_h1(translation_triple(e2), e2), DomainError);

  Rng rng(2323);
  for (int s = 0; s < 60; ++s) {
    Triple random = random_triple(rng, 1, e2);
    EPPerm g = reduce_h1(random, e2);
    CHECK(e2.contains(g));
    CHECK(eval_triple(embed_components({g}, e2)) == eval_triple(random));
  }
}

TEST_CASE("first shifting map on elements") {
  CHECK(psi1(HoughtonElement::identity(2)) == HoughtonElement::identity(2));

  GroupClass e2 = GroupClass::periodic(2);
  // cyclic rotation of the components once the first one fixes 1
  HoughtonElement e = eval_triple(embed_components({EPPerm::identity(), flip()}, e2));
  CHECK(psi1(e) == eval_triple(embed_components({flip(), EPPerm::identity()}, e2)));

  Rng rng(2424);
  for (int s = 0; s < 50; ++s) {
    Int n = 2 + s % 2;
    std::vector<EPPerm> gs;
    for (Int k = 0; k < n; ++k) gs.push_back(random_class_member(rng, e2));
    Int v = gs[0].apply(1);
    if (v != 1) gs[0] = compose(EPPerm::from_cycles({{1, v}}), gs[0]);
    std::vector<EPPerm> rotated(gs.begin() + 1, gs.end());
    rotated.push_back(psi(gs[0], 1));
    CHECK(psi1(eval_triple(embed_components(gs, e2))) ==
          eval_triple(embed_components(rotated, e2)));
    // the image stays a valid element over the same ray count
    HoughtonElement image = psi1(eval_triple(random_triple(rng, n, e2)));
    CHECK(image.ray_count() == n);
    CHECK_NOTHROW(minimal_triple(image, e2));
  }
}

TEST_CASE("block re-indexing of nested elements") {
  GroupClass trivial = GroupClass::trivial();
  CHECK(composite_iso(HoughtonElement::identity(2), 2, trivial) ==
        HoughtonElement::identity(4));

  // outer translation with identity components: one block of two rays slides
  GroupClass h2 = GroupClass::houghton(2);
  HoughtonElement outer = eval_triple(translation_triple(h2));
  HoughtonElement image = composite_iso(outer, 2, trivial);
  CHECK(image.ray_count() == 4);
  for (Int y = 1; y <= image.flat().threshold() + 2 * image.flat().period(); ++y)
    CHECK(image.flat().apply(y) == oracles::reindex_pointwise(outer.flat(), 2, 2, y));

  Rng rng(2525);
  std::set<HoughtonElement> images;
  std::set<HoughtonElement> inputs;
  for (int s = 0; s < 50; ++s) {
    HoughtonElement a = eval_triple(random_triple(rng, 2, h2));
    HoughtonElement b = eval_triple(random_triple(rng, 2, h2));
    HoughtonElement ia = composite_iso(a, 2, trivial);
    HoughtonElement ib = composite_iso(b, 2, trivial);
    CHECK(composite_iso(multiply(a, b), 2, trivial) == multiply(ia, ib));
    // pointwise re-indexing oracle on a window
    for (Int y = 1; y <= 32; ++y)
      CHECK(ia.flat().apply(y) == oracles::reindex_pointwise(a.flat(), 2, 2, y));
    inputs.insert(a);
    images.insert(ia);
  }
  CHECK(inputs.size() == images.size());  // injective on the sample set

  // malformed nesting: a component whose residue twist is not constant
  HoughtonElement bad =
      eval_triple(embed_components({EPPerm::from_periodic(4, 4, {3, 2, 1, 4})},
                                   GroupClass::universe(), 1));
  CHECK_THROWS_AS(composite_iso(bad, 2, trivial), DomainError);
}

TEST_CASE("eventually periodic flats act by ray permutations with translations") {
  // Over [n] x N, an eventually n-periodic permutation eventually sends ray
  // k to a fixed ray pi(k) with a constant index shift; residue-preserving
  // members have pi trivial.
  Rng rng(2929);
  for (int s = 0; s < 60; ++s) {
    Int n = 2 + s % 3;
    bool residue_preserving = s % 2 == 0;
    GroupClass cls = residue_preserving ? GroupClass::houghton(n) : GroupClass::periodic(n);
    EPPerm g = random_class_member(rng, cls);
    Int start = g.threshold() / n + g.slack() + 4;
    std::vector<Int> pi(static_cast<std::size_t>(n) + 1, 0);
    for (Int k = 1; k <= n; ++k) {
      Point image = unflatten_point(g.apply(flatten_point(Point{k, start}, n)), n);
      pi[static_cast<std::size_t>(k)] = image.ray;
      Int shift = image.index - start;
      for (Int i = start; i <= start + 2 * g.period(); ++i) {
        Point next = unflatten_point(g.apply(flatten_point(Point{k, i}, n)), n);
        CHECK(next.ray == image.ray);
        CHECK(next.index == i + shift);
      }
      if (residue_preserving) CHECK(image.ray == k);
    }
    std::vector<Int> sorted(pi.begin() + 1, pi.end());
    std::sort(sorted.begin(), sorted.end());
    for (Int k = 1; k <= n; ++k) CHECK(sorted[static_cast<std::size_t>(k - 1)] == k);
  }
}

TEST_CASE("components collapse for finite classes") {
  GroupClass s4 = GroupClass::sym(4);
  Rng rng(2626);
  for (int s = 0; s < 40; ++s) {
    Triple t = random_triple(rng, 2 + s % 2, s4);
    Triple collapsed = normalize_finite_components(t);
    for (const EPPerm& g : collapsed.components()) CHECK(g.is_identity());
    CHECK(eval_triple(collapsed) == eval_triple(t));
  }
  CHECK_THROWS_AS(
      normalize_finite_components(embed_components({slide(), slide()}, GroupClass::periodic(2))),
      DomainError);
}

TEST_CASE("ball enumeration") {
  BallResult empty = ball_enumerate({}, 5);
  CHECK(empty.elements.size() == 1);

  HoughtonElement swap = HoughtonElement::unchecked(1, EPPerm::from_cycles({{1, 2}}));
  BallResult invol = ball_enumerate({swap}, 3);
  CHECK(invol.elements.size() == 2);

  ResourceLimits limits;
  CHECK_THROWS_AS(ball_enumerate({swap}, limits.max_radius + 1), DomainError);

  std::vector<HoughtonElement> gens = {
      HoughtonElement::unchecked(1, slide()), HoughtonElement::unchecked(1, flip()),
      HoughtonElement::unchecked(1, EPPerm::from_cycles({{1, 2}}))};
  BallResult ball = ball_enumerate(gens, 4);
  CHECK_FALSE(ball.truncated);
  GroupClass e2 = GroupClass::periodic(2);
  bool found_13 = false;
  for (const HoughtonElement& e : ball.elements) {
    CHECK(e2.contains(e.flat()));
    found_13 = found_13 || e.flat() == EPPerm::from_cycles({{1, 3}});
  }
  CHECK(found_13);

  // schedule-independent: the sorted canonical list is reproducible
  BallResult again = ball_enumerate(gens, 4);
  CHECK(ball.elements == again.elements);
}

TEST_CASE("triple and element json round trips") {
  Rng rng(2727);
  for (int s = 0; s < 30; ++s) {
    Triple t = random_triple(rng, 2, GroupClass::periodic(2));
    Triple back = triple_from_json_string(to_json_string(t));
    CHECK(back == t);
    HoughtonElement e = eval_triple(t);
    CHECK(element_from_json_string(to_json_string(e)) == e);
  }
  CHECK_THROWS_AS(triple_from_json_string(R"json({"n":1,"class":"E(2)"})json"), DomainError);
  // element validation: the flip moves rays, so it is not a two-ray element
  CHECK_THROWS_AS(element_from_json_string(
                      R"({"n":2,"flat":{"p":2,"T":2,"table":[2,1]}})"),
                  DomainError);
}
