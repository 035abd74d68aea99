#include <doctest.h>

#include "shiftsim/sampling.hpp"
#include "shiftsim/shift.hpp"

using namespace shiftsim;

TEST_CASE("membership examples") {
  CHECK(GroupClass::periodic(2).contains(slide()));
  CHECK(GroupClass::periodic(2).contains(flip()));
  CHECK_FALSE(GroupClass::periodic(1).contains(slide()));
  // the flip swaps residues, so it is the part outside the ray-preserving copy
  CHECK_FALSE(GroupClass::houghton(2).contains(flip()));
  CHECK(GroupClass::houghton(2).contains(slide()));
  CHECK(GroupClass::symfin().contains(EPPerm::identity()));
  CHECK(GroupClass::trivial().contains(EPPerm::identity()));
  CHECK_FALSE(GroupClass::trivial().contains(flip()));
  CHECK(GroupClass::sym(4).contains(EPPerm::from_cycles({{1, 4, 2}})));
  CHECK_FALSE(GroupClass::sym(3).contains(EPPerm::from_cycles({{1, 4, 2}})));
  CHECK(GroupClass::universe().contains(slide()));
  // period 4 does not divide 2
  EPPerm p4 = EPPerm::from_periodic(4, 4, {3, 2, 1, 4});
  CHECK_FALSE(GroupClass::periodic(2).contains(p4));
  CHECK(GroupClass::periodic(4).contains(p4));
}

TEST_CASE("class flags and literals") {
  CHECK(GroupClass::parse("E(2)") == GroupClass::periodic(2));
  CHECK(GroupClass::parse(" sym( 5 ) ") == GroupClass::sym(5));
  CHECK(GroupClass::parse("H(3)") == GroupClass::houghton(3));
  CHECK(GroupClass::parse("trivial") == GroupClass::trivial());
  CHECK(GroupClass::parse("symfin") == GroupClass::symfin());
  CHECK(GroupClass::parse("universe") == GroupClass::universe());
  CHECK_THROWS_AS(GroupClass::parse("E(x)"), DomainError);
  CHECK_THROWS_AS(GroupClass::parse("nonsense"), DomainError);

  CHECK_FALSE(GroupClass::trivial().is_infinite());
  CHECK_FALSE(GroupClass::sym(9).is_infinite());
  CHECK(GroupClass::symfin().is_infinite());
  CHECK(GroupClass::periodic(2).strongly_closed());
  CHECK_FALSE(GroupClass::sym(9).strongly_closed());
  for (const char* name : {"trivial", "sym(7)", "symfin", "E(4)", "H(2)", "universe"})
    CHECK(GroupClass::parse(GroupClass::parse(name).name()) == GroupClass::parse(name));
}

TEST_CASE("closure under the group operations and shifts") {
  Rng rng(1414);
  const GroupClass classes[] = {GroupClass::trivial(),     GroupClass::sym(6),
                                GroupClass::symfin(),      GroupClass::periodic(2),
                                GroupClass::periodic(6),   GroupClass::houghton(2),
                                GroupClass::houghton(3),   GroupClass::universe()};
  for (const GroupClass& cls : classes) {
    for (int s = 0; s < 40; ++s) {
      EPPerm g = random_class_member(rng, cls);
      EPPerm h = random_class_member(rng, cls);
      REQUIRE(cls.contains(g));
      CHECK(cls.contains(compose(g, h)));
      CHECK(cls.contains(inverse(g)));
      for (Int j = 1; j <= 10; ++j) CHECK(cls.contains(psi(g, j)));
    }
  }
}

TEST_CASE("insertion closure with the residue side-condition") {
  Rng rng(1515);
  for (int s = 0; s < 60; ++s) {
    for (const GroupClass& cls : {GroupClass::symfin(), GroupClass::periodic(3),
                                  GroupClass::universe()}) {
      EPPerm g = random_class_member(rng, cls);
      CHECK(cls.contains(insert_arrow(g, rng.range(1, 8), rng.range(1, 8))));
    }
    GroupClass hn = GroupClass::houghton(2 + s % 2);
    EPPerm g = random_class_member(rng, hn);
    Int j = rng.range(1, 6);
    Int m = j + hn.parameter() * rng.below(3);
    CHECK(hn.contains(insert_arrow(g, j, m)));
  }
}

TEST_CASE("stabilizer section") {
  CHECK(section_into_stabilizer(GroupClass::symfin(), EPPerm::identity(), 4).is_identity());

  EPPerm h = section_into_stabilizer(GroupClass::periodic(2), slide(), 1);
  CHECK(h.apply(1) == 1);
  CHECK(psi(h, 1) == slide());
  CHECK(GroupClass::periodic(2).contains(h));

  // a ray-preserving translation through the section keeps its residues
  EPPerm translation = make_slide(1, 2, 2);
  EPPerm section = section_into_stabilizer(GroupClass::houghton(2), translation, 2);
  CHECK(section.apply(2) == 2);
  CHECK(psi(section, 2) == translation);
  CHECK(GroupClass::houghton(2).contains(section));

  CHECK_THROWS_AS(section_into_stabilizer(GroupClass::sym(4), EPPerm::identity(), 1),
                  DomainError);
  CHECK_THROWS_AS(section_into_stabilizer(GroupClass::trivial(), EPPerm::identity(), 1),
                  DomainError);
  CHECK_THROWS_AS(section_into_stabilizer(GroupClass::periodic(2),
                                          EPPerm::from_periodic(4, 4, {3, 2, 1, 4}), 1),
                  DomainError);
}

TEST_CASE("bounded falsifier") {
  auto empty = closure_falsifier({}, 4, 3);
  CHECK_FALSE(empty.violation_found);
  CHECK(empty.frontier_size == 1);

  auto finite = closure_falsifier({EPPerm::from_cycles({{1, 2}})}, 4, 3);
  CHECK_FALSE(finite.violation_found);
  CHECK_FALSE(finite.truncated);

  // images of the slide are not short words in the slide alone
  auto cyclic = closure_falsifier({slide()}, 2, 2);
  CHECK(cyclic.violation_found);
  REQUIRE(cyclic.witness.has_value());
  CHECK_FALSE(cyclic.to_string().empty());

  // a full symmetric group is closed once the ball reaches all of it
  auto full = closure_falsifier(
      {EPPerm::from_cycles({{1, 2}}), EPPerm::from_cycles({{1, 2, 3, 4}})}, 6, 8);
  CHECK_FALSE(full.violation_found);
  CHECK(full.frontier_size == 24);

  // deterministic: the same inputs give the same report
  auto rerun = closure_falsifier({slide()}, 2, 2);
  CHECK(rerun.witness == cyclic.witness);
  CHECK(rerun.source_j == cyclic.source_j);

  ResourceLimits tiny;
  tiny.max_elements = 4;
  auto truncated = closure_falsifier({slide(), flip()}, 2, 4, tiny);
  CHECK(truncated.truncated);
}

TEST_CASE("small symmetric groups stay bounded under shifts") {
  // desk-scale version of the classification of finite cases: a generating
  // set of a full symmetric group is shift-closed once the ball covers it,
  // while a proper subgroup such as the cyclic one is caught by the falsifier
  GroupClass s4 = GroupClass::sym(4);
  std::vector<EPPerm> gens = {EPPerm::from_cycles({{1, 2}}),
                              EPPerm::from_cycles({{1, 2, 3, 4}})};
  auto report = closure_falsifier(gens, 5, 8);
  CHECK_FALSE(report.violation_found);
  BallResult ball = ball_enumerate(
      {HoughtonElement::unchecked(1, gens[0]), HoughtonElement::unchecked(1, gens[1])}, 8);
  CHECK(ball.elements.size() == 24);
  for (const HoughtonElement& e : ball.elements) CHECK(s4.contains(e.flat()));

  auto cyclic = closure_falsifier({EPPerm::from_cycles({{1, 2, 3, 4}})}, 4, 6);
  CHECK(cyclic.violation_found);
}
