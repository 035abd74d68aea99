#ifndef SHIFTSIM_CLASSES_HPP
#define SHIFTSIM_CLASSES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shiftsim/epperm.hpp"

namespace shiftsim {

// Built-in decidable shift-similar subgroups of the eventually periodic
// universe.  A closed enumeration: arbitrary predicates cannot guarantee
// closure under the shifting maps.
class GroupClass {
 public:
  enum class Kind {
    kTrivial,
    kSym,        // S_m, finite support inside [1..m]
    kSymFin,     // all finitely supported permutations
    kPeriodic,   // E(p): minimal period divides p
    kHoughton,   // flattened H_n: minimal period divides n, residues preserved
    kUniverse,
  };

  static GroupClass trivial() { return GroupClass(Kind::kTrivial, 0); }
  static GroupClass sym(Int m);
  static GroupClass symfin() { return GroupClass(Kind::kSymFin, 0); }
  static GroupClass periodic(Int p);
  static GroupClass houghton(Int n);
  static GroupClass universe() { return GroupClass(Kind::kUniverse, 0); }

  Kind kind() const { return kind_; }
  Int parameter() const { return parameter_; }

  bool contains(const EPPerm& g) const;
  bool is_infinite() const;
  // Closed under insert_arrow (for kHoughton: whenever m = j mod n).
  bool strongly_closed() const;

  std::string name() const;
  // Accepts the CLI literals: trivial, sym(m), symfin, E(p), H(n), universe.
  static GroupClass parse(const std::string& text);

  friend bool operator==(const GroupClass&, const GroupClass&) = default;

 private:
  GroupClass(Kind kind, Int parameter) : kind_(kind), parameter_(parameter) {}
  Kind kind_;
  Int parameter_;
};

// Constructive witness that the j-th shifting map restricted to the
// stabilizer of j surjects onto the class: returns g' = insert_arrow(g, j, j),
// which fixes j, maps to g under psi(., j), and stays in the class.
EPPerm section_into_stabilizer(const GroupClass& cls, const EPPerm& g, Int j);

struct ResourceLimits {
  std::size_t max_elements = 1000000;
  Int max_radius = 8;
};

struct FalsifierReport {
  bool violation_found = false;
  std::optional<EPPerm> witness;  // psi-image not expressible as a short word
  std::optional<EPPerm> source;   // the element it was shifted from
  Int source_j = 0;
  std::size_t frontier_size = 0;
  bool truncated = false;
  std::string to_string() const;
};

// Bounded falsifier for shift-similarity of the subgroup generated by
// `elements`: applies every psi(., j), j <= j_bound, to the ball of the
// given word-length depth and looks for an image outside that ball.  A
// reported violation is evidence, not proof (the certificate is a bounded
// word search).
FalsifierReport closure_falsifier(const std::vector<EPPerm>& elements, Int j_bound, Int depth,
                                  const ResourceLimits& limits = {});

}  // namespace shiftsim

#endif
