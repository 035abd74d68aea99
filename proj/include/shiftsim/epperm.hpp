#ifndef SHIFTSIM_EPPERM_HPP
#define SHIFTSIM_EPPERM_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "shiftsim/errors.hpp"

namespace shiftsim {

using Int = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_lcm(Int a, Int b);

// An eventually periodic permutation of the positive integers, stored as
// (period p, threshold T, table of g(1..T)) and extended by
// g(i) = g(i - p) + p for i > T.  Values are always in canonical form:
// p is the minimal eventual period and T the minimal threshold for which the
// extension rule holds, so equality of permutations is field equality.
class EPPerm {
 public:
  EPPerm() : period_(1), threshold_(0) {}

  static EPPerm identity() { return EPPerm(); }

  // Validates every representation invariant, then canonicalizes.
  // Throws ValidationError with a distinct code per failed invariant.
  static EPPerm from_periodic(Int period, Int threshold, std::vector<Int> table);

  // Finite-support permutation from disjoint cycles of positive integers.
  static EPPerm from_cycles(const std::vector<std::vector<Int>>& cycles);

  // Builds the table from pointwise values assuming the function is
  // eventually periodic with the given period beyond the given threshold;
  // the hints are verified against `value` past the table.
  static EPPerm from_pointwise(Int period_hint, Int threshold_hint,
                               const std::function<Int(Int)>& value);

  Int period() const { return period_; }
  Int threshold() const { return threshold_; }
  const std::vector<Int>& table() const { return table_; }

  Int apply(Int i) const;
  Int operator()(Int i) const { return apply(i); }

  bool is_identity() const { return threshold_ == 0; }
  // Finite support is equivalent to minimal period 1.
  bool has_finite_support() const { return period_ == 1; }
  // Largest moved point of a finite-support permutation (0 for the identity).
  Int support_bound() const;
  Int max_table_value() const;  // 0 for the identity

  // Largest excess i - g(i) over the recursion window; g(i) >= i - slack()
  // for every i past the threshold.
  Int slack() const;

  std::string to_string() const;  // p=..,T=..,table=[..]

  friend bool operator==(const EPPerm&, const EPPerm&) = default;
  friend auto operator<=>(const EPPerm&, const EPPerm&) = default;

 private:
  EPPerm(Int p, Int t, std::vector<Int> tab)
      : period_(p), threshold_(t), table_(std::move(tab)) {}

  Int period_;
  Int threshold_;
  std::vector<Int> table_;
};

// g after h: (g * h)(i) = g(h(i)).
EPPerm compose(const EPPerm& g, const EPPerm& h);
EPPerm inverse(const EPPerm& g);
// y^-1 * x * y
EPPerm conjugate(const EPPerm& x, const EPPerm& y);
EPPerm power(const EPPerm& g, Int e);

// The slide moving residue class a up one period and class b down one,
// with b wrapping to a.  make_slide(1, 2, 2) is the 2-periodic slide
// (... 6 4 2 1 3 5 7 ...).
EPPerm make_slide(Int a, Int b, Int p);
// Purely periodic permutation acting as `image` on [1..p] and shifted copies.
EPPerm make_residue_permutation(const std::vector<Int>& image);
// Exactly n-periodic rotation of residue classes: x -> x+1 off multiples
// of n, multiples of n wrap down.
EPPerm make_rotator(Int n);

EPPerm slide();  // make_slide(1, 2, 2)
EPPerm flip();   // (1 2)(3 4)(5 6)...

// Coset of a permutation modulo the finitely supported ones: two germs are
// equal iff their representatives agree on all sufficiently large inputs.
// No canonical coset representative is chosen; equality is the decision
// procedure (finite window check).
class Germ {
 public:
  explicit Germ(EPPerm rep) : rep_(std::move(rep)) {}
  const EPPerm& representative() const { return rep_; }

 private:
  EPPerm rep_;
};

bool germ_equals(const Germ& a, const Germ& b);

}  // namespace shiftsim

#endif
