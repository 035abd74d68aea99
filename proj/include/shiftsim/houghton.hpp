#ifndef SHIFTSIM_HOUGHTON_HPP
#define SHIFTSIM_HOUGHTON_HPP

#include <compare>
#include <utility>
#include <vector>

#include "shiftsim/classes.hpp"
#include "shiftsim/epperm.hpp"

namespace shiftsim {

// A point (ray, index) of [n] x N.
struct Point {
  Int ray = 1;
  Int index = 1;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// Sorted, duplicate-free finite subset of [n] x N.
class FiniteSet {
 public:
  FiniteSet(Int ray_count, std::vector<Point> points);
  static FiniteSet empty(Int ray_count) { return FiniteSet(ray_count, {}); }

  Int ray_count() const { return ray_count_; }
  const std::vector<Point>& points() const { return points_; }
  Int size() const { return static_cast<Int>(points_.size()); }
  bool contains(const Point& q) const;

  FiniteSet with(const Point& q) const;
  FiniteSet without(const Point& q) const;
  FiniteSet united(const FiniteSet& other) const;

  Int count_on_ray(Int k) const;      // C_k
  Int max_index_on_ray(Int k) const;  // 0 if the ray is untouched

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  Int ray_count_;
  std::vector<Point> points_;  // sorted by (ray, index)
};

// j-th smallest point of ray k outside M.
Point beta(const FiniteSet& m, Int k, Int j);
// Position of q (not in M) in the enumeration of its ray outside M.
Int beta_inverse(const FiniteSet& m, const Point& q);

// Bijection from a finite set (the domain, M_+) onto another of equal size
// (the codomain, M_-), stored as pairs sorted by domain point.
class SigmaMap {
 public:
  SigmaMap(FiniteSet domain, FiniteSet codomain, std::vector<std::pair<Point, Point>> pairs);
  static SigmaMap empty(Int ray_count);
  static SigmaMap identity_on(const FiniteSet& m);

  const FiniteSet& domain() const { return domain_; }
  const FiniteSet& codomain() const { return codomain_; }
  const std::vector<std::pair<Point, Point>>& pairs() const { return pairs_; }

  Point apply(const Point& q) const;
  Point apply_inverse(const Point& q) const;
  SigmaMap inverted() const;
  SigmaMap extended(const Point& from, const Point& to) const;
  bool is_identity() const;

  friend bool operator==(const SigmaMap&, const SigmaMap&) = default;

 private:
  FiniteSet domain_;
  FiniteSet codomain_;
  std::vector<std::pair<Point, Point>> pairs_;
};

// Representative triple (M_-, sigma (g_1..g_n), M_+) for an element of the
// Houghton-like group over the tagged class.
class Triple {
 public:
  Triple(Int ray_count, FiniteSet minus, SigmaMap sigma, std::vector<EPPerm> components,
         FiniteSet plus, GroupClass cls);
  static Triple identity(Int ray_count, const GroupClass& cls);

  Int ray_count() const { return ray_count_; }
  const FiniteSet& minus() const { return minus_; }
  const FiniteSet& plus() const { return plus_; }
  const SigmaMap& sigma() const { return sigma_; }
  const std::vector<EPPerm>& components() const { return components_; }
  const GroupClass& group_class() const { return cls_; }

  friend bool operator==(const Triple&, const Triple&) = default;

 private:
  Int ray_count_;
  FiniteSet minus_;
  SigmaMap sigma_;
  std::vector<EPPerm> components_;
  FiniteSet plus_;
  GroupClass cls_;
};

// Semantic value of a triple: the ray count together with the flattening of
// the represented bijection through (k, i) -> k + (i-1)n.  Canonical flats
// give decidable equality for all triple arithmetic.
class HoughtonElement {
 public:
  // Checks that rays are preserved cofinitely (flat(x) = x mod n past the
  // threshold), which holds for every triple-derived element.
  HoughtonElement(Int ray_count, EPPerm flat);
  static HoughtonElement identity(Int ray_count) { return HoughtonElement(ray_count, EPPerm()); }
  // For ray re-indexing images, which may permute rays inside a block.
  static HoughtonElement unchecked(Int ray_count, EPPerm flat);

  Int ray_count() const { return ray_count_; }
  const EPPerm& flat() const { return flat_; }

  friend bool operator==(const HoughtonElement&, const HoughtonElement&) = default;
  friend auto operator<=>(const HoughtonElement&, const HoughtonElement&) = default;

 private:
  HoughtonElement() : ray_count_(1) {}
  Int ray_count_;
  EPPerm flat_;
};

HoughtonElement multiply(const HoughtonElement& a, const HoughtonElement& b);
HoughtonElement inverse(const HoughtonElement& a);

Int flatten_point(const Point& q, Int n);
Point unflatten_point(Int x, Int n);

// Direct evaluation of the represented bijection at one point.
Point eval_triple_at(const Triple& t, const Point& q);
HoughtonElement eval_triple(const Triple& t);

Triple expand(const Triple& t, Int k);
Triple general_expand(const Triple& t, Int k, Int j);

// Smallest triple representing e: the finite sets are exactly the points
// changing ray.  Throws if some ray component falls outside the class.
Triple minimal_triple(const HoughtonElement& e, const GroupClass& cls);

Triple multiply(const Triple& a, const Triple& b);
Triple invert_triple(const Triple& t);

// Per-ray count difference C_k(M_-) - C_k(M_+); expansion-invariant,
// additive under multiplication, components sum to zero.
std::vector<Int> chi(const Triple& t);

// (g_1,..,g_n) -> triple with empty finite sets.
Triple embed_components(const std::vector<EPPerm>& components, const GroupClass& cls,
                        Int ray_count = -1);

// Splits a triple (ray count >= 2) into pure-Houghton factors (identity
// components) and component factors (empty finite sets) whose ordered
// product evaluates to the input.
std::vector<Triple> factorize(const Triple& t);

// For a single ray and a strongly closed infinite class: the class element
// whose induced bijection equals the triple's evaluation.
EPPerm reduce_h1(const Triple& t, const GroupClass& cls);

// Image of an element under the first shifting map, computed on the flat form.
HoughtonElement psi1(const HoughtonElement& e);

// Pointwise re-indexing of an element whose ray components are themselves
// flattened Houghton-like values over `inner_class` with `inner_n` rays:
// outer ray k, inner ray l becomes ray (k-1)*inner_n + l.  A group
// monomorphism (conjugation by a fixed re-indexing permutation).
HoughtonElement composite_iso(const HoughtonElement& outer, Int inner_n,
                              const GroupClass& inner_class);

// Expands until every component is the identity (components must have
// finite support); the evaluation is unchanged.
Triple normalize_finite_components(const Triple& t);

struct BallResult {
  std::vector<HoughtonElement> elements;  // sorted canonical forms
  bool truncated = false;
};

// All products of at most `radius` generators or inverses, deduplicated by
// canonical form.
BallResult ball_enumerate(const std::vector<HoughtonElement>& generators, Int radius,
                          const ResourceLimits& limits = {});

}  // namespace shiftsim

#endif
