#include "shiftsim/houghton.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "shiftsim/shift.hpp"

namespace shiftsim {

FiniteSet::FiniteSet(Int ray_count, std::vector<Point> points)
    : ray_count_(ray_count), points_(std::move(points)) {
  if (ray_count_ < 1) throw DomainError("ray count must be positive");
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& q = points_[i];
    if (q.ray < 1 || q.ray > ray_count_) throw DomainError("point ray out of range");
    if (q.index < 1) throw DomainError("point index must be positive");
    if (i > 0 && points_[i - 1] == q) throw DomainError("duplicate point in finite set");
  }
}

bool FiniteSet::contains(const Point& q) const {
  return std::binary_search(points_.begin(), points_.end(), q);
}

FiniteSet FiniteSet::with(const Point& q) const {
  if (contains(q)) throw DomainError("point already present");
  std::vector<Point> pts = points_;
  pts.push_back(q);
  return FiniteSet(ray_count_, std::move(pts));
}

FiniteSet FiniteSet::without(const Point& q) const {
  if (!contains(q)) throw DomainError("point not present");
  std::vector<Point> pts;
  pts.reserve(points_.size() - 1);
  for (const Point& r : points_)
    if (!(r == q)) pts.push_back(r);
  return FiniteSet(ray_count_, std::move(pts));
}

FiniteSet FiniteSet::united(const FiniteSet& other) const {
  std::vector<Point> pts = points_;
  for (const Point& q : other.points())
    if (!contains(q)) pts.push_back(q);
  return FiniteSet(std::max(ray_count_, other.ray_count_), std::move(pts));
}

Int FiniteSet::count_on_ray(Int k) const {
  Int c = 0;
  for (const Point& q : points_)
    if (q.ray == k) ++c;
  return c;
}

Int FiniteSet::max_index_on_ray(Int k) const {
  Int m = 0;
  for (const Point& q : points_)
    if (q.ray == k) m = std::max(m, q.index);
  return m;
}

Point beta(const FiniteSet& m, Int k, Int j) {
  if (k < 1 || k > m.ray_count()) throw DomainError("ray out of range");
  if (j < 1) throw DomainError("enumeration index must be positive");
  Int target = j;
  for (const Point& q : m.points())
    if (q.ray == k && q.index <= target) ++target;
  return Point{k, target};
}

Int beta_inverse(const FiniteSet& m, const Point& q) {
  if (m.contains(q)) throw DomainError("point lies in the removed set");
  Int skipped = 0;
  for (const Point& r : m.points())
    if (r.ray == q.ray && r.index < q.index) ++skipped;
  return q.index - skipped;
}

SigmaMap::SigmaMap(FiniteSet domain, FiniteSet codomain,
                   std::vector<std::pair<Point, Point>> pairs)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), pairs_(std::move(pairs)) {
  if (domain_.size() != codomain_.size() ||
      static_cast<Int>(pairs_.size()) != domain_.size())
    throw DomainError("sigma must pair equal-size sets");
  std::sort(pairs_.begin(), pairs_.end());
  std::vector<Point> froms, tos;
  for (const auto& [from, to] : pairs_) {
    froms.push_back(from);
    tos.push_back(to);
  }
  std::sort(tos.begin(), tos.end());
  if (froms != domain_.points() || tos != codomain_.points())
    throw DomainError("sigma pairs must cover the domain and codomain exactly");
}

SigmaMap SigmaMap::empty(Int ray_count) {
  return SigmaMap(FiniteSet::empty(ray_count), FiniteSet::empty(ray_count), {});
}

SigmaMap SigmaMap::identity_on(const FiniteSet& m) {
  std::vector<std::pair<Point, Point>> pairs;
  for (const Point& q : m.points()) pairs.emplace_back(q, q);
  return SigmaMap(m, m, std::move(pairs));
}

Point SigmaMap::apply(const Point& q) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), q,
                             [](const auto& pair, const Point& p) { return pair.first < p; });
  if (it == pairs_.end() || !(it->first == q)) throw DomainError("point outside sigma domain");
  return it->second;
}

Point SigmaMap::apply_inverse(const Point& q) const {
  for (const auto& [from, to] : pairs_)
    if (to == q) return from;
  throw DomainError("point outside sigma codomain");
}

SigmaMap SigmaMap::inverted() const {
  std::vector<std::pair<Point, Point>> pairs;
  for (const auto& [from, to] : pairs_) pairs.emplace_back(to, from);
  return SigmaMap(codomain_, domain_, std::move(pairs));
}

SigmaMap SigmaMap::extended(const Point& from, const Point& to) const {
  std::vector<std::pair<Point, Point>> pairs = pairs_;
  pairs.emplace_back(from, to);
  return SigmaMap(domain_.with(from), codomain_.with(to), std::move(pairs));
}

bool SigmaMap::is_identity() const {
  for (const auto& [from, to] : pairs_)
    if (!(from == to)) return false;
  return true;
}

Triple::Triple(Int ray_count, FiniteSet minus, SigmaMap sigma, std::vector<EPPerm> components,
               FiniteSet plus, GroupClass cls)
    : ray_count_(ray_count),
      minus_(std::move(minus)),
      sigma_(std::move(sigma)),
      components_(std::move(components)),
      plus_(std::move(plus)),
      cls_(cls) {
  if (ray_count_ < 1) throw DomainError("ray count must be positive");
  if (minus_.ray_count() != ray_count_ || plus_.ray_count() != ray_count_)
    throw DomainError("finite sets live over a different ray count");
  if (!(sigma_.domain() == plus_) || !(sigma_.codomain() == minus_))
    throw DomainError("sigma must map the plus set onto the minus set");
  if (static_cast<Int>(components_.size()) != ray_count_)
    throw DomainError("one component per ray required");
  for (Int k = 1; k <= ray_count_; ++k)
    if (!cls_.contains(components_[static_cast<std::size_t>(k - 1)]))
      throw DomainError("component on ray " + std::to_string(k) + " is not in " + cls_.name());
}

Triple Triple::identity(Int ray_count, const GroupClass& cls) {
  return Triple(ray_count, FiniteSet::empty(ray_count), SigmaMap::empty(ray_count),
                std::vector<EPPerm>(static_cast<std::size_t>(ray_count)),
                FiniteSet::empty(ray_count), cls);
}

HoughtonElement::HoughtonElement(Int ray_count, EPPerm flat)
    : ray_count_(ray_count), flat_(std::move(flat)) {
  if (ray_count_ < 1) throw DomainError("ray count must be positive");
  // Rays preserved cofinitely: checked on one lcm window past the threshold.
  Int t = flat_.threshold();
  Int l = checked_lcm(flat_.period(), ray_count_);
  for (Int x = t + 1; x <= t + l; ++x)
    if ((flat_.apply(x) - x) % ray_count_ != 0)
      throw DomainError("flattened permutation does not preserve rays cofinitely");
}

HoughtonElement HoughtonElement::unchecked(Int ray_count, EPPerm flat) {
  if (ray_count < 1) throw DomainError("ray count must be positive");
  HoughtonElement e;
  e.ray_count_ = ray_count;
  e.flat_ = std::move(flat);
  return e;
}

HoughtonElement multiply(const HoughtonElement& a, const HoughtonElement& b) {
  if (a.ray_count() != b.ray_count()) throw DomainError("ray counts differ");
  return HoughtonElement::unchecked(a.ray_count(), compose(a.flat(), b.flat()));
}

HoughtonElement inverse(const HoughtonElement& a) {
  return HoughtonElement::unchecked(a.ray_count(), inverse(a.flat()));
}

Int flatten_point(const Point& q, Int n) {
  return checked_add(q.ray, checked_mul(q.index - 1, n));
}

Point unflatten_point(Int x, Int n) {
  if (x < 1) throw DomainError("flattened points are positive");
  return Point{(x - 1) % n + 1, (x - 1) / n + 1};
}

Point eval_triple_at(const Triple& t, const Point& q) {
  if (t.plus().contains(q)) return t.sigma().apply(q);
  Int j = beta_inverse(t.plus(), q);
  Int m = t.components()[static_cast<std::size_t>(q.ray - 1)].apply(j);
  return beta(t.minus(), q.ray, m);
}

HoughtonElement eval_triple(const Triple& t) {
  Int n = t.ray_count();
  Int l = 1;
  for (const EPPerm& g : t.components()) l = checked_lcm(l, g.period());
  Int period = checked_mul(n, l);

  // Per ray, past S everything is in the stable regime: the plus-side
  // enumeration is a shift, the component is in its recursion window, and
  // the image clears the minus set.
  Int s = 0;
  for (Int k = 1; k <= n; ++k) {
    const EPPerm& g = t.components()[static_cast<std::size_t>(k - 1)];
    Int a_plus = t.plus().max_index_on_ray(k);
    Int a_minus = t.minus().max_index_on_ray(k);
    Int c_plus = t.plus().count_on_ray(k);
    Int x_k = 0;
    if (a_minus > 0) {
      EPPerm ginv = inverse(g);
      for (Int v = 1; v <= a_minus; ++v) x_k = std::max(x_k, ginv.apply(v));
    }
    s = std::max(s, std::max(a_plus, std::max(g.threshold(), x_k) + c_plus));
  }

  Int threshold = checked_add(checked_mul(n, s + 2), period);
  EPPerm flat = EPPerm::from_pointwise(period, threshold, [&](Int x) {
    return flatten_point(eval_triple_at(t, unflatten_point(x, n)), n);
  });
  return HoughtonElement(n, std::move(flat));
}

Triple general_expand(const Triple& t, Int k, Int j) {
  if (k < 1 || k > t.ray_count()) throw DomainError("ray out of range");
  if (j < 1) throw DomainError("expansion index must be positive");
  const EPPerm& g = t.components()[static_cast<std::size_t>(k - 1)];
  Point new_plus = beta(t.plus(), k, j);
  Point new_minus = beta(t.minus(), k, g.apply(j));
  std::vector<EPPerm> components = t.components();
  components[static_cast<std::size_t>(k - 1)] = psi(g, j);
  return Triple(t.ray_count(), t.minus().with(new_minus),
                t.sigma().extended(new_plus, new_minus), std::move(components),
                t.plus().with(new_plus), t.group_class());
}

Triple expand(const Triple& t, Int k) { return general_expand(t, k, 1); }

Triple minimal_triple(const HoughtonElement& e, const GroupClass& cls) {
  Int n = e.ray_count();
  const EPPerm& flat = e.flat();

  std::vector<Point> plus_points, minus_points;
  std::vector<std::pair<Point, Point>> pairs;
  for (Int x = 1; x <= flat.threshold(); ++x) {
    Int y = flat.apply(x);
    if ((y - x) % n == 0) continue;
    Point from = unflatten_point(x, n);
    Point to = unflatten_point(y, n);
    plus_points.push_back(from);
    minus_points.push_back(to);
    pairs.emplace_back(from, to);
  }
  FiniteSet plus(n, std::move(plus_points));
  FiniteSet minus(n, std::move(minus_points));
  SigmaMap sigma(plus, minus, std::move(pairs));

  Int l = checked_lcm(flat.period(), n);
  Int q_hint = l / n;
  std::vector<EPPerm> components;
  components.reserve(static_cast<std::size_t>(n));
  for (Int k = 1; k <= n; ++k) {
    Int bound = plus.max_index_on_ray(k) + minus.max_index_on_ray(k) + plus.count_on_ray(k) +
                (flat.threshold() + flat.slack()) / n + q_hint + 4;
    EPPerm g = EPPerm::from_pointwise(q_hint, bound, [&](Int j) {
      Point image = unflatten_point(flat.apply(flatten_point(beta(plus, k, j), n)), n);
      return beta_inverse(minus, image);
    });
    if (!cls.contains(g))
      throw DomainError("element is not in H_" + std::to_string(n) + "(" + cls.name() +
                        "): ray " + std::to_string(k) + " component falls outside the class");
    components.push_back(std::move(g));
  }
  return Triple(n, std::move(minus), std::move(sigma), std::move(components), std::move(plus),
                cls);
}

Triple multiply(const Triple& a, const Triple& b) {
  if (a.ray_count() != b.ray_count()) throw DomainError("ray counts differ");
  if (!(a.group_class() == b.group_class())) throw DomainError("class tags differ");
  Int n = a.ray_count();

  FiniteSet target = a.plus().united(b.minus());

  Triple left = a;
  for (const Point& q : target.points()) {
    if (left.plus().contains(q)) continue;
    left = general_expand(left, q.ray, beta_inverse(left.plus(), q));
  }

  Triple right = b;
  for (const Point& q : target.points()) {
    if (right.minus().contains(q)) continue;
    Int m = beta_inverse(right.minus(), q);
    const EPPerm& g = right.components()[static_cast<std::size_t>(q.ray - 1)];
    right = general_expand(right, q.ray, inverse(g).apply(m));
  }

  // left.plus() == right.minus() == target now.
  std::vector<std::pair<Point, Point>> pairs;
  for (const auto& [from, mid] : right.sigma().pairs())
    pairs.emplace_back(from, left.sigma().apply(mid));
  SigmaMap sigma(right.plus(), left.minus(), std::move(pairs));

  std::vector<EPPerm> components;
  for (Int k = 0; k < n; ++k)
    components.push_back(compose(left.components()[static_cast<std::size_t>(k)],
                                 right.components()[static_cast<std::size_t>(k)]));
  return Triple(n, left.minus(), std::move(sigma), std::move(components), right.plus(),
                a.group_class());
}

Triple invert_triple(const Triple& t) {
  std::vector<EPPerm> components;
  for (const EPPerm& g : t.components()) components.push_back(inverse(g));
  return Triple(t.ray_count(), t.plus(), t.sigma().inverted(), std::move(components), t.minus(),
                t.group_class());
}

std::vector<Int> chi(const Triple& t) {
  std::vector<Int> result;
  for (Int k = 1; k <= t.ray_count(); ++k)
    result.push_back(t.minus().count_on_ray(k) - t.plus().count_on_ray(k));
  return result;
}

Triple embed_components(const std::vector<EPPerm>& components, const GroupClass& cls,
                        Int ray_count) {
  Int n = ray_count < 0 ? static_cast<Int>(components.size()) : ray_count;
  return Triple(n, FiniteSet::empty(n), SigmaMap::empty(n), components, FiniteSet::empty(n), cls);
}

std::vector<Triple> factorize(const Triple& t) {
  Int n = t.ray_count();
  if (n < 2) throw DomainError("factorization needs at least two rays");
  const GroupClass& cls = t.group_class();
  std::vector<EPPerm> ids(static_cast<std::size_t>(n));

  std::vector<Triple> factors;
  // Pure-Houghton head absorbing sigma and the mismatch of the finite sets.
  if (!(t.minus() == t.plus()) || !t.sigma().is_identity())
    factors.push_back(Triple(n, t.minus(), t.sigma(), ids, t.plus(), cls));

  const FiniteSet& m = t.plus();
  for (Int k = 1; k <= n; ++k) {
    const EPPerm& g = t.components()[static_cast<std::size_t>(k - 1)];
    if (g.is_identity()) continue;
    std::vector<EPPerm> slot = ids;
    slot[static_cast<std::size_t>(k - 1)] = g;
    Triple embedded = embed_components(slot, cls, n);
    if (m.size() == 0) {
      factors.push_back(std::move(embedded));
      continue;
    }
    // Conjugate by a Houghton element moving M onto an initial segment of
    // another ray, where it can be reduced away.
    Int other = k % n + 1;
    std::vector<Point> segment;
    for (Int i = 1; i <= m.size(); ++i) segment.push_back(Point{other, i});
    FiniteSet moved(n, std::move(segment));
    std::vector<std::pair<Point, Point>> pairing;
    for (Int i = 0; i < m.size(); ++i)
      pairing.emplace_back(m.points()[static_cast<std::size_t>(i)],
                           moved.points()[static_cast<std::size_t>(i)]);
    Triple conjugator(n, moved, SigmaMap(m, moved, std::move(pairing)), ids, m, cls);
    factors.push_back(invert_triple(conjugator));
    factors.push_back(std::move(embedded));
    factors.push_back(std::move(conjugator));
  }
  return factors;
}

EPPerm reduce_h1(const Triple& t, const GroupClass& cls) {
  if (t.ray_count() != 1) throw DomainError("reduction applies to single-ray triples");
  if (!cls.strongly_closed() || !cls.is_infinite())
    throw DomainError("class " + cls.name() + " does not support arrow insertion");

  // Split off the finitely supported part carrying sigma and the sets.
  EPPerm head =
      eval_triple(Triple(1, t.minus(), t.sigma(), {EPPerm::identity()}, t.plus(), cls)).flat();

  EPPerm g = t.components()[0];
  FiniteSet m = t.plus();
  while (m.size() > 0) {
    Point q = m.points().back();
    FiniteSet rest = m.without(q);
    g = section_into_stabilizer(cls, g, beta_inverse(rest, q));
    m = rest;
  }
  EPPerm result = compose(head, g);
  if (!cls.contains(result)) throw Error("internal: reduction left " + cls.name());
  return result;
}

HoughtonElement psi1(const HoughtonElement& e) {
  return HoughtonElement(e.ray_count(), psi(e.flat(), 1));
}

namespace {

// x = k + (l-1)m + (q-1)mn  ->  y = (k-1)n + l + (q-1)mn
EPPerm block_reindex(Int m, Int n) {
  Int mn = checked_mul(m, n);
  if (mn == 1) return EPPerm::identity();
  std::vector<Int> table(static_cast<std::size_t>(mn));
  for (Int x = 1; x <= mn; ++x) {
    Int k = (x - 1) % m + 1;
    Int l = (x - 1) / m + 1;
    table[static_cast<std::size_t>(x - 1)] = (k - 1) * n + l;
  }
  return EPPerm::from_periodic(mn, mn, std::move(table));
}

}  // namespace

HoughtonElement composite_iso(const HoughtonElement& outer, Int inner_n,
                              const GroupClass& inner_class) {
  if (inner_n < 1) throw DomainError("inner ray count must be positive");
  Int m = outer.ray_count();

  // Nesting check: every ray component must be a flattened element over the
  // inner class, up to the constant residue twist contributed by the outer
  // enumeration shifts and up to finite support (which expansions absorb).
  // For the finite inner classes that means finite support.
  GroupClass nesting_class =
      inner_class.is_infinite() ? inner_class : GroupClass::symfin();
  Triple mt = minimal_triple(outer, GroupClass::universe());
  for (Int k = 1; k <= m; ++k) {
    const EPPerm& g = mt.components()[static_cast<std::size_t>(k - 1)];
    Int t = g.threshold();
    Int window = checked_lcm(g.period(), inner_n);
    Int twist = ((g.apply(t + 1) - (t + 1)) % inner_n + inner_n) % inner_n;
    for (Int y = t + 1; y <= t + window; ++y)
      if (((g.apply(y) - y) % inner_n + inner_n) % inner_n != twist)
        throw DomainError("malformed nesting: ray " + std::to_string(k) +
                          " component has no constant residue twist mod " +
                          std::to_string(inner_n));
    try {
      EPPerm untwisted = compose(power(make_rotator(inner_n), -twist), g);
      minimal_triple(HoughtonElement(inner_n, untwisted), nesting_class);
    } catch (const DomainError& e) {
      throw DomainError("malformed nesting: ray " + std::to_string(k) + ": " +
                        std::string(e.what()));
    }
  }

  EPPerm rho = block_reindex(m, inner_n);
  EPPerm flat = compose(rho, compose(outer.flat(), inverse(rho)));
  return HoughtonElement::unchecked(checked_mul(m, inner_n), std::move(flat));
}

Triple normalize_finite_components(const Triple& t) {
  Triple result = t;
  for (Int k = 1; k <= t.ray_count(); ++k) {
    const EPPerm& g = result.components()[static_cast<std::size_t>(k - 1)];
    if (!g.has_finite_support())
      throw DomainError("component on ray " + std::to_string(k) + " has infinite support");
    Int guard = g.support_bound() + 1;
    while (!result.components()[static_cast<std::size_t>(k - 1)].is_identity()) {
      if (--guard < 0) throw Error("internal: finite component failed to collapse");
      result = expand(result, k);
    }
  }
  return result;
}

BallResult ball_enumerate(const std::vector<HoughtonElement>& generators, Int radius,
                          const ResourceLimits& limits) {
  if (radius < 0) throw DomainError("radius must be non-negative");
  if (radius > limits.max_radius)
    throw DomainError("radius " + std::to_string(radius) + " exceeds the configured bound " +
                      std::to_string(limits.max_radius));
  Int n = generators.empty() ? 1 : generators.front().ray_count();

  std::vector<EPPerm> steps;
  for (const auto& e : generators) {
    if (e.ray_count() != n) throw DomainError("generators have mixed ray counts");
    if (e.flat().is_identity()) continue;
    steps.push_back(e.flat());
    steps.push_back(inverse(e.flat()));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

  BallResult result;
  std::set<EPPerm> seen{EPPerm::identity()};
  std::vector<EPPerm> layer{EPPerm::identity()};
  for (Int r = 0; r < radius && !layer.empty() && !result.truncated; ++r) {
    std::vector<EPPerm> next;
    for (const EPPerm& w : layer) {
      for (const EPPerm& s : steps) {
        if (seen.size() >= limits.max_elements) {
          result.truncated = true;
          break;
        }
        EPPerm candidate = compose(w, s);
        if (seen.insert(candidate).second) next.push_back(candidate);
      }
      if (result.truncated) break;
    }
    layer = std::move(next);
  }
  for (const EPPerm& g : seen) result.elements.push_back(HoughtonElement::unchecked(n, g));
  return result;
}

}  // namespace shiftsim
