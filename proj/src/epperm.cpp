#include "shiftsim/epperm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace shiftsim {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("integer overflow in addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("integer overflow in multiplication");
  return r;
}

Int checked_lcm(Int a, Int b) {
  Int g = std::gcd(a, b);
  return checked_mul(a / g, b);
}

namespace {

// Evaluation on a raw (not yet canonical) representation.  Assumes the
// window (T-p, T] exists (T >= p), except for the empty identity table.
Int raw_apply(Int p, Int t, const std::vector<Int>& table, Int i) {
  if (i <= t) return table[static_cast<std::size_t>(i - 1)];
  if (t == 0) return i;  // p == 1, identity tail from the virtual base g(0) = 0
  Int k = (i - t + p - 1) / p;
  return checked_add(table[static_cast<std::size_t>(i - k * p - 1)], checked_mul(k, p));
}

void validate_raw(Int p, Int t, const std::vector<Int>& table) {
  if (p < 1) throw ValidationError(ValidationError::Code::kBadThreshold, "period must be positive");
  if (t < 0 || static_cast<Int>(table.size()) != t)
    throw ValidationError(ValidationError::Code::kTableSize,
                          "table length must equal the threshold");
  if (t == 0) {
    if (p != 1)
      throw ValidationError(ValidationError::Code::kBadThreshold,
                            "empty table is only valid with period 1");
    return;  // identity
  }
  if (p > 1 && t < p)
    throw ValidationError(ValidationError::Code::kBadThreshold,
                          "threshold must be at least the period");

  std::unordered_set<Int> seen;
  seen.reserve(table.size() * 2);
  for (Int v : table) {
    if (v < 1)
      throw ValidationError(ValidationError::Code::kNonPositiveEntry,
                            "table entry " + std::to_string(v) + " is not positive");
    if (!seen.insert(v).second)
      throw ValidationError(ValidationError::Code::kDuplicateEntry,
                            "duplicate table entry " + std::to_string(v));
  }

  // Window residues must form a complete system mod p.
  std::unordered_map<Int, Int> window_by_residue;  // g(j) mod p -> j
  for (Int j = t - p + 1; j <= t; ++j) {
    Int v = table[static_cast<std::size_t>(j - 1)];
    Int r = ((v % p) + p) % p;
    if (!window_by_residue.emplace(r, j).second)
      throw ValidationError(ValidationError::Code::kIncompleteResidues,
                            "window residues are not complete mod " + std::to_string(p));
  }

  Int b = *std::max_element(table.begin(), table.end());

  // No tail value <= max(table) may hit a table entry.
  for (Int j = t - p + 1; j <= t; ++j) {
    Int v = table[static_cast<std::size_t>(j - 1)];
    for (Int w = checked_add(v, p); w <= b; w = checked_add(w, p)) {
      if (seen.count(w))
        throw ValidationError(ValidationError::Code::kInjectivityClosure,
                              "tail value " + std::to_string(w) + " collides with the table");
    }
  }

  // Every m in [1, max(table)+p] must be a table entry or a tail value.
  for (Int m = 1; m <= checked_add(b, p); ++m) {
    if (seen.count(m)) continue;
    Int r = ((m % p) + p) % p;
    Int j = window_by_residue.at(r);
    Int v = table[static_cast<std::size_t>(j - 1)];
    if (m <= v)
      throw ValidationError(ValidationError::Code::kSurjectivityClosure,
                            "value " + std::to_string(m) + " is never attained");
  }
}

}  // namespace

EPPerm EPPerm::from_periodic(Int period, Int threshold, std::vector<Int> table) {
  validate_raw(period, threshold, table);
  if (threshold == 0) return identity();

  // Minimal eventual period divides any valid one; test divisors in order.
  // d is an eventual period iff g(i+d) = g(i)+d on one full p-window past T.
  auto val = [&](Int i) { return raw_apply(period, threshold, table, i); };
  Int minimal = period;
  for (Int d = 1; d < period; ++d) {
    if (period % d != 0) continue;
    bool ok = true;
    for (Int i = threshold + 1; i <= threshold + period; ++i) {
      if (val(i + d) != checked_add(val(i), d)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      minimal = d;
      break;
    }
  }

  // Largest j where the extension rule with the minimal period fails.
  Int last_bad = 0;
  for (Int j = threshold; j >= 1; --j) {
    if (val(j + minimal) != checked_add(val(j), minimal)) {
      last_bad = j;
      break;
    }
  }

  Int min_threshold;
  if (last_bad == 0)
    min_threshold = (minimal == 1) ? 0 : minimal;
  else
    min_threshold = last_bad + minimal;

  if (min_threshold == 0) return identity();

  std::vector<Int> canonical(static_cast<std::size_t>(min_threshold));
  for (Int i = 1; i <= min_threshold; ++i) canonical[static_cast<std::size_t>(i - 1)] = val(i);
  return EPPerm(minimal, min_threshold, std::move(canonical));
}

EPPerm EPPerm::from_cycles(const std::vector<std::vector<Int>>& cycles) {
  Int top = 0;
  std::unordered_set<Int> seen;
  for (const auto& c : cycles)
    for (Int v : c) {
      if (v < 1)
        throw ValidationError(ValidationError::Code::kNonPositiveEntry,
                              "cycle entry " + std::to_string(v) + " is not positive");
      if (!seen.insert(v).second)
        throw ValidationError(ValidationError::Code::kDuplicateEntry,
                              "cycles overlap at " + std::to_string(v));
      top = std::max(top, v);
    }
  if (top == 0) return identity();

  // One fixed point past the support, so the period-1 recursion takes over.
  ++top;
  std::vector<Int> table(static_cast<std::size_t>(top));
  for (Int i = 1; i <= top; ++i) table[static_cast<std::size_t>(i - 1)] = i;
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Int from = c[i];
      Int to = c[(i + 1) % c.size()];
      table[static_cast<std::size_t>(from - 1)] = to;
    }
  }
  return from_periodic(1, top, std::move(table));
}

EPPerm EPPerm::from_pointwise(Int period_hint, Int threshold_hint,
                              const std::function<Int(Int)>& value) {
  Int t = std::max(threshold_hint, period_hint);
  std::vector<Int> table(static_cast<std::size_t>(t));
  for (Int i = 1; i <= t; ++i) table[static_cast<std::size_t>(i - 1)] = value(i);
  EPPerm result = from_periodic(period_hint, t, std::move(table));
  for (Int i = t + 1; i <= t + 2 * period_hint + 8; ++i) {
    if (result.apply(i) != value(i))
      throw Error("internal: eventual-periodicity hint too small");
  }
  return result;
}

Int EPPerm::apply(Int i) const {
  if (i < 1) throw DomainError("permutations act on positive integers");
  if (i <= threshold_) return table_[static_cast<std::size_t>(i - 1)];
  if (threshold_ == 0) return i;
  Int k = (i - threshold_ + period_ - 1) / period_;
  return checked_add(table_[static_cast<std::size_t>(i - k * period_ - 1)],
                     checked_mul(k, period_));
}

Int EPPerm::support_bound() const {
  Int bound = 0;
  for (Int i = 1; i <= threshold_; ++i)
    if (apply(i) != i) bound = std::max(bound, std::max(i, apply(i)));
  if (period_ != 1) bound = std::max(bound, threshold_);  // infinite support; threshold as a floor
  return bound;
}

Int EPPerm::max_table_value() const {
  Int b = 0;
  for (Int v : table_) b = std::max(b, v);
  return b;
}

Int EPPerm::slack() const {
  Int d = 0;
  for (Int j = std::max<Int>(1, threshold_ - period_ + 1); j <= threshold_; ++j)
    d = std::max(d, j - apply(j));
  return d;
}

std::string EPPerm::to_string() const {
  std::ostringstream os;
  os << "p=" << period_ << ",T=" << threshold_ << ",table=[";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) os << ",";
    os << table_[i];
  }
  os << "]";
  return os.str();
}

EPPerm compose(const EPPerm& g, const EPPerm& h) {
  if (g.is_identity()) return h;
  if (h.is_identity()) return g;
  Int l = checked_lcm(g.period(), h.period());
  Int t0 = std::max(h.threshold(), checked_add(g.threshold(), h.slack()));
  return EPPerm::from_pointwise(l, checked_add(t0, l),
                                [&](Int i) { return g.apply(h.apply(i)); });
}

EPPerm inverse(const EPPerm& g) {
  if (g.is_identity()) return g;
  Int p = g.period();
  Int t = g.threshold();
  Int b = g.max_table_value();  // >= t >= 1

  std::unordered_map<Int, Int> window_by_residue;
  for (Int j = t - p + 1; j <= t; ++j) {
    if (j < 1) continue;
    window_by_residue[((g.apply(j) % p) + p) % p] = j;
  }
  auto tail_preimage = [&](Int m) {
    Int j = window_by_residue.at(((m % p) + p) % p);
    Int k = (m - g.apply(j)) / p;
    return checked_add(j, checked_mul(k, p));
  };

  std::vector<Int> inv(static_cast<std::size_t>(b) + 1, 0);
  for (Int j = 1; j <= t; ++j) {
    Int v = g.apply(j);
    if (v <= b) inv[static_cast<std::size_t>(v)] = j;
  }
  for (Int m = 1; m <= b; ++m)
    if (inv[static_cast<std::size_t>(m)] == 0) inv[static_cast<std::size_t>(m)] = tail_preimage(m);

  return EPPerm::from_pointwise(p, b, [&](Int m) {
    return m <= b ? inv[static_cast<std::size_t>(m)] : tail_preimage(m);
  });
}

EPPerm conjugate(const EPPerm& x, const EPPerm& y) {
  return compose(inverse(y), compose(x, y));
}

EPPerm power(const EPPerm& g, Int e) {
  EPPerm base = e < 0 ? inverse(g) : g;
  Int n = e < 0 ? -e : e;
  EPPerm acc = EPPerm::identity();
  for (Int i = 0; i < n; ++i) acc = compose(acc, base);
  return acc;
}

EPPerm make_slide(Int a, Int b, Int p) {
  if (p < 2 || a < 1 || b < 1 || a > p || b > p || a == b)
    throw DomainError("slide needs distinct residues inside [1..p], p >= 2");
  std::vector<Int> table(static_cast<std::size_t>(2 * p));
  for (Int i = 1; i <= 2 * p; ++i) table[static_cast<std::size_t>(i - 1)] = i;
  table[static_cast<std::size_t>(a - 1)] = a + p;
  table[static_cast<std::size_t>(a + p - 1)] = a + 2 * p;
  table[static_cast<std::size_t>(b - 1)] = a;
  table[static_cast<std::size_t>(b + p - 1)] = b;
  return EPPerm::from_periodic(p, 2 * p, std::move(table));
}

EPPerm make_residue_permutation(const std::vector<Int>& image) {
  Int p = static_cast<Int>(image.size());
  if (p < 1) throw DomainError("residue permutation needs a nonempty image");
  return EPPerm::from_periodic(p, p, image);
}

EPPerm make_rotator(Int n) {
  if (n < 1) throw DomainError("rotator needs a positive modulus");
  if (n == 1) return EPPerm::identity();
  std::vector<Int> table(static_cast<std::size_t>(n));
  for (Int i = 1; i < n; ++i) table[static_cast<std::size_t>(i - 1)] = i + 1;
  table[static_cast<std::size_t>(n - 1)] = 1;
  return EPPerm::from_periodic(n, n, std::move(table));
}

EPPerm slide() { return make_slide(1, 2, 2); }

EPPerm flip() { return make_residue_permutation({2, 1}); }

bool germ_equals(const Germ& a, const Germ& b) {
  const EPPerm& x = a.representative();
  const EPPerm& y = b.representative();
  Int n = std::max(x.threshold(), y.threshold());
  Int l = checked_lcm(x.period(), y.period());
  for (Int i = n + 1; i <= n + l; ++i)
    if (x.apply(i) != y.apply(i)) return false;
  return true;
}

}  // namespace shiftsim
