#include "shiftsim/shift.hpp"

#include <algorithm>

namespace shiftsim {

EPPerm psi(const EPPerm& g, Int j) {
  if (j < 1) throw DomainError("shifting maps are indexed by positive integers");
  if (g.is_identity()) return g;

  Int m = g.apply(j);
  Int p = g.period();
  // Past x = max(T, m + slack) every value exceeds m, so the renumbering
  // offset stabilizes one period later.
  Int stable = std::max(g.threshold(), checked_add(m, g.slack()));
  Int t = checked_add(std::max(j, stable), p);

  auto value = [&](Int i) {
    Int v = (i < j) ? g.apply(i) : g.apply(i + 1);
    return v > m ? v - 1 : v;
  };
  return EPPerm::from_pointwise(p, t, value);
}

EPPerm insert_arrow(const EPPerm& g, Int j, Int m) {
  if (j < 1 || m < 1) throw DomainError("arrow endpoints must be positive");

  Int p = g.period();
  Int stable = std::max(g.threshold(), checked_add(m, g.slack()));
  Int t = checked_add(std::max(j, checked_add(stable, 1)), p);

  auto value = [&](Int i) {
    if (i == j) return m;
    Int v = g.apply(i < j ? i : i - 1);
    return v >= m ? checked_add(v, 1) : v;
  };
  return EPPerm::from_pointwise(p, t, value);
}

Germ germ_shift(const Germ& a) { return Germ(psi(a.representative(), 1)); }

}  // namespace shiftsim
