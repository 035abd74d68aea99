#ifndef SHIFTSIM_SHIFT_HPP
#define SHIFTSIM_SHIFT_HPP

#include "shiftsim/epperm.hpp"

namespace shiftsim {

// The j-th shifting map: delete input j and output g(j), renumber both
// sides back to the positive integers.
EPPerm psi(const EPPerm& g, Int j);

// One-sided inverse of psi: the unique h with psi(h, j) = g and h(j) = m.
EPPerm insert_arrow(const EPPerm& g, Int j, Int m);

// Induced map on germs; uses j = 1 internally, independence of j is a
// tested property.
Germ germ_shift(const Germ& a);

}  // namespace shiftsim

#endif
