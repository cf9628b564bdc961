#pragma once

#include <bit>
#include <cstdint>

namespace znlgt {

// Fermion occupation word: bit x holds n_x, site 0 in the least significant
// bit. Jordan-Wigner strings run over sites below x.
using FermionWord = std::uint32_t;

inline int jw_sign(FermionWord w, int x) {
  const FermionWord below = w & ((FermionWord{1} << x) - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

// Apply ψ_x / ψ†_x in place; returns false when the operator annihilates the
// state, otherwise multiplies `sign` by the string factor.
inline bool apply_annihilate(FermionWord& w, int x, int& sign) {
  const FermionWord bit = FermionWord{1} << x;
  if (!(w & bit)) return false;
  sign *= jw_sign(w, x);
  w &= ~bit;
  return true;
}

inline bool apply_create(FermionWord& w, int x, int& sign) {
  const FermionWord bit = FermionWord{1} << x;
  if (w & bit) return false;
  sign *= jw_sign(w, x);
  w |= bit;
  return true;
}

}  // namespace znlgt
