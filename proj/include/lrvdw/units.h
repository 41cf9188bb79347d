#pragma once

namespace lrvdw::units {

/// One hartree expressed in wavenumbers.
inline constexpr double hartree_in_inv_cm = 219474.63137;

inline constexpr double cm1_to_au(double e_cm1) { return e_cm1 / hartree_in_inv_cm; }
inline constexpr double au_to_cm1(double e_au) { return e_au * hartree_in_inv_cm; }

} // namespace lrvdw::units
