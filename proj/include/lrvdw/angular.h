#pragma once

namespace lrvdw::angular {

/// Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M> in the Condon-Shortley
/// phase convention, integer momenta only.  Violated triangle or projection
/// rules give 0; negative j or |m| > j on an input state throws
/// std::domain_error.  Evaluated through prime-factorised factorials so the
/// result stays exact to machine precision up to j ~ 20.
double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M);

/// Wigner small-d matrix element d^j_{m,mp}(beta) = <j m|exp(-i beta Jy)|j mp>.
double wigner_d(int j, int m, int mp, double beta);

/// Matrix element <j mj| d^1_{M mu} |j' mj'> of a rank-1 rotation matrix
/// between rigid-rotor states whose body-frame projections are 0 (bra) and
/// -mu (ket).  Vanishes when j' cannot carry the required projection.
double rotational_dipole_element(int j, int mj, int jp, int mjp, int M, int mu);

/// Angular prefactor f_{LA,LB,M} of the 1/R^(LA+LB+1) multipole interaction:
/// (-1)^LB (LA+LB)! / sqrt((LA+M)!(LA-M)!(LB+M)!(LB-M)!).
double multipole_prefactor(int la, int lb, int m);

} // namespace lrvdw::angular
