#pragma once

#include <functional>

#include "lrvdw/polar.h"
#include "lrvdw/specdata.h"

namespace lrvdw::dispersion {

/// Gauss-Legendre rule for integrals over [0, inf), mapped through
/// omega = omega0 (1+t)/(1-t).
struct QuadratureRule {
    int nodes = 64;
    double omega0 = 1.0;
};

/// Default rule for a dataset: 64 nodes, omega0 = median |delta_e| over the
/// molecular and excited-atom transitions.
QuadratureRule default_rule(const specdata::Dataset& d);

double integrate_semi_infinite(const std::function<double(double)>& f, const QuadratureRule& rule);

/// Crossed (valence) C6 contribution split into its imaginary-frequency
/// integral and the real-frequency downward-transition correction.
struct CrossedParts {
    double integral = 0.0;
    double downward = 0.0;
    double value() const { return integral + downward; }
};

CrossedParts c6_crossed_parts(const specdata::AtomicSystem& atom,
                              const specdata::MolecularSource& mol,
                              int j, int mj1, int lambda1, int mj2, int lambda2,
                              const QuadratureRule& rule);

/// Crossed C6 between dimer rotation j and the dataset's excited atom, for
/// one (mj, lambda) pair of rows.  Requires mj1+lambda1 == mj2+lambda2.
double c6_crossed(const specdata::Dataset& d,
                  int j, int mj1, int lambda1, int mj2, int lambda2,
                  const QuadratureRule& rule);

/// Core C6 contribution for a single (j, mj) row; always negative.
double c6_core(const specdata::Dataset& d, int j, int mj, const QuadratureRule& rule);

/// Full C6 of one symmetry state: sum over row pairs of the crossed part
/// plus the diagonal core part.
struct C6Result {
    double total = 0.0;
    double valence_integral = 0.0;
    double downward_term = 0.0;
    double core_term = 0.0;
};

C6Result c6_total(const specdata::Dataset& d, const specdata::SymmetryState& s,
                  const QuadratureRule& rule);

/// C6 between the dataset's ground (S) atom and the dimer in rotational
/// state (j, mj); the atomic polarizability includes the core constant.
double c6_ground_atom(const specdata::Dataset& d, int j, int mj, const QuadratureRule& rule);

/// Same quantity split into valence and core parts (their sum is the total).
C6Result c6_ground_atom_parts(const specdata::Dataset& d, int j, int mj,
                              const QuadratureRule& rule);

/// Isotropic atom-atom C6 = (3/pi) int alpha_A(iw) alpha_B(iw) dw, returned
/// with the attractive sign convention (negative).
double c6_atom_atom(const std::vector<specdata::AtomicTransition>& a,
                    const std::vector<specdata::AtomicTransition>& b,
                    const QuadratureRule& rule);

/// Direct second-order sum over intermediate states.  No quadrature, no
/// factorization: this is the reference the factorized path is checked
/// against.  Rotational energies are omitted from the denominators on both
/// paths.
double c6_sum_over_states(const std::vector<specdata::MolecularTransition>& dimer,
                          int j,
                          const std::vector<specdata::AtomicTransition>& atom,
                          int ell,
                          int mj1, int lambda1, int mj2, int lambda2);

} // namespace lrvdw::dispersion
