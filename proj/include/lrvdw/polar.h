#pragma once

#include "lrvdw/specdata.h"

namespace lrvdw::polar {

/// Evaluation frequency: z^2 = -omega^2 on the imaginary axis (used in the
/// dispersion integrals), z^2 = +omega^2 on the real axis (used by the
/// downward-transition correction).  omega >= 0 always.
struct FrequencyArg {
    enum class Kind { Imaginary, Real };
    Kind kind = Kind::Imaginary;
    double omega = 0.0;

    double z2() const { return kind == Kind::Imaginary ? -omega * omega : omega * omega; }
    static FrequencyArg imaginary(double w) { return {Kind::Imaginary, w}; }
    static FrequencyArg real(double w) { return {Kind::Real, w}; }
};

struct PolarizabilityPair {
    double par = 0.0;
    double perp = 0.0;
};

/// Contribution of one transition to the scalar polarizability:
/// (2/3) dE/(dE^2 - z^2) r^2 C(1 0 l 0 | l' 0)^2.  Real-frequency
/// evaluation closer than 1e-6 hartree to the pole throws SingularityError.
double state_to_state_polarizability(const specdata::AtomicTransition& t, FrequencyArg z);

/// Frame-resolved atomic polarizability alpha^{lambda1 lambda2}_{-M,-M'}(z)
/// built from the atom's transition list:
/// 3 sum_{l'} (2l+1)/(2l'+1) sum_{n'} alpha_{n l n' l'}(z)
///   sum_{lam'} C(1 M l lambda1 | l' lam') C(1 M' l lambda2 | l' lam').
double atomic_polarizability_matrix(const specdata::AtomicSystem& atom,
                                    int lambda1, int lambda2, int M, int Mp,
                                    FrequencyArg z);

/// Parallel/perpendicular dimer polarizability.  Transition lists support
/// both axes of evaluation; grids are imaginary-only with a matched 1/w^2
/// tail beyond the last node.
PolarizabilityPair molecular_polarizability(const specdata::MolecularSource& src, FrequencyArg z);

/// Core polarizability; imaginary axis only.
double core_polarizability(const specdata::CoreModel& core, FrequencyArg z);

/// Weights such that the rotational polarizability of the dimer equals
/// par_weight * alpha_par + perp_weight * alpha_perp:
/// sum_{j'} (2j+1)/(2j'+1) [C(1 0 j 0|j' 0)^2, 2 C(1 1 j 0|j' 1)^2]
///   * C(1 -M j mj1|j' m') C(1 -M' j mj2|j' m'), m' = mj1 - M.
struct RotationalWeights {
    double par = 0.0;
    double perp = 0.0;
};

RotationalWeights rotational_weights(int j, int mj1, int mj2, int M, int Mp);

/// Rotational (dimer) polarizability alpha^{mj1 mj2}_{M M'} for fixed
/// parallel/perpendicular values.
double rotational_polarizability(int j, int mj1, int mj2, int M, int Mp,
                                 const PolarizabilityPair& pair);

} // namespace lrvdw::polar
