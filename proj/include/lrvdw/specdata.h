#pragma once

#include <string>
#include <variant>
#include <vector>

namespace lrvdw::specdata {

/// Bound level of an atom; energy is stored in hartree.
struct AtomicLevel {
    std::string label;
    int n = 0;
    int l = 0;
    double energy = 0.0;
};

/// Dipole-allowed transition between two levels of the same atom.
/// delta_e = E_to - E_from (hartree, signed); radial is the radial matrix
/// element <n l | r | n' l'> in bohr.
struct AtomicTransition {
    std::string from;
    std::string to;
    int l_from = 0;
    int l_to = 0;
    double delta_e = 0.0;
    double radial = 0.0;
};

/// One atom: its initial level plus the transitions out of it.
struct AtomicSystem {
    AtomicLevel initial;
    std::vector<AtomicLevel> levels;
    std::vector<AtomicTransition> transitions;
};

enum class Orientation { Parallel, Perpendicular };

/// Effective electronic transition of the dimer, expressed in its own
/// body frame: excitation energy (hartree) and transition dipole (a.u.).
struct MolecularTransition {
    double delta_e = 0.0;
    double dipole = 0.0;
    Orientation orientation = Orientation::Parallel;
};

/// Tabulated parallel/perpendicular dynamic polarizability on an
/// imaginary-frequency grid starting at omega = 0.
struct PolarizabilityGrid {
    std::vector<double> omega;
    std::vector<double> par;
    std::vector<double> perp;
};

using MolecularSource = std::variant<std::vector<MolecularTransition>, PolarizabilityGrid>;

/// Core (cation) polarizability: either frequency-independent or a single
/// effective transition 2*delta_e*strength/(delta_e^2 + omega^2).
struct CoreConstant { double alpha = 0.0; };
struct CoreEffectiveTransition { double delta_e = 0.0; double strength = 0.0; };
using CoreModel = std::variant<CoreConstant, CoreEffectiveTransition>;

enum class Reflection { None, Plus, Minus };

/// One (mj, lambda) component of an electronic-rotational symmetry state.
struct StateRow {
    int mj = 0;
    int lambda = 0;
    double c = 0.0;
};

/// Symmetry-adapted state of the complex: |mJ| label with optional
/// reflection parity (Sigma states only), dimer rotation j, atomic orbital
/// momentum ell, quadrupole coefficient c5 (a.u.) and the normalised
/// expansion over (mj, lambda) rows.
struct SymmetryState {
    int mJ = 0;
    Reflection reflection = Reflection::None;
    int j = 0;
    int ell = 0;
    double c5 = 0.0;
    std::vector<StateRow> rows;
};

/// Complete input set for one atom + dimer pair.
struct Dataset {
    AtomicSystem atom_ground;
    AtomicSystem atom_excited;
    MolecularSource molecule;
    CoreModel core;
    std::vector<SymmetryState> states;
    double b_rot = 0.0;        // dimer rotational constant, hartree
    double r2_atom = 0.0;      // <r^2> of the atom, a.u.
    double r2_molecule = 0.0;  // <r^2> of the dimer, a.u.
};

/// Greek symmetry label for the state: Sigma+, Sigma-, Pi, Delta, Phi,
/// Gamma, H by |mJ| = 0..5.
std::string state_label(const SymmetryState& s);

/// Load a dataset file; conversions to atomic units happen here.  Throws
/// ParseError (malformed file) or ValidationError (all failing records).
Dataset load_dataset(const std::string& path);

/// Write a dataset back out in the same format, full precision.
void write_dataset(const Dataset& d, const std::string& path);

struct ValidationIssue {
    std::string where;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

ValidationReport validate_dataset(const Dataset& d);

/// Effective one-transition model reproducing a static polarizability and
/// a homonuclear atom-atom C6: delta_e = 4 C6/(3 alpha^2), r = sqrt(3 alpha
/// delta_e / 2).
struct OscillatorFit {
    double delta_e = 0.0;
    double radial_element = 0.0;
};

OscillatorFit fit_single_oscillator(double alpha_static, double c6_homonuclear);

} // namespace lrvdw::specdata
