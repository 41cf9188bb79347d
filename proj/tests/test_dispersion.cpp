#include "lrvdw/dispersion.h"

#include "lrvdw/errors.h"
#include "lrvdw/polar.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace lrvdw;
using namespace lrvdw::dispersion;
using polar::FrequencyArg;
using polar::PolarizabilityPair;
using specdata::AtomicSystem;
using specdata::AtomicTransition;
using specdata::CoreConstant;
using specdata::Dataset;
using specdata::MolecularSource;
using specdata::MolecularTransition;
using specdata::Orientation;
using specdata::SymmetryState;

namespace {

AtomicTransition transition(int l_from, int l_to, double delta_e, double radial) {
    AtomicTransition t;
    t.from = "a";
    t.to = "b";
    t.l_from = l_from;
    t.l_to = l_to;
    t.delta_e = delta_e;
    t.radial = radial;
    return t;
}

AtomicSystem atom_with(int initial_l, const std::vector<AtomicTransition>& ts) {
    AtomicSystem a;
    a.initial.l = initial_l;
    a.transitions = ts;
    return a;
}

double two_lorentzian_integral(double x, double y, const QuadratureRule& rule) {
    return integrate_semi_infinite(
        [x, y](double w) {
            return (2.0 / M_PI) * x * y / ((x * x + w * w) * (y * y + w * w));
        },
        rule);
}

}  // namespace

TEST(Quadrature, TwoLorentzianProductIdentity) {
    // (2/pi) int xy/((x^2+w^2)(y^2+w^2)) dw = 1/(x+y).
    EXPECT_NEAR(two_lorentzian_integral(1.0, 1.0, {64, 1.0}), 0.5, 1e-12);
    EXPECT_NEAR(two_lorentzian_integral(2.0, 3.0, {64, std::sqrt(6.0)}), 0.2,
                1e-12);
}

TEST(Quadrature, DownwardResonanceIdentity) {
    // For x > y > 0: 1/(x-y) = 2x/(x^2-y^2) - (2/pi) int xy/(...) dw.
    const double x = 1.0;
    const double y = 0.3;
    const double integral =
        two_lorentzian_integral(x, y, {64, std::sqrt(x * y)});
    EXPECT_NEAR(2.0 * x / (x * x - y * y) - integral, 1.0 / (x - y), 1e-10);
}

TEST(Quadrature, GuardsAgainstBadInput) {
    EXPECT_THROW(integrate_semi_infinite([](double) { return 1.0; }, {64, 0.0}),
                 std::domain_error);
    EXPECT_THROW(integrate_semi_infinite(
                     [](double) {
                         return std::numeric_limits<double>::infinity();
                     },
                     {64, 1.0}),
                 SingularityError);
}

TEST(DefaultRule, TracksTransitionEnergies) {
    const Dataset d = specdata::load_dataset(LRVDW_DATASET);
    const QuadratureRule rule = default_rule(d);
    EXPECT_EQ(rule.nodes, 64);
    EXPECT_GT(rule.omega0, 0.013);
    EXPECT_LT(rule.omega0, 0.082);
}

TEST(SumOverStates, IsotropicPairClosedForm) {
    // Isotropic dimer (equal parallel and perpendicular unit oscillators,
    // alpha_A(0) = 2/0.4 = 5) against an isotropic S atom (alpha_B(0) =
    // (2/3)/0.5 = 4/3).  For two single-oscillator systems the coefficient
    // has the exact closed form
    //   C6 = -(3/2) dEa dEb / (dEa + dEb) alpha_A(0) alpha_B(0).
    const std::vector<MolecularTransition> dimer{
        {0.4, 1.0, Orientation::Parallel},
        {0.4, 1.0, Orientation::Perpendicular}};
    const std::vector<AtomicTransition> atom{transition(0, 1, 0.5, 1.0)};
    const double c6 = c6_sum_over_states(dimer, 0, atom, 0, 0, 0, 0, 0);
    const double expected =
        -1.5 * (0.4 * 0.5 / 0.9) * 5.0 * (2.0 / 3.0 / 0.5);
    EXPECT_NEAR(c6, expected, 1e-12);
}

TEST(SumOverStates, RejectsMismatchedMomentum) {
    const std::vector<MolecularTransition> dimer{
        {0.4, 1.0, Orientation::Parallel}};
    const std::vector<AtomicTransition> atom{transition(0, 1, 0.5, 1.0)};
    EXPECT_THROW(c6_sum_over_states(dimer, 0, atom, 1, 0, 0, 0, 0),
                 std::invalid_argument);
}

TEST(SumOverStates, DegenerateDenominatorThrows) {
    const std::vector<MolecularTransition> dimer{
        {0.1, 1.0, Orientation::Parallel}};
    const std::vector<AtomicTransition> atom{transition(1, 0, -0.1, 1.0)};
    EXPECT_THROW(c6_sum_over_states(dimer, 0, atom, 1, 0, 0, 0, 0),
                 SingularityError);
}

TEST(CrossedC6, MatchesSumOverStates) {
    // Upward and downward atomic channels, two dimer axes, several row pairs.
    const AtomicSystem atom = atom_with(
        1, {transition(1, 0, 0.25, 1.1), transition(1, 0, -0.3, 0.9),
            transition(1, 2, 0.45, 1.3)});
    const std::vector<MolecularTransition> dimer{
        {0.2, 1.2, Orientation::Parallel},
        {0.5, 0.7, Orientation::Perpendicular}};
    const MolecularSource mol = dimer;
    const QuadratureRule rule{200, 0.25};

    const int combos[][5] = {
        // j, mj1, lambda1, mj2, lambda2
        {0, 0, 0, 0, 0},  {1, 0, 0, 0, 0},  {1, 1, 0, 1, 0},
        {1, 0, 1, 0, 1},  {1, 1, 0, 0, 1},  {2, -1, 1, 0, 0},
        {2, 2, -1, 0, 1},
    };
    for (const auto& c : combos) {
        const CrossedParts parts =
            c6_crossed_parts(atom, mol, c[0], c[1], c[2], c[3], c[4], rule);
        const double reference = c6_sum_over_states(
            dimer, c[0], atom.transitions, 1, c[1], c[2], c[3], c[4]);
        EXPECT_NEAR(parts.value(), reference,
                    std::max(std::abs(reference), 1e-3) * 1e-10)
            << "j=" << c[0] << " mj1=" << c[1] << " l1=" << c[2]
            << " mj2=" << c[3] << " l2=" << c[4];
    }
}

TEST(CrossedC6, DownwardDominatedChannelIsRepulsive) {
    // The atomic de-excitation lies above the dimer excitation, so the
    // leading denominator is negative and the coefficient changes sign.
    const AtomicSystem atom = atom_with(1, {transition(1, 0, -0.1, 1.0)});
    const std::vector<MolecularTransition> dimer{
        {0.09, 1.0, Orientation::Parallel}};
    const MolecularSource mol = dimer;
    const QuadratureRule rule{200, 0.1};

    const CrossedParts parts = c6_crossed_parts(atom, mol, 0, 0, 0, 0, 0, rule);
    const double reference =
        c6_sum_over_states(dimer, 0, atom.transitions, 1, 0, 0, 0, 0);
    EXPECT_GT(reference, 0.0);
    EXPECT_NEAR(parts.value(), reference, std::abs(reference) * 1e-10);
}

TEST(CrossedC6, RejectsMismatchedProjections) {
    const AtomicSystem atom = atom_with(1, {transition(1, 0, 0.25, 1.1)});
    const MolecularSource mol =
        std::vector<MolecularTransition>{{0.2, 1.2, Orientation::Parallel}};
    EXPECT_THROW(c6_crossed_parts(atom, mol, 1, 1, 0, 0, 0, {64, 0.2}),
                 std::invalid_argument);
}

TEST(CoreC6, ClosedFormsForConstantCore) {
    Dataset d;
    d.core = CoreConstant{10.0};
    d.molecule =
        std::vector<MolecularTransition>{{0.4, 1.5, Orientation::Parallel}};
    const QuadratureRule rule{64, 0.4};
    // Constant core x single parallel oscillator integrates to -alpha mu^2,
    // independent of the oscillator energy.
    EXPECT_NEAR(c6_core(d, 0, 0, rule), -10.0 * 1.5 * 1.5, 22.5 * 1e-10);

    d.molecule = std::vector<MolecularTransition>{
        {0.4, 1.0, Orientation::Parallel}, {0.6, 0.8, Orientation::Perpendicular}};
    EXPECT_NEAR(c6_core(d, 0, 0, rule), -10.0 * (1.0 + 2.0 * 0.64),
                22.8 * 1e-10);

    d.core = CoreConstant{0.0};
    EXPECT_EQ(c6_core(d, 0, 0, rule), 0.0);
}

TEST(C6Total, DecomposesAndMatchesSingleRowPath) {
    const Dataset d = specdata::load_dataset(LRVDW_DATASET);
    const QuadratureRule rule = default_rule(d);
    for (const auto& s : d.states) {
        const C6Result r = c6_total(d, s, rule);
        EXPECT_NEAR(r.total, r.valence_integral + r.downward_term + r.core_term,
                    std::abs(r.total) * 1e-12)
            << specdata::state_label(s);
        ASSERT_EQ(s.rows.size(), 1u);
        const auto& row = s.rows[0];
        const double crossed =
            c6_crossed(d, s.j, row.mj, row.lambda, row.mj, row.lambda, rule);
        const double core = c6_core(d, s.j, row.mj, rule);
        EXPECT_NEAR(r.total, crossed + core, std::abs(r.total) * 1e-12);
        EXPECT_LT(r.core_term, 0.0);
    }
}

TEST(C6Total, InvariantUnderGlobalSignAndReflection) {
    const Dataset d = specdata::load_dataset(LRVDW_DATASET);
    const QuadratureRule rule{64, default_rule(d).omega0};
    const double inv = 1.0 / std::sqrt(2.0);

    SymmetryState s;
    s.mJ = 1;
    s.j = 1;
    s.ell = 1;
    s.rows = {{0, 1, inv}, {1, 0, inv}};
    const double base = c6_total(d, s, rule).total;

    SymmetryState flipped = s;
    flipped.rows = {{0, 1, -inv}, {1, 0, -inv}};
    EXPECT_NEAR(c6_total(d, flipped, rule).total, base, std::abs(base) * 1e-12);

    SymmetryState reflected = s;
    reflected.rows = {{0, -1, inv}, {-1, 0, inv}};
    EXPECT_NEAR(c6_total(d, reflected, rule).total, base, std::abs(base) * 1e-10);

    // The relative sign between rows does change the physics.
    SymmetryState anti = s;
    anti.rows = {{0, 1, inv}, {1, 0, -inv}};
    EXPECT_GT(std::abs(c6_total(d, anti, rule).total - base),
              std::abs(base) * 1e-4);
}

TEST(GroundAtomC6, ReducesToIsotropicIntegralForJZero) {
    const Dataset d = specdata::load_dataset(LRVDW_DATASET);
    const QuadratureRule rule = default_rule(d);
    const double total = c6_ground_atom(d, 0, 0, rule);
    const double reference = -(3.0 / M_PI)
        * integrate_semi_infinite(
              [&](double w) {
                  const FrequencyArg z = FrequencyArg::imaginary(w);
                  const double atom =
                      polar::atomic_polarizability_matrix(d.atom_ground, 0, 0,
                                                          0, 0, z)
                      + polar::core_polarizability(d.core, z);
                  const PolarizabilityPair m =
                      polar::molecular_polarizability(d.molecule, z);
                  return atom * (m.par + 2.0 * m.perp) / 3.0;
              },
              rule);
    EXPECT_NEAR(total, reference, std::abs(reference) * 1e-10);

    const C6Result parts = c6_ground_atom_parts(d, 0, 0, rule);
    EXPECT_NEAR(parts.total, total, std::abs(total) * 1e-12);
    EXPECT_NEAR(parts.total,
                parts.valence_integral + parts.downward_term + parts.core_term,
                std::abs(total) * 1e-12);
    EXPECT_EQ(parts.downward_term, 0.0);
}

TEST(GroundAtomC6, SymmetricInProjectionSign) {
    const Dataset d = specdata::load_dataset(LRVDW_DATASET);
    const QuadratureRule rule = default_rule(d);
    const double plus = c6_ground_atom(d, 2, 1, rule);
    const double minus = c6_ground_atom(d, 2, -1, rule);
    EXPECT_NEAR(plus, minus, std::abs(plus) * 1e-12);
}

TEST(AtomAtomC6, FittedOscillatorReproducesAnchor) {
    const specdata::OscillatorFit fit =
        specdata::fit_single_oscillator(402.0, 6840.0);
    const std::vector<AtomicTransition> a{
        transition(0, 1, fit.delta_e, fit.radial_element)};
    const double c6 = c6_atom_atom(a, a, {64, fit.delta_e});
    EXPECT_NEAR(c6, -6840.0, 6840.0 * 1e-6);
}

TEST(AtomAtomC6, TwoOscillatorClosedForm) {
    // -(3/2) dEa dEb / (dEa + dEb) alpha_a(0) alpha_b(0).
    const std::vector<AtomicTransition> a{transition(0, 1, 0.3, 1.2)};
    const std::vector<AtomicTransition> b{transition(0, 1, 0.7, 0.9)};
    const double alpha_a = (2.0 / 3.0) * 1.2 * 1.2 / 0.3;
    const double alpha_b = (2.0 / 3.0) * 0.9 * 0.9 / 0.7;
    const double expected = -1.5 * (0.3 * 0.7 / 1.0) * alpha_a * alpha_b;
    EXPECT_NEAR(c6_atom_atom(a, b, {64, std::sqrt(0.21)}), expected,
                std::abs(expected) * 1e-9);

    EXPECT_EQ(c6_atom_atom({}, b, {64, 1.0}), 0.0);
}

TEST(C6Total, StableUnderNodeDoubling) {
    const Dataset d = specdata::load_dataset(LRVDW_DATASET);
    const double w0 = default_rule(d).omega0;
    for (const auto& s : d.states) {
        const double coarse = c6_total(d, s, {64, w0}).total;
        const double fine = c6_total(d, s, {128, w0}).total;
        EXPECT_NEAR(coarse, fine, std::abs(fine) * 1e-8)
            << specdata::state_label(s);
    }
}
