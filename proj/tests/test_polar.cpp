#include "lrvdw/polar.h"

#include "lrvdw/errors.h"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace lrvdw;
using namespace lrvdw::polar;
using specdata::AtomicSystem;
using specdata::AtomicTransition;
using specdata::CoreConstant;
using specdata::CoreEffectiveTransition;
using specdata::CoreModel;
using specdata::MolecularSource;
using specdata::MolecularTransition;
using specdata::Orientation;
using specdata::PolarizabilityGrid;

namespace {

AtomicTransition sp_transition(double delta_e, double radial) {
    AtomicTransition t;
    t.from = "S";
    t.to = "P";
    t.l_from = 0;
    t.l_to = 1;
    t.delta_e = delta_e;
    t.radial = radial;
    return t;
}

AtomicSystem s_atom(const std::vector<AtomicTransition>& ts) {
    AtomicSystem a;
    a.initial.label = "S";
    a.initial.l = 0;
    a.transitions = ts;
    return a;
}

AtomicSystem p_atom(const std::vector<AtomicTransition>& ts) {
    AtomicSystem a;
    a.initial.label = "P";
    a.initial.l = 1;
    a.transitions = ts;
    return a;
}

std::vector<MolecularTransition> two_oscillators() {
    return {{0.4, 1.0, Orientation::Parallel},
            {0.6, 0.8, Orientation::Perpendicular}};
}

}  // namespace

TEST(StateToState, ClosedForms) {
    const AtomicTransition t = sp_transition(1.0, std::sqrt(2.0));
    EXPECT_NEAR(state_to_state_polarizability(t, FrequencyArg::imaginary(0.0)),
                4.0 / 3.0, 1e-15);
    EXPECT_NEAR(state_to_state_polarizability(t, FrequencyArg::imaginary(1.0)),
                2.0 / 3.0, 1e-15);
    // Above the pole the real-axis value turns negative:
    // (4/3)/(1 - 1.6) = -20/9.
    EXPECT_NEAR(state_to_state_polarizability(t, FrequencyArg::real(std::sqrt(1.6))),
                -20.0 / 9.0, 1e-13);
}

TEST(StateToState, RealPoleThrows) {
    const AtomicTransition t = sp_transition(1.0, 1.0);
    EXPECT_THROW(state_to_state_polarizability(t, FrequencyArg::real(1.0)),
                 SingularityError);
    EXPECT_THROW(state_to_state_polarizability(t, FrequencyArg::real(1.0 + 5e-7)),
                 SingularityError);
    EXPECT_NO_THROW(state_to_state_polarizability(t, FrequencyArg::real(1.0 + 1e-3)));
}

TEST(AtomicMatrix, SAtomReducesToScalarSum) {
    const AtomicSystem a =
        s_atom({sp_transition(0.5, 1.2), sp_transition(0.9, 0.7)});
    for (double w : {0.0, 0.3, 1.1}) {
        const FrequencyArg z = FrequencyArg::imaginary(w);
        double scalar = 0.0;
        for (const auto& t : a.transitions)
            scalar += state_to_state_polarizability(t, z);
        for (int M = -1; M <= 1; ++M) {
            EXPECT_NEAR(atomic_polarizability_matrix(a, 0, 0, M, M, z), scalar,
                        1e-14)
                << "M=" << M << " w=" << w;
        }
        // Off-diagonal lab projections vanish for an S atom.
        EXPECT_NEAR(atomic_polarizability_matrix(a, 0, 0, 1, 0, z), 0.0, 1e-15);
        EXPECT_NEAR(atomic_polarizability_matrix(a, 0, 0, 0, -1, z), 0.0, 1e-15);
    }
}

TEST(AtomicMatrix, PAtomMatchesDirectElementProduct) {
    // Single P -> S channel: the matrix element contracts to
    // (2/3) s r^2 / (s^2 + w^2) for lambda1 = lambda2 = 0, M = M' = 0.
    AtomicTransition t;
    t.from = "P";
    t.to = "S";
    t.l_from = 1;
    t.l_to = 0;
    t.delta_e = 0.35;
    t.radial = 1.4;
    const AtomicSystem a = p_atom({t});
    for (double w : {0.0, 0.2, 0.8}) {
        const double expected = (2.0 / 3.0) * t.delta_e * t.radial * t.radial
                              / (t.delta_e * t.delta_e + w * w);
        EXPECT_NEAR(atomic_polarizability_matrix(a, 0, 0, 0, 0,
                                                 FrequencyArg::imaginary(w)),
                    expected, 1e-14);
    }
    // lambda1 = 0 with lambda2 = 1 pairs orthogonal body projections.
    EXPECT_NEAR(atomic_polarizability_matrix(a, 0, 1, 0, 0,
                                             FrequencyArg::imaginary(0.1)),
                0.0, 1e-15);
}

TEST(MolecularList, AxisResolvedLorentzians) {
    const MolecularSource src =
        std::vector<MolecularTransition>{{0.4, 1.0, Orientation::Parallel}};
    const PolarizabilityPair at0 =
        molecular_polarizability(src, FrequencyArg::imaginary(0.0));
    EXPECT_NEAR(at0.par, 5.0, 1e-14);
    EXPECT_NEAR(at0.perp, 0.0, 1e-15);
    const PolarizabilityPair atw =
        molecular_polarizability(src, FrequencyArg::imaginary(0.4));
    EXPECT_NEAR(atw.par, 2.5, 1e-14);

    EXPECT_THROW(molecular_polarizability(src, FrequencyArg::real(0.4)),
                 SingularityError);
    // Off the pole, real-axis evaluation of a transition list is allowed.
    const PolarizabilityPair real =
        molecular_polarizability(src, FrequencyArg::real(0.2));
    EXPECT_NEAR(real.par, 2.0 * 0.4 / (0.16 - 0.04), 1e-14);
}

TEST(MolecularGrid, InterpolatesAndExtendsWithInverseSquareTail) {
    const std::vector<MolecularTransition> model = two_oscillators();
    PolarizabilityGrid g;
    const int n = 801;
    const double h = 2.0 / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double w = i * h;
        const PolarizabilityPair p =
            molecular_polarizability(model, FrequencyArg::imaginary(w));
        g.omega.push_back(w);
        g.par.push_back(p.par);
        g.perp.push_back(p.perp);
    }
    const MolecularSource grid = g;

    // Exact at the nodes.
    for (int i : {0, 1, 400, 799, 800}) {
        const PolarizabilityPair p =
            molecular_polarizability(grid, FrequencyArg::imaginary(g.omega[i]));
        EXPECT_NEAR(p.par, g.par[i], 1e-12);
        EXPECT_NEAR(p.perp, g.perp[i], 1e-12);
    }
    // Close to the generating model between nodes.
    for (double w : {0.01125, 0.30125, 0.77625, 1.51125}) {
        const PolarizabilityPair pg =
            molecular_polarizability(grid, FrequencyArg::imaginary(w));
        const PolarizabilityPair pm =
            molecular_polarizability(model, FrequencyArg::imaginary(w));
        EXPECT_NEAR(pg.par, pm.par, std::abs(pm.par) * 1e-5);
        EXPECT_NEAR(pg.perp, pm.perp, std::abs(pm.perp) * 1e-5);
    }
    // Beyond the last node: alpha_last (w_last / w)^2.
    const PolarizabilityPair tail =
        molecular_polarizability(grid, FrequencyArg::imaginary(4.0));
    EXPECT_NEAR(tail.par, g.par.back() * 0.25, 1e-12);
    EXPECT_NEAR(tail.perp, g.perp.back() * 0.25, 1e-12);

    EXPECT_THROW(molecular_polarizability(grid, FrequencyArg::real(0.5)),
                 CapabilityError);
}

TEST(CorePolarizability, ConstantAndEffectiveTransition) {
    const CoreModel constant = CoreConstant{15.4};
    EXPECT_DOUBLE_EQ(core_polarizability(constant, FrequencyArg::imaginary(0.0)),
                     15.4);
    EXPECT_DOUBLE_EQ(core_polarizability(constant, FrequencyArg::imaginary(2.0)),
                     15.4);

    const CoreModel effective = CoreEffectiveTransition{0.5, 3.0};
    const double at0 = core_polarizability(effective, FrequencyArg::imaginary(0.0));
    EXPECT_NEAR(at0, 2.0 * 3.0 / 0.5, 1e-14);
    const double atw = core_polarizability(effective, FrequencyArg::imaginary(1.0));
    EXPECT_NEAR(atw, 2.0 * 0.5 * 3.0 / (0.25 + 1.0), 1e-14);
    EXPECT_LT(atw, at0);

    EXPECT_THROW(core_polarizability(constant, FrequencyArg::real(0.1)),
                 CapabilityError);
    EXPECT_THROW(core_polarizability(effective, FrequencyArg::real(0.1)),
                 CapabilityError);
}

TEST(RotationalWeights, ClosedForms) {
    const RotationalWeights w0 = rotational_weights(0, 0, 0, 0, 0);
    EXPECT_NEAR(w0.par, 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(w0.perp, 2.0 / 3.0, 1e-14);

    // Lab-frame projection mismatch gates the weights to zero.
    const RotationalWeights gated = rotational_weights(0, 0, 0, 1, 0);
    EXPECT_EQ(gated.par, 0.0);
    EXPECT_EQ(gated.perp, 0.0);

    const RotationalWeights w1 = rotational_weights(1, 0, 0, 0, 0);
    EXPECT_NEAR(w1.par, 3.0 / 5.0, 1e-14);
}

TEST(RotationalWeights, Symmetries) {
    for (int j : {0, 1, 2, 3}) {
        for (int mj1 = -j; mj1 <= j; ++mj1) {
            for (int M = -1; M <= 1; ++M) {
                for (int Mp = -1; Mp <= 1; ++Mp) {
                    const int mj2 = mj1 - M + Mp;
                    if (std::abs(mj2) > j) continue;
                    const RotationalWeights w =
                        rotational_weights(j, mj1, mj2, M, Mp);
                    const RotationalWeights flipped =
                        rotational_weights(j, -mj1, -mj2, -M, -Mp);
                    EXPECT_NEAR(flipped.par, w.par, 1e-13);
                    EXPECT_NEAR(flipped.perp, w.perp, 1e-13);
                    const RotationalWeights swapped =
                        rotational_weights(j, mj2, mj1, Mp, M);
                    EXPECT_NEAR(swapped.par, w.par, 1e-13);
                    EXPECT_NEAR(swapped.perp, w.perp, 1e-13);
                }
            }
        }
    }
}

TEST(RotationalPolarizability, IsotropicAverageForJZero) {
    const PolarizabilityPair pair{9.0, 4.5};
    EXPECT_NEAR(rotational_polarizability(0, 0, 0, 0, 0, pair),
                (pair.par + 2.0 * pair.perp) / 3.0, 1e-13);
    EXPECT_EQ(rotational_polarizability(0, 0, 0, 1, 0, pair), 0.0);
}

TEST(ImaginaryAxis, AllUpwardSystemsDecayMonotonically) {
    const AtomicSystem a =
        s_atom({sp_transition(0.5, 1.2), sp_transition(0.9, 0.7)});
    const MolecularSource mol = two_oscillators();
    double prev_a = 1e300;
    double prev_par = 1e300;
    double prev_perp = 1e300;
    for (double w : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
        const FrequencyArg z = FrequencyArg::imaginary(w);
        const double va = atomic_polarizability_matrix(a, 0, 0, 0, 0, z);
        const PolarizabilityPair vm = molecular_polarizability(mol, z);
        EXPECT_GT(va, 0.0);
        EXPECT_GT(vm.par, 0.0);
        EXPECT_GT(vm.perp, 0.0);
        EXPECT_LT(va, prev_a);
        EXPECT_LT(vm.par, prev_par);
        EXPECT_LT(vm.perp, prev_perp);
        prev_a = va;
        prev_par = vm.par;
        prev_perp = vm.perp;
    }
}
