#include "lrvdw/dispersion.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lrvdw/angular.h"
#include "lrvdw/errors.h"

namespace lrvdw::dispersion {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
};

// nodes and weights on [-1, 1], roots of P_n by Newton iteration
const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::domain_error("quadrature rule needs at least one node");
    GaussLegendre g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p1 = 0.0, dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        g.x[i] = x;
        g.x[n - 1 - i] = -x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.w[i] = w;
        g.w[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(g)).first->second;
}

// inverse of the (1+M)!(1-M)! weight of the rank-1 multipole expansion
double projection_weight(int M) {
    return (M == 0) ? 1.0 : 0.5;
}

// scalar polarizability of one transition list (isotropic average)
double scalar_polarizability(const std::vector<specdata::AtomicTransition>& trans,
                             polar::FrequencyArg z) {
    double sum = 0.0;
    for (const auto& t : trans) sum += polar::state_to_state_polarizability(t, z);
    return sum;
}

// angular weight of one atomic transition in the frame-resolved
// polarizability, with the energy factor stripped off
double transition_weight(const specdata::AtomicTransition& t,
                         int lambda1, int lambda2, int M, int Mp) {
    double angular_sum = 0.0;
    for (int lamp = -t.l_to; lamp <= t.l_to; ++lamp) {
        angular_sum += angular::clebsch_gordan(1, M, t.l_from, lambda1, t.l_to, lamp)
                       * angular::clebsch_gordan(1, Mp, t.l_from, lambda2, t.l_to, lamp);
    }
    double c0 = angular::clebsch_gordan(1, 0, t.l_from, 0, t.l_to, 0);
    return double(2 * t.l_from + 1) / double(2 * t.l_to + 1)
           * c0 * c0 * t.radial * t.radial * angular_sum;
}

} // namespace

QuadratureRule default_rule(const specdata::Dataset& d) {
    std::vector<double> es;
    for (const auto& t : d.atom_ground.transitions) es.push_back(std::abs(t.delta_e));
    for (const auto& t : d.atom_excited.transitions) es.push_back(std::abs(t.delta_e));
    if (const auto* list = std::get_if<std::vector<specdata::MolecularTransition>>(&d.molecule))
        for (const auto& t : *list) es.push_back(t.delta_e);
    QuadratureRule rule;
    if (!es.empty()) {
        std::sort(es.begin(), es.end());
        std::size_t n = es.size();
        rule.omega0 = (n % 2 == 1) ? es[n / 2] : 0.5 * (es[n / 2 - 1] + es[n / 2]);
    }
    return rule;
}

double integrate_semi_infinite(const std::function<double(double)>& f, const QuadratureRule& rule) {
    const GaussLegendre& g = gauss_legendre(rule.nodes);
    if (!(rule.omega0 > 0.0))
        throw std::domain_error("quadrature scale omega0 must be positive");
    double sum = 0.0;
    for (int i = 0; i < rule.nodes; ++i) {
        double t = g.x[i];
        double omega = rule.omega0 * (1.0 + t) / (1.0 - t);
        double jac = 2.0 * rule.omega0 / ((1.0 - t) * (1.0 - t));
        double v = f(omega);
        if (!std::isfinite(v))
            throw SingularityError("integrand is not finite at omega = " + std::to_string(omega));
        sum += g.w[i] * v * jac;
    }
    return sum;
}

// Normalization trail.  The dipole-dipole prefactor is f_{1,1,M} = -2, -1,
// -1 for M = 0, +-1 and enters second order squared, so each (M, M') pair
// carries f_{1,1,M} f_{1,1,M'} = 4 fw(M) fw(M') with fw(0) = 1,
// fw(+-1) = 1/2 -- the factor 4 in the integrand below.  The
// frequency-integral identity brings 2/pi; one factor 1/2 per subsystem is
// absorbed by writing each polarizability with its 2 dE |d|^2/(dE^2 + w^2)
// Lorentzians, leaving the overall -1/(2 pi) on the integral.  The (-1)^M
// phases of the rotational matrix elements cancel pairwise against the
// atomic ones and appear nowhere.  This bookkeeping is pinned by
// c6_sum_over_states: the factorized value must reproduce the direct
// second-order sum to ~1e-14 (oracle-check, and the --oracle CLI flag).
CrossedParts c6_crossed_parts(const specdata::AtomicSystem& atom,
                              const specdata::MolecularSource& mol,
                              int j, int mj1, int lambda1, int mj2, int lambda2,
                              const QuadratureRule& rule) {
    if (mj1 + lambda1 != mj2 + lambda2)
        throw std::invalid_argument("crossed C6 rows must share the total projection mj+lambda");

    struct ProjectionPair {
        int M, Mp;
        double fw;
        polar::RotationalWeights rw;
    };
    std::vector<ProjectionPair> pairs;
    for (int M = -1; M <= 1; ++M) {
        for (int Mp = -1; Mp <= 1; ++Mp) {
            polar::RotationalWeights rw = polar::rotational_weights(j, mj1, mj2, M, Mp);
            if (rw.par == 0.0 && rw.perp == 0.0) continue;
            pairs.push_back({M, Mp, projection_weight(M) * projection_weight(Mp), rw});
        }
    }

    CrossedParts parts;
    auto integrand = [&](double w) {
        polar::FrequencyArg z = polar::FrequencyArg::imaginary(w);
        polar::PolarizabilityPair amol = polar::molecular_polarizability(mol, z);
        double sum = 0.0;
        for (const auto& p : pairs) {
            double arot = p.rw.par * amol.par + p.rw.perp * amol.perp;
            if (arot == 0.0) continue;
            sum += 4.0 * p.fw * arot
                   * polar::atomic_polarizability_matrix(atom, lambda1, lambda2, p.M, p.Mp, z);
        }
        return sum;
    };
    parts.integral = -integrate_semi_infinite(integrand, rule) / (2.0 * kPi);

    // downward transitions of the atom contribute a pole term evaluated at
    // the real transition frequency
    for (const auto& t : atom.transitions) {
        if (t.delta_e >= 0.0) continue;
        polar::PolarizabilityPair amol =
            polar::molecular_polarizability(mol, polar::FrequencyArg::real(-t.delta_e));
        for (const auto& p : pairs) {
            double arot = p.rw.par * amol.par + p.rw.perp * amol.perp;
            if (arot == 0.0) continue;
            parts.downward -= 4.0 * p.fw * arot
                              * transition_weight(t, lambda1, lambda2, p.M, p.Mp);
        }
    }
    return parts;
}

double c6_crossed(const specdata::Dataset& d,
                  int j, int mj1, int lambda1, int mj2, int lambda2,
                  const QuadratureRule& rule) {
    return c6_crossed_parts(d.atom_excited, d.molecule, j, mj1, lambda1, mj2, lambda2, rule)
        .value();
}

double c6_core(const specdata::Dataset& d, int j, int mj, const QuadratureRule& rule) {
    double wpar = 0.0, wperp = 0.0;
    for (int M = -1; M <= 1; ++M) {
        polar::RotationalWeights rw = polar::rotational_weights(j, mj, mj, M, M);
        double fw = projection_weight(M);
        wpar += fw * fw * rw.par;
        wperp += fw * fw * rw.perp;
    }
    auto integrand = [&](double w) {
        polar::FrequencyArg z = polar::FrequencyArg::imaginary(w);
        polar::PolarizabilityPair amol = polar::molecular_polarizability(d.molecule, z);
        return polar::core_polarizability(d.core, z) * (wpar * amol.par + wperp * amol.perp);
    };
    return -(2.0 / kPi) * integrate_semi_infinite(integrand, rule);
}

C6Result c6_total(const specdata::Dataset& d, const specdata::SymmetryState& s,
                  const QuadratureRule& rule) {
    const specdata::AtomicSystem& atom = (s.ell == 1) ? d.atom_excited : d.atom_ground;
    C6Result r;
    for (const auto& row1 : s.rows) {
        for (const auto& row2 : s.rows) {
            CrossedParts parts = c6_crossed_parts(atom, d.molecule, s.j,
                                                  row1.mj, row1.lambda,
                                                  row2.mj, row2.lambda, rule);
            r.valence_integral += row1.c * row2.c * parts.integral;
            r.downward_term += row1.c * row2.c * parts.downward;
        }
        r.core_term += row1.c * row1.c * c6_core(d, s.j, row1.mj, rule);
    }
    r.total = r.valence_integral + r.downward_term + r.core_term;
    return r;
}

C6Result c6_ground_atom_parts(const specdata::Dataset& d, int j, int mj,
                              const QuadratureRule& rule) {
    CrossedParts parts = c6_crossed_parts(d.atom_ground, d.molecule, j, mj, 0, mj, 0, rule);
    C6Result r;
    r.valence_integral = parts.integral;
    r.downward_term = parts.downward;
    r.core_term = c6_core(d, j, mj, rule);
    r.total = r.valence_integral + r.downward_term + r.core_term;
    return r;
}

double c6_ground_atom(const specdata::Dataset& d, int j, int mj, const QuadratureRule& rule) {
    return c6_ground_atom_parts(d, j, mj, rule).total;
}

double c6_atom_atom(const std::vector<specdata::AtomicTransition>& a,
                    const std::vector<specdata::AtomicTransition>& b,
                    const QuadratureRule& rule) {
    auto integrand = [&](double w) {
        polar::FrequencyArg z = polar::FrequencyArg::imaginary(w);
        return scalar_polarizability(a, z) * scalar_polarizability(b, z);
    };
    return -(3.0 / kPi) * integrate_semi_infinite(integrand, rule);
}

double c6_sum_over_states(const std::vector<specdata::MolecularTransition>& dimer,
                          int j,
                          const std::vector<specdata::AtomicTransition>& atom,
                          int ell,
                          int mj1, int lambda1, int mj2, int lambda2) {
    if (mj1 + lambda1 != mj2 + lambda2)
        throw std::invalid_argument("sum over states needs rows sharing mj+lambda");
    using angular::clebsch_gordan;
    using angular::rotational_dipole_element;

    double total = 0.0;
    for (const auto& a : dimer) {
        // body-frame components of the dimer transition: Lambda' = 0 for a
        // parallel dipole, both Lambda' = +-1 for a perpendicular one
        std::vector<int> components =
            (a.orientation == specdata::Orientation::Parallel) ? std::vector<int>{0}
                                                               : std::vector<int>{-1, 1};
        for (int La : components) {
            double body_sign = (La % 2 == 0) ? 1.0 : -1.0;
            for (int jp = std::max(0, j - 1); jp <= j + 1; ++jp) {
                double body2 = clebsch_gordan(1, La, j, 0, jp, La);
                if (body2 == 0.0) continue;
                double jratio = std::sqrt(double(2 * j + 1) / double(2 * jp + 1));
                for (int M = -1; M <= 1; ++M) {
                    int mp = mj1 - M;
                    if (std::abs(mp) > jp) continue;
                    double eA1 = rotational_dipole_element(j, mj1, jp, mp, M, -La) * a.dipole;
                    if (eA1 == 0.0) continue;
                    for (int Mp = -1; Mp <= 1; ++Mp) {
                        double eA2 = jratio * clebsch_gordan(1, -Mp, j, mj2, jp, mp) * body2
                                     * body_sign * a.dipole;
                        if (eA2 == 0.0) continue;
                        double fw = projection_weight(M) * projection_weight(Mp);
                        for (const auto& b : atom) {
                            if (b.l_from != ell)
                                throw std::invalid_argument(
                                    "atomic transition does not start from the given momentum");
                            int lp = b.l_to;
                            double denom = a.delta_e + b.delta_e;
                            if (std::abs(denom) < 1e-10)
                                throw SingularityError(
                                    "degenerate intermediate pair in sum over states");
                            double lratio = std::sqrt(double(2 * lp + 1) / double(2 * ell + 1));
                            double c0 = clebsch_gordan(1, 0, lp, 0, ell, 0);
                            double c0r = clebsch_gordan(1, 0, ell, 0, lp, 0);
                            for (int lamp = -lp; lamp <= lp; ++lamp) {
                                double eB1 = b.radial * lratio * c0
                                             * clebsch_gordan(1, -M, lp, lamp, ell, lambda1);
                                if (eB1 == 0.0) continue;
                                double eB2 = b.radial / lratio * c0r
                                             * clebsch_gordan(1, Mp, ell, lambda2, lp, lamp);
                                if (eB2 == 0.0) continue;
                                total += -4.0 * fw * eA1 * eA2 * eB1 * eB2 / denom;
                            }
                        }
                    }
                }
            }
        }
    }
    return total;
}

} // namespace lrvdw::dispersion
