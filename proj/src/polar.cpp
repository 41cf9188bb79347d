#include "lrvdw/polar.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lrvdw/angular.h"
#include "lrvdw/errors.h"

namespace lrvdw::polar {

namespace {

constexpr double kPoleWindow = 1e-6;

// monotone cubic interpolation (Fritsch-Carlson slope limiting)
double pchip_eval(const std::vector<double>& x, const std::vector<double>& y, double xq) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    std::vector<double> m(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return s;
    };
    m[0] = (n == 2) ? delta[0] : endpoint(h[0], h[1], delta[0], delta[1]);
    m[n - 1] = (n == 2) ? delta[0] : endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);

    auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i >= n - 1) i = n - 2;
    double t = (xq - x[i]) / h[i];
    double t2 = t * t, t3 = t2 * t;
    return y[i] * (2 * t3 - 3 * t2 + 1) + h[i] * m[i] * (t3 - 2 * t2 + t)
           + y[i + 1] * (-2 * t3 + 3 * t2) + h[i] * m[i + 1] * (t3 - t2);
}

} // namespace

double state_to_state_polarizability(const specdata::AtomicTransition& t, FrequencyArg z) {
    if (z.kind == FrequencyArg::Kind::Real && std::abs(z.omega - std::abs(t.delta_e)) < kPoleWindow)
        throw SingularityError("polarizability evaluated at a transition pole");
    double c = angular::clebsch_gordan(1, 0, t.l_from, 0, t.l_to, 0);
    return (2.0 / 3.0) * t.delta_e / (t.delta_e * t.delta_e - z.z2()) * t.radial * t.radial * c * c;
}

double atomic_polarizability_matrix(const specdata::AtomicSystem& atom,
                                    int lambda1, int lambda2, int M, int Mp,
                                    FrequencyArg z) {
    double sum = 0.0;
    for (const auto& t : atom.transitions) {
        double angular_sum = 0.0;
        for (int lamp = -t.l_to; lamp <= t.l_to; ++lamp) {
            angular_sum += angular::clebsch_gordan(1, M, t.l_from, lambda1, t.l_to, lamp)
                           * angular::clebsch_gordan(1, Mp, t.l_from, lambda2, t.l_to, lamp);
        }
        if (angular_sum == 0.0) continue;
        sum += 3.0 * double(2 * t.l_from + 1) / double(2 * t.l_to + 1)
               * state_to_state_polarizability(t, z) * angular_sum;
    }
    return sum;
}

PolarizabilityPair molecular_polarizability(const specdata::MolecularSource& src, FrequencyArg z) {
    PolarizabilityPair out;
    if (const auto* list = std::get_if<std::vector<specdata::MolecularTransition>>(&src)) {
        for (const auto& t : *list) {
            if (z.kind == FrequencyArg::Kind::Real && std::abs(z.omega - t.delta_e) < kPoleWindow)
                throw SingularityError("molecular polarizability evaluated at a transition pole");
            double term = 2.0 * t.delta_e * t.dipole * t.dipole
                          / (t.delta_e * t.delta_e - z.z2());
            if (t.orientation == specdata::Orientation::Parallel) out.par += term;
            else out.perp += term;
        }
        return out;
    }
    const auto& g = std::get<specdata::PolarizabilityGrid>(src);
    if (z.kind == FrequencyArg::Kind::Real)
        throw CapabilityError("tabulated polarizability supports only imaginary frequencies");
    if (z.omega <= g.omega.back()) {
        out.par = pchip_eval(g.omega, g.par, z.omega);
        out.perp = pchip_eval(g.omega, g.perp, z.omega);
    } else {
        double scale = (g.omega.back() / z.omega) * (g.omega.back() / z.omega);
        out.par = g.par.back() * scale;
        out.perp = g.perp.back() * scale;
    }
    return out;
}

double core_polarizability(const specdata::CoreModel& core, FrequencyArg z) {
    if (z.kind == FrequencyArg::Kind::Real)
        throw CapabilityError("core polarizability supports only imaginary frequencies");
    if (const auto* c = std::get_if<specdata::CoreConstant>(&core)) return c->alpha;
    const auto& c = std::get<specdata::CoreEffectiveTransition>(core);
    return 2.0 * c.delta_e * c.strength / (c.delta_e * c.delta_e - z.z2());
}

RotationalWeights rotational_weights(int j, int mj1, int mj2, int M, int Mp) {
    RotationalWeights w;
    if (mj1 - M != mj2 - Mp) return w;
    int mp = mj1 - M;
    for (int jp = std::max(0, j - 1); jp <= j + 1; ++jp) {
        if (std::abs(mp) > jp) continue;
        double pair = angular::clebsch_gordan(1, -M, j, mj1, jp, mp)
                      * angular::clebsch_gordan(1, -Mp, j, mj2, jp, mp);
        if (pair == 0.0) continue;
        double ratio = double(2 * j + 1) / double(2 * jp + 1);
        double cpar = angular::clebsch_gordan(1, 0, j, 0, jp, 0);
        double cperp = angular::clebsch_gordan(1, 1, j, 0, jp, 1);
        w.par += ratio * cpar * cpar * pair;
        w.perp += ratio * 2.0 * cperp * cperp * pair;
    }
    return w;
}

double rotational_polarizability(int j, int mj1, int mj2, int M, int Mp,
                                 const PolarizabilityPair& pair) {
    RotationalWeights w = rotational_weights(j, mj1, mj2, M, Mp);
    return w.par * pair.par + w.perp * pair.perp;
}

} // namespace lrvdw::polar
