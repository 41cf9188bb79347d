#include "lrvdw/curves.h"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "lrvdw/units.h"

namespace lrvdw::curves {

namespace {

double asymptote(const PotentialCurve& c) {
    return c.b_rot * c.j * (c.j + 1);
}

} // namespace

double potential(const PotentialCurve& c, double r) {
    double r5 = r * r * r * r * r;
    return asymptote(c) + c.c5 / r5 + c.c6 / (r5 * r);
}

std::vector<CurveFeature> find_extrema(const PotentialCurve& c) {
    std::vector<CurveFeature> out;
    if (c.c5 == 0.0 || c.c5 * c.c6 >= 0.0) return out;
    CurveFeature f;
    f.kind = (c.c5 > 0.0) ? FeatureKind::Maximum : FeatureKind::Minimum;
    f.r = -6.0 * c.c6 / (5.0 * c.c5);
    f.value = potential(c, f.r);
    f.value_rel = f.value - asymptote(c);
    f.curve_a = c.symmetry + "/" + std::to_string(c.j);
    out.push_back(f);
    return out;
}

std::vector<CurveFeature> find_crossings(const PotentialCurve& a, const PotentialCurve& b,
                                         double rmin, double rmax) {
    std::vector<CurveFeature> out;
    auto diff = [&](double r) { return potential(a, r) - potential(b, r); };
    const int steps = 2000;
    double ratio = std::pow(rmax / rmin, 1.0 / steps);
    double r_lo = rmin;
    double f_lo = diff(r_lo);
    for (int i = 1; i <= steps; ++i) {
        double r_hi = (i == steps) ? rmax : rmin * std::pow(ratio, i);
        double f_hi = diff(r_hi);
        if (f_lo == 0.0 || f_lo * f_hi < 0.0) {
            double lo = r_lo, hi = r_hi;
            if (f_lo == 0.0) {
                hi = lo;
            } else {
                while (hi - lo > 1e-16 * hi) {
                    double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi) break;
                    double fm = diff(mid);
                    if (fm == 0.0) { lo = hi = mid; break; }
                    if (f_lo * fm < 0.0) hi = mid;
                    else lo = mid;
                }
            }
            CurveFeature f;
            f.kind = FeatureKind::Crossing;
            f.r = 0.5 * (lo + hi);
            f.value = potential(a, f.r);
            f.value_rel = f.value - asymptote(a);
            f.curve_a = a.symmetry + "/" + std::to_string(a.j);
            f.curve_b = b.symmetry + "/" + std::to_string(b.j);
            out.push_back(f);
        }
        r_lo = r_hi;
        f_lo = f_hi;
    }
    return out;
}

double leroy_radius(double r2_a, double r2_b) {
    return 2.0 * (std::sqrt(r2_a) + std::sqrt(r2_b));
}

CurveTable emit_curve_table(const std::vector<PotentialCurve>& curves,
                            double rmin, double rmax, int points, bool log_scale) {
    CurveTable t;
    if (points < 2) throw std::invalid_argument("curve table needs at least two points");
    if (!(rmin > 0.0) || !(rmax > rmin)) throw std::invalid_argument("need 0 < rmin < rmax");
    for (const auto& c : curves) t.labels.push_back(c.symmetry + "/" + std::to_string(c.j));
    t.r.resize(points);
    for (int i = 0; i < points; ++i) {
        double s = double(i) / double(points - 1);
        t.r[i] = log_scale ? rmin * std::pow(rmax / rmin, s) : rmin + s * (rmax - rmin);
    }
    t.r.front() = rmin;
    t.r.back() = rmax;
    t.v_cm1.resize(curves.size());
    for (std::size_t c = 0; c < curves.size(); ++c) {
        t.v_cm1[c].resize(points);
        for (int i = 0; i < points; ++i)
            t.v_cm1[c][i] = units::au_to_cm1(potential(curves[c], t.r[i]));
    }
    return t;
}

void write_table(const CurveTable& t, std::ostream& os, char delimiter) {
    os << "# R_bohr";
    for (const auto& l : t.labels) os << delimiter << l;
    os << "\n";
    char buf[64];
    for (std::size_t i = 0; i < t.r.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", t.r[i]);
        os << buf;
        for (std::size_t c = 0; c < t.v_cm1.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.12g", t.v_cm1[c][i]);
            os << delimiter << buf;
        }
        os << "\n";
    }
}

} // namespace lrvdw::curves
