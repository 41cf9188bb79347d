#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrvdw::curves {

/// Long-range potential V(R) = b_rot j(j+1) + c5/R^5 + c6/R^6, all in
/// atomic units; the asymptote is the dimer rotational energy.
struct PotentialCurve {
    std::string symmetry;
    int j = 0;
    double b_rot = 0.0;
    double c5 = 0.0;
    double c6 = 0.0;
};

double potential(const PotentialCurve& c, double r);

enum class FeatureKind { Minimum, Maximum, Crossing };

struct CurveFeature {
    FeatureKind kind = FeatureKind::Minimum;
    double r = 0.0;         // bohr
    double value = 0.0;     // V at r, hartree
    double value_rel = 0.0; // V - asymptote, hartree
    std::string curve_a;
    std::string curve_b;    // crossings only
};

/// Stationary point of c5/R^5 + c6/R^6: R* = -6 c6/(5 c5), present only when
/// c5 c6 < 0; a barrier when c5 > 0, a well otherwise.
std::vector<CurveFeature> find_extrema(const PotentialCurve& c);

/// Sign-change scan on a 2000-point log grid over [rmin, rmax], refined by
/// bisection until the bracket is at machine precision.
std::vector<CurveFeature> find_crossings(const PotentialCurve& a, const PotentialCurve& b,
                                         double rmin, double rmax);

/// LeRoy radius 2 (sqrt(<r^2>_A) + sqrt(<r^2>_B)).
double leroy_radius(double r2_a, double r2_b);

/// Sampled curve table: R in bohr, potentials in 1/cm relative to zero at
/// infinite separation of the pair.
struct CurveTable {
    std::vector<std::string> labels;
    std::vector<double> r;
    std::vector<std::vector<double>> v_cm1; // [curve][point]
};

CurveTable emit_curve_table(const std::vector<PotentialCurve>& curves,
                            double rmin, double rmax, int points, bool log_scale);

void write_table(const CurveTable& t, std::ostream& os, char delimiter);

} // namespace lrvdw::curves
