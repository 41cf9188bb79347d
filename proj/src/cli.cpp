#include "lrvdw/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lrvdw/curves.h"
#include "lrvdw/dispersion.h"
#include "lrvdw/errors.h"
#include "lrvdw/specdata.h"
#include "lrvdw/units.h"

namespace lrvdw::cli {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int reflection_rank(specdata::Reflection r) {
    switch (r) {
        case specdata::Reflection::Plus: return 0;
        case specdata::Reflection::Minus: return 1;
        default: return 2;
    }
}

// deterministic presentation order: symmetry, then j, then input position
std::vector<std::size_t> sorted_state_indices(const specdata::Dataset& d) {
    std::vector<std::size_t> idx(d.states.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& sa = d.states[a];
        const auto& sb = d.states[b];
        if (sa.mJ != sb.mJ) return sa.mJ < sb.mJ;
        if (sa.reflection != sb.reflection)
            return reflection_rank(sa.reflection) < reflection_rank(sb.reflection);
        return sa.j < sb.j;
    });
    return idx;
}

struct C6Options {
    std::string dataset;
    std::string out;
    std::string atom = "excited";
    int nodes = 0;
    bool oracle = false;
};

struct CurveOptions {
    std::string dataset;
    std::string out;
    std::string coeffs;
    std::string scale = "log";
    std::string delimiter = ",";
    int nodes = 0;
    int points = 200;
    double rmin = 30.0;
    double rmax = 3000.0;
    bool analyze = false;
    bool gnuplot = false;
};

struct OracleOptions {
    int models = 100;
    unsigned seed = 987231u;
};

dispersion::QuadratureRule make_rule(const specdata::Dataset& d, int nodes) {
    dispersion::QuadratureRule rule = dispersion::default_rule(d);
    if (nodes > 0) rule.nodes = nodes;
    return rule;
}

int cmd_validate(const std::string& path, std::ostream& out) {
    specdata::Dataset d = specdata::load_dataset(path);
    std::size_t n_trans = d.atom_ground.transitions.size() + d.atom_excited.transitions.size();
    out << "dataset OK: " << d.atom_ground.levels.size() + d.atom_excited.levels.size()
        << " levels, " << n_trans << " atomic transitions, " << d.states.size() << " states\n";
    return 0;
}

double state_sum_over_states(const specdata::Dataset& d, const specdata::SymmetryState& s) {
    const auto* list = std::get_if<std::vector<specdata::MolecularTransition>>(&d.molecule);
    if (!list)
        throw CapabilityError("sum-over-states oracle needs an explicit molecular transition list");
    const specdata::AtomicSystem& atom = (s.ell == 1) ? d.atom_excited : d.atom_ground;
    double sum = 0.0;
    for (const auto& r1 : s.rows)
        for (const auto& r2 : s.rows)
            sum += r1.c * r2.c
                   * dispersion::c6_sum_over_states(*list, s.j, atom.transitions, s.ell,
                                                    r1.mj, r1.lambda, r2.mj, r2.lambda);
    return sum;
}

int cmd_c6(const C6Options& opt, std::ostream& out, std::ostream& err) {
    specdata::Dataset d = specdata::load_dataset(opt.dataset);
    dispersion::QuadratureRule rule = make_rule(d, opt.nodes);

    std::ofstream file;
    std::ostream* dest = &out;
    if (!opt.out.empty()) {
        file.open(opt.out);
        if (!file) throw std::ios_base::failure("cannot write output file: " + opt.out);
        dest = &file;
    }

    std::vector<specdata::SymmetryState> states;
    if (opt.atom == "ground") {
        for (int j = 0; j <= 4; ++j) {
            for (int mj = 0; mj <= j; ++mj) {
                specdata::SymmetryState s;
                s.mJ = mj;
                s.reflection = (mj == 0) ? specdata::Reflection::Plus : specdata::Reflection::None;
                s.j = j;
                s.ell = 0;
                s.c5 = 0.0;
                s.rows.push_back({mj, 0, 1.0});
                states.push_back(s);
            }
        }
    } else {
        if (d.states.empty())
            throw ValidationError("dataset has no symmetry states; nothing to compute");
        for (std::size_t i : sorted_state_indices(d)) states.push_back(d.states[i]);
    }

    *dest << "# symmetry,j,c5,c6,valence,downward,core\n";
    for (const auto& s : states) {
        dispersion::C6Result res = dispersion::c6_total(d, s, rule);
        *dest << specdata::state_label(s) << "," << s.j << "," << fmt(s.c5) << ","
              << fmt(res.total) << "," << fmt(res.valence_integral) << ","
              << fmt(res.downward_term) << "," << fmt(res.core_term) << "\n";
    }

    if (opt.oracle) {
        double worst = 0.0;
        for (const auto& s : states) {
            dispersion::C6Result res = dispersion::c6_total(d, s, rule);
            double factorized = res.valence_integral + res.downward_term;
            double sos = state_sum_over_states(d, s);
            double rel = std::abs(factorized - sos) / std::abs(sos);
            worst = std::max(worst, rel);
            *dest << "# oracle " << specdata::state_label(s) << "/" << s.j
                  << ": factorized=" << fmt(factorized) << " sum_over_states=" << fmt(sos)
                  << " rel=" << fmt(rel) << "\n";
        }
        *dest << "# oracle max relative deviation = " << fmt(worst) << "\n";
        if (!(worst <= 1e-6)) {
            err << "oracle check failed: max relative deviation " << fmt(worst) << "\n";
            return 1;
        }
    }
    return 0;
}

std::vector<curves::PotentialCurve> load_coefficient_file(const std::string& path, double b_rot) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open coefficient file: " + path);
    std::vector<curves::PotentialCurve> out;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        curves::PotentialCurve c;
        if (!(is >> c.symmetry)) continue;
        if (!(is >> c.j >> c.c5 >> c.c6))
            throw ParseError(path + ":" + std::to_string(no)
                             + ": expected: symmetry j c5 c6");
        c.b_rot = b_rot;
        out.push_back(c);
    }
    return out;
}

void write_analysis(const std::vector<curves::PotentialCurve>& cs,
                    const specdata::Dataset& d, double rmin, double rmax, std::ostream& os) {
    os << "# analysis\n";
    os << "# leroy_radius_bohr " << fmt(curves::leroy_radius(d.r2_atom, d.r2_molecule)) << "\n";
    for (const auto& c : cs) {
        for (const auto& f : curves::find_extrema(c)) {
            os << "# " << (f.kind == curves::FeatureKind::Minimum ? "minimum" : "maximum")
               << " " << f.curve_a << " r_bohr=" << fmt(f.r)
               << " v_au=" << fmt(f.value) << " v_cm1=" << fmt(units::au_to_cm1(f.value))
               << " depth_au=" << fmt(f.value_rel)
               << " depth_cm1=" << fmt(units::au_to_cm1(f.value_rel)) << "\n";
        }
    }
    std::vector<curves::CurveFeature> crossings;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t k = i + 1; k < cs.size(); ++k) {
            if (cs[i].symmetry != cs[k].symmetry) continue;
            auto found = curves::find_crossings(cs[i], cs[k], rmin, rmax);
            crossings.insert(crossings.end(), found.begin(), found.end());
        }
    std::sort(crossings.begin(), crossings.end(),
              [](const auto& a, const auto& b) { return a.r < b.r; });
    for (const auto& f : crossings) {
        os << "# crossing " << f.curve_a << " " << f.curve_b << " r_bohr=" << fmt(f.r)
           << " v_au=" << fmt(f.value) << " v_cm1=" << fmt(units::au_to_cm1(f.value)) << "\n";
    }
}

int cmd_curves(const CurveOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.delimiter.size() != 1) {
        err << "delimiter must be a single character\n";
        return 1;
    }
    if (opt.gnuplot && opt.out.empty()) {
        err << "--gnuplot needs --out to name the table file\n";
        return 1;
    }
    specdata::Dataset d = specdata::load_dataset(opt.dataset);

    std::vector<curves::PotentialCurve> cs;
    if (!opt.coeffs.empty()) {
        cs = load_coefficient_file(opt.coeffs, d.b_rot);
    } else {
        if (d.states.empty())
            throw ValidationError("dataset has no symmetry states; nothing to compute");
        dispersion::QuadratureRule rule = make_rule(d, opt.nodes);
        for (std::size_t i : sorted_state_indices(d)) {
            const auto& s = d.states[i];
            dispersion::C6Result res = dispersion::c6_total(d, s, rule);
            cs.push_back({specdata::state_label(s), s.j, d.b_rot, s.c5, res.total});
        }
    }
    if (cs.empty()) throw ValidationError("no curves to tabulate");

    curves::CurveTable table =
        curves::emit_curve_table(cs, opt.rmin, opt.rmax, opt.points, opt.scale == "log");

    std::ofstream file;
    std::ostream* dest = &out;
    if (!opt.out.empty()) {
        file.open(opt.out);
        if (!file) throw std::ios_base::failure("cannot write output file: " + opt.out);
        dest = &file;
    }
    curves::write_table(table, *dest, opt.delimiter[0]);
    if (opt.analyze) write_analysis(cs, d, opt.rmin, opt.rmax, *dest);

    if (opt.gnuplot) {
        std::string script_path = opt.out + ".gp";
        std::ofstream gp(script_path);
        if (!gp) throw std::ios_base::failure("cannot write plot script: " + script_path);
        gp << "set datafile separator \"" << opt.delimiter << "\"\n";
        if (opt.scale == "log") gp << "set logscale x\n";
        gp << "set xlabel \"R (bohr)\"\n";
        gp << "set ylabel \"V (cm^{-1})\"\n";
        gp << "plot \\\n";
        for (std::size_t c = 0; c < table.labels.size(); ++c) {
            gp << "  \"" << opt.out << "\" using 1:" << (c + 2) << " with lines title \""
               << table.labels[c] << "\"" << (c + 1 < table.labels.size() ? ", \\" : "") << "\n";
        }
    }
    return 0;
}

// randomized finite model for the factorized-vs-direct comparison
struct OracleModel {
    std::vector<specdata::MolecularTransition> mol;
    specdata::AtomicSystem atom;
    int j = 0, ell = 0;
    int mj1 = 0, lambda1 = 0, mj2 = 0, lambda2 = 0;
};

OracleModel random_model(std::mt19937& rng, int n_down) {
    std::uniform_real_distribution<double> energy(0.05, 1.2);
    std::uniform_real_distribution<double> dipole(0.2, 1.5);
    OracleModel m;
    m.j = int(rng() % 3);
    m.ell = int(rng() % 2);
    for (;;) {
        m.mj1 = int(rng() % (2 * m.j + 1)) - m.j;
        m.lambda1 = int(rng() % (2 * m.ell + 1)) - m.ell;
        m.mj2 = int(rng() % (2 * m.j + 1)) - m.j;
        m.lambda2 = m.mj1 + m.lambda1 - m.mj2;
        if (std::abs(m.lambda2) <= m.ell) break;
    }
    int n_mol = 1 + int(rng() % 4);
    for (int i = 0; i < n_mol; ++i) {
        specdata::MolecularTransition t;
        t.delta_e = energy(rng);
        t.dipole = dipole(rng);
        t.orientation = (rng() % 2 == 0) ? specdata::Orientation::Parallel
                                         : specdata::Orientation::Perpendicular;
        m.mol.push_back(t);
    }
    m.atom.initial.l = m.ell;
    int n_up = 1 + int(rng() % 3);
    auto push_transition = [&](double de) {
        specdata::AtomicTransition t;
        t.l_from = m.ell;
        t.l_to = (m.ell == 0) ? 1 : ((rng() % 2 == 0) ? 0 : 2);
        t.delta_e = de;
        t.radial = dipole(rng);
        m.atom.transitions.push_back(t);
    };
    for (int i = 0; i < n_up; ++i) push_transition(energy(rng));
    for (int i = 0; i < n_down; ++i) {
        // keep the downward frequency clear of every molecular resonance so
        // neither the pole guard nor a near-degenerate denominator fires
        for (;;) {
            double de = energy(rng);
            bool clear = true;
            for (const auto& t : m.mol)
                if (std::abs(t.delta_e - de) < 2e-2) clear = false;
            if (clear) { push_transition(-de); break; }
        }
    }
    return m;
}

int cmd_oracle_check(const OracleOptions& opt, std::ostream& out, std::ostream& err) {
    std::mt19937 rng(opt.seed);
    double worst = 0.0;
    for (int i = 0; i < opt.models; ++i) {
        OracleModel m;
        double sos = 0.0;
        do {
            m = random_model(rng, i % 3);
            sos = dispersion::c6_sum_over_states(m.mol, m.j, m.atom.transitions, m.ell,
                                                 m.mj1, m.lambda1, m.mj2, m.lambda2);
        } while (std::abs(sos) < 1e-12);

        std::vector<double> logs;
        for (const auto& t : m.mol) logs.push_back(std::log(t.delta_e));
        for (const auto& t : m.atom.transitions) logs.push_back(std::log(std::abs(t.delta_e)));
        dispersion::QuadratureRule rule;
        rule.nodes = 160;
        rule.omega0 = std::exp(std::accumulate(logs.begin(), logs.end(), 0.0) / logs.size());

        double crossed = dispersion::c6_crossed_parts(m.atom, m.mol, m.j, m.mj1, m.lambda1,
                                                      m.mj2, m.lambda2, rule)
                             .value();
        worst = std::max(worst, std::abs(crossed - sos) / std::abs(sos));
    }
    out << "oracle check: " << opt.models << " models, max relative deviation = " << fmt(worst)
        << "\n";
    if (!(worst <= 1e-6)) {
        err << "oracle check failed\n";
        return 1;
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"second-order long-range C6 coefficients for an atom + diatomic pair"};
    app.name("lrvdw");
    app.require_subcommand(1);

    std::string validate_dataset_path;
    auto* v = app.add_subcommand("validate", "parse and validate a dataset file");
    v->add_option("--dataset", validate_dataset_path, "dataset file")->required();

    C6Options c6opt;
    auto* c = app.add_subcommand("c6", "compute C6 coefficients");
    c->add_option("--dataset", c6opt.dataset, "dataset file")->required();
    c->add_option("--nodes", c6opt.nodes, "quadrature nodes")->check(CLI::Range(8, 4096));
    c->add_option("--out", c6opt.out, "write the table to this file");
    c->add_option("--atom", c6opt.atom, "which atom faces the dimer")
        ->check(CLI::IsMember({"ground", "excited"}));
    c->add_flag("--oracle", c6opt.oracle, "also compare against the sum-over-states value");

    CurveOptions cvopt;
    auto* k = app.add_subcommand("curves", "tabulate and analyze potential curves");
    k->add_option("--dataset", cvopt.dataset, "dataset file")->required();
    k->add_option("--coeffs", cvopt.coeffs, "use C5/C6 values from this file instead of computing");
    k->add_option("--nodes", cvopt.nodes, "quadrature nodes")->check(CLI::Range(8, 4096));
    k->add_option("--out", cvopt.out, "write the table to this file");
    k->add_option("--rmin", cvopt.rmin, "smallest R in bohr")->check(CLI::PositiveNumber);
    k->add_option("--rmax", cvopt.rmax, "largest R in bohr")->check(CLI::PositiveNumber);
    k->add_option("--points", cvopt.points, "number of R samples")->check(CLI::Range(2, 1000000));
    k->add_option("--scale", cvopt.scale, "R sampling")->check(CLI::IsMember({"linear", "log"}));
    k->add_option("--delimiter", cvopt.delimiter, "table column delimiter");
    k->add_flag("--analyze", cvopt.analyze, "append extrema and same-symmetry crossings");
    k->add_flag("--gnuplot", cvopt.gnuplot, "also write a plot script next to --out");

    OracleOptions oopt;
    auto* o = app.add_subcommand("oracle-check",
                                 "compare the factorized C6 against the direct sum over states "
                                 "on randomized models");
    o->add_option("--models", oopt.models, "number of random models")->check(CLI::Range(1, 100000));
    o->add_option("--seed", oopt.seed, "random seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (v->parsed()) return cmd_validate(validate_dataset_path, out);
        if (c->parsed()) return cmd_c6(c6opt, out, err);
        if (k->parsed()) return cmd_curves(cvopt, out, err);
        return cmd_oracle_check(oopt, out, err);
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace lrvdw::cli
