#include "lrvdw/specdata.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "lrvdw/errors.h"
#include "lrvdw/units.h"

namespace lrvdw::specdata {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct Line {
    std::string key;
    std::string value;
    int no = 0;
    bool blank = false;
};

struct Section {
    std::string name;
    int no = 0;
    std::vector<Line> lines;
};

[[noreturn]] void fail(const std::string& file, int line, const std::string& msg) {
    throw ParseError(file + ":" + std::to_string(line) + ": " + msg);
}

std::vector<Section> tokenize(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open dataset file: " + path);
    std::vector<Section> sections;
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string s = trim(raw);
        if (s.empty()) {
            if (!sections.empty()) sections.back().lines.push_back({"", "", no, true});
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']') fail(path, no, "unterminated section header");
            sections.push_back({trim(s.substr(1, s.size() - 2)), no, {}});
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) fail(path, no, "expected key = value");
        if (sections.empty()) fail(path, no, "key outside any section");
        sections.back().lines.push_back({trim(s.substr(0, eq)), trim(s.substr(eq + 1)), no, false});
    }
    return sections;
}

double parse_number(const std::string& file, int no, const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        fail(file, no, "not a number: '" + tok + "'");
    }
    if (used != tok.size()) fail(file, no, "trailing characters in number: '" + tok + "'");
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

// energy values carry an explicit unit tag as the last token: "au" or "cm-1"
std::vector<double> parse_energy_list(const std::string& file, const Line& ln) {
    auto toks = split_ws(ln.value);
    if (toks.size() < 2) fail(file, ln.no, "energy needs a value and a unit tag (au|cm-1)");
    std::string unit = toks.back();
    toks.pop_back();
    double scale = 1.0;
    if (unit == "au") scale = 1.0;
    else if (unit == "cm-1") scale = 1.0 / units::hartree_in_inv_cm;
    else fail(file, ln.no, "unknown energy unit '" + unit + "' (expected au or cm-1)");
    std::vector<double> vals;
    for (const auto& t : toks) vals.push_back(scale * parse_number(file, ln.no, t));
    return vals;
}

double parse_energy(const std::string& file, const Line& ln) {
    auto v = parse_energy_list(file, ln);
    if (v.size() != 1) fail(file, ln.no, "expected a single energy value");
    return v[0];
}

// group a section's lines into records, each starting at `start_key`;
// keys seen before the first record are returned as the preamble
struct Record {
    std::map<std::string, Line> kv;
    int no = 0;
};

std::pair<std::map<std::string, Line>, std::vector<Record>>
group_records(const std::string& file, const Section& sec, const std::string& start_key) {
    std::map<std::string, Line> preamble;
    std::vector<Record> recs;
    for (const auto& ln : sec.lines) {
        if (ln.blank) continue;
        if (ln.key == start_key) {
            recs.push_back({});
            recs.back().no = ln.no;
        }
        if (recs.empty()) {
            if (preamble.count(ln.key)) fail(file, ln.no, "duplicate key '" + ln.key + "'");
            preamble[ln.key] = ln;
        } else {
            if (recs.back().kv.count(ln.key))
                fail(file, ln.no, "duplicate key '" + ln.key + "' in record");
            recs.back().kv[ln.key] = ln;
        }
    }
    return {preamble, recs};
}

const Line& need(const std::string& file, const Record& r, const std::string& key) {
    auto it = r.kv.find(key);
    if (it == r.kv.end())
        fail(file, r.no, "record is missing key '" + key + "'");
    return it->second;
}

AtomicSystem parse_atom(const std::string& file, const Section* levels, const Section* transitions,
                        const std::string& which) {
    if (!levels) throw ParseError(file + ": missing section [" + which + ".levels]");
    if (!transitions) throw ParseError(file + ": missing section [" + which + ".transitions]");
    AtomicSystem atom;
    auto [pre, recs] = group_records(file, *levels, "label");
    std::string initial_label;
    if (auto it = pre.find("initial"); it != pre.end()) initial_label = it->second.value;
    else throw ParseError(file + ":" + std::to_string(levels->no) + ": levels section needs 'initial = <label>'");
    for (const auto& r : recs) {
        AtomicLevel lev;
        lev.label = need(file, r, "label").value;
        lev.n = static_cast<int>(parse_number(file, r.no, need(file, r, "n").value));
        lev.l = static_cast<int>(parse_number(file, r.no, need(file, r, "l").value));
        lev.energy = parse_energy(file, need(file, r, "energy"));
        atom.levels.push_back(lev);
    }
    auto find_level = [&](const std::string& lbl) -> const AtomicLevel* {
        for (const auto& l : atom.levels)
            if (l.label == lbl) return &l;
        return nullptr;
    };
    if (const AtomicLevel* ini = find_level(initial_label)) atom.initial = *ini;
    else throw ParseError(file + ": initial level '" + initial_label + "' not among [" + which + ".levels]");
    auto [tpre, trecs] = group_records(file, *transitions, "from");
    (void)tpre;
    for (const auto& r : trecs) {
        AtomicTransition t;
        t.from = need(file, r, "from").value;
        t.to = need(file, r, "to").value;
        t.radial = parse_number(file, r.no, need(file, r, "radial").value);
        const AtomicLevel* lf = find_level(t.from);
        const AtomicLevel* lt = find_level(t.to);
        // delta_e and the l's come from the level table; missing labels are
        // left for validation so the report can name them
        t.l_from = lf ? lf->l : -1;
        t.l_to = lt ? lt->l : -1;
        t.delta_e = (lf && lt) ? lt->energy - lf->energy : 0.0;
        atom.transitions.push_back(t);
    }
    return atom;
}

MolecularSource parse_molecule(const std::string& file, const Section* sec) {
    if (!sec) throw ParseError(file + ": missing section [molecule.polarizability]");
    // the 'type' key decides the record layout
    std::string type;
    for (const auto& ln : sec->lines)
        if (!ln.blank && ln.key == "type") { type = ln.value; break; }
    if (type == "transitions") {
        auto [pre, recs] = group_records(file, *sec, "delta_e");
        (void)pre;
        std::vector<MolecularTransition> list;
        for (const auto& r : recs) {
            MolecularTransition t;
            t.delta_e = parse_energy(file, need(file, r, "delta_e"));
            t.dipole = parse_number(file, r.no, need(file, r, "dipole").value);
            std::string ori = need(file, r, "orientation").value;
            if (ori == "parallel") t.orientation = Orientation::Parallel;
            else if (ori == "perpendicular") t.orientation = Orientation::Perpendicular;
            else fail(file, r.no, "orientation must be parallel or perpendicular");
            list.push_back(t);
        }
        return list;
    }
    if (type == "grid") {
        PolarizabilityGrid g;
        for (const auto& ln : sec->lines) {
            if (ln.blank || ln.key == "type") continue;
            if (ln.key == "omega") g.omega = parse_energy_list(file, ln);
            else if (ln.key == "alpha_par") {
                for (const auto& t : split_ws(ln.value)) g.par.push_back(parse_number(file, ln.no, t));
            } else if (ln.key == "alpha_perp") {
                for (const auto& t : split_ws(ln.value)) g.perp.push_back(parse_number(file, ln.no, t));
            } else fail(file, ln.no, "unknown key '" + ln.key + "' in grid block");
        }
        return g;
    }
    throw ParseError(file + ":" + std::to_string(sec->no)
                     + ": [molecule.polarizability] needs type = transitions|grid");
}

CoreModel parse_core(const std::string& file, const Section* sec) {
    if (!sec) throw ParseError(file + ": missing section [core]");
    std::map<std::string, Line> kv;
    for (const auto& ln : sec->lines)
        if (!ln.blank) kv[ln.key] = ln;
    auto type = kv.find("type");
    if (type == kv.end()) throw ParseError(file + ":" + std::to_string(sec->no) + ": [core] needs a type");
    if (type->second.value == "constant") {
        auto a = kv.find("alpha");
        if (a == kv.end()) throw ParseError(file + ": [core] constant needs 'alpha'");
        return CoreConstant{parse_number(file, a->second.no, a->second.value)};
    }
    if (type->second.value == "transition") {
        auto de = kv.find("delta_e");
        auto st = kv.find("strength");
        if (de == kv.end() || st == kv.end())
            throw ParseError(file + ": [core] transition needs 'delta_e' and 'strength'");
        return CoreEffectiveTransition{parse_energy(file, de->second),
                                       parse_number(file, st->second.no, st->second.value)};
    }
    fail(file, type->second.no, "core type must be constant or transition");
}

std::vector<SymmetryState> parse_states(const std::string& file, const Section* sec) {
    std::vector<SymmetryState> states;
    if (!sec) return states; // an empty state list is a valid dataset
    auto [pre, recs] = group_records(file, *sec, "mJ");
    (void)pre;
    for (const auto& r : recs) {
        SymmetryState s;
        s.mJ = static_cast<int>(parse_number(file, r.no, need(file, r, "mJ").value));
        s.j = static_cast<int>(parse_number(file, r.no, need(file, r, "j").value));
        s.ell = static_cast<int>(parse_number(file, r.no, need(file, r, "ell").value));
        s.c5 = parse_number(file, r.no, need(file, r, "c5").value);
        if (auto it = r.kv.find("reflection"); it != r.kv.end()) {
            if (it->second.value == "+") s.reflection = Reflection::Plus;
            else if (it->second.value == "-") s.reflection = Reflection::Minus;
            else if (it->second.value == "none") s.reflection = Reflection::None;
            else fail(file, it->second.no, "reflection must be +, - or none");
        }
        states.push_back(s);
    }
    // rows: a record may carry several 'row' lines, which map collapses;
    // re-scan the section sequentially instead
    std::size_t idx = static_cast<std::size_t>(-1);
    for (const auto& ln : sec->lines) {
        if (ln.blank) continue;
        if (ln.key == "mJ") ++idx;
        if (ln.key != "row") continue;
        if (idx == static_cast<std::size_t>(-1)) fail(file, ln.no, "row before any state record");
        auto toks = split_ws(ln.value);
        if (toks.size() != 3) fail(file, ln.no, "row needs: mj lambda coefficient");
        StateRow row;
        row.mj = static_cast<int>(parse_number(file, ln.no, toks[0]));
        row.lambda = static_cast<int>(parse_number(file, ln.no, toks[1]));
        row.c = parse_number(file, ln.no, toks[2]);
        states[idx].rows.push_back(row);
    }
    return states;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string state_label(const SymmetryState& s) {
    static const char* names[] = {"Sigma", "Pi", "Delta", "Phi", "Gamma", "H", "I"};
    std::string base = (s.mJ >= 0 && s.mJ <= 6) ? names[s.mJ] : ("mJ" + std::to_string(s.mJ));
    if (s.mJ == 0) {
        if (s.reflection == Reflection::Plus) base += "+";
        else if (s.reflection == Reflection::Minus) base += "-";
    }
    return base;
}

Dataset load_dataset(const std::string& path) {
    auto sections = tokenize(path);
    auto find = [&](const std::string& name) -> const Section* {
        for (const auto& s : sections)
            if (s.name == name) return &s;
        return nullptr;
    };

    Dataset d;
    const Section* consts = find("constants");
    if (!consts) throw ParseError(path + ": missing section [constants]");
    for (const auto& ln : consts->lines) {
        if (ln.blank) continue;
        if (ln.key == "b_rot") d.b_rot = parse_energy(path, ln);
        else if (ln.key == "r2_atom") d.r2_atom = parse_number(path, ln.no, ln.value);
        else if (ln.key == "r2_molecule") d.r2_molecule = parse_number(path, ln.no, ln.value);
        else fail(path, ln.no, "unknown key '" + ln.key + "' in [constants]");
    }

    d.atom_ground = parse_atom(path, find("atom.ground.levels"), find("atom.ground.transitions"),
                               "atom.ground");
    d.atom_excited = parse_atom(path, find("atom.excited.levels"), find("atom.excited.transitions"),
                                "atom.excited");
    d.molecule = parse_molecule(path, find("molecule.polarizability"));
    d.core = parse_core(path, find("core"));
    d.states = parse_states(path, find("states"));

    ValidationReport rep = validate_dataset(d);
    if (!rep.ok()) {
        std::string msg = path + ": dataset validation failed:";
        for (const auto& i : rep.issues) msg += "\n  " + i.where + ": " + i.message;
        throw ValidationError(msg);
    }
    return d;
}

void write_dataset(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write dataset file: " + path);
    out << "[constants]\n";
    out << "b_rot = " << fmt(d.b_rot) << " au\n";
    out << "r2_atom = " << fmt(d.r2_atom) << "\n";
    out << "r2_molecule = " << fmt(d.r2_molecule) << "\n";
    auto dump_atom = [&](const AtomicSystem& a, const std::string& which) {
        out << "\n[" << which << ".levels]\n";
        out << "initial = " << a.initial.label << "\n";
        for (const auto& l : a.levels) {
            out << "\nlabel = " << l.label << "\nn = " << l.n << "\nl = " << l.l
                << "\nenergy = " << fmt(l.energy) << " au\n";
        }
        out << "\n[" << which << ".transitions]\n";
        for (const auto& t : a.transitions) {
            out << "\nfrom = " << t.from << "\nto = " << t.to
                << "\nradial = " << fmt(t.radial) << "\n";
        }
    };
    dump_atom(d.atom_ground, "atom.ground");
    dump_atom(d.atom_excited, "atom.excited");
    out << "\n[molecule.polarizability]\n";
    if (const auto* list = std::get_if<std::vector<MolecularTransition>>(&d.molecule)) {
        out << "type = transitions\n";
        for (const auto& t : *list) {
            out << "\ndelta_e = " << fmt(t.delta_e) << " au\ndipole = " << fmt(t.dipole)
                << "\norientation = "
                << (t.orientation == Orientation::Parallel ? "parallel" : "perpendicular") << "\n";
        }
    } else {
        const auto& g = std::get<PolarizabilityGrid>(d.molecule);
        out << "type = grid\n";
        out << "omega =";
        for (double w : g.omega) out << " " << fmt(w);
        out << " au\nalpha_par =";
        for (double v : g.par) out << " " << fmt(v);
        out << "\nalpha_perp =";
        for (double v : g.perp) out << " " << fmt(v);
        out << "\n";
    }
    out << "\n[core]\n";
    if (const auto* cc = std::get_if<CoreConstant>(&d.core)) {
        out << "type = constant\nalpha = " << fmt(cc->alpha) << "\n";
    } else {
        const auto& ct = std::get<CoreEffectiveTransition>(d.core);
        out << "type = transition\ndelta_e = " << fmt(ct.delta_e) << " au\nstrength = "
            << fmt(ct.strength) << "\n";
    }
    out << "\n[states]\n";
    for (const auto& s : d.states) {
        out << "\nmJ = " << s.mJ << "\n";
        if (s.mJ == 0)
            out << "reflection = " << (s.reflection == Reflection::Minus ? "-" : "+") << "\n";
        out << "j = " << s.j << "\nell = " << s.ell << "\nc5 = " << fmt(s.c5) << "\n";
        for (const auto& r : s.rows)
            out << "row = " << r.mj << " " << r.lambda << " " << fmt(r.c) << "\n";
    }
}

ValidationReport validate_dataset(const Dataset& d) {
    ValidationReport rep;
    auto issue = [&](const std::string& where, const std::string& msg) {
        rep.issues.push_back({where, msg});
    };

    auto check_atom = [&](const AtomicSystem& a, const std::string& which) {
        std::map<std::string, const AtomicLevel*> by_label;
        for (const auto& l : a.levels) {
            std::string where = which + " level " + l.label;
            if (by_label.count(l.label)) issue(where, "duplicate level label");
            by_label[l.label] = &l;
            if (l.l < 0) issue(where, "negative orbital momentum");
            if (!std::isfinite(l.energy)) issue(where, "non-finite energy");
        }
        for (const auto& t : a.transitions) {
            std::string where = which + " transition " + t.from + "->" + t.to;
            if (!by_label.count(t.from)) issue(where, "unknown level '" + t.from + "'");
            if (!by_label.count(t.to)) issue(where, "unknown level '" + t.to + "'");
            if (t.from != a.initial.label)
                issue(where, "transition must start from the initial level " + a.initial.label);
            if (by_label.count(t.from) && by_label.count(t.to)) {
                if (std::abs(t.l_to - t.l_from) != 1)
                    issue(where, "|delta l| must be 1 for a dipole transition");
                if (t.delta_e == 0.0) issue(where, "levels are degenerate (delta_e = 0)");
            }
            if (!(t.radial >= 0.0) || !std::isfinite(t.radial))
                issue(where, "radial element must be finite and non-negative");
        }
    };
    check_atom(d.atom_ground, "atom.ground");
    check_atom(d.atom_excited, "atom.excited");

    if (const auto* list = std::get_if<std::vector<MolecularTransition>>(&d.molecule)) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            std::string where = "molecule transition #" + std::to_string(i + 1);
            if (!((*list)[i].delta_e > 0.0)) issue(where, "delta_e must be positive");
            if (!std::isfinite((*list)[i].dipole)) issue(where, "non-finite dipole");
        }
        if (list->empty()) issue("molecule", "transition list is empty");
    } else {
        const auto& g = std::get<PolarizabilityGrid>(d.molecule);
        if (g.omega.size() < 2) issue("molecule grid", "need at least two nodes");
        if (g.par.size() != g.omega.size() || g.perp.size() != g.omega.size())
            issue("molecule grid", "omega/alpha_par/alpha_perp lengths differ");
        if (!g.omega.empty() && g.omega.front() != 0.0)
            issue("molecule grid", "grid must start at omega = 0");
        for (std::size_t i = 1; i < g.omega.size(); ++i)
            if (!(g.omega[i] > g.omega[i - 1])) {
                issue("molecule grid", "omega values must increase strictly");
                break;
            }
        for (double v : g.par)
            if (!(v > 0.0) || !std::isfinite(v)) { issue("molecule grid", "alpha_par must stay positive"); break; }
        for (double v : g.perp)
            if (!(v > 0.0) || !std::isfinite(v)) { issue("molecule grid", "alpha_perp must stay positive"); break; }
    }

    if (const auto* cc = std::get_if<CoreConstant>(&d.core)) {
        if (!(cc->alpha >= 0.0) || !std::isfinite(cc->alpha))
            issue("core", "alpha must be finite and non-negative");
    } else {
        const auto& ct = std::get<CoreEffectiveTransition>(d.core);
        if (!(ct.delta_e > 0.0)) issue("core", "delta_e must be positive");
        if (!(ct.strength > 0.0)) issue("core", "strength must be positive");
    }

    for (std::size_t i = 0; i < d.states.size(); ++i) {
        const auto& s = d.states[i];
        std::string where = "state #" + std::to_string(i + 1) + " (" + state_label(s)
                            + " j=" + std::to_string(s.j) + ")";
        if (s.mJ < 0) issue(where, "mJ must be non-negative");
        if (s.j < 0) issue(where, "j must be non-negative");
        if (s.ell != 0 && s.ell != 1) issue(where, "ell must be 0 or 1");
        if (s.ell == 0 && d.atom_ground.initial.l != 0)
            issue(where, "ell = 0 states need an S ground atom");
        if (s.ell == 1 && d.atom_excited.initial.l != 1)
            issue(where, "ell = 1 states need a P excited atom");
        if (s.mJ == 0 && s.reflection == Reflection::None)
            issue(where, "Sigma states need a reflection parity");
        if (s.mJ > 0 && s.reflection != Reflection::None)
            issue(where, "reflection parity applies only to mJ = 0");
        if (!std::isfinite(s.c5)) issue(where, "non-finite c5");
        if (s.rows.empty()) { issue(where, "state has no rows"); continue; }
        double norm = 0.0;
        int omega_tot = s.rows[0].mj + s.rows[0].lambda;
        for (const auto& r : s.rows) {
            if (std::abs(r.mj) > s.j) issue(where, "|mj| exceeds j");
            if (std::abs(r.lambda) > s.ell) issue(where, "|lambda| exceeds ell");
            if (r.mj + r.lambda != omega_tot)
                issue(where, "rows mix different total projections mj+lambda");
            norm += r.c * r.c;
        }
        if (std::abs(omega_tot) != s.mJ)
            issue(where, "total projection |mj+lambda| does not match mJ");
        if (std::abs(norm - 1.0) > 1e-10) issue(where, "coefficients are not normalised");
    }

    if (!(d.b_rot > 0.0) || !std::isfinite(d.b_rot)) issue("constants", "b_rot must be positive");
    if (!(d.r2_atom >= 0.0)) issue("constants", "r2_atom must be non-negative");
    if (!(d.r2_molecule >= 0.0)) issue("constants", "r2_molecule must be non-negative");
    return rep;
}

OscillatorFit fit_single_oscillator(double alpha_static, double c6_homonuclear) {
    if (!(alpha_static > 0.0) || !(c6_homonuclear > 0.0))
        throw std::domain_error("fit_single_oscillator: alpha and C6 must be positive");
    OscillatorFit fit;
    fit.delta_e = 4.0 * c6_homonuclear / (3.0 * alpha_static * alpha_static);
    fit.radial_element = std::sqrt(1.5 * alpha_static * fit.delta_e);
    return fit;
}

} // namespace lrvdw::specdata
