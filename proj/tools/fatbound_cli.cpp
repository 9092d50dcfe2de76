// fatbound: command-line front end for the subaction / envelope / transport toolkit.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "fatbound/attractor.hpp"
#include "fatbound/error.hpp"
#include "fatbound/io.hpp"
#include "fatbound/quadratic.hpp"
#include "fatbound/scenarios.hpp"
#include "fatbound/series.hpp"
#include "fatbound/solver.hpp"
#include "fatbound/transport.hpp"
#include "json.hpp"

using namespace fatbound;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kMismatch = 3 };

struct Flags {
    double lambda = 0.51;
    int d = 2;
    std::string potential = "quad_sym";
    std::size_t grid = 4096;
    double tol = 1e-10;
    std::size_t depth = 12;
    std::size_t period_max = 3;
    std::size_t preperiod_max = 2;
    std::size_t iters = 4000;
    std::size_t burn_in = 50;
    std::size_t bins = 10;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    bool svg = false;
    int jobs = 1;
    bool lambda_given = false;

    // subcommand specific
    std::string scenario;
    std::vector<double> lambdas{0.5, 0.9, 0.99};
    double x0 = 1.0 / 3.0;
    std::string word;
    std::size_t samples = 20;
    bool legacy_depth = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fd(double v) { return io::format_double(v); }

/// Rows of preformatted cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::ostringstream o;
        for (std::size_t i = 0; i < header.size(); ++i) o << (i ? "," : "") << header[i];
        o << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << r[i];
            o << '\n';
        }
        return o.str();
    }
};

class Output {
public:
    explicit Output(const Flags& f) : f_(f) {
        if (!f_.out.empty()) std::filesystem::create_directories(f_.out);
    }

    /// JSON document for --format json, otherwise the named CSV tables.
    void emit(const std::string& stem, const json& doc, const std::vector<std::pair<std::string, Table>>& tables) {
        if (f_.format == "json") {
            put(stem + ".json", doc.dump(2) + "\n");
            return;
        }
        for (const auto& [name, t] : tables) put(name.empty() ? stem + ".csv" : stem + "_" + name + ".csv", t.csv());
    }

    void emit_json(const std::string& stem, const json& doc) { put(stem + ".json", doc.dump(2) + "\n"); }

    void svg(const std::string& stem, const io::SvgPlot& plot) {
        if (!f_.svg) return;
        const auto dir = f_.out.empty() ? std::filesystem::path(".") : std::filesystem::path(f_.out);
        io::write_file((dir / (stem + ".svg")).string(), plot.render());
    }

private:
    void put(const std::string& name, const std::string& content) {
        if (f_.out.empty()) {
            std::cout << content;
            return;
        }
        io::write_file((std::filesystem::path(f_.out) / name).string(), content);
        std::cerr << "wrote " << (std::filesystem::path(f_.out) / name).string() << '\n';
    }

    const Flags& f_;
};

Potential load_potential(const Flags& f) {
    try {
        return parse_potential(f.potential);
    } catch (const std::exception& e) {
        throw UsageError(std::string("invalid --potential: ") + e.what());
    }
}

void require_binary(const Flags& f, const char* what) {
    if (f.d != 2) throw UsageError(std::string(what) + " is only defined for --d 2");
}

SolveOptions solve_options(const Flags& f) {
    SolveOptions o;
    o.d = f.d;
    o.n = f.grid;
    o.tol = f.tol;
    o.jobs = f.jobs;
    return o;
}

EnvelopeOptions envelope_options(const Flags& f) {
    EnvelopeOptions o;
    if (f.legacy_depth) o.fixed_depth = kLegacyDepth;
    return o;
}

std::vector<double> nodes(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = static_cast<double>(j) / static_cast<double>(n);
    return x;
}

json points_json(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

json solve_summary(const SolveReport& r) {
    return {{"potential", r.potential}, {"lambda", r.lambda},   {"d", r.d},
            {"n", r.b.size()},          {"iterations", r.iterations}, {"final_residual", r.final_residual},
            {"max_b", r.b.max()},       {"min_b", r.b.min()}};
}

json envelope_json(const Envelope& env, const EnvelopeCheck& chk) {
    json pieces = json::array();
    for (const auto& p : env.pieces()) pieces.push_back({{"seq", p.seq.to_string()}, {"l", p.l}, {"r", p.r}});
    return {{"pieces", pieces},
            {"switch_points", points_json(env.switch_points())},
            {"calibration_residual", chk.calibration},
            {"invariance_residual", chk.invariance},
            {"switch_gap", chk.switch_gap}};
}

int cmd_solve(const Flags& f, Output& out) {
    const auto a = load_potential(f);
    const auto r = solve_subaction(a, f.lambda, solve_options(f));
    const auto x = nodes(r.b.size());
    Table t{{"x", "b"}, {}};
    for (std::size_t j = 0; j < x.size(); ++j) t.rows.push_back({fd(x[j]), fd(r.b[j])});
    json doc = solve_summary(r);
    doc["x"] = points_json(x);
    doc["b"] = points_json({r.b.values().begin(), r.b.values().end()});
    out.emit("solve", doc, {{"", t}});
    std::cerr << "iterations " << r.iterations << ", residual bound " << fd(r.final_residual) << '\n';

    io::SvgPlot plot("b for " + a.name() + ", lambda " + fd(f.lambda));
    plot.add_polyline(x, r.b.values(), "#1f77b4", "b");
    out.svg("solve", plot);
    return kOk;
}

int cmd_envelope(const Flags& f, Output& out) {
    require_binary(f, "envelope");
    const auto a = load_potential(f);
    const auto env = envelope(a, f.lambda, candidates(2, f.period_max, f.preperiod_max), f.grid, envelope_options(f));
    const auto chk = validate_envelope(env, f.grid);
    Table t{{"seq", "l", "r"}, {}};
    for (const auto& p : env.pieces()) t.rows.push_back({p.seq.to_string(), fd(p.l), fd(p.r)});
    json doc = {{"potential", a.name()}, {"lambda", f.lambda}};
    doc.update(envelope_json(env, chk));
    out.emit("envelope", doc, {{"", t}});

    io::SvgPlot plot("envelope for " + a.name());
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::size_t k = 0;
    for (const auto& p : env.pieces()) {
        std::vector<double> xs, ys;
        for (int j = 0; j <= 200; ++j) {
            const double x = std::min(j / 200.0, 1.0 - 1e-9);
            xs.push_back(x);
            ys.push_back(s_value(a, f.lambda, x, p.seq).value);
        }
        plot.add_polyline(xs, ys, colors[k++ % 6], p.seq.to_string());
    }
    for (double s : env.switch_points()) plot.add_vline(s, "#444444");
    out.svg("envelope", plot);
    return kOk;
}

int cmd_attractor(const Flags& f, Output& out) {
    const auto a = load_potential(f);
    IterateOptions itopt;
    itopt.d = f.d;
    itopt.n = f.iters;
    itopt.burn_in = f.burn_in;
    itopt.seed = f.seed;
    const auto cloud = iterate_F(a, f.lambda, itopt);
    const auto bins = upper_boundary(cloud, f.bins);
    const auto b = solve_subaction(a, f.lambda, solve_options(f)).b;

    Table pts{{"x", "s"}, {}};
    for (std::size_t k = 0; k < cloud.size(); ++k) pts.rows.push_back({fd(cloud.xs[k]), fd(cloud.ss[k])});
    Table bt{{"center", "smax", "x_at_max", "count", "b_at_max"}, {}};
    json jb = json::array();
    for (const auto& bin : bins) {
        const double bv = bin.count ? b(bin.x_at_max) : NAN;
        bt.rows.push_back({fd(bin.center), fd(bin.smax), fd(bin.x_at_max), std::to_string(bin.count), fd(bv)});
        jb.push_back({{"center", bin.center},
                      {"smax", bin.count ? json(bin.smax) : json(nullptr)},
                      {"x_at_max", bin.x_at_max},
                      {"count", bin.count},
                      {"b_at_max", bin.count ? json(bv) : json(nullptr)}});
    }
    json doc = {{"potential", a.name()}, {"lambda", f.lambda}, {"seed", f.seed},   {"iterations", f.iters},
                {"burn_in", f.burn_in},  {"bounded", cloud.bounded}, {"boundary", jb}};
    json cx = json::array(), cs = json::array();
    for (std::size_t k = 0; k < cloud.size(); ++k) {
        cx.push_back(cloud.xs[k]);
        cs.push_back(cloud.ss[k]);
    }
    doc["cloud"] = {{"x", cx}, {"s", cs}};
    out.emit("attractor", doc, {{"cloud", pts}, {"boundary", bt}});

    io::SvgPlot plot("attractor of F for " + a.name());
    plot.add_points(cloud.xs, cloud.ss, "#555555", 1.0);
    const auto x = nodes(b.size());
    plot.add_polyline(x, b.values(), "#d62728", "b");
    out.svg("attractor", plot);
    return kOk;
}

int cmd_twist(const Flags& f, Output& out) {
    require_binary(f, "twist");
    const auto a = load_potential(f);
    const auto words = candidates(2, f.period_max, f.preperiod_max);
    Table t{{"a", "b", "min_dDelta", "max_dDelta", "ok"}, {}};
    std::size_t bad = 0;
    json pairs = json::array();
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            // words[i] > words[j]: twist asks for Delta' < 0
            double lo = INFINITY, hi = -INFINITY;
            for (int k = 0; k <= 100; ++k) {
                const double dv = delta(a, f.lambda, (1.0 - 1e-9) * k / 100.0, words[i], words[j]).deriv;
                lo = std::min(lo, dv);
                hi = std::max(hi, dv);
            }
            const bool ok = hi < 0.0;
            bad += ok ? 0 : 1;
            t.rows.push_back({words[i].to_string(), words[j].to_string(), fd(lo), fd(hi), ok ? "1" : "0"});
            pairs.push_back({{"a", words[i].to_string()}, {"b", words[j].to_string()}, {"min", lo}, {"max", hi}, {"ok", ok}});
        }
    json doc = {{"potential", a.name()}, {"lambda", f.lambda}, {"pairs_checked", pairs.size()},
                {"violations", bad},     {"twist_sampled", bad == 0}};
    if (const auto& c = a.poly_coeffs(); c && c->size() <= 3) {
        const auto q = QuadraticSpec::from_potential(a, f.lambda);
        doc["quadratic_predicate"] = twist_predicate(q);
    }
    doc["pairs"] = pairs;
    out.emit("twist", doc, {{"", t}});
    std::cerr << "twist " << (bad == 0 ? "holds" : "fails") << " on sampled pairs (" << bad << " violations)\n";
    return kOk;
}

int cmd_crossings(const Flags& f, Output& out) {
    require_binary(f, "crossings");
    const auto a = load_potential(f);
    const auto words = candidates(2, f.period_max, f.preperiod_max);
    std::optional<QuadraticSpec> q;
    if (const auto& c = a.poly_coeffs(); c && c->size() <= 3) q = QuadraticSpec::from_potential(a, f.lambda);
    Table t{{"a", "b", "x", "closed_x"}, {}};
    json rows = json::array();
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            std::optional<double> x, cx;
            try {
                x = crossing_point(a, f.lambda, words[i], words[j]);
            } catch (const NoCrossingError&) {
            }
            if (q) {
                try {
                    const auto cc = closed_crossing(*q, words[i], words[j]);
                    if (cc.inside) cx = cc.x;
                } catch (const NoCrossingError&) {
                }
            }
            if (!x && !cx) continue;
            auto cell = [](const std::optional<double>& v) { return v ? fd(*v) : std::string(); };
            t.rows.push_back({words[i].to_string(), words[j].to_string(), cell(x), cell(cx)});
            rows.push_back({{"a", words[i].to_string()},
                            {"b", words[j].to_string()},
                            {"x", x ? json(*x) : json(nullptr)},
                            {"closed_x", cx ? json(*cx) : json(nullptr)}});
        }
    out.emit("crossings", {{"potential", a.name()}, {"lambda", f.lambda}, {"crossings", rows}}, {{"", t}});
    return kOk;
}

int cmd_turning(const Flags& f, Output& out) {
    require_binary(f, "turning");
    const auto a = load_potential(f);
    const auto r = solve_subaction(a, f.lambda, solve_options(f));
    const auto tp = turning_points(r.b, a, f.lambda);
    const auto cps = realizer_change_points(r.b, a, f.lambda, 1024, f.depth);
    const auto gap = gap_function(r.b, a, f.lambda);
    const auto x = nodes(gap.size());
    Table t{{"x", "gap"}, {}};
    for (std::size_t j = 0; j < x.size(); ++j) t.rows.push_back({fd(x[j]), fd(gap[j])});
    Table pts{{"kind", "x"}, {}};
    for (double p : tp.points) pts.rows.push_back({"gap_zero", fd(p)});
    for (double p : cps) pts.rows.push_back({"itinerary_change", fd(p)});
    json doc = {{"potential", a.name()},
                {"lambda", f.lambda},
                {"degenerate", tp.degenerate},
                {"turning_points", points_json(tp.points)},
                {"count", tp.count()},
                {"itinerary_changes", points_json(cps)}};
    out.emit("turning", doc, {{"gap", t}, {"points", pts}});

    io::SvgPlot plot("branch gap for " + a.name());
    plot.add_polyline(x, gap.values(), "#1f77b4", "gap");
    for (double p : tp.points) plot.add_vline(p, "#d62728");
    for (double p : cps) plot.add_vline(p, "#2ca02c");
    out.svg("turning", plot);
    return kOk;
}

int cmd_dual(const Flags& f, Output& out) {
    require_binary(f, "dual");
    const auto a = load_potential(f);
    const auto r = solve_subaction(a, f.lambda, solve_options(f));
    const DualEval de(a, f.lambda);
    const auto words = candidates(2, f.period_max, f.preperiod_max);

    Table wt{{"seq", "A_star", "b_star", "identity_residual"}, {}};
    json jw = json::array();
    double worst_identity = 0.0;
    for (const auto& c : words) {
        const double as = dual_potential(de, c), bs = dual_subaction(de, c), res = dual_identity_residual(de, c);
        worst_identity = std::max(worst_identity, res);
        wt.rows.push_back({c.to_string(), fd(as), fd(bs), fd(res)});
        jw.push_back({{"seq", c.to_string()}, {"A_star", as}, {"b_star", bs}, {"identity_residual", res}});
    }

    std::mt19937_64 rng(f.seed);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> uw(0, words.size() - 1);
    Table ft{{"x", "seq", "p", "fr_residual"}, {}};
    json jf = json::array();
    double worst_fr = 0.0, min_p = INFINITY;
    for (std::size_t k = 0; k < f.samples; ++k) {
        const double x = ux(rng);
        const auto& c = words[uw(rng)];
        const double p = admissibility_gap(r.b, de, x, c), fr = fundamental_relation_residual(r.b, de, x, c);
        worst_fr = std::max(worst_fr, fr);
        min_p = std::min(min_p, p);
        ft.rows.push_back({fd(x), c.to_string(), fd(p), fd(fr)});
        jf.push_back({{"x", x}, {"seq", c.to_string()}, {"p", p}, {"fr_residual", fr}});
    }

    SymbolSeq start = SymbolSeq::periodic({0});
    if (!f.word.empty()) {
        try {
            start = SymbolSeq::parse(f.word);
        } catch (const std::exception& e) {
            throw UsageError(std::string("invalid --word: ") + e.what());
        }
    } else {
        const auto rz = realizer(r.b, a, f.lambda, f.x0, f.depth);
        if (!rz.seq) throw std::runtime_error("no periodic realizer found from --x0; pass --word");
        start = *rz.seq;
    }
    const double p0 = admissibility_gap(r.b, de, f.x0, start);
    json plan = {{"x0", f.x0}, {"word", start.to_string()}, {"p0", p0}};
    Table pt{{"x", "seq", "p"}, {}};
    try {
        const auto orbit = plan_orbit(de, r.b, f.x0, start, 16, 1e-6);
        json steps = json::array();
        for (const auto& s : orbit.steps) {
            steps.push_back({{"x", s.x}, {"seq", s.a.to_string()}, {"p", s.p}});
            pt.rows.push_back({fd(s.x), s.a.to_string(), fd(s.p)});
        }
        plan["optimal"] = true;
        plan["period"] = orbit.period ? json(*orbit.period) : json(nullptr);
        plan["p_max"] = orbit.p_max;
        plan["cost_lhs"] = orbit.cost_lhs;
        plan["cost_rhs"] = orbit.cost_rhs;
        plan["steps"] = steps;
    } catch (const std::invalid_argument&) {
        plan["optimal"] = false;
    }
    const auto mono = realizer_monotonicity(r.b, a, f.lambda, 256, f.depth);

    json doc = {{"potential", a.name()},
                {"lambda", f.lambda},
                {"xbar", de.xbar()},
                {"max_identity_residual", worst_identity},
                {"max_fr_residual", worst_fr},
                {"min_p", min_p},
                {"monotonicity", {{"ok", mono.ok}, {"orientation", mono.orientation}, {"switches", mono.switches}}},
                {"plan", plan},
                {"words", jw},
                {"samples", jf}};
    out.emit("dual", doc, {{"words", wt}, {"samples", ft}, {"plan", pt}});
    return kOk;
}

int cmd_sweep(const Flags& f, Output& out) {
    const auto a = load_potential(f);
    for (double l : f.lambdas)
        if (l >= 0.95 && f.grid < (1u << 15))
            std::cerr << "note: lambda " << fd(l) << " converges slowly and needs a fine grid (--grid 32768)\n";
    const auto rows = lambda_sweep(a, f.lambdas, solve_options(f));
    Table t{{"lambda", "max_b", "scaled", "iterations"}, {}};
    json jr = json::array();
    std::vector<double> ls, sc;
    for (const auto& r : rows) {
        t.rows.push_back({fd(r.lambda), fd(r.max_b), fd(r.scaled), std::to_string(r.iterations)});
        jr.push_back({{"lambda", r.lambda}, {"max_b", r.max_b}, {"scaled", r.scaled}, {"iterations", r.iterations}});
        ls.push_back(r.lambda);
        sc.push_back(r.scaled);
    }
    out.emit("sweep", {{"potential", a.name()}, {"n", f.grid}, {"rows", jr}}, {{"", t}});
    io::SvgPlot plot("(1 - lambda) max b for " + a.name());
    plot.add_polyline(ls, sc, "#1f77b4", "scaled");
    out.svg("sweep", plot);
    return kOk;
}

int cmd_scenario(Flags f, Output& out) {
    const auto sc = find_scenario(f.scenario);
    if (!sc) throw UsageError("unknown scenario '" + f.scenario + "'");
    if (!f.lambda_given) f.lambda = sc->lambda;
    const auto a = sc->make_potential();
    const auto env = envelope(a, f.lambda, candidates(2, sc->period_max, sc->preperiod_max), f.grid, envelope_options(f));
    const auto chk = validate_envelope(env, f.grid);
    const auto r = solve_subaction(a, f.lambda, solve_options(f));
    const auto cps = realizer_change_points(r.b, a, f.lambda, 1024, f.depth);

    std::vector<std::string> diffs;
    const auto& ps = env.pieces();
    if (sc->pieces && ps.size() != *sc->pieces)
        diffs.push_back("expected " + std::to_string(*sc->pieces) + " pieces, got " + std::to_string(ps.size()));
    if (!sc->sequences.empty()) {
        std::vector<std::string> got;
        for (const auto& p : ps) got.push_back(p.seq.to_string());
        std::vector<std::string> want;
        for (const auto& w : sc->sequences) want.push_back(SymbolSeq::parse(w).to_string());
        if (got != want) {
            std::string g, w;
            for (const auto& s : got) g += s + " ";
            for (const auto& s : want) w += s + " ";
            diffs.push_back("sequences differ: expected " + w + "got " + g);
        }
    }
    auto match_points = [&](const char* what, const std::vector<ExpectedPoint>& want, const std::vector<double>& got) {
        if (want.empty()) return;
        if (want.size() != got.size()) {
            diffs.push_back(std::string(what) + ": expected " + std::to_string(want.size()) + ", got " +
                            std::to_string(got.size()));
            return;
        }
        for (std::size_t i = 0; i < want.size(); ++i)
            if (std::abs(got[i] - want[i].x) > want[i].tol)
                diffs.push_back(std::string(what) + " " + std::to_string(i) + ": expected " + fd(want[i].x) + " +- " +
                                fd(want[i].tol) + ", got " + fd(got[i]));
    };
    match_points("switch point", sc->switches, env.switch_points());
    match_points("itinerary change", sc->change_points, cps);

    json expected = {{"pieces", sc->pieces ? json(*sc->pieces) : json(nullptr)}, {"sequences", sc->sequences}};
    json doc = {{"scenario", sc->name}, {"alias", sc->alias}, {"potential", sc->potential}, {"lambda", f.lambda}};
    doc["expected"] = expected;
    doc["envelope"] = envelope_json(env, chk);
    doc["itinerary_changes"] = points_json(cps);
    doc["solver"] = solve_summary(r);
    if (sc->symmetric_twist) {
        const auto se = symmetric_envelope(a, f.lambda);
        doc["symmetric"] = {{"symmetry_residual", se.symmetry_residual}, {"twist_sampled", se.twist_sampled}};
    }
    if (sc->name == "quad_sym") {
        const auto sub = explicit_symmetric_subaction(f.lambda);
        doc["constant_discrepancy"] = {{"b0_series", sub.b0}, {"b0_printed_formula", sub.b0_printed}, {"mismatch", sub.mismatch}};
    }
    doc["diffs"] = diffs;
    doc["match"] = diffs.empty();

    Table t{{"seq", "l", "r"}, {}};
    for (const auto& p : ps) t.rows.push_back({p.seq.to_string(), fd(p.l), fd(p.r)});
    out.emit("scenario_" + sc->name, doc, {{"", t}});

    io::SvgPlot plot(sc->name + ": b and envelope switches");
    const auto x = nodes(r.b.size());
    plot.add_polyline(x, r.b.values(), "#1f77b4", "b");
    for (double s : env.switch_points()) plot.add_vline(s, "#d62728");
    out.svg("scenario_" + sc->name, plot);

    for (const auto& d : diffs) std::cerr << "mismatch: " << d << '\n';
    std::cerr << "scenario " << sc->name << ": " << (diffs.empty() ? "structure matches" : "MISMATCH") << '\n';
    return diffs.empty() ? kOk : kMismatch;
}

int cmd_report(const Flags& f, Output& out) {
    const auto a = load_potential(f);
    const auto r = solve_subaction(a, f.lambda, solve_options(f));
    json doc = {{"potential", a.name()}, {"lambda", f.lambda}};
    doc["solve"] = solve_summary(r);
    const auto em = empirical_measure(r.b, a, f.lambda, 0.1, 400, 64, std::nullopt, f.d);
    doc["maximizing_orbit"] = em.orbit ? json{{"period", em.orbit->period}, {"points", points_json(em.orbit->points)}}
                                       : json(nullptr);
    const auto rate = rate_function(r.b, a, f.lambda, f.d);
    doc["rate_min"] = rate.min();
    if (f.d == 2) {
        const auto env = envelope(a, f.lambda, candidates(2, f.period_max, f.preperiod_max), f.grid, envelope_options(f));
        const auto chk = validate_envelope(env, f.grid);
        doc["envelope"] = envelope_json(env, chk);
        double gap = 0.0;
        for (std::size_t j = 0; j < r.b.size(); ++j) gap = std::max(gap, std::abs(env.value(r.b.node(j)) - r.b[j]));
        doc["envelope"]["max_abs_diff_to_b"] = gap;
        const auto tp = turning_points(r.b, a, f.lambda);
        doc["turning_points"] = points_json(tp.points);
        doc["itinerary_changes"] = points_json(realizer_change_points(r.b, a, f.lambda, 1024, f.depth));
        const auto mono = realizer_monotonicity(r.b, a, f.lambda, 256, f.depth);
        doc["monotonicity"] = {{"ok", mono.ok}, {"orientation", mono.orientation}, {"switches", mono.switches}};
        const DualEval de(a, f.lambda);
        double worst = 0.0;
        for (const auto& c : candidates(2, f.period_max, f.preperiod_max))
            worst = std::max(worst, dual_identity_residual(de, c));
        doc["dual_identity_residual"] = worst;
    }
    out.emit_json("report", doc);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fatbound: discounted subactions, symbolic envelopes and transport checks for x -> d x mod 1"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file; command-line flags take precedence");

    Flags f;
    app.add_option("--lambda", f.lambda, "discount in (0,1)");
    app.add_option("--d", f.d, "number of inverse branches")->check(CLI::Range(2, 16));
    app.add_option("--potential", f.potential, "poly:c0,c1,..|quad_sym|tent|cosine|sine|quad_eps:eps,drift|quad_drift|const:c|table:file.csv");
    app.add_option("--grid", f.grid, "grid size n")->check(CLI::Range(std::size_t{4}, std::size_t{1} << 24));
    app.add_option("--tol", f.tol, "solver tolerance")->check(CLI::PositiveNumber);
    app.add_option("--depth", f.depth, "realizer prefix depth");
    app.add_option("--period-max", f.period_max, "candidate period bound");
    app.add_option("--preperiod-max", f.preperiod_max, "candidate preperiod bound");
    app.add_option("--iters", f.iters, "iterations of F");
    app.add_option("--burn-in", f.burn_in, "discarded iterations of F");
    app.add_option("--bins", f.bins, "bins for the upper boundary")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    app.add_option("--seed", f.seed, "random seed");
    app.add_option("--out", f.out, "output directory (default: stdout)");
    app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--svg", f.svg, "also write an SVG per artifact");
    app.add_option("--jobs", f.jobs, "worker threads for the Bellman sweeps")->check(CLI::Range(1, 256));
    app.add_flag("--legacy-depth", f.legacy_depth, "sum exactly eight series terms");

    auto* solve = app.add_subcommand("solve", "value iteration for the calibrated subaction b");
    auto* env = app.add_subcommand("envelope", "upper envelope of S(., a) over candidate words");
    auto* attr = app.add_subcommand("attractor", "orbit cloud of F and its binned upper boundary");
    auto* twist = app.add_subcommand("twist", "sign scan of Delta' over candidate pairs");
    auto* cross = app.add_subcommand("crossings", "crossing points of candidate pairs");
    auto* turn = app.add_subcommand("turning", "zeros of the branch gap and itinerary changes");
    auto* dual = app.add_subcommand("dual", "dual potential, admissibility gap and plan orbit");
    dual->add_option("--x0", f.x0, "start point of the plan orbit");
    dual->add_option("--word", f.word, "start word of the plan orbit, e.g. |10 (default: realizer at x0)");
    dual->add_option("--samples", f.samples, "random (x,a) pairs");
    auto* sweep = app.add_subcommand("sweep", "(1 - lambda) max b over several discounts");
    sweep->add_option("--lambdas", f.lambdas, "discounts")->delimiter(',');
    auto* scen = app.add_subcommand("scenario", "run a preset and compare with its expected structure");
    scen->add_option("name", f.scenario, "preset name or alias")->required();
    auto* report = app.add_subcommand("report", "JSON bundle of the main diagnostics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    f.lambda_given = app.count("--lambda") > 0;
    if (!(f.lambda > 0.0 && f.lambda < 1.0)) {
        std::cerr << "error: --lambda must lie in (0,1)\n";
        return kUsage;
    }

    try {
        Output out(f);
        if (*solve) return cmd_solve(f, out);
        if (*env) return cmd_envelope(f, out);
        if (*attr) return cmd_attractor(f, out);
        if (*twist) return cmd_twist(f, out);
        if (*cross) return cmd_crossings(f, out);
        if (*turn) return cmd_turning(f, out);
        if (*dual) return cmd_dual(f, out);
        if (*sweep) return cmd_sweep(f, out);
        if (*scen) return cmd_scenario(f, out);
        if (*report) return cmd_report(f, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnsupportedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << " (residual bound " << fd(e.last_residual()) << " after "
                  << e.iterations() << " iterations)\n";
        return kNumerical;
    } catch (const NoCrossingError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
