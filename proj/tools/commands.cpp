#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <sstream>

#include "isoperimetrix/capacity.hpp"
#include "isoperimetrix/errors.hpp"
#include "isoperimetrix/hierarchy.hpp"
#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/orlicz.hpp"
#include "isoperimetrix/profiles.hpp"
#include "isoperimetrix/report.hpp"
#include "isoperimetrix/tensorize.hpp"
#include "isoperimetrix/verify.hpp"

namespace isx::cli {
namespace {

struct Output {
    Report report;
    std::optional<std::string> csv;  // set when the command produced a CSV body
    bool failed = false;  // computed, but an asserted inequality did not hold
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorKind::UsageError, msg); }

template <typename T>
const T& need(const std::optional<T>& v, const char* flag) {
    if (!v) usage(std::string("missing required flag ") + flag);
    return *v;
}

double exponent(const std::optional<std::string>& v, const char* flag, double fallback) {
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        double x = std::stod(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        usage(std::string("bad value for ") + flag + ": '" + *v + "'");
    }
}

Json tri_json(const TriState& s) {
    Json j;
    j["state"] = tri_name(s.state);
    if (s.state == Tri::fails) j["witness"] = number(s.witness);
    return j;
}

Json profile_samples(const Profile& p, int points) {
    Json rows = Json::array();
    for (double t : profile_grid(points))
        rows.push_back({{"t", number(t)}, {"lower", number(p.lower(t))}, {"upper", number(p.upper(t))}});
    return rows;
}

Json capacity_samples(const CapacityBound& b, int points) {
    Json rows = Json::array();
    for (int i = 0; i < points; ++i) {
        double t = std::exp(std::log(1e-6) + (std::log(0.5) - std::log(1e-6)) * i / (points - 1));
        rows.push_back({{"t", number(t)}, {"value", number(b(t))}});
    }
    return rows;
}

Json scan_json(const ScanResult& s) { return {{"value", number(s.min)}, {"argmin", number(s.argmin)}}; }

Json measure_inputs(const Measure1D& m) {
    Json j;
    j["measure"] = m.name();
    j["even"] = m.is_even();
    const char* lc = m.log_concavity().status == CertificateStatus::verified   ? "verified"
                     : m.log_concavity().status == CertificateStatus::violated ? "violated"
                                                                               : "unchecked";
    j["log_concavity"] = lc;
    if (m.log_concavity().status == CertificateStatus::violated)
        j["log_concavity_witness"] = number(m.log_concavity().witness);
    return j;
}

Profile profile_from(const std::string& text) {
    if (text == "gaussian") return gaussian_profile();
    return profile_of(build(text));
}

int grid_or(const Command& c, int fallback) {
    int g = c.grid.value_or(fallback);
    if (g < 4) usage("--grid must be at least 4");
    return g;
}

// ---------------------------------------------------------------------------

void cmd_profile(const Command& c, Output& out) {
    Measure1D m = build(need(c.measure, "--measure"));
    Profile p = profile_of(m);
    int points = grid_or(c, 1024);
    out.report.inputs = measure_inputs(m);
    Json& r = out.report.result;
    r["provenance"] = provenance_name(p.provenance());
    r["kind"] = profile_kind_name(p.kind());
    r["symmetric"] = p.is_symmetric();
    if (c.t) {
        double t = *c.t;
        if (!(t > 0.0 && t < 1.0)) usage("--t must lie in (0, 1)");
        r["t"] = number(t);
        r["value"] = number(p(t));
        r["tilde"] = number(p.tilde(std::min(t, 1.0 - t)));
        r["union_refined"] = number(union_refined_profile(m, std::min(t, 1.0 - t)));
    }
    if (c.format == Format::csv)
        out.csv = profile_csv(p, points);
    else
        r["samples"] = profile_samples(p, std::min(points, 128));
}

void cmd_norm(const Command& c, Output& out) {
    OrliczFunction n = parse_orlicz(need(c.orlicz, "--N"));
    out.report.inputs["N"] = n.tag();
    Json& r = out.report.result;
    if (c.action == "indicator") {
        Measure1D m = build(need(c.measure, "--measure"));
        double a = need(c.a, "--a");
        out.report.inputs["measure"] = m.name();
        out.report.inputs["a"] = number(a);
        DualSandwich s = dual_norm_sandwich(m, a, n);
        r["norm"] = number(n.wedge(a));
        r["dual_formula"] = number(s.formula);
        r["dual_lower"] = number(s.lower);
        r["dual_upper"] = number(s.upper);
        r["iterations"] = s.iterations;
    } else if (c.action == "predicates") {
        double q = need(c.q, "--q");
        double alpha = c.alpha.value_or(1.0);
        PredicateReport p = check_predicates(n, q, alpha);
        out.report.inputs["q"] = number(q);
        out.report.inputs["alpha"] = number(alpha);
        r["is_young"] = tri_json(p.is_young);
        r["ratio_nondecreasing"] = tri_json(p.ratio_nondecreasing);
        r["power_nonincreasing"] = tri_json(p.power_nonincreasing);
        r["grid_points"] = p.checked_grid.size();
    } else if (c.action == "eval") {
        double t = need(c.t, "--t");
        out.report.inputs["t"] = number(t);
        r["N"] = number(n(t));
        r["inverse"] = number(n.inverse(t));
        r["wedge"] = number(n.wedge(t));
        r["legendre"] = number(legendre(n, t));
    } else {
        usage("unknown norm action '" + c.action + "'");
    }
}

void cmd_capacity(const Command& c, Output& out) {
    Measure1D m = build(need(c.measure, "--measure"));
    double q = need(c.q, "--q");
    out.report.inputs = measure_inputs(m);
    out.report.inputs["q"] = number(q);
    Json& r = out.report.result;
    if (c.a && c.b) {
        IntervalCapacity ic = interval_capacity(m, *c.a, *c.b, q, c.cfg);
        out.report.inputs["a"] = number(*c.a);
        out.report.inputs["b"] = number(*c.b);
        r["interval_capacity"] = number(ic.value);
        r["divergent"] = ic.divergent;
        return;
    }
    if (c.format == Format::csv) {
        CapacityBound b{q, [m, q, cfg = c.cfg](double t) { return capq(m, q, t, cfg); }, CapacityKind::exact_config,
                        "Cap_q of " + m.name()};
        out.csv = capacity_csv(b, grid_or(c, 128));
        return;
    }
    double t = need(c.t, "--t");
    out.report.inputs["t"] = number(t);
    CapqDetail d = capq_detail(m, q, t, c.cfg);
    r["capacity"] = number(d.value);
    r["left"] = number(d.left);
    r["right"] = number(d.right);
    r["two_tail"] = number(d.two_tail);
    if (c.oracle) {
        OracleResult o = cap_oracle(m, q, t, grid_or(c, 512));
        r["oracle"] = {{"value", number(o.value)},
                       {"monotone_value", number(o.monotone_value)},
                       {"best_split", number(o.best_split)},
                       {"nonmonotone_wins", o.nonmonotone_wins},
                       {"layout", o.layout}};
        if (o.nonmonotone_wins) out.report.diagnostics.push_back("cap_oracle: a non-monotone layout won");
    }
}

void cmd_constant(const Command& c, Output& out) {
    Json& r = out.report.result;
    if (c.action == "closed-form") {
        double alpha = need(c.alpha, "--alpha"), q = need(c.q, "--q");
        out.report.inputs = {{"alpha", number(alpha)}, {"q", number(q)}};
        ClosedForm cf = closed_form_constants(alpha, q);
        r["C"] = number(cf.c);
        r["B"] = number(cf.b);
        return;
    }
    Measure1D m = build(need(c.measure, "--measure"));
    out.report.inputs = measure_inputs(m);
    if (c.action == "cheeger") {
        r = scan_json(cheeger_constant(profile_of(m)));
    } else if (c.action == "gaussian") {
        GaussianConstant g = gaussian_constant(profile_of(m));
        r["value"] = number(g.value);
        r["argmin"] = number(g.argmin);
        r["decaying_at_edge"] = g.decaying_at_edge;
        r["edge_decay"] = number(g.edge_decay);
    } else if (c.action == "poincare") {
        PoincareBracket b = poincare_bracket(m, c.cfg);
        r["lo"] = number(b.ledger.lo);
        r["hi"] = number(b.ledger.hi);
        r["b_plus"] = number(b.b_plus);
        r["b_minus"] = number(b.b_minus);
        out.report.ledgers.push_back(ledger_to_json(b.ledger));
    } else if (c.action == "log-sobolev") {
        LogSobolevSweep s = log_sobolev_sweep(m);
        r["upper"] = number(s.upper);
        r["best"] = s.best;
        r["tested"] = s.tested;
    } else {
        usage("unknown constant '" + c.action + "'");
    }
}

void put_transfer(const TransferResult& tr, int points, Output& out, Format format) {
    Json& r = out.report.result;
    r["constant"] = number(tr.ledger.lo);
    if (tr.profile) {
        if (format == Format::csv)
            out.csv = profile_csv(*tr.profile, points);
        else
            r["profile"] = profile_samples(*tr.profile, std::min(points, 128));
    }
    if (tr.capacity) {
        if (format == Format::csv)
            out.csv = capacity_csv(*tr.capacity, points);
        else
            r["capacity"] = capacity_samples(*tr.capacity, std::min(points, 128));
    }
    out.report.ledgers.push_back(ledger_to_json(tr.ledger));
    for (const auto& d : tr.diagnostics) out.report.diagnostics.push_back(d);
}

void cmd_transfer(const Command& c, Output& out) {
    Json& in = out.report.inputs;
    Json& r = out.report.result;
    int points = grid_or(c, 256);
    if (c.action == "os-to-iso") {
        OrliczFunction n = parse_orlicz(need(c.orlicz, "--N"));
        double q = need(c.q, "--q"), d = need(c.d, "--D");
        in = {{"N", n.tag()}, {"q", number(q)}, {"D", number(d)}};
        put_transfer(os_to_iso(n, q, d, c.cfg), points, out, c.format);
    } else if (c.action == "iso-to-os") {
        OrliczFunction n = parse_orlicz(need(c.orlicz, "--N"));
        double q = need(c.q, "--q");
        std::string src = c.profile_from ? *c.profile_from : need(c.measure, "--measure");
        in = {{"profile_from", src}, {"N", n.tag()}, {"q", number(q)}};
        IsoToOs res = iso_to_os(profile_from(src), n, q, c.cfg);
        r["constant"] = number(res.ledger.lo);
        r["profile_constant"] = number(res.profile_constant);
        r["b_infimum"] = number(res.b_infimum);
        out.report.ledgers.push_back(ledger_to_json(res.ledger));
    } else if (c.action == "cap-to-os") {
        Measure1D m = build(need(c.measure, "--measure"));
        OrliczFunction n = parse_orlicz(need(c.orlicz, "--N"));
        double q = need(c.q, "--q");
        in = measure_inputs(m);
        in["N"] = n.tag();
        in["q"] = number(q);
        in["weak"] = c.weak;
        CapacityBound b{q, [m, q, cfg = c.cfg](double t) { return capq(m, q, t, cfg); }, CapacityKind::exact_config,
                        "Cap_q of " + m.name()};
        CapToOs res = cap_to_os(b, n, c.weak);
        r["d2"] = number(res.d2);
        r["lo"] = number(res.ledger.lo);
        r["hi"] = number(res.ledger.hi);
        out.report.ledgers.push_back(ledger_to_json(res.ledger));
    } else if (c.action == "os-to-cap") {
        OrliczFunction n = parse_orlicz(need(c.orlicz, "--N"));
        double q = need(c.q, "--q"), d = need(c.d, "--D");
        in = {{"N", n.tag()}, {"q", number(q)}, {"D", number(d)}, {"weak", c.weak}};
        CapacityBound b = os_to_cap(n, q, d, c.weak);
        r["kind"] = capacity_kind_name(b.kind);
        if (c.t) r["value"] = number(b(*c.t));
        if (c.format == Format::csv)
            out.csv = capacity_csv(b, points);
        else
            r["capacity"] = capacity_samples(b, std::min(points, 128));
    } else if (c.action == "transform-n2") {
        OrliczFunction n = parse_orlicz(need(c.orlicz, "--N"));
        double p1 = exponent(c.p1, "--p1", 2.0), p2 = exponent(c.p2, "--p2", 2.0), p3 = exponent(c.p3, "--p3", 2.0);
        in = {{"N", n.tag()}, {"p1", number(p1)}, {"p2", number(p2)}, {"p3", number(p3)}};
        Transformed tr = transform_N2(n, p1, p2, p3, c.cfg);
        r["is_young"] = tri_json(tr.is_young);
        r["ratio_nondecreasing"] = tri_json(tr.ratio_nondecreasing);
        r["young_violations"] = tr.young_violations;
        r["ratio_violations"] = tr.ratio_violations;
        r["nodes"] = tr.nodes;
        r["head_exponent"] = number(tr.head_exponent);
        r["tail_exponent"] = number(tr.tail_exponent);
        Json rows = Json::array();
        for (int i = 0; i < 41; ++i) {
            double t = std::pow(10.0, -10.0 + 0.5 * i);
            rows.push_back({{"t", number(t)}, {"N2", number(tr.n2(t))}, {"N2_wedge", number(tr.n2.wedge(t))}});
        }
        r["samples"] = rows;
        if (c.format == Format::csv) {
            std::ostringstream os;
            os << "t,N2(t)\n";
            for (const auto& row : rows) os << row["t"].dump() << ',' << row["N2"].dump() << '\n';
            out.csv = os.str();
        }
    } else if (c.action == "qls") {
        double q = need(c.q, "--q"), d = need(c.d, "--D");
        QlsDirection dir;
        if (c.direction == "to-iso")
            dir = QlsDirection::to_iso;
        else if (c.direction == "from-iso")
            dir = QlsDirection::from_iso;
        else
            usage("--direction must be to-iso or from-iso, got '" + c.direction + "'");
        in = {{"q", number(q)}, {"D", number(d)}, {"direction", c.direction}};
        QlsResult res = qls_bridge(q, d, dir, c.cfg);
        put_transfer(res.transfer, points, out, c.format);
        r["cnq_infimum"] = number(res.cnq_inf);
        r["wedge_ratio"] = {number(res.wedge_ratio_lo), number(res.wedge_ratio_hi)};
        r["shape_constant"] = number(res.shape_constant);
    } else {
        usage("unknown transfer '" + c.action + "'");
    }
}

void cmd_tensor(const Command& c, Output& out) {
    std::string src = c.profile_from ? *c.profile_from : need(c.measure, "--profile-from");
    out.report.inputs["profile_from"] = src;
    Profile j = profile_from(src);
    Json& r = out.report.result;
    if (c.action == "control-rate") {
        r["control_rate"] = number(control_rate(j));
        return;
    }
    TensorMachinery m = build_machinery(j);
    if (c.action == "machinery") {
        r = Json::parse(machinery_json(m, grid_or(c, 256)));
        for (const auto& f : m.facts) {
            if (f.essential)
                out.report.diagnostics.push_back(f.name + ": essential constant " + std::to_string(f.constant));
            if (!f.holds) out.failed = true;
        }
    } else if (c.action == "last-thing") {
        LastThing lt = last_thing_check(m);
        r["lower"] = number(lt.lower);
        r["upper"] = number(lt.upper);
        r["upper_over_D"] = number(lt.upper_over_d);
        r["argmax"] = number(lt.argmax);
        r["control_rate"] = number(m.control);
        if (!(lt.lower >= 1.0 - 1e-6 && std::isfinite(lt.upper))) out.failed = true;
    } else {
        usage("unknown tensor action '" + c.action + "'");
    }
}

Json suite_json(const SuiteResult& s) {
    Json j;
    j["pass"] = s.pass();
    Json checks = Json::array();
    for (const auto& c : s.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    Json values = Json::object();
    for (const auto& [k, v] : s.values) values[k] = number(v);
    j["values"] = values;
    j["log"] = s.log;
    return j;
}

void cmd_verify(const Command& c, Output& out) {
    SuiteOptions opts;
    opts.measure = c.measure;
    opts.orlicz = c.orlicz;
    opts.a = c.a;
    opts.q = c.q;
    opts.cfg = c.cfg;

    std::vector<std::string> names;
    if (c.action == "all") {
        if (c.suite && *c.suite != "paper") usage("unknown suite group '" + *c.suite + "'");
        names = suite_names();
    } else {
        if (c.suite) usage("--suite only applies to 'verify all'");
        names = {c.action};
    }
    Json& in = out.report.inputs;
    in["suites"] = names;
    if (c.measure) in["measure"] = *c.measure;
    if (c.orlicz) in["N"] = *c.orlicz;
    if (c.a) in["a"] = number(*c.a);
    if (c.q) in["q"] = number(*c.q);

    std::vector<std::future<SuiteResult>> jobs;
    for (const auto& n : names) jobs.push_back(std::async(std::launch::async, [n, opts] { return run_suite(n, opts); }));
    std::map<std::string, SuiteResult> done;
    for (auto& f : jobs) {
        SuiteResult s = f.get();
        done.emplace(s.suite, std::move(s));
    }
    Json suites = Json::object();
    bool all = true;
    for (const auto& [name, s] : done) {
        suites[name] = suite_json(s);
        all = all && s.pass();
    }
    out.report.result["pass"] = all;
    out.report.result["suites"] = suites;
    out.failed = !all;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::UsageError, "cannot open output '" + path + "'");
    f << text;
}

}  // namespace

int run(const Command& cmd) {
    static const std::map<std::string, std::function<void(const Command&, Output&)>> verbs{
        {"profile", cmd_profile},   {"norm", cmd_norm},     {"capacity", cmd_capacity}, {"constant", cmd_constant},
        {"transfer", cmd_transfer}, {"tensor", cmd_tensor}, {"verify", cmd_verify}};

    Output out;
    out.report.command = cmd.argv;
    int status = 0;
    try {
        cmd.cfg.validate();
        auto it = verbs.find(cmd.verb);
        if (it == verbs.end()) usage("unknown verb '" + cmd.verb + "'");
        it->second(cmd, out);
        if (out.failed) status = 2;
    } catch (const Error& e) {
        out.csv.reset();
        out.report.result = Json::object();
        out.report.diagnostics.push_back({{"error", error_kind_name(e.kind())}, {"message", e.what()}});
        std::cerr << e.what() << '\n';
        status = 1;
    } catch (const std::exception& e) {
        out.csv.reset();
        out.report.result = Json::object();
        out.report.diagnostics.push_back({{"error", "internal"}, {"message", e.what()}});
        std::cerr << e.what() << '\n';
        status = 1;
    }

    try {
        if (out.csv) {
            write_text(cmd.out, *out.csv);
        } else {
            if (cmd.format == Format::csv && status == 0)
                out.report.diagnostics.push_back("csv is not available for this command; wrote json");
            write_text(cmd.out, render_report(out.report, cmd.cfg, cmd.timestamp));
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return status;
}

}  // namespace isx::cli
