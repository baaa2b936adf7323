#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "commands.hpp"
#include "isoperimetrix/verify.hpp"

namespace {

bool ends_with(const std::string& s, const std::string& tail) {
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

}  // namespace

int main(int argc, char** argv) {
    using isx::cli::Command;
    using isx::cli::Format;

    Command cmd;
    for (int i = 1; i < argc; ++i) cmd.argv.emplace_back(argv[i]);

    CLI::App app{"Isoperimetric, capacity and Orlicz-Sobolev constants on the line", "isoperimetrix"};
    app.require_subcommand(1);
    // Config keys may be written with dashes or underscores (rel-tol or rel_tol).
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_config("--config", "", "TOML file overriding quadrature settings")->envname("ISOPERIMETRIX_CONFIG");

    std::string format;
    app.add_option("--measure", cmd.measure, "measure spec, e.g. gaussian, exp_alpha:1.5, cusp:0.5");
    app.add_option("--N", cmd.orlicz, "Orlicz spec: power:p, phi:q or grid:file");
    app.add_option("--profile-from", cmd.profile_from, "measure spec whose profile is used");
    app.add_option("--q", cmd.q, "Sobolev exponent");
    app.add_option("--alpha", cmd.alpha);
    app.add_option("--D", cmd.d, "input constant");
    app.add_option("--a", cmd.a);
    app.add_option("--b", cmd.b);
    app.add_option("--t", cmd.t);
    app.add_option("--p1", cmd.p1);
    app.add_option("--p2", cmd.p2);
    app.add_option("--p3", cmd.p3);
    app.add_option("--grid", cmd.grid, "number of output samples");
    app.add_option("--direction", cmd.direction, "qls direction")->check(CLI::IsMember({"to-iso", "from-iso"}));
    app.add_flag("--weak", cmd.weak, "weak-norm variant");
    app.add_flag("--oracle", cmd.oracle, "also run the capacity oracle");
    app.add_option("--rel-tol,--rel_tol", cmd.cfg.rel_tol);
    app.add_option("--abs-tol,--abs_tol", cmd.cfg.abs_tol);
    app.add_option("--max-subdivisions,--max_subdivisions", cmd.cfg.max_subdivisions);
    app.add_option("--tail-cutoff-mass,--tail_cutoff_mass", cmd.cfg.tail_cutoff_mass);
    app.add_option("--out", cmd.out, "output path (stdout if omitted)");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    bool no_timestamp = false;
    app.add_flag("--no-timestamp", no_timestamp, "omit generated_at");
    app.add_option("--suite", cmd.suite, "suite group for 'verify all' (paper)");

    auto verb = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        s->callback([&cmd, name] { cmd.verb = name; });
        return s;
    };
    auto actions = [&](CLI::App* parent, std::vector<std::string> names) {
        parent->require_subcommand(1);
        for (const auto& n : names) {
            CLI::App* s = parent->add_subcommand(n);
            s->fallthrough();
            s->callback([&cmd, n] { cmd.action = n; });
        }
    };

    verb("profile", "isoperimetric profile of a measure");
    verb("capacity", "Cap_q of a measure");
    actions(verb("norm", "Orlicz norm utilities"), {"indicator", "predicates", "eval"});
    actions(verb("constant", "best-constant estimates"),
            {"cheeger", "gaussian", "poincare", "log-sobolev", "closed-form"});
    actions(verb("transfer", "constant-transfer maps"),
            {"os-to-iso", "iso-to-os", "cap-to-os", "os-to-cap", "transform-n2", "qls"});
    actions(verb("tensor", "tensorization machinery"), {"machinery", "last-thing", "control-rate"});
    CLI::App* verify = verb("verify", "run verification suites");
    std::vector<std::string> suites{"all"};
    for (const auto& s : isx::suite_names()) suites.push_back(s);
    verify->add_option("suite", cmd.action, "suite name or all")->required()->check(CLI::IsMember(suites));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "UsageError: " << e.what() << '\n';
        return 1;
    }

    cmd.timestamp = !no_timestamp;
    if (format == "csv" || (format.empty() && ends_with(cmd.out, ".csv"))) cmd.format = Format::csv;
    return isx::cli::run(cmd);
}
