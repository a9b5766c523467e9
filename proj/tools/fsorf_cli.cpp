// fsorf: outage and BER sweeps for FSO, RF and hybrid SC/MRC links.
//
//   fsorf op  --config sweep.cfg --out op.csv [--mc|--no-mc] [--seed N]
//   fsorf ber --config sweep.cfg --out ber.csv
//   fsorf validate --suite all --report report.csv
//
// exit status: 0 ok, 1 validation failure, 2 config error, 3 numerical failure

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "fsorf/error.hpp"
#include "fsorf/sweep.hpp"
#include "fsorf/validate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailed = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

struct SweepArgs {
    std::string config;
    std::string out;
    std::optional<bool> mc;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::string plot;
};

void add_sweep_options(CLI::App& cmd, SweepArgs& a) {
    cmd.add_option("--config", a.config, "sweep configuration (key = value lines)")->required();
    cmd.add_option("--out", a.out, "CSV output path (default: stdout)");
    cmd.add_flag_callback("--mc", [&a] { a.mc = true; }, "run Monte Carlo alongside the closed form");
    cmd.add_flag_callback("--no-mc", [&a] { a.mc = false; }, "skip Monte Carlo");
    cmd.add_option_function<std::uint64_t>("--seed", [&a](const std::uint64_t& s) { a.seed = s; },
                                           "Monte Carlo master seed");
    cmd.add_option_function<unsigned>("--workers", [&a](const unsigned& w) { a.workers = w; },
                                      "Monte Carlo worker threads");
    cmd.add_option("--plot-script", a.plot, "also write a matplotlib script for the CSV");
}

int run_sweep_command(const SweepArgs& a, fsorf::Task task) {
    fsorf::SweepConfig cfg;
    try {
        cfg = fsorf::load_sweep_config(a.config, task);
        if (a.mc) cfg.mc_enabled = *a.mc;
        if (a.seed) cfg.mc.master_seed = *a.seed;
        if (a.workers) cfg.mc.workers = *a.workers;
        cfg.validate();
    } catch (const fsorf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const fsorf::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    std::vector<fsorf::SweepRow> rows;
    try {
        rows = fsorf::run_sweep(cfg);
    } catch (const fsorf::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    int failed = 0;
    for (auto& r : rows) {
        if (r.status != "ok") {
            ++failed;
        } else if (r.mc && r.analytical && !r.mc->covers(*r.analytical)) {
            r.status = "outside_mc_ci";
        }
    }

    if (a.out.empty()) {
        fsorf::write_csv(std::cout, rows);
    } else {
        std::ofstream out(a.out, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << a.out << '\n';
            return kConfigError;
        }
        fsorf::write_csv(out, rows);
    }
    const std::string plot = !a.plot.empty() ? a.plot : cfg.plot_script.value_or("");
    if (!plot.empty()) {
        std::ofstream script(plot, std::ios::binary);
        script << fsorf::plot_script(cfg, a.out.empty() ? "sweep.csv" : a.out);
    }
    if (failed > 0) {
        std::cerr << failed << " sweep point(s) failed numerically\n";
        return kNumericalFailure;
    }
    return kOk;
}

int run_validate_command(const std::string& suite, const std::string& report) {
    std::vector<fsorf::CheckResult> checks;
    try {
        checks = fsorf::run_validate(suite);
    } catch (const fsorf::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    fsorf::write_report(std::cout, checks);
    if (!report.empty()) {
        std::ofstream out(report, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << report << '\n';
            return kConfigError;
        }
        fsorf::write_report(out, checks);
    }
    int fails = 0, errors = 0;
    for (const auto& c : checks) {
        if (c.passed) continue;
        c.note.empty() ? ++fails : ++errors;
        if (!c.note.empty()) std::cerr << c.name << ": " << c.note << '\n';
    }
    std::cerr << checks.size() - fails - errors << "/" << checks.size() << " checks passed\n";
    if (fails > 0) return kValidationFailed;
    if (errors > 0) return kNumericalFailure;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"outage and BER of FSO, RF and hybrid FSO/RF links"};
    app.require_subcommand(1);

    SweepArgs op_args, ber_args;
    auto* op = app.add_subcommand("op", "outage probability sweep");
    add_sweep_options(*op, op_args);
    auto* ber = app.add_subcommand("ber", "average BER sweep");
    add_sweep_options(*ber, ber_args);

    std::string suite = "all", report;
    auto* validate = app.add_subcommand("validate", "run the built-in check suites");
    validate->add_option("--suite", suite, "identities, mixtures, oracles, reference-values or all");
    validate->add_option("--report", report, "also write the report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (op->parsed()) return run_sweep_command(op_args, fsorf::Task::Op);
        if (ber->parsed()) return run_sweep_command(ber_args, fsorf::Task::Ber);
        return run_validate_command(suite, report);
    } catch (const fsorf::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
}
