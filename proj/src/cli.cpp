#include "bures/cli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bures/closed_form.hpp"
#include "bures/dynamics.hpp"
#include "bures/errors.hpp"
#include "bures/oracle.hpp"
#include "bures/states.hpp"

namespace bures {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string fmt_optional(const std::optional<double> &x) {
    return x ? fmt(*x) : std::string("none");
}

void write_row(std::ostream &out, const std::vector<std::string> &fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        out << (i ? "," : "") << fields[i];
    }
    out << '\n';
}

void write_sweep(std::ostream &out, int steps, double upper, const std::function<CorrelationReport(double)> &report) {
    write_row(out, {"parameter", "E", "Q", "C", "T", "QplusC"});
    for (int i = 0; i < steps; ++i) {
        const double p = upper * static_cast<double>(i) / static_cast<double>(steps - 1);
        const CorrelationReport r = report(p);
        write_row(out, {fmt(p), fmt(r.E), fmt(r.Q), fmt(r.C), fmt(r.T), fmt(r.Q + r.C)});
    }
}

struct Options {
    unsigned parallel = std::max(1u, std::thread::hardware_concurrency());
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    int steps = 101;
    double s = 2.5;
    double nu_max = 30.0;
    int dyn_steps = 2000;
    std::size_t samples = 10000;
    std::uint64_t seed = 42;
    std::string mode = "product";
};

int cmd_report(const Options &o, std::ostream &out) {
    const BellDiagonalState state = bd_from_c(o.c1, o.c2, o.c3);
    const BdEigenvalues ev = bd_eigenvalues(state);
    const CorrelationReport r = full_report(state);
    write_row(out, {"c1", "c2", "c3", "alpha", "beta", "gamma", "delta", "E", "Q", "C", "T", "k", "s_k", "l", "a",
                    "b", "branch"});
    write_row(out, {fmt(o.c1), fmt(o.c2), fmt(o.c3), fmt(ev.alpha), fmt(ev.beta), fmt(ev.gamma), fmt(ev.delta),
                    fmt(r.E), fmt(r.Q), fmt(r.C), fmt(r.T), std::to_string(r.cq_witness.k), fmt(r.cq_witness.s_k),
                    std::to_string(r.product_witness.l), fmt(r.product_witness.a), fmt(r.product_witness.b),
                    std::string(branch_name(r.product_witness.branch))});
    return kExitOk;
}

int cmd_dynamics(const Options &o, std::ostream &out) {
    const BellDiagonalState state0 = bd_from_c(o.c1, o.c2, o.c3);
    const DynamicsTrace trace = trace_correlations(state0, {o.s, 1.0}, o.nu_max, o.dyn_steps, o.parallel);
    write_row(out, {"nu", "c1", "c2", "c3", "E", "Q", "C", "T"});
    for (std::size_t i = 0; i < trace.nu_grid.size(); ++i) {
        const auto &st = trace.states[i];
        const auto &r = trace.reports[i];
        write_row(out, {fmt(trace.nu_grid[i]), fmt(st.c1()), fmt(st.c2()), fmt(st.c3()), fmt(r.E), fmt(r.Q),
                        fmt(r.C), fmt(r.T)});
    }
    out << "# t_star=" << fmt_optional(trace.t_star) << '\n';
    out << "# esd=" << fmt_optional(trace.esd_time) << '\n';
    return kExitOk;
}

int cmd_verify(const Options &o, std::ostream &out) {
    SearchConfig cfg;
    cfg.rng_seed = o.seed;
    std::vector<std::string> modes;
    if (o.mode == "all") {
        modes = {"product", "cq", "classical"};
    } else {
        modes = {o.mode};
    }
    write_row(out, {"mode", "samples", "violations", "max_gap", "seconds"});
    std::size_t violations = 0;
    for (const auto &mode : modes) {
        const auto start = std::chrono::steady_clock::now();
        VerifySummary summary;
        if (mode == "product") {
            summary = verify_product_ansatz(o.samples, cfg, o.parallel);
        } else if (mode == "cq") {
            summary = verify_cq(o.samples, cfg, o.parallel);
        } else {
            summary = verify_classical(o.samples, cfg, o.parallel);
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        violations += summary.violations;
        write_row(out, {summary.mode, std::to_string(summary.samples), std::to_string(summary.violations),
                        fmt(summary.max_gap), fmt(seconds)});
        out.flush();
    }
    return violations > 0 ? kExitVerificationFailed : kExitOk;
}

void add_state_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--c1", o.c1, "correlation coefficient c1")->required();
    cmd->add_option("--c2", o.c2, "correlation coefficient c2")->required();
    cmd->add_option("--c3", o.c3, "correlation coefficient c3")->required();
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Bures-distance correlations of two-qubit Bell-diagonal states", "bures"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--parallel", o.parallel, "worker threads for verify and dynamics")
        ->check(CLI::Range(1u, 1024u));

    auto *report = app.add_subcommand("report", "correlations and closest-state witnesses of one state");
    add_state_flags(report, o);

    auto *werner = app.add_subcommand("sweep-werner", "Werner family r in [0, 1]");
    werner->add_option("--steps", o.steps, "number of samples")->check(CLI::Range(2, 100000000));
    auto *rank2 = app.add_subcommand("sweep-rank2", "rank-2 family c in [0, 1 - 1e-9]");
    rank2->add_option("--steps", o.steps, "number of samples")->check(CLI::Range(2, 100000000));

    auto *dynamics = app.add_subcommand("dynamics", "dephasing trace with transition and sudden-death times");
    add_state_flags(dynamics, o);
    dynamics->add_option("--s", o.s, "bath Ohmicity")->check(CLI::PositiveNumber);
    dynamics->add_option("--nu-max", o.nu_max, "end of the time grid (dimensionless)")->check(CLI::PositiveNumber);
    dynamics->add_option("--steps", o.dyn_steps, "number of grid points")->check(CLI::Range(2, 100000000));

    auto *verify = app.add_subcommand("verify", "compare closed forms with the numerical oracles");
    verify->add_option("--samples", o.samples, "number of random states")->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    verify->add_option("--seed", o.seed, "batch seed");
    verify->add_option("--mode", o.mode, "product, cq, classical or all")
        ->check(CLI::IsMember({"product", "cq", "classical", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (report->parsed()) {
            return cmd_report(o, out);
        }
        if (werner->parsed()) {
            write_sweep(out, o.steps, 1.0, [](double r) { return full_report(bd_from_c(r, -r, r)); });
            return kExitOk;
        }
        if (rank2->parsed()) {
            write_sweep(out, o.steps, 1.0 - 1e-9, [](double c) {
                return full_report(bd_from_eigenvalues({0.5 * (1.0 - c), 0.5 * (1.0 + c), 0.0, 0.0}));
            });
            return kExitOk;
        }
        if (dynamics->parsed()) {
            return cmd_dynamics(o, out);
        }
        return cmd_verify(o, out);
    } catch (const InvalidState &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace bures
