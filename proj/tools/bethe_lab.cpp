#include "bethe/cli/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace bethe;

namespace {

struct RawFlags {
    int n = 2;
    std::string mu, twist, window, suites;
    int trunc = 1, z_max = 6, degree_cap = 6, q_cap = 10, samples = 200;
    std::uint64_t seed = 1;
    std::string out, cache_dir;
};

void add_common(CLI::App* app, RawFlags& f, bool with_suites) {
    app->add_option("--n", f.n, "matrix size n");
    app->add_option("--mu", f.mu, "antidominant shift, e.g. --mu=-1,0 or --mu '(-1,0)'");
    app->add_option("--twist", f.twist, "twist C: diagonal '1,2' or rows '1,0;0,2'");
    app->add_option("--trunc", f.trunc, "truncation level N of the universal Yangian");
    app->add_option("--window", f.window, "coefficient window lo,hi for universal generators");
    app->add_option("--z-max", f.z_max, "highest certified coefficient on the slice");
    app->add_option("--degree-cap", f.degree_cap, "degree cap for Jacobian rank certificates");
    app->add_option("--q-cap", f.q_cap, "q-series truncation");
    app->add_option("--samples", f.samples, "random triples/pairs for property checks");
    app->add_option("--seed", f.seed, "seed for randomized checks");
    app->add_option("--out", f.out, "write the report here instead of stdout");
    app->add_option("--cache-dir", f.cache_dir, "relation table cache (overridden by " + std::string(kCacheEnvVar) + ")");
    if (with_suites) app->add_option("--suites", f.suites, "comma list of suites, or 'all'");
}

SuiteConfig to_config(const RawFlags& f, bool explicit_mu_default) {
    SuiteConfig cfg;
    cfg.n = f.n;
    if (!f.mu.empty())
        cfg.mu = parse_int_list(f.mu, "--mu");
    else if (explicit_mu_default || f.n != 2) {
        cfg.mu.assign(std::size_t(std::max(f.n, 0)), 0);
        if (f.n == 2) cfg.mu = {-1, 0};
    }
    if (!f.twist.empty()) {
        cfg.twist = parse_twist(f.twist);
        cfg.twist_given = true;
    }
    cfg.N = f.trunc;
    if (!f.window.empty()) {
        auto w = parse_int_list(f.window, "--window");
        if (w.size() != 2) throw UsageError("--window expects lo,hi");
        cfg.u_lo = w[0];
        cfg.u_hi = w[1];
    }
    cfg.z_hi = f.z_max;
    cfg.degree_cap = f.degree_cap;
    cfg.q_cap = f.q_cap;
    cfg.samples = f.samples;
    cfg.seed = f.seed;
    cfg.cache_dir = f.cache_dir;
    if (!f.suites.empty()) cfg.suites = parse_suites(f.suites);
    return cfg;
}

int emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os || !(os << text << "\n")) {
        std::cerr << "error: cannot write " << path << "\n";
        return 2;
    }
    return 0;
}

int run_report(SuiteConfig cfg, const std::string& out_path) {
    validate_config(cfg);
    SuiteOutcome res = run_suite(cfg);
    int rc = emit(res.to_json(config_to_json(cfg)).dump(2), out_path);
    if (rc) return rc;
    std::cerr << "records: " << res.report.records().size() << ", fail: " << res.report.count(Status::Fail)
              << ", inconclusive: " << res.report.count(Status::Inconclusive)
              << ", flagged: " << res.report.count(Status::Flagged) << "\n";
    return res.exit_code();
}

int run_poincare_tsv(SuiteConfig cfg, const std::string& out_path) {
    validate_config(cfg);
    SuiteOutcome res = run_suite(cfg);
    std::string tsv;
    for (auto& r : res.report.records()) {
        const Json& b = r.witness.at("bethe");
        const Json& p = r.witness.at("partition_product");
        tsv += "# " + r.id + "\t" + status_name(r.status) + "\n";
        tsv += "degree\tbethe\tpartition_product\n";
        for (std::size_t d = 0; d < b.size(); ++d)
            tsv += std::to_string(d) + "\t" + b[d].get<std::string>() + "\t" + p[d].get<std::string>() + "\n";
    }
    if (!tsv.empty()) tsv.pop_back();
    int rc = emit(tsv, out_path);
    return rc ? rc : res.exit_code();
}

int run_bench(const RawFlags& f) {
    Json rows = Json::array();
    auto time = [&](const std::string& name, auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        rows.push_back(Json{{"name", name},
                            {"ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                                       .count()}});
    };
    TwistMatrix C = TwistMatrix::standard(2);
    time("classical.poisson-commutativity.n2.N1", [&] {
        verify_poisson_commutativity(C, LoopContext{2, 1, -2, 4}, sigma_pair_grid(2, -2, 4));
    });
    time("universal.tau-commutativity.n2.N1", [&] {
        UniversalYangian y({2, 1, -2, 4});
        verify_tau_commutativity(C, y, sigma_pair_grid(2, -2, 4));
    });
    time("universal.confluence.n2.N1.200", [&] {
        UniversalYangian y({2, 1, -2, 4});
        verify_confluence(y, 200, f.seed);
    });
    time("gl2.commutativity.mu(-2,0)", [&] {
        ShiftVector mu({-2, 0});
        ShiftedYangian y({mu, 5});
        Gl2Algebra alg(mu);
        gl2_verify_commutativity(C, y, alg, {{1, -2, 2, -2}, {1, 3, 2, 5}, {1, 5, 2, 5}});
    });
    return emit(Json{{"schema", kReportSchema}, {"benchmarks", rows}}.dump(2), f.out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification harness for shifted Bethe subalgebras"};
    app.require_subcommand(1);

    RawFlags vf, pf, bf;
    std::string format = "json";
    int demo_n = 1;
    std::string demo_h = "1", demo_out;

    auto* verify = app.add_subcommand("verify", "run verification suites and emit a JSON report");
    add_common(verify, vf, true);
    auto* poincare = app.add_subcommand("poincare", "compare Poincare series of the shifted Bethe algebra");
    add_common(poincare, pf, false);
    poincare->add_option("--format", format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
    auto* demo = app.add_subcommand("demo-appendix-a", "restricted trace on the rank one curve");
    demo->set_help_flag("--help", "print this help and exit");
    demo->add_option("--n", demo_n, "shift exponent n");
    demo->add_option("--h", demo_h, "nonzero rational h");
    demo->add_option("--out", demo_out, "write the report here instead of stdout");
    auto* bench = app.add_subcommand("bench", "time the main verification kernels");
    bench->add_option("--seed", bf.seed, "seed");
    bench->add_option("--out", bf.out, "write timings here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return run_report(to_config(vf, false), vf.out);
        if (poincare->parsed()) {
            SuiteConfig cfg = to_config(pf, false);
            cfg.suites = {"poincare"};
            return format == "tsv" ? run_poincare_tsv(cfg, pf.out) : run_report(cfg, pf.out);
        }
        if (demo->parsed()) {
            if (demo_n < 0) throw UsageError("--n must be >= 0");
            Scalar h;
            try {
                h = parse_scalar(demo_h);
            } catch (const std::exception&) {
                throw UsageError("--h: '" + demo_h + "' is not a rational number");
            }
            if (h == 0) throw UsageError("--h must be nonzero");
            Report rep = appendix_a_demo(demo_n, h);
            rep.sort_by_id();
            SuiteOutcome res;
            res.report = rep;
            Json cfg{{"n", demo_n}, {"h", h.get_str()}};
            int rc = emit(res.to_json(cfg).dump(2), demo_out);
            return rc ? rc : res.exit_code();
        }
        if (bench->parsed()) return run_bench(bf);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
