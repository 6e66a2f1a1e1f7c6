#pragma once

#include "bethe/classical/appendix_a.hpp"
#include "bethe/classical/loop.hpp"
#include "bethe/classical/poincare.hpp"
#include "bethe/classical/slice.hpp"
#include "bethe/cli/cache.hpp"
#include "bethe/shifted/gl2.hpp"
#include "bethe/shifted/verify.hpp"
#include "bethe/universal/yangian.hpp"

#include <chrono>
#include <set>
#include <string>
#include <vector>

namespace bethe {

inline constexpr const char* kReportSchema = "bethe-lab-report/1";

/// Suites in the order they run.
inline const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> s{"classical", "poincare", "universal", "shifted", "gl2", "appendixA"};
    return s;
}

/// Bad command-line input; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SuiteConfig {
    int n = 2;
    std::vector<int> mu{-1, 0};
    TwistMatrix twist = TwistMatrix::standard(2);
    bool twist_given = false;
    int N = 1;
    int u_lo = -2, u_hi = 4;
    int z_hi = 6;
    int degree_cap = 6;
    int q_cap = 10;
    int samples = 200;
    std::set<std::string> suites{all_suites().begin(), all_suites().end()};
    std::uint64_t seed = 1;
    std::string cache_dir;
};

/// Splits "a,b,c" (optionally wrapped in parentheses or brackets) on commas.
inline std::vector<std::string> split_list(std::string text, char sep = ',') {
    auto strip = [](std::string s) {
        std::size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    text = strip(text);
    if (text.size() >= 2 && ((text.front() == '(' && text.back() == ')') || (text.front() == '[' && text.back() == ']')))
        text = text.substr(1, text.size() - 2);
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t p = text.find(sep, start);
        out.push_back(strip(text.substr(start, p == std::string::npos ? std::string::npos : p - start)));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

inline int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(what + ": '" + s + "' is not an integer");
    }
}

inline std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    for (auto& s : split_list(text)) out.push_back(parse_int(s, what));
    return out;
}

/// "1,2" is diag(1,2); "1,0;0,2" is a full matrix with rows split by ';'. Entries may be p/q.
inline TwistMatrix parse_twist(const std::string& text) {
    auto scalar = [](const std::string& s) {
        try {
            return parse_scalar(s);
        } catch (const std::exception&) {
            throw UsageError("--twist: '" + s + "' is not a rational number");
        }
    };
    std::string body = text;
    auto rows = split_list(body, ';');
    if (rows.empty()) throw UsageError("--twist: empty matrix");
    if (rows.size() == 1) {
        std::vector<Scalar> d;
        for (auto& s : split_list(rows[0])) d.push_back(scalar(s));
        return TwistMatrix::diagonal(d);
    }
    ScalarMatrix m;
    for (auto& r : rows) {
        m.emplace_back();
        for (auto& s : split_list(r)) m.back().push_back(scalar(s));
    }
    try {
        return TwistMatrix(std::move(m));
    } catch (const PreconditionError& e) {
        throw UsageError(std::string("--twist: ") + e.what());
    }
}

inline std::set<std::string> parse_suites(const std::string& text) {
    std::set<std::string> out;
    for (auto& s : split_list(text)) {
        if (s == "all") {
            out.insert(all_suites().begin(), all_suites().end());
            continue;
        }
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
            throw UsageError("--suites: unknown suite '" + s + "'");
        out.insert(s);
    }
    if (out.empty()) throw UsageError("--suites: no suite selected");
    return out;
}

/// Throws UsageError on inconsistent settings. Fills the default twist for n.
inline void validate_config(SuiteConfig& cfg) {
    if (cfg.n < 1 || cfg.n > 6) throw UsageError("--n must be between 1 and 6");
    if (int(cfg.mu.size()) != cfg.n)
        throw UsageError("--mu has " + std::to_string(cfg.mu.size()) + " entries, expected n = " + std::to_string(cfg.n));
    try {
        validate_shift(cfg.mu);
    } catch (const PreconditionError& e) {
        throw UsageError(std::string("--mu: ") + e.what());
    }
    if (!cfg.twist_given) cfg.twist = TwistMatrix::standard(cfg.n);
    if (cfg.twist.n() != cfg.n) throw UsageError("--twist size differs from n");
    if (cfg.N < 0) throw UsageError("--trunc must be >= 0");
    if (cfg.u_lo > cfg.u_hi) throw UsageError("--window is empty");
    if (cfg.z_hi < 0) throw UsageError("--z-max must be >= 0");
    if (cfg.degree_cap < 0 || cfg.q_cap < 0) throw UsageError("caps must be >= 0");
    if (cfg.samples < 0) throw UsageError("--samples must be >= 0");
    ShiftVector mu(cfg.mu);
    bool needs_levi = cfg.suites.count("classical") || cfg.suites.count("shifted") || cfg.suites.count("gl2");
    if (needs_levi && !cfg.twist.is_block_regular(mu.levi_blocks()))
        throw UsageError("--twist must lie in the Levi subgroup of mu and be regular in each block");
}

inline Json config_to_json(const SuiteConfig& cfg) {
    Json suites = Json::array();
    for (auto& s : all_suites())
        if (cfg.suites.count(s)) suites.push_back(s);
    return Json{{"n", cfg.n},
                {"mu", cfg.mu},
                {"C", cfg.twist.str()},
                {"N", cfg.N},
                {"u_window", Json::array({cfg.u_lo, cfg.u_hi})},
                {"z_max", cfg.z_hi},
                {"degree_cap", cfg.degree_cap},
                {"q_cap", cfg.q_cap},
                {"samples", cfg.samples},
                {"suites", suites},
                {"seed", cfg.seed}};
}

struct SuiteOutcome {
    Report report;
    Json notes = Json::array();
    Json timing = Json::object();
    Json cache = Json::array();

    int exit_code() const { return report.ok() ? 0 : 1; }

    Json to_json(const Json& config) const {
        Json records = Json::array();
        for (auto& r : report.records()) records.push_back(bethe::to_json(r));
        Json summary{{"total", report.records().size()},
                     {"pass", report.count(Status::Pass)},
                     {"fail", report.count(Status::Fail)},
                     {"inconclusive", report.count(Status::Inconclusive)},
                     {"flagged", report.count(Status::Flagged)},
                     {"ok", report.ok()}};
        // cache traffic depends on the state of the directory, so it lives with the timing
        Json runtime = timing;
        runtime["cache"] = cache;
        return Json{{"schema", kReportSchema}, {"config", config}, {"summary", summary},
                    {"records", records},      {"notes", notes},   {"timing", runtime}};
    }
};

namespace detail {

template <class Rules>
void cache_attach(const std::string& dir, const CacheKey& key, Rules& rules, SuiteOutcome& out,
                  std::size_t& loaded) {
    loaded = 0;
    if (dir.empty()) return;
    CacheLoad got = cache_load(dir, key);
    out.cache.push_back(Json{{"namespace", key.ns}, {"shift", key.shift}, {"load", cache_status_name(got.status)}});
    if (got.status == CacheStatus::Hit) {
        rules.preload(got.table);
        loaded = got.table.size();
    } else if (got.status == CacheStatus::Corrupt || got.status == CacheStatus::VersionMismatch) {
        out.report.add(CheckRecord{"cache." + key.ns + ".n" + std::to_string(key.n) + "." + key.shift,
                                   "cached relation table is valid",
                                   Json{{"namespace", key.ns}, {"shift", key.shift}, {"version", key.version}},
                                   Status::Flagged,
                                   Json{{"problem", cache_status_name(got.status)}, {"detail", got.detail},
                                        {"action", "rebuilt in memory"}}});
    } else if (got.status == CacheStatus::IoError) {
        out.notes.push_back("cache " + key.ns + " unreadable (" + got.detail + "), computing in memory");
    }
}

template <class Rules>
void cache_commit(const std::string& dir, const CacheKey& key, const Rules& rules, SuiteOutcome& out,
                  std::size_t loaded) {
    if (dir.empty()) return;
    auto table = rules.table();
    if (table.size() == loaded) return;
    std::string detail;
    CacheStatus st = cache_store(dir, key, table, &detail);
    out.cache.push_back(Json{{"namespace", key.ns}, {"shift", key.shift}, {"store", cache_status_name(st)},
                             {"entries", table.size()}});
    if (st == CacheStatus::IoError) out.notes.push_back("cache " + key.ns + " not written (" + detail + ")");
}

inline std::vector<SigmaPair> gl2_pairs(const ShiftVector& mu, int hi) {
    std::vector<SigmaPair> out;
    for (int k = 1; k <= 2; ++k)
        for (int l = k; l <= 2; ++l)
            for (int r = mu.omega_star(k); r <= hi; ++r)
                for (int s = (l == k ? r : mu.omega_star(l)); s <= hi; ++s) out.push_back({k, r, l, s});
    return out;
}

} // namespace detail

/// Runs the selected suites. Records come back sorted by id.
inline SuiteOutcome run_suite(SuiteConfig cfg) {
    validate_config(cfg);
    SuiteOutcome out;
    ShiftVector mu(cfg.mu);
    const TwistMatrix& C = cfg.twist;
    std::string dir = resolve_cache_dir(cfg.cache_dir).string();
    // the degree checks reach r = <omega_k^*, mu> + degree_cap
    int slice_hi = cfg.z_hi;
    for (int k = 1; k <= cfg.n; ++k) slice_hi = std::max(slice_hi, mu.omega_star(k) + cfg.degree_cap);
    std::unique_ptr<ClassicalSlice> slice;
    auto get_slice = [&]() -> ClassicalSlice& {
        if (!slice) slice = std::make_unique<ClassicalSlice>(SliceContext{mu, slice_hi});
        return *slice;
    };
    auto t_total = std::chrono::steady_clock::now();

    for (auto& name : all_suites()) {
        if (!cfg.suites.count(name)) continue;
        auto t0 = std::chrono::steady_clock::now();
        if (name == "classical") {
            LoopContext lc{cfg.n, cfg.N, cfg.u_lo, cfg.u_hi};
            out.report.merge(verify_poisson_commutativity(C, lc, sigma_pair_grid(cfg.n, cfg.u_lo, cfg.u_hi)));
            if (C.is_regular())
                out.report.merge(verify_universal_independence(C, lc, cfg.degree_cap, cfg.seed));
            else
                out.notes.push_back("classical: twist is not regular, universal independence skipped");
            out.report.merge(verify_theorem_A(C, get_slice(), cfg.degree_cap, cfg.seed));
        } else if (name == "poincare") {
            int measured = cfg.q_cap;
            for (int k = 1; k <= cfg.n; ++k) measured = std::min(measured, slice_hi - mu.omega_star(k));
            out.report.merge(poincare_compare(C, get_slice(), cfg.q_cap, std::max(0, measured)));
        } else if (name == "universal") {
            UniversalYangian y({cfg.n, cfg.N, cfg.u_lo, cfg.u_hi});
            CacheKey key{cfg.n, "N" + std::to_string(cfg.N), "rtt"};
            std::size_t loaded = 0;
            detail::cache_attach(dir, key, y.rules(), out, loaded);
            out.report.merge(verify_tau_commutativity(C, y, sigma_pair_grid(cfg.n, cfg.u_lo, cfg.u_hi)));
            out.report.merge(verify_confluence(y, cfg.samples, cfg.seed));
            out.report.merge(verify_quantization(y, mu, cfg.samples, cfg.seed));
            detail::cache_commit(dir, key, y.rules(), out, loaded);
        } else if (name == "shifted") {
            ShiftedYangian y({mu, cfg.z_hi});
            out.report.merge(verify_vanishing_leading(C, y));
            out.report.merge(verify_theorem_C(C, y, get_slice(), cfg.q_cap));
        } else if (name == "gl2") {
            if (cfg.n != 2) {
                out.notes.push_back("gl2: straightening engine covers n = 2 only, suite skipped");
            } else {
                ShiftedYangian y({mu, cfg.z_hi});
                Gl2Algebra alg(mu);
                CacheKey key{2, "mu" + mu.str(), "gl2"};
                std::size_t loaded = 0;
                detail::cache_attach(dir, key, alg.rules(), out, loaded);
                out.report.merge(gl2_verify_commutativity(C, y, alg, detail::gl2_pairs(mu, cfg.z_hi)));
                detail::cache_commit(dir, key, alg.rules(), out, loaded);
            }
        } else if (name == "appendixA") {
            out.report.merge(appendix_a_demo(1, Scalar(1)));
            out.report.merge(appendix_a_demo(2, Scalar(2)));
        }
        out.timing[name + "_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    out.timing["total_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_total).count();
    out.report.sort_by_id();
    return out;
}

} // namespace bethe
