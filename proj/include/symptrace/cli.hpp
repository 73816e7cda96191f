#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "symptrace/bounds.hpp"
#include "symptrace/group_report.hpp"
#include "symptrace/tally.hpp"

namespace symptrace::cli {

using json = nlohmann::ordered_json;

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2 };

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

inline std::string rational_str(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator()) : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Explicit --cache wins; otherwise $SYMPTRACE_CACHE_DIR/<curve id>.csv when the variable is set.
inline std::optional<std::filesystem::path> resolve_cache(const std::string& flag, const CurveSpec& curve) {
    if (!flag.empty()) return std::filesystem::path(flag);
    if (const char* dir = std::getenv("SYMPTRACE_CACHE_DIR"); dir && *dir) return std::filesystem::path(dir) / (curve.id() + ".csv");
    return std::nullopt;
}

inline void echo(std::ostream& err, const std::vector<std::pair<std::string, std::string>>& cfg) {
    err << "# config";
    for (const auto& [k, v] : cfg) err << ' ' << k << '=' << v;
    err << '\n';
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

}  // namespace detail

/// Runs one command line (args excludes the program name). Tables go to `out`
/// as CSV, structured reports as JSON; diagnostics and the resolved
/// configuration go to `err`.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite symplectic group and Frobenius trace workbench", "symptrace"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    int g = 1;
    std::uint32_t ell = 3;
    unsigned workers = 1;
    std::string poly, cache_flag, out_path, kind = "GSp", mode = "3ii", thm;
    std::uint64_t p = 0, x = 0;
    bool sq = false, zero = false, no_compute = false;
    double eps = 0.1;
    std::int64_t t = 0;
    std::vector<std::uint64_t> xs{1000, 10000, 100000};

    auto* group = app.add_subcommand("group", "GSp_2g(F_l) enumeration and subgroup checks");
    group->require_subcommand(1);
    auto* gverify = group->add_subcommand("verify", "run every group and trace-class check; prints a pass/fail table");
    auto* gclasses = group->add_subcommand("classes", "conjugacy class counts of GSp and PGSp as JSON");
    auto* gexport = group->add_subcommand("export", "catalog CSV: 4g^2 entries then mu");
    for (auto* s : {gverify, gclasses, gexport}) {
        s->add_option("--g", g, "genus")->required()->check(CLI::Range(1, 2));
        s->add_option("--ell", ell, "odd prime l")->required();
        s->add_option("--workers", workers, "worker threads")->check(CLI::Range(1U, 256U));
    }
    gexport->add_option("--kind", kind, "GSp, B, U, Uprime or T")->check(CLI::IsMember({"GSp", "B", "U", "Uprime", "T"}));

    auto* curve = app.add_subcommand("curve", "point counts on y^2 = f(x)");
    curve->require_subcommand(1);
    auto* ccount = curve->add_subcommand("count", "#C(F_p), or #C(F_{p^2}) with --sq");
    ccount->add_option("--f", poly, "polynomial, e.g. \"x^3+x+1\"")->required();
    ccount->add_option("--p", p, "good odd prime")->required();
    ccount->add_flag("--sq", sq, "count over F_{p^2}");

    auto* traces = app.add_subcommand("traces", "Frobenius trace tallies");
    traces->require_subcommand(1);
    auto* ttally = traces->add_subcommand("tally", "populate the cache and emit the t,count CSV");
    ttally->add_option("--f", poly, "polynomial")->required();
    ttally->add_option("--x", x, "scan limit")->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100'000'000}));
    ttally->add_option("--cache", cache_flag, "cache CSV path (default $SYMPTRACE_CACHE_DIR/<curve>.csv)");
    ttally->add_option("--workers", workers, "worker threads")->check(CLI::Range(1U, 256U));
    ttally->add_option("--out", out_path, "write CSV here instead of stdout");
    ttally->add_flag("--no-compute", no_compute, "fail instead of computing missing cache rows");

    auto* bounds = app.add_subcommand("bounds", "bound expressions with implicit constant 1");
    bounds->add_option("--thm", thm, "1, 2, 3i or 3ii")->required()->check(CLI::IsMember({"1", "2", "3i", "3ii"}));
    bounds->add_option("--g", g, "genus")->required()->check(CLI::PositiveNumber);
    bounds->add_flag("--zero", zero, "t = 0 variant");
    bounds->add_option("--x", x, "x > e")->required();
    bounds->add_option("--eps", eps, "epsilon for theorem 3")->check(CLI::PositiveNumber);

    auto* report = app.add_subcommand("report", "JSON and CSV reports over a trace scan");
    report->require_subcommand(1);
    auto* rdensity = report->add_subcommand("density", "share of good p with |a1| above the theorem 3 threshold");
    rdensity->add_option("--mode", mode, "3i or 3ii")->check(CLI::IsMember({"3i", "3ii"}));
    rdensity->add_option("--eps", eps, "epsilon (default 0.1)")->check(CLI::PositiveNumber);
    auto* rtrend = report->add_subcommand("trend", "pi_A(x,0)/pi(x) over a list of x (CSV)");
    rtrend->add_option("--xs", xs, "scan limits")->delimiter(',');
    auto* rbound = report->add_subcommand("bound", "pi_A(x,t) against a theorem bound (JSON)");
    rbound->add_option("--thm", thm, "1 or 2")->required()->check(CLI::IsMember({"1", "2"}));
    rbound->add_option("--t", t, "trace value");
    for (auto* s : {rdensity, rtrend, rbound}) {
        s->add_option("--f", poly, "polynomial")->required();
        s->add_option("--cache", cache_flag, "cache CSV path");
        s->add_option("--workers", workers, "worker threads")->check(CLI::Range(1U, 256U));
    }
    for (auto* s : {rdensity, rbound}) s->add_option("--x", x, "scan limit")->required()->check(CLI::Range(std::uint64_t{3}, std::uint64_t{100'000'000}));

    std::vector<const char*> argv{"symptrace"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kUsage;
    }

    try {
        if (*gverify) {
            if (ell < 3 || !symptrace::detail::is_prime_u32(ell)) throw Error("--ell must be an odd prime");
            detail::echo(err, {{"command", "group verify"}, {"g", std::to_string(g)}, {"ell", std::to_string(ell)}, {"workers", std::to_string(workers)}});
            const auto verdicts = group_verification(g, ell, workers);
            bool ok = true;
            out << "check,result,detail\n";
            for (const auto& v : verdicts) {
                ok = ok && v.ok;
                out << '"' << v.check << "\"," << (v.ok ? "pass" : "FAIL") << ",\"" << v.witness << "\"\n";
            }
            return ok ? kPass : kFail;
        }
        if (*gclasses) {
            if (ell < 3 || !symptrace::detail::is_prime_u32(ell)) throw Error("--ell must be an odd prime");
            const TraceClassContext ctx(g, ell, workers);
            json arr = json::array();
            for (const auto& r : class_counts(ctx))
                arr.push_back({{"kind", r.kind}, {"g", r.g}, {"ell", r.ell}, {"order", r.order}, {"classes", r.classes}});
            out << arr.dump(2) << '\n';
            return kPass;
        }
        if (*gexport) {
            if (kind == "GSp") out << catalog_csv(enumerate_gsp(g, ell, workers));
            else {
                const GroupKind k = kind == "B" ? GroupKind::B : kind == "U" ? GroupKind::U : kind == "Uprime" ? GroupKind::Uprime : GroupKind::T;
                out << catalog_csv(build_subgroup(k, g, ell));
            }
            return kPass;
        }
        if (*ccount) {
            const auto c = CurveSpec::parse(poly);
            out << count_points(c, p, sq ? 2 : 1) << '\n';
            return kPass;
        }
        if (*ttally) {
            const auto c = CurveSpec::parse(poly);
            const auto cache = detail::resolve_cache(cache_flag, c);
            detail::echo(err, {{"command", "traces tally"}, {"curve", c.id()}, {"f", c.f().str()}, {"g", std::to_string(c.genus())},
                               {"x", std::to_string(x)}, {"cache", cache ? cache->string() : "none"}, {"workers", std::to_string(workers)},
                               {"cache_version", std::to_string(FrobeniusCache::kVersion)}});
            const auto scan = scan_frobenius(c, x, {workers, !no_compute, cache});
            const auto tl = tally(c.id(), c.genus(), x, scan.records);
            err << "# good_primes=" << tl.total_good << " cache_hits=" << scan.cache_hits << " computed=" << scan.computed << '\n';
            detail::emit(tl.csv(), out_path, out);
            return kPass;
        }
        if (*bounds) {
            const Theorem th = parse_theorem(thm);
            const double xv = static_cast<double>(x);
            const double value = bound_value(th, g, zero, xv, eps);
            std::string xe, le;
            if (th == Theorem::T1 || th == Theorem::T2) {
                const auto e = bound_exponents(th, g, zero);
                xe = detail::rational_str(e.x_exp);
                le = detail::rational_str(e.log_exp);
            } else if (th == Theorem::T3i) {
                xe = detail::rational_str(Rational(1, 2 * g * g + g + 1));
                le = detail::fmt(-eps);
            } else {
                xe = detail::rational_str(Rational(1, g + 2)) + "-" + detail::fmt(eps);
                le = "0";
            }
            out << "theorem,g,t_zero,x,eps,x_exp,log_exp,value\n"
                << to_string(th) << ',' << g << ',' << (zero ? 1 : 0) << ',' << x << ',' << detail::fmt(eps) << ',' << xe << ',' << le << ','
                << detail::fmt(value) << '\n';
            return kPass;
        }
        if (*rdensity || *rtrend || *rbound) {
            const auto c = CurveSpec::parse(poly);
            const auto cache = detail::resolve_cache(cache_flag, c);
            std::uint64_t top = x;
            if (*rtrend) {
                if (xs.empty()) throw Error("--xs needs at least one value");
                top = *std::max_element(xs.begin(), xs.end());
            }
            detail::echo(err, {{"command", "report"}, {"curve", c.id()}, {"x", std::to_string(top)}, {"cache", cache ? cache->string() : "none"},
                               {"workers", std::to_string(workers)}});
            const auto scan = scan_frobenius(c, top, {workers, true, cache});

            if (*rtrend) {
                out << "x,pi_x,good_primes,pi_A_x_0,ratio\n";
                auto sorted = xs;
                std::sort(sorted.begin(), sorted.end());
                for (auto xv : sorted) {
                    const auto tl = tally(c.id(), c.genus(), xv, scan.records);
                    const auto pix = prime_pi(xv);
                    out << xv << ',' << pix << ',' << tl.total_good << ',' << tl.count(0) << ','
                        << detail::fmt(static_cast<double>(tl.count(0)) / static_cast<double>(pix)) << '\n';
                }
                return kPass;
            }
            if (*rdensity) {
                const DensityMode m = mode == "3i" ? DensityMode::T3i : DensityMode::T3ii;
                const auto d = density_report(scan.records, c.genus(), x, eps, m);
                json j;
                j["curve"] = c.id();
                j["x"] = x;
                j["theorem"] = mode;
                j["params"] = {{"f", c.f().str()}, {"g", c.genus()}, {"eps", eps}, {"mode", mode}, {"hypotheses", mode == "3i" ? "GRH" : "GRH, AHC, PCC"}};
                j["value"] = density_threshold(m, c.genus(), static_cast<double>(x), eps);
                j["empirical"] = {{"fraction", d.fraction()}, {"counted", d.counted}, {"exceptional", d.exceptional}, {"good_primes", d.total_good}};
                j["ratio"] = d.fraction();
                j["note"] = "value is the threshold at p = x; the density statement holds up to an unspecified constant";
                out << j.dump(2) << '\n';
                return kPass;
            }
            const Theorem th = parse_theorem(thm);
            const auto tl = tally(c.id(), c.genus(), x, scan.records);
            const double value = bound_value(th, c.genus(), t == 0, static_cast<double>(x));
            json j;
            j["curve"] = c.id();
            j["x"] = x;
            j["theorem"] = thm;
            j["params"] = {{"f", c.f().str()}, {"g", c.genus()}, {"t", t}, {"hypotheses", th == Theorem::T1 ? "GRH" : "GRH, AHC, PCC"}};
            j["value"] = value;
            j["empirical"] = tl.count(t);
            j["ratio"] = static_cast<double>(tl.count(t)) / value;
            j["note"] = "bound evaluated up to an unspecified constant";
            out << j.dump(2) << '\n';
            return kPass;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    err << app.help();
    return kUsage;
}

}  // namespace symptrace::cli
