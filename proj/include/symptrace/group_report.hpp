#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "symptrace/trace_classes.hpp"

namespace symptrace {

inline std::string catalog_csv(const GroupCatalog& cat) {
    std::ostringstream os;
    const int nn = 4 * cat.genus() * cat.genus();
    for (int i = 0; i < nn; ++i) os << 'm' << i / (2 * cat.genus()) << (i % (2 * cat.genus())) << ',';
    os << "mu\n";
    for (const auto& m : cat.elements()) {
        for (auto v : m.entries()) os << v << ',';
        os << m.multiplicator() << '\n';
    }
    return os.str();
}

struct ClassCountRecord {
    std::string kind;
    int g;
    std::uint32_t ell;
    std::string order;
    std::size_t classes;
};

inline std::vector<ClassCountRecord> class_counts(const TraceClassContext& ctx) {
    const auto& cls = ctx.classes();
    const auto l = ctx.modulus();
    const int g = ctx.genus();
    return {{"GSp", g, l, std::to_string(ctx.gsp().order()), cls.count()},
            {"PGSp", g, l, order_formula::pgsp(g, l).str(), projective_class_count(ctx.gsp(), cls)}};
}

/// Every group-theoretic statement at (g, l): orders, subgroup structure, class
/// envelopes and the trace-class properties for each residue t.
inline std::vector<Verdict> group_verification(int g, std::uint32_t l, unsigned workers = 1) {
    std::vector<Verdict> out;
    const TraceClassContext ctx(g, l, workers);
    const auto eq = [](const std::string& what, const BigInt& got, const BigInt& want) {
        return Verdict{got == want, what, got.str() + " vs formula " + want.str()};
    };
    out.push_back(eq("#GSp", ctx.gsp().order(), order_formula::gsp(g, l)));
    out.push_back(eq("#Lambda (scalars)", scalar_count(ctx.gsp()), l - 1));
    out.push_back(eq("#PGSp", ctx.gsp().order() / (l - 1), order_formula::pgsp(g, l)));
    out.push_back(eq("#B", ctx.borel().order(), order_formula::borel(g, l)));
    out.push_back(eq("#U", ctx.unipotent().order(), order_formula::unipotent(g, l)));
    out.push_back(eq("#U'", ctx.unipotent_scaled().order(), order_formula::unipotent_scaled(g, l)));
    out.push_back(eq("#T", ctx.torus().order(), order_formula::torus(g, l)));

    {
        Verdict v{true, "B inside GSp (membership filter)", ""};
        std::size_t filtered = 0;
        for (const auto& m : ctx.gsp().elements()) {
            bool lower_zero = true, upper_tri = true;
            for (int i = 0; i < g; ++i)
                for (int j = 0; j < g; ++j) {
                    if (m.at(g + i, j) != 0) lower_zero = false;
                    if (i > j && m.at(i, j) != 0) upper_tri = false;
                }
            if (lower_zero && upper_tri) ++filtered;
        }
        if (filtered != ctx.borel().order()) v = {false, v.check, std::to_string(filtered) + " vs " + std::to_string(ctx.borel().order())};
        else v.witness = std::to_string(filtered);
        out.push_back(v);
    }

    // all pairs for small catalogs, closure over a generating set for large GSp
    out.push_back(ctx.gsp().order() > 5000 ? verify_closure_by_generators(ctx.gsp()) : verify_group_axioms(ctx.gsp()));
    for (const auto* c : {&ctx.borel(), &ctx.unipotent(), &ctx.unipotent_scaled(), &ctx.torus()}) out.push_back(verify_group_axioms(*c));
    out.push_back(verify_normal(ctx.unipotent(), ctx.borel()));
    out.push_back(verify_normal(ctx.unipotent_scaled(), ctx.borel()));
    out.push_back(quotient_iso_T(ctx.borel(), ctx.unipotent(), ctx.torus(), &ctx.unipotent_scaled()));

    {
        const auto cc = class_counts(ctx);
        const double gsp_cap = 2.0 * std::pow(l, g + 1), pgsp_cap = 4.0 * g * std::pow(l, g);
        out.push_back({static_cast<double>(cc[0].classes) <= gsp_cap, "#GSp classes <= 2 l^(g+1)",
                       std::to_string(cc[0].classes) + " vs " + std::to_string(static_cast<long long>(gsp_cap))});
        out.push_back({static_cast<double>(cc[1].classes) <= pgsp_cap, "#PGSp classes <= 4g l^g",
                       std::to_string(cc[1].classes) + " vs " + std::to_string(static_cast<long long>(pgsp_cap))});
    }

    out.push_back(verify_trace_partition(ctx));
    const auto c0 = c0_counts(ctx);
    for (std::uint32_t t = 0; t < l; ++t) {
        const double dev = std::abs(static_cast<double>(c0[t]) / static_cast<double>(ctx.gsp().order()) - 1.0 / l);
        const double cap = 10.0 / (static_cast<double>(l) * l * l);
        std::ostringstream os;
        os << "deviation " << dev << " vs " << cap;
        out.push_back({dev <= cap, "#C0/#GSp - 1/l within 10/l^3 [t=" + std::to_string(t) + "]", os.str()});
        for (auto& v : verify_stability(ctx, TraceSelector::at(t))) out.push_back(std::move(v));
        for (auto& v : verify_trace_counts(ctx, TraceSelector::at(t))) out.push_back(std::move(v));
    }
    return out;
}

}  // namespace symptrace
