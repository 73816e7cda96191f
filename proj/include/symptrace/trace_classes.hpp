#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symptrace/group_catalog.hpp"

namespace symptrace {

enum class TraceKind { C0, C, Css, CB, hatCB, hatCBprime, hatC0 };

inline std::string to_string(TraceKind k) {
    switch (k) {
        case TraceKind::C0: return "C0";
        case TraceKind::C: return "C";
        case TraceKind::Css: return "Css";
        case TraceKind::CB: return "CB";
        case TraceKind::hatCB: return "hatCB";
        case TraceKind::hatCBprime: return "hatCBprime";
        case TraceKind::hatC0: return "hatC0";
    }
    return "?";
}

/// Either a single integer t or the window |t| <= z. Members satisfy tr M = -t mod l.
struct TraceSelector {
    std::int64_t value = 0;
    bool window = false;

    static TraceSelector at(std::int64_t t) { return {t, false}; }
    static TraceSelector within(std::int64_t z) {
        if (z < 0) throw Error("window bound must be non-negative");
        return {z, true};
    }

    /// Residues r = -t mod l that a member's trace may take.
    [[nodiscard]] std::vector<bool> allowed_traces(std::uint32_t l) const {
        std::vector<bool> ok(l, false);
        const std::int64_t lo = window ? -value : value, hi = value;
        for (std::int64_t t = lo; t <= hi && t - lo < static_cast<std::int64_t>(l); ++t) ok[detail::reduce(-t, l)] = true;
        return ok;
    }
    [[nodiscard]] bool is_zero() const noexcept { return value == 0; }
    [[nodiscard]] std::string str() const { return window ? "|t|<=" + std::to_string(value) : "t=" + std::to_string(value); }
};

struct TraceClassSet {
    TraceKind kind;
    int g;
    std::uint32_t l;
    TraceSelector selector;
    std::vector<SympMatrix> members;  // sorted by key; hat kinds hold one canonical representative per image
    [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
};

/// Per-element data over GSp: trace, whether the characteristic polynomial
/// splits over F_l, and semisimplicity.
struct ElementFlags {
    std::uint32_t trace = 0;
    bool split = false;
    bool semisimple = false;
};

inline ElementFlags element_flags(const SympMatrix& m) {
    ElementFlags f;
    f.trace = m.trace();
    f.split = eigenvalues_in_fl(char_poly_symp(m));
    f.semisimple = semisimple(m);
    return f;
}

/// Exhaustive catalogs of GSp, B, U, U' and T at one (g, l) plus per-element flags.
class TraceClassContext {
public:
    TraceClassContext(int g, std::uint32_t l, unsigned workers = 1)
        : gsp_(enumerate_gsp(g, l, workers)),
          b_(build_subgroup(GroupKind::B, g, l)),
          u_(build_subgroup(GroupKind::U, g, l)),
          up_(build_subgroup(GroupKind::Uprime, g, l)),
          t_(build_subgroup(GroupKind::T, g, l)),
          flags_(gsp_.order()) {
        constexpr std::size_t chunk = 4096;
        const std::size_t shards = (gsp_.order() + chunk - 1) / chunk;
        parallel_shards(shards, workers, [&](std::size_t s) {
            const std::size_t end = std::min(gsp_.order(), (s + 1) * chunk);
            for (std::size_t i = s * chunk; i < end; ++i) flags_[i] = element_flags(gsp_[i]);
        });
        b_in_gsp_.reserve(b_.order());
        for (const auto& m : b_.elements()) b_in_gsp_.push_back(gsp_.require_index(m));
    }

    [[nodiscard]] int genus() const noexcept { return gsp_.genus(); }
    [[nodiscard]] std::uint32_t modulus() const noexcept { return gsp_.modulus(); }
    [[nodiscard]] const GroupCatalog& gsp() const noexcept { return gsp_; }
    [[nodiscard]] const GroupCatalog& borel() const noexcept { return b_; }
    [[nodiscard]] const GroupCatalog& unipotent() const noexcept { return u_; }
    [[nodiscard]] const GroupCatalog& unipotent_scaled() const noexcept { return up_; }
    [[nodiscard]] const GroupCatalog& torus() const noexcept { return t_; }
    [[nodiscard]] const ElementFlags& flags(std::size_t gsp_index) const { return flags_.at(gsp_index); }
    [[nodiscard]] const ElementFlags& flags_of_borel(std::size_t b_index) const { return flags_.at(b_in_gsp_.at(b_index)); }

    [[nodiscard]] const ClassPartition& classes() const {
        if (!classes_) classes_ = conjugacy_classes(gsp_);
        return *classes_;
    }
    [[nodiscard]] const std::vector<std::size_t>& gsp_generators() const {
        if (!gsp_gens_) gsp_gens_ = generating_set(gsp_);
        return *gsp_gens_;
    }
    [[nodiscard]] const std::vector<std::size_t>& borel_generators() const {
        if (!b_gens_) b_gens_ = generating_set(b_);
        return *b_gens_;
    }

private:
    GroupCatalog gsp_, b_, u_, up_, t_;
    std::vector<ElementFlags> flags_;
    std::vector<std::size_t> b_in_gsp_;
    mutable std::optional<ClassPartition> classes_;
    mutable std::optional<std::vector<std::size_t>> gsp_gens_, b_gens_;
};

namespace detail {

inline bool in_class(TraceKind kind, const ElementFlags& f, const std::vector<bool>& allowed) {
    if (!allowed[f.trace]) return false;
    if (kind == TraceKind::C0) return true;
    if (!f.split) return false;
    return kind != TraceKind::Css || f.semisimple;
}

// Torus element with the same diagonal as a Borel element: its class modulo U.
inline SympMatrix torus_part(const SympMatrix& m) {
    std::vector<std::uint32_t> e(static_cast<std::size_t>(m.dim() * m.dim()), 0);
    for (int i = 0; i < m.dim(); ++i) e[static_cast<std::size_t>(i * m.dim() + i)] = m.at(i, i);
    return SympMatrix::make_or_throw(m.genus(), m.modulus(), e);
}

inline void sort_unique(std::vector<SympMatrix>& v) {
    std::sort(v.begin(), v.end(), [](const SympMatrix& a, const SympMatrix& b) { return a.key() < b.key(); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Class modulo U' of a Borel element: its torus part normalized so the first entry is 1.
inline SympMatrix modulo_uprime(const SympMatrix& b) {
    const SympMatrix d = detail::torus_part(b);
    return d.scaled(detail::invmod(d.at(0, 0), d.modulus()));
}

/// Class modulo scalars: the smallest-key matrix among lambda * M.
inline SympMatrix modulo_scalars(const SympMatrix& m) {
    SympMatrix best = m;
    for (std::uint32_t lambda = 2; lambda < m.modulus(); ++lambda) {
        SympMatrix c = m.scaled(lambda);
        if (c.key() < best.key()) best = c;
    }
    return best;
}

inline TraceClassSet build_trace_class(const TraceClassContext& ctx, TraceKind kind, TraceSelector sel) {
    const auto l = ctx.modulus();
    const auto allowed = sel.allowed_traces(l);
    TraceClassSet out{kind, ctx.genus(), l, sel, {}};
    if ((kind == TraceKind::hatCBprime || kind == TraceKind::hatC0) && (sel.window || !sel.is_zero()))
        throw Error(to_string(kind) + " is defined only for t = 0");

    switch (kind) {
        case TraceKind::C0:
        case TraceKind::C:
        case TraceKind::Css:
            for (std::size_t i = 0; i < ctx.gsp().order(); ++i)
                if (detail::in_class(kind, ctx.flags(i), allowed)) out.members.push_back(ctx.gsp()[i]);
            break;
        case TraceKind::hatC0:
            for (std::size_t i = 0; i < ctx.gsp().order(); ++i)
                if (detail::in_class(TraceKind::C0, ctx.flags(i), allowed)) out.members.push_back(modulo_scalars(ctx.gsp()[i]));
            break;
        case TraceKind::CB:
        case TraceKind::hatCB:
        case TraceKind::hatCBprime:
            for (std::size_t i = 0; i < ctx.borel().order(); ++i) {
                if (!detail::in_class(TraceKind::C, ctx.flags_of_borel(i), allowed)) continue;
                const auto& m = ctx.borel()[i];
                if (kind == TraceKind::CB) out.members.push_back(m);
                else if (kind == TraceKind::hatCB) out.members.push_back(detail::torus_part(m));
                else out.members.push_back(modulo_uprime(m));
            }
            break;
    }
    detail::sort_unique(out.members);
    return out;
}

/// Diagonal element of C^ss(l, t): diag(1,..,1, c,..,c) with c = -(t+g)/g when
/// l does not divide t+g, and the scalar 1/2 otherwise. Requires l not dividing 2g.
inline SympMatrix semisimple_witness(int g, std::uint32_t l, std::int64_t t) {
    if (g % static_cast<int>(l) == 0) throw Error("no witness construction when l divides 2g");
    const std::uint32_t tg = detail::reduce(t + g, l);
    const int n = 2 * g;
    std::vector<std::uint32_t> e(static_cast<std::size_t>(n * n), 0);
    if (tg != 0) {
        const std::uint32_t c = detail::reduce(-static_cast<std::int64_t>(detail::mulmod(tg, detail::invmod(static_cast<std::uint32_t>(g) % l, l), l)), l);
        for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = i < g ? 1 : c;
    } else {
        const std::uint32_t half = detail::invmod(2, l);
        for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = half;
    }
    return SympMatrix::make_or_throw(g, l, e);
}

/// #C0(l, t) for t = 0..l-1 (index t means trace -t mod l).
inline std::vector<std::size_t> c0_counts(const TraceClassContext& ctx) {
    const auto l = ctx.modulus();
    std::vector<std::size_t> by_trace(l, 0);
    for (std::size_t i = 0; i < ctx.gsp().order(); ++i) ++by_trace[ctx.flags(i).trace];
    std::vector<std::size_t> out(l, 0);
    for (std::uint32_t t = 0; t < l; ++t) out[t] = by_trace[detail::reduce(-static_cast<std::int64_t>(t), l)];
    return out;
}

namespace detail {

inline bool contains_member(const TraceClassSet& s, const SympMatrix& m) {
    return std::binary_search(s.members.begin(), s.members.end(), m,
                              [](const SympMatrix& a, const SympMatrix& b) { return a.key() < b.key(); });
}

inline Verdict left_stable(const GroupCatalog& h, const TraceClassSet& s, const std::string& check) {
    for (const auto& x : h.elements())
        for (const auto& m : s.members)
            if (!contains_member(s, x * m))
                return {false, check, x.str() + " times " + m.str() + " leaves " + to_string(s.kind)};
    return {true, check, ""};
}

inline Verdict conjugation_stable(const GroupCatalog& h, const std::vector<std::size_t>& gens, const TraceClassSet& s,
                                  const std::string& check) {
    for (auto gi : gens) {
        const SympMatrix& n = h[gi];
        const SympMatrix ni = n.inverse();
        for (const auto& m : s.members)
            if (!contains_member(s, n * m * ni))
                return {false, check, "conjugating " + m.str() + " by " + n.str() + " leaves " + to_string(s.kind)};
    }
    return {true, check, ""};
}

}  // namespace detail

/// The stability statements for one selector:
/// C^ss nonempty and GSp-conjugation stable, C^ss conjugate into B (with explicit
/// conjugators), C_B stable under B-conjugation, U C_B in C_B, and U' C_B(0) in C_B(0).
inline std::vector<Verdict> verify_stability(const TraceClassContext& ctx, TraceSelector sel) {
    std::vector<Verdict> out;
    const auto l = ctx.modulus();
    const int g = ctx.genus();
    const std::string tag = " [" + sel.str() + "]";
    const auto css = build_trace_class(ctx, TraceKind::Css, sel);
    const auto cb = build_trace_class(ctx, TraceKind::CB, sel);

    if (g % static_cast<int>(l) == 0) {
        out.push_back({true, "Css nonempty" + tag, "not asserted: l divides 2g"});
    } else {
        Verdict v{!css.members.empty(), "Css nonempty" + tag, css.members.empty() ? "no semisimple split element" : ""};
        if (v.ok && !sel.window) {
            const auto w = semisimple_witness(g, l, sel.value);
            if (!detail::contains_member(css, w)) v = {false, v.check, "constructed witness " + w.str() + " is not in Css"};
        }
        out.push_back(v);
    }
    out.push_back(detail::conjugation_stable(ctx.gsp(), ctx.gsp_generators(), css, "Css stable under GSp conjugation" + tag));

    {
        // every class meeting Css meets B; then produce a conjugator for each such class
        Verdict v{true, "Css conjugate into B" + tag, ""};
        const auto& cls = ctx.classes();
        std::vector<std::optional<std::size_t>> b_member(cls.count());
        for (const auto& m : ctx.borel().elements()) {
            auto c = cls.class_of[ctx.gsp().require_index(m)];
            if (!b_member[c]) b_member[c] = ctx.gsp().require_index(m);
        }
        std::vector<bool> seen(cls.count(), false);
        for (const auto& m : css.members) {
            auto c = cls.class_of[ctx.gsp().require_index(m)];
            if (seen[c]) continue;
            seen[c] = true;
            if (!b_member[c]) {
                v = {false, v.check, m.str() + " has no conjugate in B"};
                break;
            }
            const SympMatrix& target = ctx.gsp()[*b_member[c]];
            bool found = false;
            for (const auto& n : ctx.gsp().elements())
                if (n * m == target * n) {
                    found = true;
                    break;
                }
            if (!found) {
                v = {false, v.check, "no conjugator from " + m.str() + " to " + target.str()};
                break;
            }
        }
        out.push_back(v);
    }

    out.push_back({!cb.members.empty(), "CB nonempty" + tag, cb.members.empty() ? "CB is empty" : ""});
    out.push_back(detail::conjugation_stable(ctx.borel(), ctx.borel_generators(), cb, "CB stable under B conjugation" + tag));
    out.push_back(detail::left_stable(ctx.unipotent(), cb, "U CB in CB" + tag));
    if (!sel.window && sel.is_zero())
        out.push_back(detail::left_stable(ctx.unipotent_scaled(), cb, "U' CB(0) in CB(0)"));
    return out;
}

/// Counting statements for one selector: C^ss in C in C0, the hat bounds, and
/// preimage of hatCB in B equal to U C_B.
inline std::vector<Verdict> verify_trace_counts(const TraceClassContext& ctx, TraceSelector sel) {
    std::vector<Verdict> out;
    const auto l = ctx.modulus();
    const int g = ctx.genus();
    const std::string tag = " [" + sel.str() + "]";
    const auto c0 = build_trace_class(ctx, TraceKind::C0, sel);
    const auto c = build_trace_class(ctx, TraceKind::C, sel);
    const auto css = build_trace_class(ctx, TraceKind::Css, sel);
    const auto cb = build_trace_class(ctx, TraceKind::CB, sel);
    const auto hat = build_trace_class(ctx, TraceKind::hatCB, sel);

    auto subset = [&](const TraceClassSet& a, const TraceClassSet& b) -> Verdict {
        const std::string check = to_string(a.kind) + " subset of " + to_string(b.kind) + tag;
        for (const auto& m : a.members)
            if (!detail::contains_member(b, m)) return {false, check, m.str()};
        return {true, check, ""};
    };
    out.push_back(subset(css, c));
    out.push_back(subset(c, c0));
    out.push_back(subset(cb, c));

    std::uint64_t width = 1;
    if (sel.window) width = static_cast<std::uint64_t>(2 * sel.value + 1);
    std::uint64_t cap = width;
    for (int i = 0; i < g; ++i) cap *= (l - 1);
    out.push_back({hat.size() <= cap, "#hatCB <= " + std::string(sel.window ? "(2z+1)" : "") + "(l-1)^g" + tag,
                   std::to_string(hat.size()) + " vs " + std::to_string(cap)});

    {
        Verdict v{true, "preimage of hatCB is U CB" + tag, ""};
        std::vector<SympMatrix> ucb;
        for (const auto& u : ctx.unipotent().elements())
            for (const auto& m : cb.members) ucb.push_back(u * m);
        detail::sort_unique(ucb);
        std::vector<SympMatrix> pre;
        for (const auto& m : ctx.borel().elements())
            if (detail::contains_member(hat, detail::torus_part(m))) pre.push_back(m);
        if (pre != ucb) v = {false, v.check, std::to_string(pre.size()) + " preimage elements vs " + std::to_string(ucb.size())};
        out.push_back(v);
    }

    if (!sel.window && sel.is_zero()) {
        const auto hatp = build_trace_class(ctx, TraceKind::hatCBprime, sel);
        std::uint64_t capp = 1;
        for (int i = 0; i < g - 1; ++i) capp *= (l - 1);
        out.push_back({hatp.size() <= capp, "#hatCB'(0) <= (l-1)^(g-1)",
                       std::to_string(hatp.size()) + " vs " + std::to_string(capp)});
        const auto hc0 = build_trace_class(ctx, TraceKind::hatC0, sel);
        out.push_back({hc0.size() * (l - 1) == c0.size(), "#hatC0(0) = #C0(0)/(l-1)",
                       std::to_string(hc0.size()) + " vs " + std::to_string(c0.size())});
    }
    return out;
}

/// Sum over t of #C0(l, t) equals #GSp.
inline Verdict verify_trace_partition(const TraceClassContext& ctx) {
    std::size_t sum = 0;
    for (auto n : c0_counts(ctx)) sum += n;
    return {sum == ctx.gsp().order(), "sum_t #C0 = #GSp", std::to_string(sum) + " vs " + std::to_string(ctx.gsp().order())};
}

}  // namespace symptrace
