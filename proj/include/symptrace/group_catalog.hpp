#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symptrace/intpoly.hpp"
#include "symptrace/parallel.hpp"
#include "symptrace/symp_matrix.hpp"

namespace symptrace {

enum class GroupKind { GSp, B, U, Uprime, T, Custom };

inline std::string to_string(GroupKind k) {
    switch (k) {
        case GroupKind::GSp: return "GSp";
        case GroupKind::B: return "B";
        case GroupKind::U: return "U";
        case GroupKind::Uprime: return "Uprime";
        case GroupKind::T: return "T";
        case GroupKind::Custom: return "custom";
    }
    return "?";
}

/// Outcome of a verification pass. `witness` names the first counterexample.
struct Verdict {
    bool ok = true;
    std::string check;
    std::string witness;
    explicit operator bool() const noexcept { return ok; }
};

/// Exhaustive list of group elements sorted by their base-l key.
class GroupCatalog {
public:
    GroupCatalog(GroupKind kind, int g, std::uint32_t l, std::vector<SympMatrix> elements)
        : kind_(kind), g_(g), l_(l), elems_(std::move(elements)) {
        if (!detail::key_fits(g, l)) throw BudgetError("matrix keys do not fit in 64 bits");
        std::sort(elems_.begin(), elems_.end(), [](const SympMatrix& a, const SympMatrix& b) { return a.key() < b.key(); });
        keys_.reserve(elems_.size());
        for (const auto& m : elems_) {
            if (m.genus() != g || m.modulus() != l) throw Error("catalog element from a different group");
            keys_.push_back(m.key());
        }
    }

    [[nodiscard]] GroupKind kind() const noexcept { return kind_; }
    [[nodiscard]] int genus() const noexcept { return g_; }
    [[nodiscard]] std::uint32_t modulus() const noexcept { return l_; }
    [[nodiscard]] std::size_t order() const noexcept { return elems_.size(); }
    [[nodiscard]] const std::vector<SympMatrix>& elements() const noexcept { return elems_; }
    [[nodiscard]] const SympMatrix& operator[](std::size_t i) const { return elems_[i]; }

    [[nodiscard]] std::optional<std::size_t> index_of(const SympMatrix& m) const {
        auto it = std::lower_bound(keys_.begin(), keys_.end(), m.key());
        if (it == keys_.end() || *it != m.key()) return std::nullopt;
        return static_cast<std::size_t>(it - keys_.begin());
    }
    [[nodiscard]] bool contains(const SympMatrix& m) const { return index_of(m).has_value(); }

    [[nodiscard]] std::size_t require_index(const SympMatrix& m) const {
        auto i = index_of(m);
        if (!i) throw Error("element " + m.str() + " missing from " + to_string(kind_) + " catalog");
        return *i;
    }

    /// Copy with element i dropped (for building counterexamples).
    [[nodiscard]] GroupCatalog without(std::size_t i) const {
        auto copy = elems_;
        copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(i));
        return GroupCatalog(GroupKind::Custom, g_, l_, std::move(copy));
    }

private:
    GroupKind kind_;
    int g_;
    std::uint32_t l_;
    std::vector<SympMatrix> elems_;
    std::vector<std::uint64_t> keys_;
};

/// Closed-form orders of the groups in the subgroup lattice.
namespace order_formula {

inline BigInt gsp(int g, std::uint32_t l) {
    BigInt L = l, r = L - 1;
    for (int i = 1; i <= g; ++i) r *= (boost::multiprecision::pow(L, 2 * i) - 1) * boost::multiprecision::pow(L, 2 * i - 1);
    return r;
}
inline BigInt pgsp(int g, std::uint32_t l) { return gsp(g, l) / (l - 1); }
inline BigInt borel(int g, std::uint32_t l) {
    return boost::multiprecision::pow(BigInt(l), g * g) * boost::multiprecision::pow(BigInt(l - 1), g + 1);
}
inline BigInt unipotent(int g, std::uint32_t l) { return boost::multiprecision::pow(BigInt(l), g * g); }
inline BigInt unipotent_scaled(int g, std::uint32_t l) { return unipotent(g, l) * (l - 1); }
inline BigInt torus(int g, std::uint32_t l) { return boost::multiprecision::pow(BigInt(l - 1), g + 1); }

inline BigInt of(GroupKind k, int g, std::uint32_t l) {
    switch (k) {
        case GroupKind::GSp: return gsp(g, l);
        case GroupKind::B: return borel(g, l);
        case GroupKind::U: return unipotent(g, l);
        case GroupKind::Uprime: return unipotent_scaled(g, l);
        case GroupKind::T: return torus(g, l);
        case GroupKind::Custom: break;
    }
    throw Error("no order formula for a custom catalog");
}

}  // namespace order_formula

/// Every symplectic similitude, found by scanning all l^(4g^2) matrices.
/// Budget: (g = 1, l <= 13) or (g = 2, l = 3).
inline GroupCatalog enumerate_gsp(int g, std::uint32_t l, unsigned workers = 1) {
    if (!((g == 1 && l <= 13) || (g == 2 && l == 3)) || l < 3 || !detail::is_prime_u32(l))
        throw BudgetError("enumeration budget: GSp enumeration supports g = 1 with l <= 13 or g = 2 with l = 3");
    const int nn = 4 * g * g;
    const int lead = g == 1 ? 1 : 2;  // leading row-major digits fixed per shard
    std::size_t shards = 1;
    for (int i = 0; i < lead; ++i) shards *= l;

    std::vector<std::vector<SympMatrix>> found(shards);
    parallel_shards(shards, workers, [&](std::size_t shard) {
        std::vector<std::uint32_t> e(static_cast<std::size_t>(nn), 0);
        std::size_t s = shard;
        for (int i = lead - 1; i >= 0; --i) {
            e[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(s % l);
            s /= l;
        }
        while (true) {
            if (auto mu = detail::multiplicator_of(e.data(), g, l))
                found[shard].push_back(SympMatrix::unchecked(g, l, e, *mu));
            int pos = nn - 1;
            while (pos >= lead && ++e[static_cast<std::size_t>(pos)] == l) e[static_cast<std::size_t>(pos--)] = 0;
            if (pos < lead) break;
        }
    });
    std::vector<SympMatrix> all;
    for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
    return GroupCatalog(GroupKind::GSp, g, l, std::move(all));
}

namespace detail {

// Calls fn(values) for every vector in {choices}^count, last position fastest.
template <typename Fn>
void for_each_tuple(const std::vector<std::uint32_t>& choices, int count, Fn&& fn) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(count), 0);
    std::vector<std::uint32_t> vals(static_cast<std::size_t>(count), choices.empty() ? 0 : choices[0]);
    if (choices.empty() && count > 0) return;
    while (true) {
        fn(vals);
        int pos = count - 1;
        while (pos >= 0) {
            auto p = static_cast<std::size_t>(pos);
            if (++idx[p] < choices.size()) {
                vals[p] = choices[idx[p]];
                break;
            }
            idx[p] = 0;
            vals[p] = choices[0];
            --pos;
        }
        if (pos < 0) return;
    }
}

inline std::vector<std::uint32_t> all_residues(std::uint32_t l) {
    std::vector<std::uint32_t> v(l);
    std::iota(v.begin(), v.end(), 0U);
    return v;
}

inline std::vector<std::uint32_t> units(std::uint32_t l) {
    std::vector<std::uint32_t> v(l - 1);
    std::iota(v.begin(), v.end(), 1U);
    return v;
}

// [[A, mu^-1 A S], [0, mu (A^t)^-1]]
inline SympMatrix borel_element(const FpMatrix& a, std::uint32_t mu, const FpMatrix& s) {
    const int g = a.dim();
    const std::uint32_t l = a.modulus();
    auto a_inv = a.inverse();
    if (!a_inv) throw Error("diagonal block is singular");
    FpMatrix upper = a * s;
    FpMatrix lower = a_inv->transpose();
    const std::uint32_t mu_inv = invmod(mu, l);
    std::vector<std::uint32_t> e(static_cast<std::size_t>(4 * g * g), 0);
    const int n = 2 * g;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            e[static_cast<std::size_t>(i * n + j)] = a(i, j);
            e[static_cast<std::size_t>(i * n + g + j)] = mulmod(mu_inv, upper(i, j), l);
            e[static_cast<std::size_t>((g + i) * n + g + j)] = mulmod(mu, lower(i, j), l);
        }
    return SympMatrix::make_or_throw(g, l, e);
}

}  // namespace detail

/// B, U, U' or T built from its block parametrization (A, mu, S symmetric).
inline GroupCatalog build_subgroup(GroupKind kind, int g, std::uint32_t l) {
    if (g < 1 || g > 2) throw Error("subgroup construction supports g = 1, 2");
    if (l < 3 || !detail::is_prime_u32(l)) throw Error("modulus must be an odd prime");
    if (kind == GroupKind::GSp || kind == GroupKind::Custom) throw Error("build_subgroup needs B, U, Uprime or T");
    if (order_formula::of(kind, g, l) > 4'000'000 || !detail::key_fits(g, l))
        throw BudgetError("enumeration budget: subgroup too large");

    const int above = g * (g - 1) / 2;   // strictly upper entries of A
    const int sym = g * (g + 1) / 2;     // free entries of S
    const auto residues = detail::all_residues(l);
    const auto units = detail::units(l);
    std::vector<SympMatrix> out;

    auto symmetric = [&](const std::vector<std::uint32_t>& v) {
        FpMatrix s(g, l);
        int k = 0;
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                s(i, j) = v[static_cast<std::size_t>(k)];
                s(j, i) = v[static_cast<std::size_t>(k++)];
            }
        return s;
    };
    auto upper_part = [&](FpMatrix& a, const std::vector<std::uint32_t>& v) {
        int k = 0;
        for (int i = 0; i < g; ++i)
            for (int j = i + 1; j < g; ++j) a(i, j) = v[static_cast<std::size_t>(k++)];
    };
    const FpMatrix zero_s(g, l);

    switch (kind) {
        case GroupKind::B:
            detail::for_each_tuple(units, g, [&](const auto& diag) {
                detail::for_each_tuple(residues, above, [&](const auto& up) {
                    FpMatrix a(g, l);
                    for (int i = 0; i < g; ++i) a(i, i) = diag[static_cast<std::size_t>(i)];
                    upper_part(a, up);
                    for (auto mu : units)
                        detail::for_each_tuple(residues, sym, [&](const auto& sv) {
                            out.push_back(detail::borel_element(a, mu, symmetric(sv)));
                        });
                });
            });
            break;
        case GroupKind::U:
        case GroupKind::Uprime: {
            const std::vector<std::uint32_t> one{1U};
            const auto& lambdas = kind == GroupKind::U ? one : units;
            for (auto lambda : lambdas)
                detail::for_each_tuple(residues, above, [&](const auto& up) {
                    FpMatrix a(g, l);
                    upper_part(a, up);
                    for (int i = 0; i < g; ++i) a(i, i) = 1;
                    // lambda * unipotent, with mu = d(A)^2 = lambda^2
                    FpMatrix scaled(g, l);
                    for (int i = 0; i < g; ++i)
                        for (int j = 0; j < g; ++j) scaled(i, j) = detail::mulmod(a(i, j), lambda, l);
                    const std::uint32_t mu = detail::mulmod(lambda, lambda, l);
                    detail::for_each_tuple(residues, sym, [&](const auto& sv) {
                        out.push_back(detail::borel_element(scaled, mu, symmetric(sv)));
                    });
                });
            break;
        }
        case GroupKind::T:
            detail::for_each_tuple(units, g, [&](const auto& diag) {
                FpMatrix a(g, l);
                for (int i = 0; i < g; ++i) a(i, i) = diag[static_cast<std::size_t>(i)];
                for (auto mu : units) out.push_back(detail::borel_element(a, mu, zero_s));
            });
            break;
        default:
            break;
    }
    return GroupCatalog(kind, g, l, std::move(out));
}

/// Identity, inverses and closure. With no sample size every pair is checked
/// (catalog order must be at most 10^6); otherwise `sample_pairs` random pairs.
inline Verdict verify_group_axioms(const GroupCatalog& cat, std::optional<std::size_t> sample_pairs = std::nullopt,
                                   std::uint64_t seed = 0x5eed) {
    Verdict v{true, "group axioms (" + to_string(cat.kind()) + ")", ""};
    if (!sample_pairs && cat.order() > 1'000'000) throw BudgetError("exhaustive axiom check limited to order 10^6");
    if (cat.order() == 0) return {false, v.check, "empty catalog"};
    if (!cat.contains(SympMatrix::identity(cat.genus(), cat.modulus()))) return {false, v.check, "identity missing"};
    for (const auto& m : cat.elements())
        if (!cat.contains(m.inverse())) return {false, v.check, "inverse of " + m.str() + " missing"};
    auto fail = [&](const SympMatrix& a, const SympMatrix& b) {
        return Verdict{false, v.check, "product of " + a.str() + " and " + b.str() + " missing"};
    };
    const auto& el = cat.elements();
    if (!sample_pairs) {
        for (const auto& a : el)
            for (const auto& b : el)
                if (!cat.contains(a * b)) return fail(a, b);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
        for (std::size_t k = 0; k < *sample_pairs; ++k) {
            const auto& a = el[pick(rng)];
            const auto& b = el[pick(rng)];
            if (!cat.contains(a * b)) return fail(a, b);
        }
    }
    return v;
}

/// True iff h^-1 n h stays in n for every h; n must be contained in h.
inline Verdict verify_normal(const GroupCatalog& n, const GroupCatalog& h) {
    for (const auto& x : n.elements())
        if (!h.contains(x)) throw Error("subgroup " + to_string(n.kind()) + " is not contained in " + to_string(h.kind()));
    const std::string check = to_string(n.kind()) + " normal in " + to_string(h.kind());
    for (const auto& y : h.elements()) {
        const SympMatrix yi = y.inverse();
        for (const auto& x : n.elements())
            if (!n.contains(yi * x * y))
                return {false, check, "conjugating " + x.str() + " by " + y.str() + " leaves the subgroup"};
    }
    return {true, check, ""};
}

/// Left-coset labels of n in h: label[i] identifies the coset h[i] n.
struct CosetLabels {
    std::vector<std::uint32_t> label;
    std::vector<std::size_t> representative;  // first element of each coset
};

inline CosetLabels coset_labels(const GroupCatalog& h, const GroupCatalog& n) {
    constexpr std::uint32_t kUnset = UINT32_MAX;
    CosetLabels out{std::vector<std::uint32_t>(h.order(), kUnset), {}};
    for (std::size_t i = 0; i < h.order(); ++i) {
        if (out.label[i] != kUnset) continue;
        const auto c = static_cast<std::uint32_t>(out.representative.size());
        out.representative.push_back(i);
        for (const auto& x : n.elements()) out.label[h.require_index(h[i] * x)] = c;
    }
    return out;
}

/// T -> B -> B/U is a bijection and the quotient is commutative; the coarser
/// quotient B/U' is then checked for commutativity too.
inline Verdict quotient_iso_T(const GroupCatalog& b, const GroupCatalog& u, const GroupCatalog& t,
                              const GroupCatalog* uprime = nullptr) {
    const std::string check = "B/U isomorphic to T";
    const auto cos = coset_labels(b, u);
    if (cos.representative.size() != t.order())
        return {false, check, "coset count " + std::to_string(cos.representative.size()) + " differs from #T " + std::to_string(t.order())};
    std::vector<bool> hit(cos.representative.size(), false);
    for (const auto& x : t.elements()) {
        auto idx = b.index_of(x);
        if (!idx) return {false, check, "torus element " + x.str() + " outside B"};
        auto c = cos.label[*idx];
        if (hit[c]) return {false, check, "two torus elements share the coset of " + x.str()};
        hit[c] = true;
    }
    auto commutative = [&](const CosetLabels& cl, const std::string& what) -> Verdict {
        for (auto i : cl.representative)
            for (auto j : cl.representative) {
                const auto ab = cl.label[b.require_index(b[i] * b[j])];
                const auto ba = cl.label[b.require_index(b[j] * b[i])];
                if (ab != ba) return {false, what, "cosets of " + b[i].str() + " and " + b[j].str() + " do not commute"};
            }
        return {true, what, ""};
    };
    if (auto v = commutative(cos, check); !v) return v;
    if (uprime != nullptr) {
        if (auto v = commutative(coset_labels(b, *uprime), "B/U' abelian"); !v) return v;
    }
    return {true, check, ""};
}

inline Verdict quotient_iso_T(int g, std::uint32_t l) {
    auto b = build_subgroup(GroupKind::B, g, l);
    auto u = build_subgroup(GroupKind::U, g, l);
    auto t = build_subgroup(GroupKind::T, g, l);
    auto up = build_subgroup(GroupKind::Uprime, g, l);
    return quotient_iso_T(b, u, t, &up);
}

namespace detail {

// Marks the subgroup generated by gens (closure under right multiplication).
inline std::size_t generated(const GroupCatalog& cat, const std::vector<std::size_t>& gens, std::vector<bool>& in) {
    in.assign(cat.order(), false);
    std::vector<std::size_t> queue{cat.require_index(SympMatrix::identity(cat.genus(), cat.modulus()))};
    in[queue[0]] = true;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (auto s : gens) {
            auto k = cat.require_index(cat[queue[head]] * cat[s]);
            if (!in[k]) {
                in[k] = true;
                queue.push_back(k);
            }
        }
    return queue.size();
}

}  // namespace detail

/// A small generating set, chosen greedily from a seeded shuffle of the elements.
inline std::vector<std::size_t> generating_set(const GroupCatalog& cat, std::uint64_t seed = 0x9e3779b97f4a7c15ULL) {
    std::vector<std::size_t> order(cat.order());
    std::iota(order.begin(), order.end(), 0U);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> gens;
    std::vector<bool> in;
    std::size_t size = detail::generated(cat, gens, in);
    for (auto i : order) {
        if (size == cat.order()) break;
        if (in[i]) continue;
        gens.push_back(i);
        size = detail::generated(cat, gens, in);
    }
    return gens;
}

/// Exhaustive closure proof with |G| * |S| products: the identity and inverses are
/// present, x s lies in the catalog for every element x and generator s, and the
/// generators reach every element from the identity.
inline Verdict verify_closure_by_generators(const GroupCatalog& cat) {
    Verdict v{true, "group axioms (" + to_string(cat.kind()) + ", closure over generators)", ""};
    if (cat.order() == 0) return {false, v.check, "empty catalog"};
    const auto id = cat.index_of(SympMatrix::identity(cat.genus(), cat.modulus()));
    if (!id) return {false, v.check, "identity missing"};
    for (const auto& m : cat.elements())
        if (!cat.contains(m.inverse())) return {false, v.check, "inverse of " + m.str() + " missing"};
    std::vector<std::size_t> gens;
    try {
        gens = generating_set(cat);
    } catch (const Error&) {
        // fall through to the explicit scan below for a witness
        gens.resize(cat.order());
        std::iota(gens.begin(), gens.end(), 0U);
    }
    std::vector<bool> in(cat.order(), false);
    std::vector<std::size_t> queue{*id};
    in[*id] = true;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (auto s : gens) {
            const auto k = cat.index_of(cat[queue[head]] * cat[s]);
            if (!k) return {false, v.check, "product of " + cat[queue[head]].str() + " and " + cat[s].str() + " missing"};
            if (!in[*k]) {
                in[*k] = true;
                queue.push_back(*k);
            }
        }
    if (queue.size() != cat.order())
        return {false, v.check, std::to_string(queue.size()) + " of " + std::to_string(cat.order()) + " elements reached"};
    v.witness = std::to_string(gens.size()) + " generators";
    return v;
}

struct ClassPartition {
    std::vector<std::uint32_t> class_of;       // per catalog element
    std::vector<std::size_t> representatives;  // smallest-key element of each class
    std::vector<std::size_t> sizes;
    [[nodiscard]] std::size_t count() const noexcept { return representatives.size(); }
};

/// Conjugacy classes by orbit partition under conjugation by a generating set.
inline ClassPartition conjugacy_classes(const GroupCatalog& cat) {
    if (cat.order() > 2'000'000) throw BudgetError("enumeration budget: class partition limited to order 2*10^6");
    constexpr std::uint32_t kUnset = UINT32_MAX;
    const auto gens = generating_set(cat);
    std::vector<SympMatrix> gm, gi;
    for (auto s : gens) {
        gm.push_back(cat[s]);
        gi.push_back(cat[s].inverse());
    }
    ClassPartition out{std::vector<std::uint32_t>(cat.order(), kUnset), {}, {}};
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < cat.order(); ++i) {
        if (out.class_of[i] != kUnset) continue;
        const auto c = static_cast<std::uint32_t>(out.representatives.size());
        out.representatives.push_back(i);
        queue.assign(1, i);
        out.class_of[i] = c;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (std::size_t s = 0; s < gm.size(); ++s) {
                auto k = cat.require_index(gm[s] * cat[queue[head]] * gi[s]);
                if (out.class_of[k] == kUnset) {
                    out.class_of[k] = c;
                    queue.push_back(k);
                }
            }
        out.sizes.push_back(queue.size());
    }
    return out;
}

/// Number of conjugacy classes of the quotient by scalars: orbits of the
/// scalar group acting on the classes by multiplication.
inline std::size_t projective_class_count(const GroupCatalog& cat, const ClassPartition& classes) {
    const auto l = cat.modulus();
    std::vector<std::size_t> parent(classes.count());
    std::iota(parent.begin(), parent.end(), 0U);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t c = 0; c < classes.count(); ++c)
        for (std::uint32_t lambda = 2; lambda < l; ++lambda) {
            auto k = cat.index_of(cat[classes.representatives[c]].scaled(lambda));
            if (!k) throw Error("catalog is not stable under scalars");
            auto a = find(c), b = find(classes.class_of[*k]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::size_t roots = 0;
    for (std::size_t c = 0; c < parent.size(); ++c)
        if (find(c) == c) ++roots;
    return roots;
}

/// Scalar matrices contained in the catalog.
inline std::size_t scalar_count(const GroupCatalog& cat) {
    std::size_t n = 0;
    for (const auto& m : cat.elements())
        if (m.is_scalar()) ++n;
    return n;
}

}  // namespace symptrace
