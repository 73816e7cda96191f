#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "symptrace/fp.hpp"

namespace symptrace {

/// Dense univariate polynomial over F_l, coefficients stored low degree first.
/// The coefficient vector is kept trimmed so the leading coefficient is nonzero.
class ModPoly {
public:
    explicit ModPoly(std::uint32_t modulus) : modulus_(modulus) { check_modulus(); }

    ModPoly(std::uint32_t modulus, const std::vector<std::int64_t>& coeffs) : modulus_(modulus) {
        check_modulus();
        c_.reserve(coeffs.size());
        for (auto v : coeffs) c_.push_back(detail::reduce(v, modulus_));
        trim();
    }

    ModPoly(std::uint32_t modulus, std::initializer_list<std::int64_t> coeffs)
        : ModPoly(modulus, std::vector<std::int64_t>(coeffs)) {}

    /// X - r
    static ModPoly linear(Fp root) {
        return from_raw(root.modulus(), {root.is_zero() ? 0U : root.modulus() - root.value(), 1U});
    }

    static ModPoly constant(Fp c) { return from_raw(c.modulus(), {c.value()}); }

    static ModPoly from_raw(std::uint32_t modulus, std::vector<std::uint32_t> coeffs) {
        ModPoly p(modulus);
        for (auto& v : coeffs) v %= modulus;
        p.c_ = std::move(coeffs);
        p.trim();
        return p;
    }

    [[nodiscard]] std::uint32_t modulus() const noexcept { return modulus_; }
    /// Degree, or -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] Fp coeff(int i) const {
        return Fp(i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0, modulus_);
    }
    [[nodiscard]] Fp leading() const { return coeff(degree()); }
    [[nodiscard]] const std::vector<std::uint32_t>& raw() const noexcept { return c_; }

    [[nodiscard]] Fp eval(Fp x) const {
        std::uint32_t acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = detail::addmod(detail::mulmod(acc, x.value(), modulus_), *it, modulus_);
        return Fp(acc, modulus_);
    }

    [[nodiscard]] ModPoly derivative() const {
        std::vector<std::uint32_t> d;
        for (std::size_t i = 1; i < c_.size(); ++i)
            d.push_back(detail::mulmod(static_cast<std::uint32_t>(i % modulus_), c_[i], modulus_));
        return from_raw(modulus_, std::move(d));
    }

    /// Scales to a monic polynomial; the zero polynomial is returned unchanged.
    [[nodiscard]] ModPoly monic() const {
        if (is_zero()) return *this;
        std::uint32_t inv = detail::invmod(c_.back(), modulus_);
        std::vector<std::uint32_t> d(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) d[i] = detail::mulmod(c_[i], inv, modulus_);
        return from_raw(modulus_, std::move(d));
    }

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        std::vector<std::uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = detail::addmod(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0, a.modulus_);
        return from_raw(a.modulus_, std::move(r));
    }

    friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        std::vector<std::uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = detail::submod(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0, a.modulus_);
        return from_raw(a.modulus_, std::move(r));
    }

    friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        if (a.is_zero() || b.is_zero()) return ModPoly(a.modulus_);
        std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a.c_[i]) * b.c_[j]) % a.modulus_;
        std::vector<std::uint32_t> r(acc.begin(), acc.end());
        return from_raw(a.modulus_, std::move(r));
    }

    friend ModPoly operator*(const ModPoly& a, Fp s) {
        std::vector<std::uint32_t> r(a.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = detail::mulmod(a.c_[i], s.value(), a.modulus_);
        return from_raw(a.modulus_, std::move(r));
    }

    /// Euclidean division; throws on a zero divisor.
    [[nodiscard]] std::pair<ModPoly, ModPoly> divmod(const ModPoly& d) const {
        same_field(d);
        if (d.is_zero()) throw Error("division by the zero polynomial");
        if (degree() < d.degree()) return {ModPoly(modulus_), *this};
        std::vector<std::uint32_t> rem = c_;
        std::vector<std::uint32_t> quo(c_.size() - d.c_.size() + 1, 0);
        std::uint32_t inv = detail::invmod(d.c_.back(), modulus_);
        for (std::size_t k = quo.size(); k-- > 0;) {
            std::uint32_t coef = detail::mulmod(rem[k + d.c_.size() - 1], inv, modulus_);
            quo[k] = coef;
            if (coef == 0) continue;
            for (std::size_t j = 0; j < d.c_.size(); ++j)
                rem[k + j] = detail::submod(rem[k + j], detail::mulmod(coef, d.c_[j], modulus_), modulus_);
        }
        return {from_raw(modulus_, std::move(quo)), from_raw(modulus_, std::move(rem))};
    }

    friend ModPoly operator/(const ModPoly& a, const ModPoly& b) { return a.divmod(b).first; }
    friend ModPoly operator%(const ModPoly& a, const ModPoly& b) { return a.divmod(b).second; }

    friend bool operator==(const ModPoly& a, const ModPoly& b) noexcept {
        return a.modulus_ == b.modulus_ && a.c_ == b.c_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ModPoly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (int i = p.degree(); i >= 0; --i) {
            auto v = p.c_[static_cast<std::size_t>(i)];
            if (v == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (v != 1 || i == 0) os << v;
            if (i >= 1) os << "X";
            if (i >= 2) os << "^" << i;
        }
        return os;
    }

private:
    void check_modulus() const {
        if (modulus_ < 3 || modulus_ >= (1U << 31U) || !detail::is_prime_u32(modulus_))
            throw Error("polynomial modulus must be an odd prime below 2^31");
    }
    void same_field(const ModPoly& o) const {
        if (modulus_ != o.modulus_) throw Error("mixed polynomial moduli");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::uint32_t modulus_;
    std::vector<std::uint32_t> c_;
};

/// Monic gcd; gcd(0, 0) is 0.
inline ModPoly gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// base^e mod m
inline ModPoly powmod(ModPoly base, std::uint64_t e, const ModPoly& m) {
    ModPoly result = ModPoly::constant(Fp(1, m.modulus())) % m;
    base = base % m;
    while (e != 0) {
        if (e & 1U) result = (result * base) % m;
        base = (base * base) % m;
        e >>= 1U;
    }
    return result;
}

/// True iff p has no repeated factor over the algebraic closure of F_l.
/// A nonconstant polynomial with identically vanishing derivative is an l-th
/// power composition and therefore not squarefree.
inline bool is_squarefree(const ModPoly& p) {
    if (p.is_zero()) throw Error("squarefreeness of the zero polynomial is undefined");
    if (p.degree() <= 0) return true;
    auto d = p.derivative();
    if (d.is_zero()) return false;
    return gcd(p, d).degree() == 0;
}

namespace detail {

// Splits a squarefree product of distinct linear factors into its roots (Cantor-Zassenhaus).
inline void split_linear(const ModPoly& h, std::vector<Fp>& out) {
    const auto l = h.modulus();
    if (h.degree() <= 0) return;
    if (h.degree() == 1) {
        auto m = h.monic();
        out.push_back(-m.coeff(0));
        return;
    }
    for (std::uint32_t a = 0;; ++a) {
        // gcd(h, (X + a)^((l-1)/2) - 1) is a proper factor for most shifts a.
        ModPoly shifted = ModPoly::from_raw(l, {a % l, 1U});
        ModPoly w = powmod(shifted, (l - 1) / 2, h) - ModPoly::constant(Fp(1, l));
        ModPoly f = gcd(h, w);
        if (f.degree() > 0 && f.degree() < h.degree()) {
            split_linear(f, out);
            split_linear(h / f, out);
            return;
        }
    }
}

constexpr std::uint32_t kRootScanLimit = 1U << 13U;

}  // namespace detail

/// Every root in F_l with multiplicity, ascending.
inline std::vector<Fp> roots_in_fl(const ModPoly& p) {
    if (p.is_zero()) throw Error("undefined root set");
    const auto l = p.modulus();
    std::vector<Fp> distinct;
    if (l <= detail::kRootScanLimit) {
        for (std::uint32_t r = 0; r < l; ++r)
            if (p.eval(Fp(r, l)).is_zero()) distinct.emplace_back(r, l);
    } else if (p.degree() > 0) {
        ModPoly x = ModPoly::from_raw(l, {0U, 1U});
        ModPoly h = gcd(p, powmod(x, l, p) - x);
        detail::split_linear(h, distinct);
        std::sort(distinct.begin(), distinct.end());
    }
    std::vector<Fp> roots;
    for (Fp r : distinct) {
        ModPoly rest = p;
        ModPoly lin = ModPoly::linear(r);
        while (rest.degree() >= 1) {
            auto [q, rem] = rest.divmod(lin);
            if (!rem.is_zero()) break;
            roots.push_back(r);
            rest = std::move(q);
        }
    }
    return roots;
}

}  // namespace symptrace
