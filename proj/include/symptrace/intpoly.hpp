#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symptrace/modpoly.hpp"

namespace symptrace {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Dense univariate polynomial over the integers, arbitrary precision,
/// coefficients low degree first and trimmed.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<std::int64_t> coeffs) {
        for (auto v : coeffs) c_.emplace_back(v);
        trim();
    }

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] BigInt coeff(int i) const {
        return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : BigInt(0);
    }
    [[nodiscard]] const BigInt& leading() const {
        if (c_.empty()) throw Error("zero polynomial has no leading coefficient");
        return c_.back();
    }
    [[nodiscard]] const std::vector<BigInt>& coeffs() const noexcept { return c_; }

    [[nodiscard]] BigInt eval(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    [[nodiscard]] IntPoly derivative() const {
        std::vector<BigInt> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned>(i));
        return IntPoly(std::move(d));
    }

    /// gcd of the coefficients (nonnegative); 0 for the zero polynomial.
    [[nodiscard]] BigInt content() const {
        BigInt g = 0;
        for (const auto& v : c_) g = boost::multiprecision::gcd(g, v);
        return g;
    }

    /// Content removed, leading coefficient made positive.
    [[nodiscard]] IntPoly primitive_part() const {
        if (is_zero()) return *this;
        BigInt g = content();
        if (leading() < 0) g = -g;
        std::vector<BigInt> r;
        r.reserve(c_.size());
        for (const auto& v : c_) r.push_back(v / g);
        return IntPoly(std::move(r));
    }

    /// Reduction modulo a prime l.
    [[nodiscard]] ModPoly mod(std::uint32_t l) const {
        std::vector<std::uint32_t> r;
        r.reserve(c_.size());
        for (const auto& v : c_) {
            BigInt m = v % l;
            if (m < 0) m += l;
            r.push_back(m.convert_to<std::uint32_t>());
        }
        return ModPoly::from_raw(l, std::move(r));
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(r));
    }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    friend std::ostream& operator<<(std::ostream& os, const IntPoly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (int i = p.degree(); i >= 0; --i) {
            BigInt v = p.c_[static_cast<std::size_t>(i)];
            if (v == 0) continue;
            if (v < 0) {
                os << (first ? "-" : " - ");
                v = -v;
            } else if (!first) {
                os << " + ";
            }
            first = false;
            if (v != 1 || i == 0) os << v;
            if (i >= 1) os << "X";
            if (i >= 2) os << "^" << i;
        }
        return os;
    }

    [[nodiscard]] std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<BigInt> c_;
};

namespace detail {

using RatPoly = std::vector<BigRational>;

inline void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly to_rational(const IntPoly& p) {
    RatPoly r;
    for (const auto& c : p.coeffs()) r.emplace_back(c);
    return r;
}

// Remainder of a by b over Q.
inline RatPoly rat_rem(RatPoly a, const RatPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        BigRational coef = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= coef * b[j];
        a.pop_back();
        trim(a);
    }
    return a;
}

// Quotient and remainder of a by b over Q.
inline std::pair<RatPoly, RatPoly> rat_divmod(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) return {{}, a};
    RatPoly q(a.size() - b.size() + 1);
    while (a.size() >= b.size() && !a.empty()) {
        BigRational coef = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = coef;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= coef * b[j];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline IntPoly clear_denominators(const RatPoly& p) {
    BigInt lcm = 1;
    for (const auto& c : p) {
        BigInt d = boost::multiprecision::denominator(c);
        lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    std::vector<BigInt> r;
    for (const auto& c : p) r.push_back(boost::multiprecision::numerator(c) * (lcm / boost::multiprecision::denominator(c)));
    return IntPoly(std::move(r));
}

}  // namespace detail

/// Primitive gcd over Z[X] with positive leading coefficient.
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    auto x = detail::to_rational(a), y = detail::to_rational(b);
    while (!y.empty()) {
        auto r = detail::rat_rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return detail::clear_denominators(x).primitive_part();
}

/// Exact quotient a / b; throws if b does not divide a in Z[X].
inline IntPoly exact_divide(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw Error("division by the zero polynomial");
    auto [q, r] = detail::rat_divmod(detail::to_rational(a), detail::to_rational(b));
    if (!r.empty()) throw Error("polynomial division is not exact");
    std::vector<BigInt> out;
    for (const auto& c : q) {
        if (boost::multiprecision::denominator(c) != 1) throw Error("quotient is not integral");
        out.push_back(boost::multiprecision::numerator(c));
    }
    return IntPoly(std::move(out));
}

/// Product of the distinct irreducible factors of p: p / gcd(p, p'),
/// content 1 and positive leading coefficient.
inline IntPoly squarefree_radical(const IntPoly& p) {
    if (p.is_zero()) throw Error("radical of the zero polynomial is undefined");
    IntPoly pp = p.primitive_part();
    if (pp.degree() <= 0) return IntPoly{1};
    return exact_divide(pp, gcd(pp, pp.derivative())).primitive_part();
}

namespace detail {
inline BigRational rat_pow(const BigRational& b, long e) {
    return BigRational(boost::multiprecision::pow(boost::multiprecision::numerator(b), static_cast<unsigned>(e)),
                       boost::multiprecision::pow(boost::multiprecision::denominator(b), static_cast<unsigned>(e)));
}
}  // namespace detail

/// Resultant via the Euclidean recurrence over Q:
/// res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) res(b, r), r = a mod b.
inline BigInt resultant(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    auto x = detail::to_rational(a), y = detail::to_rational(b);
    BigRational acc = 1;
    while (true) {
        const auto dx = static_cast<long>(x.size()) - 1, dy = static_cast<long>(y.size()) - 1;
        if (dy == 0) {
            acc *= detail::rat_pow(y[0], dx);
            break;
        }
        if (dx == 0) {
            acc *= detail::rat_pow(x[0], dy);
            break;
        }
        auto r = detail::rat_rem(x, y);
        if (r.empty()) return 0;
        const auto dr = static_cast<long>(r.size()) - 1;
        if ((dx * dy) % 2 != 0) acc = -acc;
        acc *= detail::rat_pow(y.back(), dx - dr);
        x = std::move(y);
        y = std::move(r);
    }
    if (boost::multiprecision::denominator(acc) != 1) throw Error("resultant is not integral");
    return boost::multiprecision::numerator(acc);
}

/// disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p).
inline BigInt discriminant(const IntPoly& p) {
    const int n = p.degree();
    if (n < 2) throw Error("discriminant requires degree at least 2");
    BigInt r = resultant(p, p.derivative());
    if (r % p.leading() != 0) throw Error("discriminant normalization failed");
    r /= p.leading();
    if ((n * (n - 1) / 2) % 2 != 0) r = -r;
    return r;
}

/// True iff q mod l has deg q distinct roots in F_l.
inline bool splits_into_distinct_linear(const IntPoly& q, std::uint32_t l) {
    if (q.is_zero()) throw Error("zero polynomial");
    if (q.leading() % l == 0) throw Error("bad reduction of polynomial");
    ModPoly m = q.mod(l);
    auto roots = roots_in_fl(m);
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (i == 0 || roots[i] != roots[i - 1]) ++distinct;
    return distinct == static_cast<std::size_t>(q.degree());
}

}  // namespace symptrace
