#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "symptrace/intpoly.hpp"
#include "symptrace/sieve.hpp"

namespace symptrace {

enum class Theorem { T1, T2, T3i, T3ii };

inline Theorem parse_theorem(const std::string& s) {
    if (s == "1" || s == "T1") return Theorem::T1;
    if (s == "2" || s == "T2") return Theorem::T2;
    if (s == "3i" || s == "T3i") return Theorem::T3i;
    if (s == "3ii" || s == "T3ii") return Theorem::T3ii;
    throw Error("unknown theorem '" + s + "'");
}

inline std::string to_string(Theorem t) {
    switch (t) {
        case Theorem::T1: return "1";
        case Theorem::T2: return "2";
        case Theorem::T3i: return "3i";
        case Theorem::T3ii: return "3ii";
    }
    return "?";
}

using Rational = boost::rational<std::int64_t>;

/// value = x^x_exp * (log x)^log_exp
struct BoundExponents {
    Rational x_exp;
    Rational log_exp;
    friend bool operator==(const BoundExponents&, const BoundExponents&) = default;
};

/// Exponents of the upper bounds for pi_A(x, t).
/// T1: N = 2g^2+g+2 (t != 0) or 2g^2+g+1 (t = 0); x^(1-1/N) / (log x)^(1-2/N).
/// T2: N = g+2 (t != 0) or g+1 (t = 0); x^(1-1/N) / (log x)^(1-4/N).
inline BoundExponents bound_exponents(Theorem thm, int g, bool t_zero) {
    if (g < 1) throw Error("genus must be positive");
    std::int64_t n = 0, k = 0;
    switch (thm) {
        case Theorem::T1:
            n = 2 * g * g + g + (t_zero ? 1 : 2);
            k = 2;
            break;
        case Theorem::T2:
            n = g + (t_zero ? 1 : 2);
            k = 4;
            break;
        default:
            throw Error("exponent pairs exist only for theorems 1 and 2");
    }
    return {Rational(1) - Rational(1, n), -(Rational(1) - Rational(k, n))};
}

inline double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

/// Bound expression with implicit constant 1. For T3i / T3ii this is the
/// lower-bound threshold on |a_{1,p}| evaluated at p = x.
inline double bound_value(Theorem thm, int g, bool t_zero, double x, double eps = 0.1) {
    if (!(x > std::numbers::e)) throw Error("bound evaluation needs x > e");
    if (thm == Theorem::T3i) return std::pow(x, 1.0 / (2.0 * g * g + g + 1)) / std::pow(std::log(x), eps);
    if (thm == Theorem::T3ii) return std::pow(x, 1.0 / (g + 2.0) - eps);
    const auto e = bound_exponents(thm, g, t_zero);
    return std::pow(x, to_double(e.x_exp)) * std::pow(std::log(x), to_double(e.log_exp));
}

enum class ChebVariant { I, II, III };

/// Invariants of a Galois extension L/K used by the error-term evaluators.
struct ChebInvariants {
    double class_size = 0;   // #C
    double degree_LK = 0;    // [L:K]
    double degree_KQ = 0;    // [K:Q]
    std::optional<double> log_abs_dL;   // variant I
    std::optional<double> degree_LQ;    // variant I
    std::optional<double> modulus_M;    // variants II, III
    std::optional<double> class_count;  // #Gal(L/K)^#, variant III
};

struct ChebEstimate {
    double main_term;
    double error;
};

/// (#C/[L:K]) pi(x) and the error expression of the chosen variant, constant 1.
inline ChebEstimate cheb_error(ChebVariant v, const ChebInvariants& q, double x) {
    if (!(x > std::numbers::e)) throw Error("Chebotarev estimate needs x > e");
    if (q.class_size <= 0 || q.degree_LK <= 0 || q.degree_KQ <= 0) throw Error("invariants must be positive");
    if (x > 1e8) throw BudgetError("pi(x) budget: x <= 10^8");
    const double main = q.class_size / q.degree_LK * static_cast<double>(prime_pi(static_cast<std::uint64_t>(x)));
    const double rx = std::sqrt(x);
    auto need = [](const std::optional<double>& o, const char* name) {
        if (!o) throw Error(std::string("missing invariant: ") + name);
        if (*o <= 0) throw Error(std::string("invariant must be positive: ") + name);
        return *o;
    };
    switch (v) {
        case ChebVariant::I: {
            const double ld = need(q.log_abs_dL, "log|d_L|"), dl = need(q.degree_LQ, "[L:Q]");
            return {main, q.class_size * rx * q.degree_KQ * (ld / dl + std::log(x))};
        }
        case ChebVariant::II: {
            const double m = need(q.modulus_M, "M(L/K)");
            return {main, std::sqrt(q.class_size) * rx * q.degree_KQ * std::log(m * x)};
        }
        case ChebVariant::III: {
            const double m = need(q.modulus_M, "M(L/K)"), k = need(q.class_count, "#Gal(L/K)^#");
            return {main, std::sqrt(q.class_size) * std::sqrt(k / q.degree_LK) * rx * std::sqrt(q.degree_KQ) * std::log(m * x)};
        }
    }
    throw Error("unknown variant");
}

/// M(L/K) = 2 [L:K] |d_K|^(1/[K:Q]) prod_{p in P} p
inline double modulus_m(double degree_LK, const BigInt& abs_dK, int degree_KQ, const std::vector<std::uint64_t>& ramified) {
    if (degree_LK <= 0 || degree_KQ <= 0 || abs_dK <= 0) throw Error("invariants must be positive");
    double v = 2.0 * degree_LK * std::pow(abs_dK.convert_to<double>(), 1.0 / degree_KQ);
    for (auto p : ramified) v *= static_cast<double>(p);
    return v;
}

/// ([L:Q] - [K:Q]) sum log p + [L:Q] log [L:K]
inline double hensel_bound(std::int64_t degree_LQ, std::int64_t degree_KQ, std::int64_t degree_LK, const std::vector<std::uint64_t>& ramified) {
    if (degree_LQ <= 0 || degree_KQ <= 0 || degree_LK <= 0) throw Error("degrees must be positive");
    if (degree_LQ != degree_LK * degree_KQ) throw Error("inconsistent degrees: [L:Q] != [L:K][K:Q]");
    double s = 0;
    for (auto p : ramified) s += std::log(static_cast<double>(p));
    return static_cast<double>(degree_LQ - degree_KQ) * s + static_cast<double>(degree_LQ) * std::log(static_cast<double>(degree_LK));
}

}  // namespace symptrace
