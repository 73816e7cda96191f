#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symptrace/curve.hpp"

namespace symptrace {

/// P(X) = X^2g + a1 X^(2g-1) + ... + ag X^g + p a(g-1) X^(g-1) + ... + p^g.
/// Construction checks |a1| < 2g sqrt(p) exactly and | |alpha|^2 - p | < 1e-6 p
/// for every complex root alpha.
class WeilPolynomial {
public:
    WeilPolynomial(int g, std::uint64_t p, std::vector<std::int64_t> a) : g_(g), p_(p), a_(std::move(a)) {
        if (g < 1 || g > 2) throw Error("Weil polynomials are supported for g = 1, 2");
        if (a_.size() != static_cast<std::size_t>(g)) throw Error("expected g middle coefficients");
        const BigInt a1 = a_[0];
        if (a1 * a1 >= BigInt(4) * g * g * p) throw Error("count inconsistency: Hasse-Weil bound violated at p = " + std::to_string(p));
        for (const auto& r : complex_roots())
            if (std::abs(std::norm(r) - static_cast<long double>(p)) >= 1e-6L * p)
                throw Error("count inconsistency: root off the circle |alpha| = sqrt(p) at p = " + std::to_string(p));
    }

    [[nodiscard]] int genus() const noexcept { return g_; }
    [[nodiscard]] std::uint64_t prime() const noexcept { return p_; }
    [[nodiscard]] std::int64_t a(int i) const { return a_.at(static_cast<std::size_t>(i - 1)); }
    [[nodiscard]] const std::vector<std::int64_t>& middle() const noexcept { return a_; }

    [[nodiscard]] IntPoly full() const {
        const int n = 2 * g_;
        std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
        c[static_cast<std::size_t>(n)] = 1;
        BigInt pk = 1;
        for (int k = 0; k <= g_; ++k) {
            // coeff(X^(g-k)) = p^k coeff(X^(g+k))
            const BigInt top = k == g_ ? BigInt(1) : BigInt(a_[static_cast<std::size_t>(g_ - k - 1)]);
            c[static_cast<std::size_t>(g_ + k)] = top;
            c[static_cast<std::size_t>(g_ - k)] = pk * top;
            pk *= p_;
        }
        return IntPoly(std::move(c));
    }

    /// Roots via u = X + p/X: h(u) = u^g + a1 u^(g-1) + ... then X^2 - uX + p.
    [[nodiscard]] std::vector<std::complex<long double>> complex_roots() const {
        using C = std::complex<long double>;
        const long double p = static_cast<long double>(p_);
        std::vector<C> us;
        if (g_ == 1) {
            us.emplace_back(-static_cast<long double>(a_[0]));
        } else {
            const long double b = static_cast<long double>(a_[0]), c = static_cast<long double>(a_[1]) - 2 * p;
            const C s = std::sqrt(C(b * b - 4 * c));
            us.push_back((-b + s) / 2.0L);
            us.push_back((-b - s) / 2.0L);
        }
        std::vector<C> out;
        for (const auto& u : us) {
            const C s = std::sqrt(u * u - 4.0L * p);
            out.push_back((u + s) / 2.0L);
            out.push_back((u - s) / 2.0L);
        }
        return out;
    }

    /// Irreducible over Q. For g = 2 the only factorizations come from a rational
    /// root of h or from P = (X^2 - p)^2.
    [[nodiscard]] bool irreducible() const {
        if (g_ == 1) return true;
        const BigInt a1 = a_[0], a2 = a_[1];
        if (a1 == 0 && a2 == -2 * BigInt(p_)) return false;
        const BigInt dh = a1 * a1 - 4 * (a2 - 2 * BigInt(p_));
        if (dh >= 0) {
            BigInt r = boost::multiprecision::sqrt(dh);
            if (r * r == dh) return false;
        }
        return true;
    }

    friend bool operator==(const WeilPolynomial&, const WeilPolynomial&) = default;

private:
    int g_;
    std::uint64_t p_;
    std::vector<std::int64_t> a_;
};

/// Frobenius data at one good prime.
struct FrobeniusRecord {
    std::string curve_id;
    std::uint64_t p = 0;
    std::uint64_t n1 = 0;
    std::optional<std::uint64_t> n2;
    WeilPolynomial weil;
    IntPoly P, Q;  // Q = squarefree radical of P
    BigInt discP, discQ;
    std::map<std::uint32_t, bool> split_primes_tested;
};

/// Power-sum inversion from the point counts.
inline WeilPolynomial weil_from_counts(int g, std::uint64_t p, std::uint64_t n1, std::optional<std::uint64_t> n2) {
    const std::int64_t P = static_cast<std::int64_t>(p);
    if (g == 1) return WeilPolynomial(1, p, {static_cast<std::int64_t>(n1) - P - 1});
    if (!n2) throw Error("genus 2 needs the count over F_{p^2}");
    const std::int64_t s1 = P + 1 - static_cast<std::int64_t>(n1);
    const std::int64_t s2 = P * P + 1 - static_cast<std::int64_t>(*n2);
    if ((s1 * s1 - s2) % 2 != 0) throw Error("internal: parity failure in power-sum inversion");
    return WeilPolynomial(2, p, {-s1, (s1 * s1 - s2) / 2});
}

inline FrobeniusRecord make_record(const CurveSpec& curve, std::uint64_t p, std::uint64_t n1, std::optional<std::uint64_t> n2) {
    FrobeniusRecord r{curve.id(), p, n1, n2, weil_from_counts(curve.genus(), p, n1, n2), {}, {}, {}, {}, {}};
    if (n1 > 2 * p + 2) throw Error("count inconsistency: n1 exceeds 2p + 2");
    r.P = r.weil.full();
    r.Q = squarefree_radical(r.P);
    r.discP = discriminant(r.P);
    r.discQ = discriminant(r.Q);
    return r;
}

inline FrobeniusRecord frobenius_record(const CurveSpec& curve, std::uint64_t p) {
    const auto n1 = count_points(curve, p, 1);
    std::optional<std::uint64_t> n2;
    if (curve.genus() == 2) n2 = count_points(curve, p, 2);
    return make_record(curve, p, n1, n2);
}

inline WeilPolynomial weil_polynomial(const CurveSpec& curve, std::uint64_t p) { return frobenius_record(curve, p).weil; }

/// a_{1,p}: the X^(2g-1) coefficient, i.e. #C(F_p) - p - 1.
inline std::int64_t frobenius_trace(const CurveSpec& curve, std::uint64_t p) {
    const auto n1 = count_points(curve, p, 1);
    const std::int64_t a1 = static_cast<std::int64_t>(n1) - static_cast<std::int64_t>(p) - 1;
    if (BigInt(a1) * a1 >= BigInt(4) * curve.genus() * curve.genus() * p)
        throw Error("count inconsistency: Hasse-Weil bound violated");
    return a1;
}

/// l does not divide disc Q and Q mod l has deg Q distinct roots.
inline bool split_test(const IntPoly& Q, const BigInt& discQ, std::uint64_t p, std::uint32_t l) {
    if (l == p) throw Error("split test needs l != p");
    if (l < 3 || !detail::is_prime_u32(l)) throw Error("l must be an odd prime");
    if (discQ % l == 0) return false;
    return splits_into_distinct_linear(Q, l);
}

inline bool split_test(FrobeniusRecord& rec, std::uint32_t l) {
    const bool s = split_test(rec.Q, rec.discQ, rec.p, l);
    rec.split_primes_tested[l] = s;
    return s;
}

inline bool split_test(const FrobeniusRecord& rec, std::uint32_t l) { return split_test(rec.Q, rec.discQ, rec.p, l); }

/// P mod l is a product of linear factors with nonzero roots. Requires split_test.
inline bool keyprop_consequence(const IntPoly& P, const BigInt& discQ, const IntPoly& Q, std::uint64_t p, std::uint32_t l) {
    if (!split_test(Q, discQ, p, l)) throw Error("precondition: l does not split completely");
    const auto roots = roots_in_fl(P.mod(l));
    if (static_cast<int>(roots.size()) != P.degree()) return false;
    for (const auto& r : roots)
        if (r.is_zero()) return false;
    return true;
}

inline bool keyprop_consequence(const FrobeniusRecord& rec, std::uint32_t l) {
    return keyprop_consequence(rec.P, rec.discQ, rec.Q, rec.p, l);
}

/// |disc P| <= (4p)^((2g-1)g)
inline bool disc_bound_check(const BigInt& discP, std::uint64_t p, int g) {
    const BigInt bound = boost::multiprecision::pow(BigInt(4) * p, static_cast<unsigned>((2 * g - 1) * g));
    return boost::multiprecision::abs(discP) <= bound;
}
inline bool disc_bound_check(const FrobeniusRecord& rec) { return disc_bound_check(rec.discP, rec.p, rec.weil.genus()); }

inline bool degree_bound_check(const IntPoly& Q, int g) { return Q.degree() <= 2 * g; }
inline bool degree_bound_check(const FrobeniusRecord& rec) { return degree_bound_check(rec.Q, rec.weil.genus()); }

/// disc Q divides disc P whenever Q != P.
inline bool disc_divides_check(const FrobeniusRecord& rec) {
    if (rec.Q == rec.P) return true;
    if (rec.discQ == 0) return rec.discP == 0;
    return rec.discP % rec.discQ == 0;
}

/// f mod p has exactly one double root and otherwise distinct roots: gcd(f, f')
/// is linear and f divided by that factor is squarefree.
inline bool hall_criterion_at(const IntPoly& f, std::uint32_t p) {
    if (f.leading() % p == 0) return false;
    const ModPoly fm = f.mod(p);
    const ModPoly d = gcd(fm, fm.derivative());
    if (d.degree() != 1) return false;
    return is_squarefree(fm / d);
}

/// First odd prime p <= bound satisfying the double-root criterion.
inline std::optional<std::uint32_t> hall_criterion(const IntPoly& f, std::uint32_t bound) {
    if (f.degree() < 2) throw Error("Hall criterion needs degree at least 2");
    if (discriminant(f) == 0) throw Error("polynomial is not squarefree");
    for (std::uint32_t p = 3; p <= bound; p += 2)
        if (detail::is_prime_u32(p) && hall_criterion_at(f, p)) return p;
    return std::nullopt;
}

}  // namespace symptrace
