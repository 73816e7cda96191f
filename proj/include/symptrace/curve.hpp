#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "symptrace/intpoly.hpp"
#include "symptrace/parse.hpp"

namespace symptrace {

/// y^2 = f(x) with deg f in {3, 4} (genus 1) or {5, 6} (genus 2), f squarefree.
class CurveSpec {
public:
    explicit CurveSpec(IntPoly f) : f_(std::move(f)) {
        const int d = f_.degree();
        if (d < 3 || d > 6) throw Error("curve polynomial must have degree 3 to 6");
        g_ = (d - 1) / 2;
        disc_ = discriminant(f_);
        if (disc_ == 0) throw Error("curve polynomial is not squarefree");
        id_ = make_id();
    }
    static CurveSpec parse(std::string_view text) { return CurveSpec(parse_poly(text)); }

    [[nodiscard]] const IntPoly& f() const noexcept { return f_; }
    [[nodiscard]] int genus() const noexcept { return g_; }
    [[nodiscard]] const BigInt& disc() const noexcept { return disc_; }
    [[nodiscard]] const std::string& id() const noexcept { return id_; }

    /// Bad primes are 2 and the primes dividing disc f or the leading coefficient.
    [[nodiscard]] bool is_bad(std::uint64_t p) const {
        return p == 2 || disc_ % p == 0 || f_.leading() % p == 0;
    }

    /// Bad primes up to `bound`, for p prime in [2, bound].
    [[nodiscard]] std::vector<std::uint64_t> bad_primes_upto(std::uint64_t bound) const {
        std::vector<std::uint64_t> out;
        for (std::uint64_t p = 2; p <= bound; ++p)
            if (detail::is_prime_u32(static_cast<std::uint32_t>(p)) && is_bad(p)) out.push_back(p);
        return out;
    }

private:
    // FNV-1a over the comma-joined coefficient list, low degree first.
    [[nodiscard]] std::string make_id() const {
        std::string s;
        for (std::size_t i = 0; i < f_.coeffs().size(); ++i) s += (i ? "," : "") + f_.coeffs()[i].str();
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    IntPoly f_;
    int g_ = 1;
    BigInt disc_;
    std::string id_;
};

namespace detail {

inline std::vector<std::uint32_t> coeffs_mod(const IntPoly& f, std::uint32_t p) {
    std::vector<std::uint32_t> c;
    for (const auto& v : f.coeffs()) {
        BigInt r = v % p;
        if (r < 0) r += p;
        c.push_back(static_cast<std::uint32_t>(r));
    }
    return c;
}

// chi[a] in {-1, 0, 1}: the quadratic character of F_p.
inline std::vector<std::int8_t> character_table(std::uint32_t p) {
    std::vector<std::int8_t> chi(p, -1);
    chi[0] = 0;
    for (std::uint64_t y = 1; y <= p / 2; ++y) chi[y * y % p] = 1;
    return chi;
}

inline std::uint32_t smallest_nonresidue(const std::vector<std::int8_t>& chi) {
    for (std::uint32_t d = 2; d < chi.size(); ++d)
        if (chi[d] == -1) return d;
    throw Error("no quadratic non-residue");
}

}  // namespace detail

/// #C(F_p) for the smooth projective model.
inline std::uint64_t count_points_fp(const CurveSpec& curve, std::uint32_t p) {
    const auto c = detail::coeffs_mod(curve.f(), p);
    const auto chi = detail::character_table(p);
    std::int64_t total = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = (v * x + *it) % p;
        total += 1 + chi[v];
    }
    if (curve.f().degree() % 2 == 1) total += 1;
    else total += 1 + chi[c.back()];
    return static_cast<std::uint64_t>(total);
}

/// #C(F_{p^2}) with F_{p^2} = F_p[Y]/(Y^2 - d), d the least non-residue.
/// chi(a + bY) = chi_p(a^2 - d b^2); conjugates share the character, so b > 0 is
/// scanned over half the range.
inline std::uint64_t count_points_fp2(const CurveSpec& curve, std::uint32_t p) {
    const auto c = detail::coeffs_mod(curve.f(), p);
    const auto chi = detail::character_table(p);
    const std::uint64_t d = detail::smallest_nonresidue(chi);
    const std::uint64_t P = p;
    std::int64_t affine = 0;
    for (std::uint64_t b = 0; b <= P / 2; ++b) {
        const std::int64_t weight = b == 0 ? 1 : 2;
        std::int64_t part = 0;
        for (std::uint64_t a = 0; a < P; ++a) {
            std::uint64_t u = 0, w = 0;  // u + wY
            for (auto it = c.rbegin(); it != c.rend(); ++it) {
                const std::uint64_t nu = (u * a + w * b % P * d + *it) % P;
                const std::uint64_t nw = (u * b + w * a) % P;
                u = nu;
                w = nw;
            }
            const std::uint64_t norm = (u * u + P * P - w * w % P * d) % P;
            part += 1 + chi[norm];
        }
        affine += weight * part;
    }
    // every element of F_p is a square in F_{p^2}
    const std::int64_t infinity = curve.f().degree() % 2 == 1 ? 1 : 2;
    return static_cast<std::uint64_t>(affine + infinity);
}

/// #C(F_q) for q = p (degree 1) or q = p^2 (degree 2).
inline std::uint64_t count_points(const CurveSpec& curve, std::uint64_t p, int degree = 1) {
    if (p < 3 || p >= (1ULL << 31) || !detail::is_prime_u32(static_cast<std::uint32_t>(p))) throw Error("p must be an odd prime below 2^31");
    if (curve.is_bad(p)) throw Error("bad reduction at p = " + std::to_string(p));
    const auto pp = static_cast<std::uint32_t>(p);
    if (degree == 1) {
        if (p > 10'000'000) throw BudgetError("point count budget: p <= 10^7 over F_p");
        return count_points_fp(curve, pp);
    }
    if (degree == 2) {
        if (p > 3000) throw BudgetError("point count budget: p <= 3000 over F_{p^2}");
        return count_points_fp2(curve, pp);
    }
    throw Error("extension degree must be 1 or 2");
}

}  // namespace symptrace
