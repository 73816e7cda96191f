#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symptrace/fpmatrix.hpp"

namespace symptrace {

namespace detail {

// Symplectic form u^t J v on column c1, c2 of a row-major n x n matrix, J = [[0, I], [-I, 0]].
inline std::uint32_t form_on_columns(const std::uint32_t* a, int g, int c1, int c2, std::uint32_t l) {
    const int n = 2 * g;
    std::uint64_t plus = 0, minus = 0;
    for (int k = 0; k < g; ++k) {
        plus += static_cast<std::uint64_t>(a[k * n + c1]) * a[(g + k) * n + c2] % l;
        minus += static_cast<std::uint64_t>(a[(g + k) * n + c1]) * a[k * n + c2] % l;
    }
    return static_cast<std::uint32_t>((plus % l + l - minus % l) % l);
}

// Returns mu when M^t J M = mu J with mu != 0, otherwise nothing.
inline std::optional<std::uint32_t> multiplicator_of(const std::uint32_t* a, int g, std::uint32_t l) {
    const int n = 2 * g;
    const std::uint32_t mu = form_on_columns(a, g, 0, g, l);
    if (mu == 0) return std::nullopt;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const std::uint32_t want = (i < g && j == i + g) ? mu : 0;
            if (form_on_columns(a, g, i, j, l) != want) return std::nullopt;
        }
    return mu;
}

/// True when every row-major base-l key of a 2g x 2g matrix fits in 64 bits.
inline bool key_fits(int g, std::uint32_t l) {
    const int digits = 4 * g * g;
    unsigned __int128 acc = 1;
    for (int i = 0; i < digits; ++i) {
        acc *= l;
        if (acc > static_cast<unsigned __int128>(UINT64_MAX)) return false;
    }
    return true;
}

}  // namespace detail

/// Element of GSp_2g(F_l), g <= 3, with its multiplicator cached.
/// Public construction re-verifies M^t J M = mu J; products and inverses of
/// verified elements rely on mu being a homomorphism.
class SympMatrix {
public:
    static constexpr int kMaxGenus = 3;

    /// Row-major entries; empty when the matrix is not a symplectic similitude.
    static std::optional<SympMatrix> make(int g, std::uint32_t l, std::span<const std::uint32_t> entries) {
        check_shape(g, l);
        const int n = 2 * g;
        if (entries.size() != static_cast<std::size_t>(n * n)) throw Error("entry count does not match 2g x 2g");
        SympMatrix m(g, l);
        for (std::size_t i = 0; i < entries.size(); ++i) m.e_[i] = entries[i] % l;
        auto mu = detail::multiplicator_of(m.e_.data(), g, l);
        if (!mu) return std::nullopt;
        m.mu_ = *mu;
        return m;
    }

    static SympMatrix make_or_throw(int g, std::uint32_t l, std::span<const std::uint32_t> entries) {
        auto m = make(g, l, entries);
        if (!m) throw Error("matrix is not a symplectic similitude");
        return *m;
    }

    static SympMatrix identity(int g, std::uint32_t l) {
        check_shape(g, l);
        SympMatrix m(g, l);
        for (int i = 0; i < 2 * g; ++i) m.set(i, i, 1);
        m.mu_ = 1;
        return m;
    }

    /// J_2g = [[0, I], [-I, 0]], multiplicator 1.
    static SympMatrix standard_form(int g, std::uint32_t l) {
        check_shape(g, l);
        SympMatrix m(g, l);
        for (int i = 0; i < g; ++i) {
            m.set(i, g + i, 1);
            m.set(g + i, i, l - 1);
        }
        m.mu_ = 1;
        return m;
    }

    /// Element with a trusted multiplicator; used by catalog builders whose
    /// output is re-verified by tests.
    static SympMatrix unchecked(int g, std::uint32_t l, std::span<const std::uint32_t> entries, std::uint32_t mu) {
        SympMatrix m(g, l);
        for (std::size_t i = 0; i < entries.size(); ++i) m.e_[i] = entries[i];
        m.mu_ = mu;
        return m;
    }

    [[nodiscard]] int genus() const noexcept { return g_; }
    [[nodiscard]] int dim() const noexcept { return 2 * g_; }
    [[nodiscard]] std::uint32_t modulus() const noexcept { return l_; }
    [[nodiscard]] std::uint32_t multiplicator() const noexcept { return mu_; }
    [[nodiscard]] std::uint32_t at(int r, int c) const { return e_[static_cast<std::size_t>(r * dim() + c)]; }
    [[nodiscard]] std::span<const std::uint32_t> entries() const {
        return {e_.data(), static_cast<std::size_t>(dim() * dim())};
    }

    [[nodiscard]] std::uint32_t trace() const {
        std::uint64_t s = 0;
        for (int i = 0; i < dim(); ++i) s += at(i, i);
        return static_cast<std::uint32_t>(s % l_);
    }

    /// Row-major base-l digits read as one integer; collision-free when detail::key_fits(g, l).
    [[nodiscard]] std::uint64_t key() const noexcept {
        std::uint64_t k = 0;
        const int nn = dim() * dim();
        for (int i = 0; i < nn; ++i) k = k * l_ + e_[static_cast<std::size_t>(i)];
        return k;
    }

    [[nodiscard]] FpMatrix to_fp_matrix() const { return FpMatrix(dim(), l_, entries()); }

    /// Re-runs the similitude check on the stored entries.
    [[nodiscard]] bool verify() const {
        auto mu = detail::multiplicator_of(e_.data(), g_, l_);
        return mu && *mu == mu_;
    }

    friend SympMatrix operator*(const SympMatrix& a, const SympMatrix& b) {
        if (a.g_ != b.g_ || a.l_ != b.l_) throw Error("mixed symplectic groups");
        const int n = a.dim();
        const std::uint32_t l = a.l_;
        SympMatrix r(a.g_, l);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::uint64_t s = 0;
                for (int k = 0; k < n; ++k) s += static_cast<std::uint64_t>(a.e_[i * n + k]) * b.e_[k * n + j];
                r.e_[static_cast<std::size_t>(i * n + j)] = static_cast<std::uint32_t>(s % l);
            }
        r.mu_ = detail::mulmod(a.mu_, b.mu_, l);
        return r;
    }

    /// M^-1 = -mu^-1 J M^t J, multiplicator mu^-1.
    [[nodiscard]] SympMatrix inverse() const {
        const int n = dim(), g = g_;
        const std::uint32_t l = l_;
        const std::uint32_t mu_inv = detail::invmod(mu_, l);
        SympMatrix r(g, l);
        // (J M^t J)_{ij} = sum J_ia M_ba J_bj; J has one nonzero per row.
        for (int i = 0; i < n; ++i) {
            const int a = i < g ? i + g : i - g;
            const bool neg_i = i >= g;
            for (int j = 0; j < n; ++j) {
                const int b = j < g ? j + g : j - g;
                const bool neg_j = j < g;
                std::uint32_t v = at(b, a);
                // -(J M^t J) picks up one extra sign
                bool negative = !(neg_i != neg_j);
                if (negative && v != 0) v = l - v;
                r.e_[static_cast<std::size_t>(i * n + j)] = detail::mulmod(v, mu_inv, l);
            }
        }
        r.mu_ = mu_inv;
        return r;
    }

    /// lambda * M, multiplicator lambda^2 mu.
    [[nodiscard]] SympMatrix scaled(std::uint32_t lambda) const {
        lambda %= l_;
        if (lambda == 0) throw Error("scalar must be a unit");
        SympMatrix r = *this;
        for (int i = 0; i < dim() * dim(); ++i) r.e_[static_cast<std::size_t>(i)] = detail::mulmod(r.e_[static_cast<std::size_t>(i)], lambda, l_);
        r.mu_ = detail::mulmod(detail::mulmod(lambda, lambda, l_), mu_, l_);
        return r;
    }

    /// N M N^-1
    [[nodiscard]] SympMatrix conjugated_by(const SympMatrix& n) const { return n * *this * n.inverse(); }

    [[nodiscard]] bool is_scalar() const {
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                if (at(i, j) != (i == j ? at(0, 0) : 0U)) return false;
        return true;
    }

    [[nodiscard]] std::string str() const {
        std::string s = "[";
        for (int i = 0; i < dim(); ++i) {
            s += i == 0 ? "[" : " [";
            for (int j = 0; j < dim(); ++j) s += (j ? "," : "") + std::to_string(at(i, j));
            s += "]";
        }
        return s + "] mu=" + std::to_string(mu_);
    }

    friend bool operator==(const SympMatrix& a, const SympMatrix& b) noexcept {
        return a.g_ == b.g_ && a.l_ == b.l_ && a.e_ == b.e_;
    }

private:
    SympMatrix(int g, std::uint32_t l) : g_(g), l_(l) {}

    static void check_shape(int g, std::uint32_t l) {
        if (g < 1 || g > kMaxGenus) throw Error("genus must be 1, 2 or 3");
        if (l < 3 || !detail::is_prime_u32(l)) throw Error("modulus must be an odd prime");
    }
    void set(int r, int c, std::uint32_t v) { e_[static_cast<std::size_t>(r * dim() + c)] = v; }

    int g_;
    std::uint32_t l_;
    std::array<std::uint32_t, 36> e_{};
    std::uint32_t mu_ = 1;
};

/// Multiplicator of an arbitrary square matrix over F_l when it is a
/// symplectic similitude. Non-square or odd-dimensional input is an error.
inline std::optional<std::uint32_t> symplectic_check(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t l) {
    const auto n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw Error("matrix is not square");
    if (n == 0 || n % 2 != 0) throw Error("symplectic check needs an even dimension");
    const int g = static_cast<int>(n / 2);
    std::vector<std::uint32_t> flat;
    for (const auto& r : rows)
        for (auto v : r) flat.push_back(detail::reduce(v, l));
    auto m = SympMatrix::make(g, l, flat);
    if (!m) return std::nullopt;
    return m->multiplicator();
}

/// Characteristic polynomial of a similitude, with the shape check
/// coeff(X^(g-k)) = mu^k coeff(X^(g+k)) for 0 <= k <= g.
inline ModPoly char_poly_symp(const SympMatrix& m) {
    ModPoly p = char_poly(m.to_fp_matrix());
    const int g = m.genus();
    const Fp mu(m.multiplicator(), m.modulus());
    for (int k = 0; k <= g; ++k)
        if (p.coeff(g - k) != mu.pow(static_cast<std::uint64_t>(k)) * p.coeff(g + k))
            throw Error("characteristic polynomial violates the symplectic shape for " + m.str());
    return p;
}

inline bool semisimple(const SympMatrix& m) { return semisimple(m.to_fp_matrix()); }

/// True iff the characteristic polynomial splits into linear factors over F_l
/// (roots are automatically nonzero for an invertible matrix).
inline bool eigenvalues_in_fl(const ModPoly& charpoly) {
    return static_cast<int>(roots_in_fl(charpoly).size()) == charpoly.degree();
}

}  // namespace symptrace
