#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "symptrace/modpoly.hpp"

namespace symptrace {

/// Dense row-major square matrix over F_l. Used for the generic linear algebra
/// (characteristic and minimal polynomials, inverses) behind the symplectic types.
class FpMatrix {
public:
    FpMatrix(int n, std::uint32_t l) : n_(n), l_(l), a_(static_cast<std::size_t>(n) * n, 0) {
        if (n <= 0) throw Error("matrix dimension must be positive");
    }
    FpMatrix(int n, std::uint32_t l, std::span<const std::uint32_t> entries) : FpMatrix(n, l) {
        if (entries.size() != a_.size()) throw Error("entry count does not match dimension");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = entries[i] % l;
    }

    static FpMatrix identity(int n, std::uint32_t l) {
        FpMatrix m(n, l);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    [[nodiscard]] int dim() const noexcept { return n_; }
    [[nodiscard]] std::uint32_t modulus() const noexcept { return l_; }
    std::uint32_t& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * n_ + c)]; }
    [[nodiscard]] std::uint32_t operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * n_ + c)]; }
    [[nodiscard]] const std::vector<std::uint32_t>& entries() const noexcept { return a_; }

    friend FpMatrix operator*(const FpMatrix& x, const FpMatrix& y) {
        if (x.n_ != y.n_ || x.l_ != y.l_) throw Error("matrix shape mismatch");
        FpMatrix r(x.n_, x.l_);
        for (int i = 0; i < x.n_; ++i)
            for (int k = 0; k < x.n_; ++k) {
                std::uint64_t xik = x(i, k);
                if (xik == 0) continue;
                for (int j = 0; j < x.n_; ++j) r(i, j) = static_cast<std::uint32_t>((r(i, j) + xik * y(k, j)) % x.l_);
            }
        return r;
    }

    friend bool operator==(const FpMatrix& x, const FpMatrix& y) = default;

    [[nodiscard]] FpMatrix transpose() const {
        FpMatrix t(n_, l_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    [[nodiscard]] std::uint32_t trace() const {
        std::uint64_t s = 0;
        for (int i = 0; i < n_; ++i) s += (*this)(i, i);
        return static_cast<std::uint32_t>(s % l_);
    }

    /// Gauss-Jordan inverse; empty when singular.
    [[nodiscard]] std::optional<FpMatrix> inverse() const {
        FpMatrix a = *this, inv = identity(n_, l_);
        for (int col = 0; col < n_; ++col) {
            int piv = -1;
            for (int r = col; r < n_; ++r)
                if (a(r, col) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return std::nullopt;
            if (piv != col)
                for (int j = 0; j < n_; ++j) {
                    std::swap(a(piv, j), a(col, j));
                    std::swap(inv(piv, j), inv(col, j));
                }
            std::uint32_t s = detail::invmod(a(col, col), l_);
            for (int j = 0; j < n_; ++j) {
                a(col, j) = detail::mulmod(a(col, j), s, l_);
                inv(col, j) = detail::mulmod(inv(col, j), s, l_);
            }
            for (int r = 0; r < n_; ++r) {
                if (r == col || a(r, col) == 0) continue;
                std::uint32_t f = a(r, col);
                for (int j = 0; j < n_; ++j) {
                    a(r, j) = detail::submod(a(r, j), detail::mulmod(f, a(col, j), l_), l_);
                    inv(r, j) = detail::submod(inv(r, j), detail::mulmod(f, inv(col, j), l_), l_);
                }
            }
        }
        return inv;
    }

private:
    int n_;
    std::uint32_t l_;
    std::vector<std::uint32_t> a_;
};

/// Characteristic polynomial det(X I - M) via reduction to upper Hessenberg form.
inline ModPoly char_poly(const FpMatrix& m) {
    const int n = m.dim();
    const auto l = m.modulus();
    FpMatrix h = m;
    // Similarity transforms: eliminate below the subdiagonal column by column.
    for (int col = 0; col + 2 < n; ++col) {
        int piv = -1;
        for (int r = col + 1; r < n; ++r)
            if (h(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != col + 1) {
            for (int j = 0; j < n; ++j) std::swap(h(piv, j), h(col + 1, j));
            for (int i = 0; i < n; ++i) std::swap(h(i, piv), h(i, col + 1));
        }
        std::uint32_t inv = detail::invmod(h(col + 1, col), l);
        for (int r = col + 2; r < n; ++r) {
            if (h(r, col) == 0) continue;
            std::uint32_t f = detail::mulmod(h(r, col), inv, l);
            for (int j = 0; j < n; ++j) h(r, j) = detail::submod(h(r, j), detail::mulmod(f, h(col + 1, j), l), l);
            for (int i = 0; i < n; ++i) h(i, col + 1) = detail::addmod(h(i, col + 1), detail::mulmod(f, h(i, r), l), l);
        }
    }
    // p_k = (X - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    std::vector<ModPoly> p;
    p.push_back(ModPoly::constant(Fp(1, l)));
    const ModPoly x = ModPoly::from_raw(l, {0U, 1U});
    for (int k = 0; k < n; ++k) {
        ModPoly next = (x - ModPoly::constant(Fp(h(k, k), l))) * p[static_cast<std::size_t>(k)];
        std::uint32_t prod = 1;
        for (int i = k - 1; i >= 0; --i) {
            prod = detail::mulmod(prod, h(i + 1, i), l);
            if (prod == 0) break;
            std::uint32_t c = detail::mulmod(h(i, k), prod, l);
            next = next - p[static_cast<std::size_t>(i)] * Fp(c, l);
        }
        p.push_back(std::move(next));
    }
    return p.back();
}

/// Minimal polynomial: the first linear dependency among I, M, M^2, ...
/// found by incremental elimination on the flattened powers.
inline ModPoly min_poly(const FpMatrix& m) {
    const int n = m.dim();
    const auto l = m.modulus();
    const std::size_t len = static_cast<std::size_t>(n) * n;
    struct Row {
        std::vector<std::uint32_t> v;
        std::vector<std::uint32_t> combo;  // coefficients on I, M, M^2, ...
        std::size_t pivot;
    };
    std::vector<Row> basis;
    FpMatrix power = FpMatrix::identity(n, l);
    for (int k = 0; k <= n; ++k) {
        std::vector<std::uint32_t> v = power.entries();
        std::vector<std::uint32_t> combo(static_cast<std::size_t>(k) + 1, 0);
        combo[static_cast<std::size_t>(k)] = 1;
        for (const auto& row : basis) {
            std::uint32_t f = v[row.pivot];
            if (f == 0) continue;
            for (std::size_t j = 0; j < len; ++j) v[j] = detail::submod(v[j], detail::mulmod(f, row.v[j], l), l);
            for (std::size_t j = 0; j < row.combo.size(); ++j)
                combo[j] = detail::submod(combo[j], detail::mulmod(f, row.combo[j], l), l);
        }
        std::size_t piv = len;
        for (std::size_t j = 0; j < len; ++j)
            if (v[j] != 0) {
                piv = j;
                break;
            }
        if (piv == len) return ModPoly::from_raw(l, std::move(combo)).monic();
        std::uint32_t s = detail::invmod(v[piv], l);
        for (auto& e : v) e = detail::mulmod(e, s, l);
        for (auto& e : combo) e = detail::mulmod(e, s, l);
        // keep earlier rows reduced at the new pivot so later reductions stay single-pass
        for (auto& row : basis) {
            std::uint32_t f = row.v[piv];
            if (f == 0) continue;
            for (std::size_t j = 0; j < len; ++j) row.v[j] = detail::submod(row.v[j], detail::mulmod(f, v[j], l), l);
            row.combo.resize(combo.size(), 0);
            for (std::size_t j = 0; j < combo.size(); ++j)
                row.combo[j] = detail::submod(row.combo[j], detail::mulmod(f, combo[j], l), l);
        }
        basis.push_back({std::move(v), std::move(combo), piv});
        power = power * m;
    }
    throw Error("minimal polynomial search exceeded the Cayley-Hamilton degree");
}

/// Semisimple iff the minimal polynomial has distinct roots over the closure.
inline bool semisimple(const FpMatrix& m) { return is_squarefree(min_poly(m)); }

}  // namespace symptrace
