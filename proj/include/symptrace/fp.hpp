#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace symptrace {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a requested computation exceeds the desk-scale budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % m);
}

inline std::uint32_t addmod(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<std::uint32_t>(s >= m ? s - m : s);
}

inline std::uint32_t submod(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
    return a >= b ? a - b : static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) + m - b);
}

inline std::uint32_t powmod(std::uint32_t base, std::uint64_t e, std::uint32_t m) {
    std::uint64_t r = 1 % m, b = base % m;
    while (e != 0) {
        if (e & 1U) r = r * b % m;
        b = b * b % m;
        e >>= 1U;
    }
    return static_cast<std::uint32_t>(r);
}

/// Reduces a signed integer into [0, m).
inline std::uint32_t reduce(std::int64_t v, std::uint32_t m) {
    std::int64_t r = v % static_cast<std::int64_t>(m);
    return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

/// Inverse modulo a prime; the caller guarantees a != 0 mod m.
inline std::uint32_t invmod(std::uint32_t a, std::uint32_t m) {
    std::int64_t t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        std::int64_t q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw Error("element is not invertible modulo " + std::to_string(m));
    return static_cast<std::uint32_t>(t < 0 ? t + m : t);
}

/// Deterministic Miller-Rabin for 32-bit inputs (bases 2, 7, 61).
inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t p : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U}) {
        if (n % p == 0) return n == p;
    }
    std::uint32_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint32_t a : {2U, 7U, 61U}) {
        if (a % n == 0) continue;
        std::uint32_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

/// Element of the prime field F_l, l an odd prime below 2^31.
class Fp {
public:
    Fp(std::int64_t value, std::uint32_t modulus) : modulus_(modulus) {
        if (modulus < 3 || modulus >= (1U << 31U)) throw Error("field modulus out of range");
        value_ = detail::reduce(value, modulus);
    }

    [[nodiscard]] std::uint32_t value() const noexcept { return value_; }
    [[nodiscard]] std::uint32_t modulus() const noexcept { return modulus_; }
    [[nodiscard]] bool is_zero() const noexcept { return value_ == 0; }

    [[nodiscard]] Fp inverse() const {
        if (value_ == 0) throw Error("zero has no inverse in F_" + std::to_string(modulus_));
        return raw(detail::invmod(value_, modulus_), modulus_);
    }

    [[nodiscard]] Fp pow(std::uint64_t e) const { return raw(detail::powmod(value_, e, modulus_), modulus_); }

    /// Legendre symbol: 0, 1 or -1.
    [[nodiscard]] int legendre() const {
        if (value_ == 0) return 0;
        return pow((modulus_ - 1) / 2).value() == 1 ? 1 : -1;
    }

    Fp operator-() const { return raw(value_ == 0 ? 0 : modulus_ - value_, modulus_); }
    friend Fp operator+(Fp a, Fp b) { return raw(detail::addmod(a.value_, b.checked(a), a.modulus_), a.modulus_); }
    friend Fp operator-(Fp a, Fp b) { return raw(detail::submod(a.value_, b.checked(a), a.modulus_), a.modulus_); }
    friend Fp operator*(Fp a, Fp b) { return raw(detail::mulmod(a.value_, b.checked(a), a.modulus_), a.modulus_); }
    friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }

    friend bool operator==(Fp a, Fp b) noexcept { return a.value_ == b.value_ && a.modulus_ == b.modulus_; }
    friend auto operator<=>(Fp a, Fp b) noexcept { return a.value_ <=> b.value_; }

    friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.value_; }

private:
    static Fp raw(std::uint32_t v, std::uint32_t m) {
        Fp r;
        r.value_ = v;
        r.modulus_ = m;
        return r;
    }
    Fp() = default;

    [[nodiscard]] std::uint32_t checked(Fp other) const {
        if (modulus_ != other.modulus_) throw Error("mixed field moduli");
        return value_;
    }

    std::uint32_t value_ = 0;
    std::uint32_t modulus_ = 3;
};

}  // namespace symptrace
