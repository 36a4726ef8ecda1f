#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rsrepair/errors.hpp"

namespace rsrepair {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<u128>(a) * b % p);
}

inline u64 powmod(u64 base, u64 e, u64 p) {
    u64 r = 1 % p;
    base %= p;
    while (e) {
        if (e & 1) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        e >>= 1;
    }
    return r;
}

} // namespace detail

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                  29ULL, 31ULL, 37ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                  29ULL, 31ULL, 37ULL}) {
        u64 x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

/// The prime field F_p, p an odd prime below 2^61 (products fit in 128-bit
/// intermediates). Elements are canonical residues in [0, p-1]; the balanced
/// view [-(p-1)/2, (p-1)/2] is a conversion, not storage.
class PrimeField {
public:
    static constexpr u64 kMaxModulusBits = 61;

    explicit PrimeField(u64 p) : p_(p) {
        if (p % 2 == 0)
            throw EvenModulus("modulus must be odd, got " + std::to_string(p));
        if (p >= (u64(1) << kMaxModulusBits))
            throw WidthOutOfRange("modulus exceeds 61 bits");
        if (!is_prime_u64(p))
            throw NotPrime(std::to_string(p) + " is not prime");
    }

    u64 p() const { return p_; }

    u64 reduce(u64 x) const { return x % p_; }

    /// Canonical residue of a signed integer.
    u64 from_signed(i64 x) const {
        i64 r = x % static_cast<i64>(p_);
        if (r < 0) r += static_cast<i64>(p_);
        return static_cast<u64>(r);
    }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const { return detail::mulmod(a, b, p_); }
    u64 pow(u64 base, u64 e) const { return detail::powmod(base, e, p_); }

    u64 inv(u64 x) const {
        if (x % p_ == 0) throw ZeroInverse("inverse of zero in F_p");
        // extended Euclid
        i64 a = static_cast<i64>(x % p_), m = static_cast<i64>(p_);
        i64 u = 1, v = 0;
        while (a != 0) {
            i64 q = m / a;
            m -= q * a; std::swap(a, m);
            v -= q * u; std::swap(u, v);
        }
        return from_signed(v);
    }

    /// Representative in [-(p-1)/2, (p-1)/2] congruent to x.
    i64 balanced(u64 x) const {
        x %= p_;
        return x <= (p_ - 1) / 2 ? static_cast<i64>(x)
                                 : static_cast<i64>(x) - static_cast<i64>(p_);
    }

    /// |balanced(x)| <= t, i.e. x lies in the symmetric window [-t, t].
    bool in_window(u64 x, u64 t) const {
        return x <= t || x >= p_ - t;
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    u64 p_;
};

inline PrimeField make_field(u64 p) { return PrimeField(p); }

/// Dense polynomial over F_p, coefficients lowest degree first.
/// Trailing zeros are allowed; degree() strips them.
struct Poly {
    PrimeField field;
    std::vector<u64> coeffs;

    static Poly zero(const PrimeField& f) { return Poly{f, {}}; }

    /// -1 for the zero polynomial.
    int degree() const {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (coeffs[i] != 0) return static_cast<int>(i);
        return -1;
    }

    bool is_zero() const { return degree() < 0; }

    u64 eval(u64 x) const {
        u64 acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = field.add(field.mul(acc, x), coeffs[i]);
        return acc;
    }

    /// Coefficient vector with trailing zeros stripped; used for canonical
    /// comparison and serialization.
    std::vector<u64> normalized() const {
        std::vector<u64> c(coeffs.begin(),
                           coeffs.begin() + static_cast<std::size_t>(degree() + 1));
        return c;
    }

    bool operator==(const Poly& o) const {
        return field == o.field && normalized() == o.normalized();
    }
};

/// Unique polynomial of degree < points.size() through the given points
/// (Newton form). Abscissas must be pairwise distinct.
inline Poly interpolate(const PrimeField& F,
                        std::span<const std::pair<u64, u64>> points) {
    const std::size_t d = points.size();
    if (d == 0) throw DuplicateAbscissa("interpolation needs at least one point");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (points[i].first == points[j].first)
                throw DuplicateAbscissa("duplicate abscissa " +
                                        std::to_string(points[i].first));

    // Newton divided differences.
    std::vector<u64> dd(d);
    for (std::size_t i = 0; i < d; ++i) dd[i] = points[i].second % F.p();
    for (std::size_t level = 1; level < d; ++level)
        for (std::size_t i = d - 1; i >= level; --i) {
            u64 num = F.sub(dd[i], dd[i - 1]);
            u64 den = F.sub(points[i].first, points[i - level].first);
            dd[i] = F.mul(num, F.inv(den));
            if (i == level) break;
        }

    // Expand Newton form into dense coefficients.
    std::vector<u64> out(d, 0);
    std::vector<u64> basis{1};  // prod (x - x_j), j < level
    out[0] = dd[0];
    for (std::size_t level = 1; level < d; ++level) {
        // basis *= (x - x_{level-1})
        basis.push_back(0);
        u64 xm = points[level - 1].first % F.p();
        for (std::size_t i = basis.size(); i-- > 1;)
            basis[i] = F.sub(basis[i - 1], F.mul(basis[i], xm));
        basis[0] = F.mul(basis[0], F.neg(xm));
        for (std::size_t i = 0; i < basis.size(); ++i)
            out[i] = F.add(out[i], F.mul(dd[level], basis[i]));
    }
    return Poly{F, std::move(out)};
}

inline Poly interpolate(const PrimeField& F,
                        const std::vector<std::pair<u64, u64>>& points) {
    return interpolate(F, std::span<const std::pair<u64, u64>>(points));
}

} // namespace rsrepair
