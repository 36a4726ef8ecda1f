#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "rsrepair/field.hpp"

namespace rsrepair {

/// Value of an exponential sum in double precision.
struct SumResult {
    std::complex<double> value;
    double magnitude = 0.0;
    u64 terms = 0;
};

namespace detail {

/// Kahan-compensated complex accumulator.
struct KahanSum {
    double re = 0, im = 0, cre = 0, cim = 0;

    void add(std::complex<double> z) {
        double yr = z.real() - cre;
        double tr = re + yr;
        cre = (tr - re) - yr;
        re = tr;
        double yi = z.imag() - cim;
        double ti = im + yi;
        cim = (ti - im) - yi;
        im = ti;
    }

    std::complex<double> value() const { return {re, im}; }
};

} // namespace detail

/// Precomputed p-th roots of unity for one field; tabulated when p <= 2^20,
/// computed on the fly above.
class CharacterTable {
public:
    explicit CharacterTable(const PrimeField& F) : field_(F) {
        if (F.p() <= (u64(1) << 20)) {
            table_.reserve(F.p());
            for (u64 x = 0; x < F.p(); ++x) table_.push_back(root(x));
        }
    }

    const PrimeField& field() const { return field_; }

    /// e_p(x) = exp(2 pi i x / p).
    std::complex<double> operator()(u64 x) const {
        x %= field_.p();
        return table_.empty() ? root(x) : table_[x];
    }

private:
    std::complex<double> root(u64 x) const {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(x) /
                       static_cast<double>(field_.p());
        return {std::cos(angle), std::sin(angle)};
    }

    PrimeField field_;
    std::vector<std::complex<double>> table_;
};

inline std::complex<double> additive_char(const PrimeField& F, u64 x) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(x % F.p()) /
                   static_cast<double>(F.p());
    return {std::cos(angle), std::sin(angle)};
}

inline SumResult finish(detail::KahanSum& acc, u64 terms) {
    SumResult r;
    r.value = acc.value();
    r.magnitude = std::abs(r.value);
    r.terms = terms;
    return r;
}

/// sum over all of F_p of e_p(f(alpha)), with the character-sum bound
/// (deg f - 1) * sqrt(p) evaluated at the exact degree of f.
struct WeilReport {
    SumResult sum;
    int degree = 0;
    double bound = 0.0;
    bool within_bound = false;
};

inline WeilReport weil_sum(const Poly& f) {
    const PrimeField& F = f.field;
    if (f.degree() < 1)
        throw ConstantPolynomial("character sum bound needs a non-constant polynomial");
    CharacterTable ep(F);
    detail::KahanSum acc;
    for (u64 a = 0; a < F.p(); ++a) acc.add(ep(f.eval(a)));
    WeilReport rep;
    rep.sum = finish(acc, F.p());
    rep.degree = f.degree();
    rep.bound = static_cast<double>(rep.degree - 1) *
                std::sqrt(static_cast<double>(F.p()));
    rep.within_bound = rep.sum.magnitude <= rep.bound + 1e-6;
    return rep;
}

/// Incomplete Kloosterman sum: sum_{v=1}^{N} e_p(a/v + b*v).
inline SumResult kloosterman_sum(const PrimeField& F, u64 a, u64 b, u64 N) {
    a %= F.p();
    b %= F.p();
    if (a == 0) throw ZeroNumerator("Kloosterman numerator a must be nonzero mod p");
    if (N < 1 || N > F.p() - 1)
        throw RangeTooLong("range end N must satisfy 1 <= N <= p-1");
    CharacterTable ep(F);
    detail::KahanSum acc;
    for (u64 v = 1; v <= N; ++v)
        acc.add(ep(F.add(F.mul(a, F.inv(v)), F.mul(b, v))));
    return finish(acc, N);
}

/// Numeric evaluation of the short-Kloosterman upper bounds. The constants
/// make both expressions vacuous at any desk-scale (p, n); the vacuous flag
/// records that, and nothing here is ever asserted against a computed sum.
struct KorolevBound {
    double D = 0.0;
    double bound_plain = 0.0;    // n * 260 ln(D) / D
    double bound_twisted = 0.0;  // n * 222 ln(D) / D^{3/4}
    bool in_range = false;       // exp((ln p)^{2/3} (ln ln p)^{1/3}) <= n <= sqrt(p)
    bool vacuous = false;        // a bound is <= 0 or >= n
};

inline KorolevBound korolev_bound(u64 p, u64 n) {
    if (n < 2) throw BadIndex("korolev_bound needs n >= 2");
    KorolevBound kb;
    const double lp = std::log(static_cast<double>(p));
    const double ln_ = std::log(static_cast<double>(n));
    kb.D = std::pow(ln_, 1.5) / (lp * std::pow(std::log(lp), 2.0));
    const double nn = static_cast<double>(n);
    kb.bound_plain = nn * 260.0 * std::log(kb.D) / kb.D;
    kb.bound_twisted = nn * 222.0 * std::log(kb.D) / std::pow(kb.D, 0.75);
    const double lo = std::exp(std::pow(lp, 2.0 / 3.0) *
                               std::pow(std::log(lp), 1.0 / 3.0));
    kb.in_range = nn >= lo && nn <= std::sqrt(static_cast<double>(p));
    kb.vacuous = std::log(kb.D) <= 0.0 || kb.bound_plain >= nn ||
                 kb.bound_twisted >= nn;
    return kb;
}

/// Lower bound for sums of characters at window-bounded arguments:
/// all |a_i| <= t implies |sum e_p(a_i)| >= n * cos(2 pi t / p).
struct ProgressionSumCheck {
    double magnitude = 0.0;
    double lower_bound = 0.0;
    bool pass = false;
};

inline ProgressionSumCheck progression_sum_check(const PrimeField& F,
                                                 const std::vector<i64>& a,
                                                 u64 t) {
    for (i64 x : a)
        if (x > static_cast<i64>(t) || x < -static_cast<i64>(t))
            throw WindowViolation("entry " + std::to_string(x) +
                                  " outside [-t, t], t = " + std::to_string(t));
    CharacterTable ep(F);
    detail::KahanSum acc;
    for (i64 x : a) acc.add(ep(F.from_signed(x)));
    ProgressionSumCheck out;
    out.magnitude = std::abs(acc.value());
    out.lower_bound = static_cast<double>(a.size()) *
                      std::cos(2.0 * std::numbers::pi * static_cast<double>(t) /
                               static_cast<double>(F.p()));
    out.pass = out.magnitude >= out.lower_bound - 1e-9;
    return out;
}

} // namespace rsrepair
