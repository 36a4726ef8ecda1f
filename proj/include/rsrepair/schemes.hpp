#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "rsrepair/field.hpp"
#include "rsrepair/partition.hpp"

namespace rsrepair {

struct TranscriptEntry {
    u64 node;             // evaluation point (canonical residue)
    std::uint32_t bucket; // leaked bucket index

    bool operator==(const TranscriptEntry&) const = default;
};

/// The leaked messages: one bucket index per participating node.
struct Transcript {
    std::vector<TranscriptEntry> entries;
    std::uint32_t bits_per_node = 0;

    bool operator==(const Transcript&) const = default;
};

/// Repair scheme on evaluation points 0..n with failed node ell and
/// per-node partition steps gamma_i = i - ell. The canonical instance uses
/// k = 3 and t = ceil(p/8), which costs exactly 3 bits per node.
class RepairScheme {
public:
    RepairScheme(const PrimeField& field, u64 n, u64 ell, u64 k, u64 t)
        : field_(field), n_(n), ell_(ell), k_(k), t_(t) {
        if (ell > n) throw BadIndex("failed index ell exceeds n");
        if (n >= field.p()) throw BadIndex("n must be smaller than p");
        if (k < 1) throw BadIndex("dimension k must be at least 1");
        if (t < 1 || t >= field.p())
            throw WidthOutOfRange("bucket width t must satisfy 1 <= t < p");
    }

    const PrimeField& field() const { return field_; }
    u64 n() const { return n_; }
    u64 ell() const { return ell_; }
    u64 k() const { return k_; }
    u64 t() const { return t_; }
    u64 s() const { return (field_.p() + t_ - 1) / t_; }
    u64 alpha(u64 i) const { return i % field_.p(); }
    u64 failed_alpha() const { return ell_ % field_.p(); }

    u64 gamma(u64 i) const { return field_.sub(alpha(i), alpha(ell_)); }

    PartitionScheme partition(u64 i) const {
        return PartitionScheme(field_, t_, gamma(i));
    }

    /// Nodes that transmit: all of [0, n] except ell.
    std::vector<u64> participants() const {
        std::vector<u64> out;
        out.reserve(n_);
        for (u64 i = 0; i <= n_; ++i)
            if (i != ell_) out.push_back(i);
        return out;
    }

    std::uint32_t bits_per_node() const { return bits_for_buckets(s()); }
    u64 bandwidth_bits() const { return n_ * bits_per_node(); }

    /// Whether n falls in the applicability range of the short-Kloosterman
    /// bound: 2*exp((ln p)^{2/3} (ln ln p)^{1/3}) <= n <= sqrt(p). Outside it
    /// the construction still runs; validity rests on the exhaustive checker.
    bool in_kloosterman_range() const {
        double lp = std::log(static_cast<double>(field_.p()));
        double lo = 2.0 * std::exp(std::pow(lp, 2.0 / 3.0) *
                                   std::pow(std::log(lp), 1.0 / 3.0));
        double hi = std::sqrt(static_cast<double>(field_.p()));
        double nn = static_cast<double>(n_);
        return nn >= lo && nn <= hi;
    }

private:
    PrimeField field_;
    u64 n_, ell_, k_, t_;
};

/// The 3-bit repair instance: alpha_i = i, gamma_i = i - ell, t = ceil(p/8),
/// k = 3.
inline RepairScheme kloosterman_repair_scheme(u64 p, u64 n, u64 ell) {
    PrimeField F(p);
    return RepairScheme(F, n, ell, 3, (p + 7) / 8);
}

/// cos(2pi/2^B + 2pi/p) * sqrt(p), the dimension budget for the B-bit
/// decoding scheme, nudged down by one part in 2^40 so float rounding can
/// only reject (ties break toward rejection).
inline double weil_admissible_bound(u64 p, u64 B) {
    double angle = 2.0 * std::numbers::pi / std::pow(2.0, static_cast<double>(B)) +
                   2.0 * std::numbers::pi / static_cast<double>(p);
    double bound = std::cos(angle) * std::sqrt(static_cast<double>(p));
    return bound - std::ldexp(std::abs(bound), -40);
}

/// Largest k with k + m <= cos(2pi/2^B + 2pi/p) * sqrt(p).
inline u64 admissible_dimension(u64 p, u64 B, u64 m) {
    if (B < 3) throw BadBitBudget("bit budget B must be at least 3");
    double bound = weil_admissible_bound(p, B);
    double kmax = std::floor(bound) - static_cast<double>(m);
    if (!(kmax >= 1.0))
        throw NoAdmissibleDimension("no dimension admissible at p=" +
                                    std::to_string(p) + " B=" + std::to_string(B) +
                                    " m=" + std::to_string(m));
    // floor(bound) could still exceed bound by rounding of large doubles; at
    // 61-bit p it cannot, but re-check the defining inequality anyway.
    u64 k = static_cast<u64>(kmax);
    while (k >= 1 && static_cast<double>(k + m) > bound) --k;
    if (k < 1)
        throw NoAdmissibleDimension("no dimension admissible");
    return k;
}

/// Decoding scheme for the full-length code: every point of F_p is a node,
/// the nodes in M stay silent, t = ceil(p/2^B) and
/// gamma_i = prod_j (i - ell_j)^{-1}.
class DecodingScheme {
public:
    DecodingScheme(const PrimeField& field, u64 B, u64 k, std::vector<u64> missing)
        : field_(field), B_(B), k_(k), missing_(std::move(missing)) {
        if (B < 3) throw BadBitBudget("bit budget B must be at least 3");
        if (k < 1) throw BadIndex("dimension k must be at least 1");
        for (auto& m : missing_) m %= field_.p();
        std::sort(missing_.begin(), missing_.end());
        for (std::size_t i = 1; i < missing_.size(); ++i)
            if (missing_[i] == missing_[i - 1])
                throw BadIndex("duplicate missing node");
        double bound = weil_admissible_bound(field_.p(), B);
        if (static_cast<double>(k + missing_.size()) > bound)
            throw InadmissibleDimension(
                "k + m = " + std::to_string(k + missing_.size()) +
                " exceeds cos(2pi/2^B + 2pi/p)*sqrt(p) = " + std::to_string(bound));
        if (B >= 63 || ((u64(1) << B) >= field_.p()))
            t_ = 1;
        else
            t_ = (field_.p() + (u64(1) << B) - 1) / (u64(1) << B);
    }

    const PrimeField& field() const { return field_; }
    u64 B() const { return B_; }
    u64 k() const { return k_; }
    u64 t() const { return t_; }
    u64 s() const { return (field_.p() + t_ - 1) / t_; }
    const std::vector<u64>& missing() const { return missing_; }

    bool is_missing(u64 i) const {
        return std::binary_search(missing_.begin(), missing_.end(), i % field_.p());
    }

    u64 gamma(u64 i) const {
        u64 prod = 1;
        for (u64 m : missing_)
            prod = field_.mul(prod, field_.sub(i % field_.p(), m));
        return field_.inv(prod);
    }

    PartitionScheme partition(u64 i) const {
        return PartitionScheme(field_, t_, gamma(i));
    }

    std::vector<u64> participants() const {
        std::vector<u64> out;
        out.reserve(field_.p() - missing_.size());
        for (u64 i = 0; i < field_.p(); ++i)
            if (!is_missing(i)) out.push_back(i);
        return out;
    }

    std::uint32_t bits_per_node() const { return bits_for_buckets(s()); }
    u64 bandwidth_bits() const {
        return (field_.p() - missing_.size()) * bits_per_node();
    }

private:
    PrimeField field_;
    u64 B_, k_;
    std::vector<u64> missing_;
    u64 t_;
};

inline DecodingScheme weil_decoding_scheme(u64 p, u64 B, u64 k,
                                           std::vector<u64> missing) {
    return DecodingScheme(PrimeField(p), B, k, std::move(missing));
}

namespace detail {

template <typename Scheme>
Transcript leak_transcript_impl(const Scheme& scheme, const Poly& f) {
    if (f.degree() >= static_cast<int>(scheme.k()))
        throw DegreeTooHigh("deg f = " + std::to_string(f.degree()) +
                            " not below k = " + std::to_string(scheme.k()));
    Transcript tr;
    tr.bits_per_node = scheme.bits_per_node();
    const u64 t = scheme.t();
    const u64 p = scheme.field().p();
    for (u64 i : scheme.participants()) {
        u64 ginv = scheme.field().inv(scheme.gamma(i));
        u64 value = f.eval(i % p);
        auto bucket = static_cast<std::uint32_t>(scheme.field().mul(ginv, value) / t);
        tr.entries.push_back({i, bucket});
    }
    return tr;
}

} // namespace detail

inline Transcript leak_transcript(const RepairScheme& s, const Poly& f) {
    return detail::leak_transcript_impl(s, f);
}
inline Transcript leak_transcript(const DecodingScheme& s, const Poly& f) {
    return detail::leak_transcript_impl(s, f);
}

/// Bits needed by trivial repair: read k full symbols.
inline u64 trivial_repair_bits(u64 p, u64 k) {
    return k * bits_for_buckets(p);
}

} // namespace rsrepair
