#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsrepair/field.hpp"

namespace rsrepair {

/// Partition of F_p into s = ceil(p/t) arithmetic progressions of length t
/// (the last one possibly shorter), scaled by a nonzero step gamma:
///   gamma*A_j,  A_j = { jt, jt+1, ..., jt+t-1 }  (last bucket ends at p-1).
/// The leakage function tau maps x to the index of the bucket containing it.
class PartitionScheme {
public:
    PartitionScheme(const PrimeField& field, u64 t, u64 gamma)
        : field_(field), t_(t), gamma_(gamma % field.p()) {
        if (gamma_ == 0) throw ZeroStep("partition step must be nonzero");
        if (t < 1 || t >= field.p())
            throw WidthOutOfRange("bucket width t must satisfy 1 <= t < p");
        gamma_inv_ = field.inv(gamma_);
        s_ = (field.p() + t - 1) / t;
    }

    const PrimeField& field() const { return field_; }
    u64 t() const { return t_; }
    u64 s() const { return s_; }
    u64 gamma() const { return gamma_; }
    u64 gamma_inv() const { return gamma_inv_; }

    /// Bucket index of x: unscale by gamma, then integer-divide by t.
    std::uint32_t leak(u64 x) const {
        return static_cast<std::uint32_t>(field_.mul(gamma_inv_, x % field_.p()) / t_);
    }

    u64 bucket_size(std::uint32_t j) const {
        check_index(j);
        if (j + 1 < s_) return t_;
        return field_.p() - (s_ - 1) * t_;
    }

    /// The set gamma*A_j, materialized on demand.
    std::vector<u64> bucket_members(std::uint32_t j) const {
        check_index(j);
        std::vector<u64> out;
        out.reserve(bucket_size(j));
        const u64 end = (j + 1 < s_) ? (j + 1) * t_ : field_.p();
        for (u64 a = j * t_; a < end; ++a)
            out.push_back(field_.mul(gamma_, a));
        return out;
    }

private:
    void check_index(std::uint32_t j) const {
        if (j >= s_)
            throw IndexOutOfRange("bucket index " + std::to_string(j) +
                                  " out of range, s = " + std::to_string(s_));
    }

    PrimeField field_;
    u64 t_;
    u64 gamma_;
    u64 gamma_inv_;
    u64 s_;
};

inline PartitionScheme build_partition(const PrimeField& field, u64 t, u64 gamma) {
    return PartitionScheme(field, t, gamma);
}

/// Bits needed to encode a bucket index.
inline std::uint32_t bits_for_buckets(u64 s) {
    std::uint32_t b = 0;
    while ((u64(1) << b) < s) ++b;
    return b;
}

} // namespace rsrepair
