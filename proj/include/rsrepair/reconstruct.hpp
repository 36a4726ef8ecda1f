#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsrepair/field.hpp"
#include "rsrepair/schemes.hpp"

namespace rsrepair {

constexpr u64 kDefaultSearchBudget = u64(1) << 28;
constexpr u64 kDefaultBruteBudget = u64(1) << 24;

/// All polynomials consistent with a transcript.
struct CandidateSet {
    std::vector<Poly> candidates; // sorted by coefficient vector
    bool exhausted = false;       // search covered the full space
    u64 work = 0;                 // assignments examined
};

namespace detail {

/// One leaked constraint: gamma_inv * f(alpha) must land in
/// [bucket*t, bucket_end).
struct BucketConstraint {
    u64 alpha;
    u64 gamma;
    u64 gamma_inv;
    u64 lo;   // bucket * t
    u64 end;  // min((bucket+1)*t, p)
    u64 size() const { return end - lo; }
};

inline void sort_candidates(std::vector<Poly>& cs) {
    std::sort(cs.begin(), cs.end(), [](const Poly& a, const Poly& b) {
        return a.normalized() < b.normalized();
    });
}

/// Exhaustive search over the value assignments of the k constraints with
/// the smallest buckets; every other constraint is checked via precomputed
/// Lagrange basis evaluations. Complete by construction: a consistent
/// polynomial of degree < k is determined by its values at the k anchors.
inline CandidateSet search_consistent(const PrimeField& F, u64 k,
                                      std::vector<BucketConstraint> constraints,
                                      u64 budget) {
    CandidateSet result;
    const u64 p = F.p();

    if (constraints.size() < k) {
        // Underdetermined: fall back to coefficient exhaustion.
        double cost = 1;
        for (u64 i = 0; i < k; ++i) cost *= static_cast<double>(p);
        if (cost > static_cast<double>(budget))
            throw SearchBudgetExceeded("p^k exceeds search budget");
        std::vector<u64> coeffs(k, 0);
        for (;;) {
            ++result.work;
            Poly f{F, coeffs};
            bool ok = true;
            for (const auto& c : constraints) {
                u64 u = F.mul(c.gamma_inv, f.eval(c.alpha));
                if (u < c.lo || u >= c.end) { ok = false; break; }
            }
            if (ok) result.candidates.push_back(f);
            std::size_t d = 0;
            while (d < k && ++coeffs[d] == p) coeffs[d++] = 0;
            if (d == k) break;
        }
        result.exhausted = true;
        sort_candidates(result.candidates);
        return result;
    }

    // Anchors: k constraints with the smallest buckets (stable order).
    std::stable_sort(constraints.begin(), constraints.end(),
                     [](const BucketConstraint& a, const BucketConstraint& b) {
                         return a.size() < b.size();
                     });
    std::vector<BucketConstraint> anchors(constraints.begin(),
                                          constraints.begin() + k);
    std::vector<BucketConstraint> checks(constraints.begin() + k,
                                         constraints.end());

    double space = 1;
    for (const auto& a : anchors) space *= static_cast<double>(a.size());
    if (space > static_cast<double>(budget))
        throw SearchBudgetExceeded("t^k exceeds search budget");

    // Candidate values per anchor, in bucket order (canonical enumeration).
    std::vector<std::vector<u64>> values(k);
    for (u64 j = 0; j < k; ++j) {
        values[j].reserve(anchors[j].size());
        for (u64 a = anchors[j].lo; a < anchors[j].end; ++a)
            values[j].push_back(F.mul(anchors[j].gamma, a));
    }

    // Lagrange basis of the anchor abscissas evaluated at each check point,
    // folded with that check's gamma_inv:  u_c = sum_j v_j * W[c][j].
    std::vector<u64> denom(k, 1);
    for (u64 j = 0; j < k; ++j) {
        for (u64 i = 0; i < k; ++i)
            if (i != j)
                denom[j] = F.mul(denom[j], F.sub(anchors[j].alpha, anchors[i].alpha));
        denom[j] = F.inv(denom[j]);
    }
    const std::size_t nchecks = checks.size();
    std::vector<std::vector<u64>> W(nchecks, std::vector<u64>(k));
    for (std::size_t c = 0; c < nchecks; ++c)
        for (u64 j = 0; j < k; ++j) {
            u64 num = 1;
            for (u64 i = 0; i < k; ++i)
                if (i != j)
                    num = F.mul(num, F.sub(checks[c].alpha, anchors[i].alpha));
            W[c][j] = F.mul(checks[c].gamma_inv, F.mul(num, denom[j]));
        }

    // Premultiplied first-check contributions, so the DFS leaf test is a
    // single modular add.
    std::vector<std::vector<u64>> first(k);
    if (nchecks > 0)
        for (u64 j = 0; j < k; ++j) {
            first[j].resize(values[j].size());
            for (std::size_t v = 0; v < values[j].size(); ++v)
                first[j][v] = F.mul(W[0][j], values[j][v]);
        }

    std::vector<std::size_t> choice(k, 0);
    std::vector<std::pair<u64, u64>> pts(k);
    for (u64 j = 0; j < k; ++j) pts[j].first = anchors[j].alpha;

    std::function<void(u64, u64)> dfs = [&](u64 depth, u64 partial0) {
        if (depth == k) {
            ++result.work;
            if (nchecks > 0 && (partial0 < checks[0].lo || partial0 >= checks[0].end))
                return;
            for (std::size_t c = 1; c < nchecks; ++c) {
                u64 u = 0;
                for (u64 j = 0; j < k; ++j)
                    u = F.add(u, F.mul(W[c][j], values[j][choice[j]]));
                if (u < checks[c].lo || u >= checks[c].end) return;
            }
            for (u64 j = 0; j < k; ++j) pts[j].second = values[j][choice[j]];
            result.candidates.push_back(interpolate(F, pts));
            return;
        }
        for (std::size_t v = 0; v < values[depth].size(); ++v) {
            choice[depth] = v;
            u64 next = nchecks > 0 ? F.add(partial0, first[depth][v]) : 0;
            dfs(depth + 1, next);
        }
    };
    dfs(0, 0);

    result.exhausted = true;
    sort_candidates(result.candidates);
    return result;
}

template <typename Scheme>
std::vector<BucketConstraint> constraints_from_transcript(const Scheme& scheme,
                                                          const Transcript& tr) {
    const PrimeField& F = scheme.field();
    auto participants = scheme.participants();
    if (tr.entries.size() != participants.size())
        throw InconsistentTranscript("transcript does not cover the participating nodes");
    std::vector<BucketConstraint> out;
    out.reserve(tr.entries.size());
    const u64 t = scheme.t();
    const u64 s = scheme.s();
    std::vector<bool> seen(participants.size(), false);
    for (const auto& e : tr.entries) {
        auto it = std::find(participants.begin(), participants.end(), e.node);
        if (it == participants.end())
            throw InconsistentTranscript("entry for non-participating node " +
                                         std::to_string(e.node));
        std::size_t idx = static_cast<std::size_t>(it - participants.begin());
        if (seen[idx])
            throw InconsistentTranscript("duplicate entry for node " +
                                         std::to_string(e.node));
        seen[idx] = true;
        if (e.bucket >= s)
            throw IndexOutOfRange("bucket index " + std::to_string(e.bucket) +
                                  " out of range");
        u64 gamma = scheme.gamma(e.node);
        u64 lo = static_cast<u64>(e.bucket) * t;
        u64 end = std::min<u64>(lo + t, F.p());
        out.push_back({e.node % F.p(), gamma, F.inv(gamma), lo, end});
    }
    return out;
}

} // namespace detail

template <typename Scheme>
CandidateSet enumerate_consistent(const Scheme& scheme, const Transcript& tr,
                                  u64 budget = kDefaultSearchBudget) {
    return detail::search_consistent(
        scheme.field(), scheme.k(),
        detail::constraints_from_transcript(scheme, tr), budget);
}

/// Independent oracle: iterate all p^k polynomials. Usable when p^k fits the
/// budget; cross-checks the constrained search.
template <typename Scheme>
CandidateSet brute_force_consistent(const Scheme& scheme, const Transcript& tr,
                                    u64 budget = kDefaultBruteBudget) {
    const PrimeField& F = scheme.field();
    auto constraints = detail::constraints_from_transcript(scheme, tr);
    const u64 p = F.p();
    const u64 k = scheme.k();
    double cost = 1;
    for (u64 i = 0; i < k; ++i) cost *= static_cast<double>(p);
    if (cost > static_cast<double>(budget))
        throw SearchBudgetExceeded("p^k exceeds brute-force budget");

    CandidateSet result;
    std::vector<u64> coeffs(k, 0);
    for (;;) {
        ++result.work;
        Poly f{F, coeffs};
        bool ok = true;
        for (const auto& c : constraints) {
            u64 u = F.mul(c.gamma_inv, f.eval(c.alpha));
            if (u < c.lo || u >= c.end) { ok = false; break; }
        }
        if (ok) result.candidates.push_back(f);
        std::size_t d = 0;
        while (d < k && ++coeffs[d] == p) coeffs[d++] = 0;
        if (d == k) break;
    }
    result.exhausted = true;
    detail::sort_candidates(result.candidates);
    return result;
}

/// The repair function G of the arithmetic-progression framework: recover
/// f(alpha_ell) from the leaked buckets. Succeeds iff every consistent
/// candidate agrees at the failed point.
inline u64 repair(const RepairScheme& scheme, const Transcript& tr,
                  u64 budget = kDefaultSearchBudget) {
    CandidateSet cs = enumerate_consistent(scheme, tr, budget);
    if (cs.candidates.empty())
        throw InconsistentTranscript("no polynomial is consistent with the transcript");
    const u64 alpha = scheme.failed_alpha();
    const u64 value = cs.candidates.front().eval(alpha);
    for (const Poly& f : cs.candidates)
        if (f.eval(alpha) != value)
            throw AmbiguousRepair("consistent candidates disagree at the failed node");
    return value;
}

/// The decoding function G: recover the full polynomial (hence the whole
/// codeword, including the silent nodes).
template <typename Scheme = DecodingScheme>
Poly decode(const Scheme& scheme, const Transcript& tr,
            u64 budget = kDefaultSearchBudget) {
    CandidateSet cs = enumerate_consistent(scheme, tr, budget);
    if (cs.candidates.empty())
        throw InconsistentTranscript("no polynomial is consistent with the transcript");
    if (cs.candidates.size() > 1)
        throw AmbiguousDecoding("transcript map is not injective on this instance");
    return cs.candidates.front();
}

} // namespace rsrepair
