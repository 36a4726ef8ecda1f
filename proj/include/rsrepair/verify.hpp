#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rsrepair/field.hpp"
#include "rsrepair/partition.hpp"
#include "rsrepair/reconstruct.hpp"
#include "rsrepair/rng.hpp"

namespace rsrepair {

/// Outcome of a condition check. A fail always carries a counterexample that
/// re-verifies against the raw window constraints.
struct Verdict {
    bool pass = false;
    std::optional<Poly> counterexample;
    u64 work = 0;
};

/// One window constraint: f(alpha) must lie in gamma * [-t, t].
struct WindowConstraint {
    u64 alpha;
    u64 gamma;
};

enum class SearchStrategy { Auto, Windows, Exhaustive };

/// The worked counterexample polynomial f(x) = (1 - (x+1)^((p-1)/2)) / x
///                                            = -sum_{i=0}^{(p-3)/2} (x+1)^i,
/// of degree (p-3)/2, with f(i) in i^{-1} * {0,1,2} for all i != 0 and
/// f(0) = -(p-1)/2.
inline Poly adversarial_example(const PrimeField& F) {
    const u64 p = F.p();
    if (p < 5) throw BadIndex("adversarial example needs p >= 5");
    const u64 dmax = (p - 3) / 2;
    std::vector<u64> sum(dmax + 1, 0);
    std::vector<u64> pw{1}; // (x+1)^i
    for (u64 i = 0; i <= dmax; ++i) {
        for (std::size_t j = 0; j < pw.size(); ++j)
            sum[j] = F.add(sum[j], pw[j]);
        if (i == dmax) break;
        // pw *= (x + 1)
        pw.push_back(0);
        for (std::size_t j = pw.size(); j-- > 1;)
            pw[j] = F.add(pw[j], pw[j - 1]);
    }
    for (auto& c : sum) c = F.neg(c);
    return Poly{F, std::move(sum)};
}

inline bool satisfies_windows(const PrimeField& F, const Poly& f,
                              const std::vector<WindowConstraint>& constraints,
                              u64 t) {
    for (const auto& c : constraints) {
        u64 u = F.mul(F.inv(c.gamma), f.eval(c.alpha));
        if (!F.in_window(u, t)) return false;
    }
    return true;
}

namespace detail {

/// Finds a polynomial of degree < k inside every window that the predicate
/// flags as a violation, or proves none exists. Two independent strategies:
/// enumerate window-value assignments over k anchor points, or exhaust all
/// p^k coefficient vectors. A short screen of known hard candidates runs
/// first so oversized instances can still fail fast.
inline Verdict find_window_violation(
    const PrimeField& F, u64 k,
    const std::vector<WindowConstraint>& constraints, u64 t, u64 budget,
    SearchStrategy strategy,
    const std::function<bool(const Poly&)>& violates) {
    const u64 p = F.p();
    Verdict verdict;

    if (k == 0) { // empty code, vacuously fine
        verdict.pass = true;
        return verdict;
    }

    // Screen: constant one, and the explicit low-window high-degree example.
    {
        std::vector<Poly> screen;
        screen.push_back(Poly{F, {1}});
        if (p >= 5 && (p - 3) / 2 < k) screen.push_back(adversarial_example(F));
        for (const Poly& f : screen) {
            ++verdict.work;
            if (satisfies_windows(F, f, constraints, t) && violates(f)) {
                verdict.pass = false;
                verdict.counterexample = f;
                return verdict;
            }
        }
    }

    const u64 window = std::min<u64>(2 * t + 1, p);
    double window_cost = 1, exhaust_cost = 1;
    for (u64 i = 0; i < k; ++i) {
        window_cost *= static_cast<double>(window);
        exhaust_cost *= static_cast<double>(p);
    }
    bool use_windows;
    switch (strategy) {
        case SearchStrategy::Windows: use_windows = true; break;
        case SearchStrategy::Exhaustive: use_windows = false; break;
        default: use_windows = window_cost <= exhaust_cost && constraints.size() >= k;
    }
    if (use_windows && constraints.size() < k)
        throw SearchBudgetExceeded("window strategy needs at least k constraints");
    if ((use_windows ? window_cost : exhaust_cost) > static_cast<double>(budget))
        throw SearchBudgetExceeded("search space exceeds budget");

    if (!use_windows) {
        std::vector<u64> coeffs(k, 0);
        for (;;) {
            ++verdict.work;
            Poly f{F, coeffs};
            if (satisfies_windows(F, f, constraints, t) && violates(f)) {
                verdict.pass = false;
                verdict.counterexample = f;
                return verdict;
            }
            std::size_t d = 0;
            while (d < k && ++coeffs[d] == p) coeffs[d++] = 0;
            if (d == k) break;
        }
        verdict.pass = true;
        return verdict;
    }

    // Window-assignment enumeration over the first k constraints.
    std::vector<WindowConstraint> anchors(constraints.begin(),
                                          constraints.begin() + k);
    std::vector<WindowConstraint> checks(constraints.begin() + k,
                                         constraints.end());

    std::vector<std::vector<u64>> values(k);
    for (u64 j = 0; j < k; ++j) {
        if (window == p) {
            values[j].resize(p);
            for (u64 v = 0; v < p; ++v) values[j][v] = v;
        } else {
            values[j].reserve(window);
            for (i64 w = -static_cast<i64>(t); w <= static_cast<i64>(t); ++w)
                values[j].push_back(F.mul(anchors[j].gamma, F.from_signed(w)));
        }
    }

    // Lagrange basis at the check points, folded with gamma_inv of the check.
    std::vector<u64> denom(k, 1);
    for (u64 j = 0; j < k; ++j) {
        for (u64 i = 0; i < k; ++i)
            if (i != j)
                denom[j] = F.mul(denom[j], F.sub(anchors[j].alpha, anchors[i].alpha));
        denom[j] = F.inv(denom[j]);
    }
    auto basis_at = [&](u64 x, u64 j) {
        u64 num = 1;
        for (u64 i = 0; i < k; ++i)
            if (i != j) num = F.mul(num, F.sub(x, anchors[i].alpha));
        return F.mul(num, denom[j]);
    };
    const std::size_t nchecks = checks.size();
    std::vector<std::vector<u64>> W(nchecks, std::vector<u64>(k));
    std::vector<u64> check_ginv(nchecks);
    for (std::size_t c = 0; c < nchecks; ++c) {
        check_ginv[c] = F.inv(checks[c].gamma);
        for (u64 j = 0; j < k; ++j)
            W[c][j] = F.mul(check_ginv[c], basis_at(checks[c].alpha, j));
    }
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

    std::optional<Poly> found;
    std::function<void(u64, u64)> dfs = [&](u64 depth, u64 partial0) {
        if (found) return;
        if (depth == k) {
            ++verdict.work;
            if (nchecks > 0 && !F.in_window(partial0, t)) return;
            for (std::size_t c = 1; c < nchecks; ++c) {
                u64 u = 0;
                for (u64 j = 0; j < k; ++j)
                    u = F.add(u, F.mul(W[c][j], values[j][choice[j]]));
                if (!F.in_window(u, t)) return;
            }
            for (u64 j = 0; j < k; ++j) pts[j].second = values[j][choice[j]];
            Poly f = interpolate(F, pts);
            if (violates(f)) found = f;
            return;
        }
        for (std::size_t v = 0; v < values[depth].size() && !found; ++v) {
            choice[depth] = v;
            u64 next = nchecks > 0 ? F.add(partial0, first[depth][v]) : 0;
            dfs(depth + 1, next);
        }
    };
    dfs(0, 0);

    if (found) {
        verdict.pass = false;
        verdict.counterexample = *found;
    } else {
        verdict.pass = true;
    }
    return verdict;
}

} // namespace detail

/// Sufficient repair condition: pass iff no polynomial of degree < k lies in
/// every surviving node's window yet is nonzero at the failed point.
inline Verdict check_repair_condition(
    const PrimeField& F, const std::vector<WindowConstraint>& constraints,
    u64 alpha_ell, u64 k, u64 t, u64 budget = kDefaultSearchBudget,
    SearchStrategy strategy = SearchStrategy::Auto) {
    return detail::find_window_violation(
        F, k, constraints, t, budget, strategy,
        [&](const Poly& f) { return f.eval(alpha_ell) != 0; });
}

/// Sufficient decoding condition: pass iff the zero polynomial is the only
/// one of degree < k inside every participating node's window.
inline Verdict check_decoding_condition(
    const PrimeField& F, u64 k,
    const std::vector<WindowConstraint>& constraints, u64 t,
    u64 budget = kDefaultSearchBudget,
    SearchStrategy strategy = SearchStrategy::Auto) {
    return detail::find_window_violation(
        F, k, constraints, t, budget, strategy,
        [](const Poly& f) { return !f.is_zero(); });
}

/// Window constraints of a repair scheme instance (everything but the failed
/// node).
inline std::vector<WindowConstraint> window_constraints(const RepairScheme& s) {
    std::vector<WindowConstraint> out;
    for (u64 i : s.participants()) out.push_back({s.alpha(i), s.gamma(i)});
    return out;
}

inline std::vector<WindowConstraint> window_constraints(const DecodingScheme& s) {
    std::vector<WindowConstraint> out;
    for (u64 i : s.participants()) out.push_back({i, s.gamma(i)});
    return out;
}

/// An arbitrary leakage family: per node, a full table F_p -> [s].
struct LeakageFamily {
    std::vector<u64> alphas;
    std::vector<std::vector<std::uint32_t>> tables;
    u64 s = 0;

    std::uint32_t leak(std::size_t node, u64 value) const {
        return tables[node][value];
    }
};

/// Family induced by arithmetic-progression partitions with the given steps.
inline LeakageFamily family_from_gammas(const PrimeField& F,
                                        const std::vector<u64>& alphas,
                                        const std::vector<u64>& gammas, u64 t) {
    LeakageFamily fam;
    fam.alphas = alphas;
    fam.s = (F.p() + t - 1) / t;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        PartitionScheme part(F, t, gammas[i]);
        std::vector<std::uint32_t> table(F.p());
        for (u64 v = 0; v < F.p(); ++v) table[v] = part.leak(v);
        fam.tables.push_back(std::move(table));
    }
    return fam;
}

struct InjectivityVerdict {
    bool pass = false;
    std::optional<std::pair<Poly, Poly>> collision;
    u64 work = 0;
};

/// Hash-set sweep over all p^k polynomials; fail returns the first colliding
/// pair in lexicographic coefficient order. The budget is charged per
/// polynomial actually enumerated, so a collision forced by the pigeonhole
/// principle is found long before p^k steps.
inline InjectivityVerdict brute_injectivity(const PrimeField& F, u64 k,
                                            const LeakageFamily& fam,
                                            u64 budget = kDefaultBruteBudget) {
    InjectivityVerdict verdict;
    const u64 p = F.p();
    std::unordered_map<std::string, std::vector<u64>> seen;
    std::vector<u64> coeffs(k, 0);
    std::string key(fam.alphas.size() * 4, '\0');
    for (;;) {
        if (++verdict.work > budget)
            throw SearchBudgetExceeded("injectivity sweep exceeds budget");
        Poly f{F, coeffs};
        for (std::size_t i = 0; i < fam.alphas.size(); ++i) {
            std::uint32_t b = fam.leak(i, f.eval(fam.alphas[i]));
            key[4 * i + 0] = static_cast<char>(b & 0xff);
            key[4 * i + 1] = static_cast<char>((b >> 8) & 0xff);
            key[4 * i + 2] = static_cast<char>((b >> 16) & 0xff);
            key[4 * i + 3] = static_cast<char>((b >> 24) & 0xff);
        }
        auto [it, inserted] = seen.try_emplace(key, coeffs);
        if (!inserted) {
            verdict.pass = false;
            verdict.collision = std::make_pair(Poly{F, it->second}, f);
            return verdict;
        }
        std::size_t d = 0;
        while (d < k && ++coeffs[d] == p) coeffs[d++] = 0;
        if (d == k) break;
    }
    verdict.pass = true;
    return verdict;
}

/// n*log(s)/log(p): any k strictly above this is non-injective without
/// search (more codewords than transcripts).
inline double pigeonhole_threshold(u64 p, u64 n, u64 s) {
    if (s < 2) return 0.0;
    return static_cast<double>(n) * std::log(static_cast<double>(s)) /
           std::log(static_cast<double>(p));
}

struct SchemeSearchResult {
    LeakageFamily family;     // first injective family found
    double rate = 0.0;        // empirical injectivity fraction
    double bound = 0.0;       // union-bound prediction 1 - p^{2k}/s^{n-k+1}
    u64 trials = 0;
    u64 seed = 0;
};

/// The probabilistic-existence experiment: sample `trials` uniform leakage
/// families on the points 0..n-1 and test each for injectivity.
inline SchemeSearchResult random_scheme_search(const PrimeField& F, u64 n, u64 k,
                                               u64 s, u64 trials, u64 seed,
                                               u64 budget = kDefaultBruteBudget) {
    if (n > F.p()) throw BadIndex("n may not exceed p");
    const double bound =
        1.0 - std::pow(static_cast<double>(F.p()), 2.0 * static_cast<double>(k)) /
                  std::pow(static_cast<double>(s),
                           static_cast<double>(n) - static_cast<double>(k) + 1.0);

    if (static_cast<double>(k) > pigeonhole_threshold(F.p(), n, s))
        throw NoInjectiveFamilyFound(
            "k above the pigeonhole threshold, no injective family exists", 0.0,
            bound);

    SplitMix64 rng(seed);
    std::vector<u64> alphas(n);
    for (u64 i = 0; i < n; ++i) alphas[i] = i;

    SchemeSearchResult result;
    result.trials = trials;
    result.seed = seed;
    result.bound = bound;
    u64 successes = 0;
    bool have_family = false;
    for (u64 trial = 0; trial < trials; ++trial) {
        LeakageFamily fam;
        fam.alphas = alphas;
        fam.s = s;
        for (u64 i = 0; i < n; ++i) {
            std::vector<std::uint32_t> table(F.p());
            for (u64 v = 0; v < F.p(); ++v)
                table[v] = static_cast<std::uint32_t>(rng.below(s));
            fam.tables.push_back(std::move(table));
        }
        if (brute_injectivity(F, k, fam, budget).pass) {
            ++successes;
            if (!have_family) {
                result.family = fam;
                have_family = true;
            }
        }
    }
    result.rate = trials == 0 ? 0.0
                              : static_cast<double>(successes) /
                                    static_cast<double>(trials);
    if (!have_family)
        throw NoInjectiveFamilyFound("no injective family in " +
                                         std::to_string(trials) + " trials",
                                     result.rate, bound);
    return result;
}

} // namespace rsrepair
