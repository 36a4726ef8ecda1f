#include <doctest.h>

#include "rsrepair/rng.hpp"
#include "rsrepair/schemes.hpp"
#include "rsrepair/verify.hpp"

using namespace rsrepair;

TEST_CASE("adversarial example") {
    SUBCASE("p = 101") {
        PrimeField F(101);
        Poly f = adversarial_example(F);
        CHECK(f.degree() == 49);
        CHECK(f.eval(0) == 51); // -(p-1)/2 mod p
        for (u64 i = 1; i < 101; ++i) {
            i64 b = F.balanced(F.mul(i, f.eval(i)));
            CHECK(b >= 0);
            CHECK(b <= 2);
        }
    }
    SUBCASE("p = 5 expands to -(1 + (x+1)) = -2 - x") {
        PrimeField F(5);
        Poly f = adversarial_example(F);
        CHECK(f.degree() == 1);
        CHECK(f == Poly{F, {3, 4}});
    }
    SUBCASE("p too small") {
        CHECK_THROWS_AS(adversarial_example(PrimeField(3)), BadIndex);
    }
}

TEST_CASE("vacuous windows fail immediately with a constant counterexample") {
    PrimeField F(7);
    std::vector<WindowConstraint> cons{{1, 1}, {2, 1}, {3, 1}};
    Verdict v = check_repair_condition(F, cons, 0, 1, 3); // 2t+1 = p
    CHECK(!v.pass);
    REQUIRE(v.counterexample.has_value());
    CHECK(satisfies_windows(F, *v.counterexample, cons, 3));
    CHECK(v.counterexample->eval(0) != 0);
}

TEST_CASE("decoding condition on the canonical weil instance passes") {
    DecodingScheme scheme = weil_decoding_scheme(101, 3, 4, {0, 1});
    Verdict v = check_decoding_condition(scheme.field(), scheme.k(),
                                         window_constraints(scheme), scheme.t());
    CHECK(v.pass);
    CHECK(v.work <= 531441 + 2); // 27^4 window assignments plus the screen
}

TEST_CASE("decoding condition fails at k = 50, t = 3, gamma_i = 1/i") {
    PrimeField F(101);
    std::vector<WindowConstraint> cons;
    for (u64 i = 1; i < 101; ++i) cons.push_back({i, F.inv(i)});
    Verdict v = check_decoding_condition(F, 50, cons, 3);
    CHECK(!v.pass);
    REQUIRE(v.counterexample.has_value());
    CHECK(satisfies_windows(F, *v.counterexample, cons, 3));
    CHECK(!v.counterexample->is_zero());
    CHECK(*v.counterexample == adversarial_example(F));
}

TEST_CASE("repair condition fails on the same instance") {
    PrimeField F(101);
    std::vector<WindowConstraint> cons;
    for (u64 i = 1; i < 101; ++i) cons.push_back({i, F.inv(i)});
    Verdict v = check_repair_condition(F, cons, 0, 50, 3);
    CHECK(!v.pass);
    REQUIRE(v.counterexample.has_value());
    CHECK(v.counterexample->eval(0) != 0);
}

TEST_CASE("k = 0 passes vacuously") {
    PrimeField F(101);
    Verdict v = check_decoding_condition(F, 0, {}, 3);
    CHECK(v.pass);
}

TEST_CASE("window and exhaustive strategies agree") {
    PrimeField F(13);
    SplitMix64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        u64 t = 2 + rng.below(2);
        u64 k = 1 + rng.below(2);
        std::vector<WindowConstraint> cons;
        for (u64 i = 0; i < 13; ++i) cons.push_back({i, 1 + rng.below(12)});
        Verdict a = check_decoding_condition(F, k, cons, t, kDefaultSearchBudget,
                                             SearchStrategy::Windows);
        Verdict b = check_decoding_condition(F, k, cons, t, kDefaultSearchBudget,
                                             SearchStrategy::Exhaustive);
        CHECK(a.pass == b.pass);
        if (!a.pass) {
            CHECK(satisfies_windows(F, *a.counterexample, cons, t));
            CHECK(satisfies_windows(F, *b.counterexample, cons, t));
        }
    }
}

TEST_CASE("budget is enforced") {
    PrimeField F(1009);
    std::vector<WindowConstraint> cons;
    for (u64 i = 1; i < 1009; ++i) cons.push_back({i, i});
    CHECK_THROWS_AS(check_decoding_condition(F, 6, cons, 100, 1000),
                    SearchBudgetExceeded);
}

TEST_CASE("brute injectivity") {
    SUBCASE("identity on two coordinates is injective") {
        PrimeField F(13);
        LeakageFamily fam;
        fam.s = 13;
        for (u64 i = 0; i < 13; ++i) {
            fam.alphas.push_back(i);
            std::vector<std::uint32_t> table(13, 0);
            if (i < 2)
                for (u64 v = 0; v < 13; ++v) table[v] = static_cast<std::uint32_t>(v);
            fam.tables.push_back(table);
        }
        CHECK(brute_injectivity(F, 2, fam).pass);
    }
    SUBCASE("pigeonhole forces a collision at p=7, k=3, s=2") {
        PrimeField F(7);
        std::vector<u64> alphas{0, 1, 2, 3, 4, 5, 6};
        std::vector<u64> gammas(7, 1);
        LeakageFamily fam = family_from_gammas(F, alphas, gammas, 4); // s = 2
        InjectivityVerdict v = brute_injectivity(F, 3, fam);
        CHECK(!v.pass);
        REQUIRE(v.collision.has_value());
        auto& [f, g] = *v.collision;
        CHECK(!(f == g));
        for (std::size_t i = 0; i < alphas.size(); ++i)
            CHECK(fam.leak(i, f.eval(alphas[i])) == fam.leak(i, g.eval(alphas[i])));
    }
    SUBCASE("repair-scheme family viewed as decoding is not injective") {
        RepairScheme scheme = kloosterman_repair_scheme(101, 10, 0);
        const PrimeField& F = scheme.field();
        std::vector<u64> alphas, gammas;
        for (u64 i : scheme.participants()) {
            alphas.push_back(i);
            gammas.push_back(scheme.gamma(i));
        }
        LeakageFamily fam = family_from_gammas(F, alphas, gammas, scheme.t());
        InjectivityVerdict v = brute_injectivity(F, 3, fam);
        CHECK(!v.pass);
        REQUIRE(v.collision.has_value());
        auto& [f, g] = *v.collision;
        for (std::size_t i = 0; i < alphas.size(); ++i)
            CHECK(fam.leak(i, f.eval(alphas[i])) == fam.leak(i, g.eval(alphas[i])));
    }
}

TEST_CASE("pigeonhole threshold") {
    CHECK(pigeonhole_threshold(7, 7, 2) == doctest::Approx(2.4945).epsilon(1e-3));
    CHECK(pigeonhole_threshold(13, 13, 4) == doctest::Approx(7.0272).epsilon(1e-3));
    CHECK(pigeonhole_threshold(13, 13, 1) == 0.0);
}

TEST_CASE("pigeonhole consistency on a small grid") {
    for (u64 p : {7ULL, 11ULL}) {
        PrimeField F(p);
        std::vector<u64> alphas, gammas;
        for (u64 i = 0; i < p; ++i) {
            alphas.push_back(i);
            gammas.push_back(1 + (i % (p - 1)));
        }
        for (u64 t : {2ULL, 3ULL}) {
            LeakageFamily fam = family_from_gammas(F, alphas, gammas, t);
            for (u64 k = 1; k <= 4; ++k) {
                if (static_cast<double>(k) <= pigeonhole_threshold(p, p, fam.s))
                    continue;
                CHECK(!brute_injectivity(F, k, fam).pass);
            }
        }
    }
}

TEST_CASE("random scheme search") {
    PrimeField F(13);
    SUBCASE("k = 2, s = 4 succeeds essentially always") {
        SchemeSearchResult r = random_scheme_search(F, 13, 2, 4, 50, 2024);
        CHECK(r.rate >= 0.95);
        CHECK(r.bound == doctest::Approx(1.0 - 28561.0 / 16777216.0));
        CHECK(brute_injectivity(F, 2, r.family).pass);
    }
    SUBCASE("k above the pigeonhole threshold is certified impossible") {
        try {
            random_scheme_search(F, 13, 9, 2, 10, 7);
            FAIL("expected NoInjectiveFamilyFound");
        } catch (const NoInjectiveFamilyFound& e) {
            CHECK(e.rate == 0.0);
        }
    }
    SUBCASE("zero trials") {
        CHECK_THROWS_AS(random_scheme_search(F, 13, 2, 4, 0, 1),
                        NoInjectiveFamilyFound);
    }
    SUBCASE("determinism given the seed") {
        SchemeSearchResult a = random_scheme_search(F, 13, 2, 4, 10, 5);
        SchemeSearchResult b = random_scheme_search(F, 13, 2, 4, 10, 5);
        CHECK(a.rate == b.rate);
        CHECK(a.family.tables == b.family.tables);
    }
}
