#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "skz/massey.hpp"

using namespace skz;

namespace {

CohomologyOptions opts(int s, int t) {
    CohomologyOptions o;
    o.s_max = s;
    o.t_max = t;
    return o;
}

std::string pw(const std::string& x, int i) { return i == 1 ? x : x + "^" + std::to_string(i); }

// Σ_{i=1}^{p-1} [(x^i)*|(x^{p-i})*]
Cochain power_pairs(const GradedAlgebra& a, const std::string& x, int n) {
    std::vector<std::pair<long long, std::string>> terms;
    for (int i = 1; i < n; ++i) terms.push_back({1, pw(x, i) + "|" + pw(x, n - i)});
    return cochain_from_terms(a, terms);
}

CohomClass scale(const CohomologyRing& h, const CohomClass& c, long long k) {
    return h.add(h.zero_class(c.s, c.t), c, h.field().from_int(k));
}

CohomClass neg(const CohomologyRing& h, const CohomClass& c) { return scale(h, c, -1); }

CohomClass bar_class(const CohomologyRing& h, const CohomClass& c) { return (c.s + c.t) % 2 ? c : neg(h, c); }

struct C3Classes {
    CohomClass alpha, beta, x1, x2, u, v;
};

C3Classes c3_classes(const CohomologyRing& h) {
    const auto& a = h.algebra();
    int p = int(h.field().p());
    C3Classes c;
    c.alpha = h.classify(cochain_from_terms(a, {{1, "a"}}));
    c.beta = h.classify(cochain_from_terms(a, {{1, "b"}}));
    c.x1 = h.classify(cochain_from_terms(a, {{1, "a|c"}, {1, "a^2|b"}}));
    c.x2 = h.classify(cochain_from_terms(a, {{-1, "a|b^2"}, {-1, "c|b"}}));
    c.u = h.classify(power_pairs(a, "a", p));
    c.v = h.classify(power_pairs(a, "b", p));
    return c;
}

}  // namespace

TEST_CASE("symmetric power of z in a truncated polynomial algebra") {
    for (auto [p, n] : std::vector<std::pair<unsigned, int>>{{3, 1}, {3, 2}, {5, 1}}) {
        int pn = int(ipow(p, n));
        auto a = truncated_polynomial(p, 2, n);
        auto h = CohomologyRing::compute(a, opts(2, 2 * pn));
        auto z = h->classify(cochain_from_terms(*a, {{1, "x"}}));
        auto m = massey_symmetric(*h, z, pn);
        REQUIRE(m.defined);
        CHECK(m.s == 2);
        CHECK(m.t == 2 * pn);
        CHECK(m.coset.exact);
        CHECK(m.coset.basis.empty());
        CHECK(m.representative == power_pairs(*a, "x", pn));
        CHECK(h->dim(2, 2 * pn) == 1u);
        CHECK_FALSE(m.coset.value.is_zero());
        // the defining system is a_i = [y_i]
        for (int i = 1; i < pn; ++i) CHECK(m.defining_system[i - 1] == cochain_from_terms(*a, {{1, pw("x", i)}}));
        // shorter powers vanish
        for (int k = 2; k < pn; ++k) {
            auto mk = massey_symmetric(*h, z, k);
            REQUIRE(mk.defined);
            CHECK(mk.coset.value.is_zero());
        }
    }
}

TEST_CASE("triple product of alpha alpha beta on C(3)") {
    auto a = from_spec(family_presentation(GroupSpec::c_group(3, 3)));
    auto h = CohomologyRing::compute(a, opts(3, 8));
    auto c = c3_classes(*h);
    auto m = massey_triple(*h, c.alpha, c.alpha, c.beta);
    REQUIRE(m.defined);
    CHECK(m.representative == cochain_from_terms(*a, {{1, "a|c"}, {1, "a^2|b"}}));
    CHECK(m.coset.basis.empty());
    CHECK(m.coset.exact);
    CHECK(m.coset.value == c.x1);
}

TEST_CASE("Massey identities for x1 and x2 on C(3)") {
    for (unsigned p : {3u, 5u}) {
        CAPTURE(p);
        auto a = from_spec(family_presentation(GroupSpec::c_group(p, 3)));
        auto h = CohomologyRing::compute(a, opts(3, int(2 * p)));
        auto c = c3_classes(*h);
        auto half = h->field().inv(2);
        auto is = [&](const CohomClass& x, const CohomClass& y, const CohomClass& z, const CohomClass& target,
                      long long k) {
            auto m = massey_triple(*h, x, y, z);
            REQUIRE(m.defined);
            CHECK(m.coset.exact);
            CHECK(m.coset.basis.empty());
            CHECK(scale(*h, m.coset.value, k) == target);
        };
        long long mhalf = h->field().neg(half);
        is(c.alpha, c.alpha, c.beta, c.x1, 1);
        is(c.alpha, c.beta, c.alpha, c.x1, mhalf);
        is(c.beta, c.alpha, c.alpha, c.x1, 1);
        is(c.alpha, c.beta, c.beta, c.x2, -1);
        is(c.beta, c.alpha, c.beta, c.x2, half);
        is(c.beta, c.beta, c.alpha, c.x2, -1);
    }
}

TEST_CASE("product relations on C(3)") {
    for (unsigned p : {3u, 5u}) {
        CAPTURE(p);
        auto a = from_spec(family_presentation(GroupSpec::c_group(p, 3)));
        auto h = CohomologyRing::compute(a, opts(4, int(2 * p + 6)));
        auto c = c3_classes(*h);
        auto cup = [&](const CohomClass& x, const CohomClass& y) { return h->cup(x, y); };
        CHECK(cup(c.alpha, c.alpha).is_zero());
        CHECK(cup(c.alpha, c.beta).is_zero());
        CHECK(cup(c.beta, c.beta).is_zero());
        CHECK(cup(c.alpha, c.x2) == neg(*h, cup(c.beta, c.x1)));
        CHECK_FALSE(c.x1.is_zero());
        CHECK_FALSE(c.x2.is_zero());
        CHECK_FALSE(c.u.is_zero());
        CHECK_FALSE(c.v.is_zero());
        if (p == 3) {
            CHECK(cup(c.alpha, c.x1) == cup(c.beta, c.u));
            CHECK(cup(c.beta, c.x2) == neg(*h, cup(c.alpha, c.v)));
            CHECK(cup(c.x1, c.x1) == neg(*h, cup(c.u, c.x2)));
            CHECK(cup(c.x1, c.x2) == neg(*h, cup(c.u, c.v)));
            CHECK(cup(c.x2, c.x2) == cup(c.v, c.x1));
            CHECK_FALSE(cup(c.alpha, c.x1).is_zero());
        } else {
            CHECK(cup(c.alpha, c.x1).is_zero());
            CHECK(cup(c.beta, c.x2).is_zero());
            CHECK(cup(c.x1, c.x1).is_zero());
            CHECK(cup(c.x1, c.x2).is_zero());
            CHECK(cup(c.x2, c.x2).is_zero());
        }
    }
}

TEST_CASE("symmetric powers of one-dimensional classes on C(3)") {
    auto a = from_spec(family_presentation(GroupSpec::c_group(3, 3)));
    auto h = CohomologyRing::compute(a, opts(3, 10));
    auto c = c3_classes(*h);
    auto m = massey_symmetric(*h, c.alpha, 3);
    REQUIRE(m.defined);
    CHECK(m.coset.exact);
    CHECK(m.coset.value == c.u);
    // ⟨α⟩^3 ≠ 0 blocks the next stage
    auto m5 = massey_symmetric(*h, c.alpha, 5);
    CHECK_FALSE(m5.defined);
    CHECK(m5.failed_stage == 3);
    CHECK_THROWS_AS(massey_symmetric(*h, c.alpha, 1), std::invalid_argument);

    auto a5 = from_spec(family_presentation(GroupSpec::c_group(5, 3)));
    auto h5 = CohomologyRing::compute(a5, opts(2, 10));
    auto c5 = c3_classes(*h5);
    auto t = massey_symmetric(*h5, c5.alpha, 3);
    REQUIRE(t.defined);
    CHECK(t.coset.contains(h5->field(), h5->zero_class(2, 6)));
    auto q = massey_symmetric(*h5, c5.alpha, 5);
    REQUIRE(q.defined);
    CHECK(q.coset.value == c5.u);
}

TEST_CASE("undefined triple products report the failing stage") {
    auto a = from_spec(family_presentation(GroupSpec::c_group(3, 3)));
    auto h = CohomologyRing::compute(a, opts(3, 10));
    auto c = c3_classes(*h);
    auto m = massey_triple(*h, c.alpha, c.x1, c.beta);  // αx1 ≠ 0 at p=3
    CHECK_FALSE(m.defined);
    CHECK(m.failed_stage == 1);
    auto m2 = massey_triple(*h, c.beta, c.alpha, c.x1);
    CHECK_FALSE(m2.defined);
    CHECK(m2.failed_stage == 2);
}

TEST_CASE("beta cubed on G(4) at p=3") {
    auto a = from_spec(family_presentation(GroupSpec::g_group(3, 4)));
    auto h = CohomologyRing::compute(a, opts(2, 6));
    // h = [f, g]; f and g play the roles of a and b in C(3)
    auto beta = h->classify(cochain_from_terms(*a, {{1, "g"}}));
    auto m = massey_symmetric(*h, beta, 3);
    REQUIRE(m.defined);
    CHECK(m.coset.exact);
    CHECK_FALSE(m.coset.value.is_zero());
    auto x1 = h->classify(cochain_from_terms(*a, {{1, "f|h"}, {1, "f^2|g"}}));
    CHECK(m.coset.value == x1);
}

TEST_CASE("juggling: u1<u2,u3,u4> meets <u1',u2',u3'>u4") {
    for (unsigned p : {3u, 5u}) {
        auto a = from_spec(family_presentation(GroupSpec::c_group(p, 3)));
        auto h = CohomologyRing::compute(a, opts(3, int(std::max(8u, 2 * p))));
        auto c = c3_classes(*h);
        std::mt19937 rng(7 + p);
        auto pick = [&] {
            // nonzero combination of α and β
            long long x = rng() % p, y = rng() % p;
            if (!x && !y) x = 1;
            return h->add(scale(*h, c.alpha, x), c.beta, h->field().from_int(y));
        };
        for (int trial = 0; trial < 20; ++trial) {
            CohomClass u1 = pick(), u2 = pick(), u3 = pick(), u4 = pick();
            auto right = massey_triple(*h, u2, u3, u4);
            auto left = massey_triple(*h, bar_class(*h, u1), bar_class(*h, u2), bar_class(*h, u3));
            REQUIRE(right.defined);
            REQUIRE(left.defined);
            auto lhs = left_multiply(*h, u1, right.coset);
            auto rhs = right_multiply(*h, left.coset, u4);
            CHECK(cosets_intersect(h->field(), lhs, rhs));
        }
    }
}

TEST_CASE("defining-system choices stay in the coset") {
    auto a = from_spec(family_presentation(GroupSpec::c_group(3, 3)));
    auto h = CohomologyRing::compute(a, opts(3, 8));
    auto c = c3_classes(*h);
    std::mt19937_64 rng(11);
    for (auto trip : std::vector<std::array<CohomClass, 3>>{{c.alpha, c.alpha, c.beta}, {c.alpha, c.beta, c.beta},
                                                            {c.beta, c.alpha, c.beta}}) {
        auto base = massey_triple(*h, trip[0], trip[1], trip[2]);
        REQUIRE(base.defined);
        for (int k = 0; k < 10; ++k) {
            Shifts sh{random_cocycle(*h, 1, trip[0].t + trip[1].t, rng()),
                      random_cocycle(*h, 1, trip[1].t + trip[2].t, rng())};
            auto alt = massey_triple(*h, trip[0], trip[1], trip[2], sh);
            REQUIRE(alt.defined);
            CHECK(h->is_cocycle(alt.representative));
            CHECK(base.coset.contains(h->field(), alt.coset.value));
        }
    }
    // symmetric: perturb by coboundaries and cocycles
    auto t = truncated_polynomial(3, 2, 2);
    auto ht = CohomologyRing::compute(t, opts(2, 18));
    auto z = ht->classify(cochain_from_terms(*t, {{1, "x"}}));
    auto base = massey_symmetric(*ht, z, 9);
    for (int k = 0; k < 5; ++k) {
        Shifts sh(8);
        // a_1 = z is fixed; H^{1,2i} = 0 for i > 1, so only the zero shift is admissible there
        for (int i = 1; i <= 8; ++i) sh[i - 1] = i == 1 ? Cochain{1, 2, {}} : random_cocycle(*ht, 1, 2 * i, rng());
        auto alt = massey_symmetric(*ht, z, 9, sh);
        REQUIRE(alt.defined);
        CHECK(base.coset.contains(ht->field(), alt.coset.value));
    }
}

TEST_CASE("sampled indeterminacy is flagged") {
    // ⟨x1⟩^3 on C(3) at p=5: the intermediate group H^{3,12} is nonzero
    auto a = from_spec(family_presentation(GroupSpec::c_group(5, 3)));
    auto o = opts(5, 18);
    o.solve_s_max = 3;
    auto h = CohomologyRing::compute(a, o);
    auto c = c3_classes(*h);
    REQUIRE(h->dim(3, 12) > 0u);
    auto m = massey_symmetric(*h, c.x1, 3, {}, 6, 5);
    REQUIRE(m.defined);
    CHECK_FALSE(m.coset.exact);
    CHECK(m.s == 5);
    CHECK(m.t == 18);
    CHECK(h->is_cocycle(m.representative));
    // fresh perturbations land in the sampled coset (k = 3 makes the choice set affine)
    for (std::uint64_t seed = 100; seed < 104; ++seed) {
        Shifts sh{Cochain{2, 6, {}}, random_cocycle(*h, 3, 12, seed)};
        auto alt = massey_symmetric(*h, c.x1, 3, sh, 0);
        REQUIRE(alt.defined);
        CHECK(m.coset.contains(h->field(), alt.coset.value));
    }
}
