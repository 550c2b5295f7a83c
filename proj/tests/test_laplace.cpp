#include "doctest.h"
#include "fixtures.hpp"
#include "stokes_gauss/errors.hpp"
#include "stokes_gauss/laplace.hpp"

using namespace sg;
using fixtures::e1;
using fixtures::q;

TEST_CASE("transformed exponents and base direction") {
    auto hat = laplace_exponents({GaussRational(1), GaussRational(2)});
    CHECK(hat == std::vector<GaussRational>{GaussRational(-1), GaussRational(q(-1, 2))});
    CHECK(laplace_exponents({GaussRational(0, 1)}) == std::vector<GaussRational>{GaussRational(0, 1)});
    CHECK(laplace_exponents({GaussRational(3, 4)}) == std::vector<GaussRational>{GaussRational(q(-3, 25), q(4, 25))});
    CHECK_THROWS_AS(laplace_exponents({GaussRational(0)}), Error);
    CHECK(hat_theta(CirclePoint()) == CirclePoint(GaussRational(1), 1));
    CHECK(hat_theta(CirclePoint(GaussRational(0, 1), 0)) == CirclePoint(GaussRational(0, -1), 0));
    CHECK(hat_theta(hat_theta(CirclePoint(GaussRational(3, 4), 1))) == CirclePoint(GaussRational(3, 4), 1));
}

TEST_CASE("alignment") {
    CHECK(is_aligned({GaussRational(1), GaussRational(2)}));
    CHECK(is_aligned({GaussRational(3, 4), GaussRational(6, 8)}));
    CHECK_FALSE(is_aligned({GaussRational(1), GaussRational(-2)}));
    CHECK_FALSE(is_aligned({GaussRational(1), GaussRational(0, 1)}));
}

TEST_CASE("Laplace on E1") {
    auto f = to_filtrations(e1());
    auto hat = laplace_transform(f);
    CHECK(hat.layout.C == std::vector<GaussRational>{GaussRational(-1), GaussRational(q(-1, 2))});
    CHECK(hat.layout.theta0 == CirclePoint(GaussRational(1), 1));
    CHECK(hat.F == f.F);
    CHECK(validate(hat).empty());
    CHECK(inverse_laplace_transform(hat) == f);
    CHECK(laplace_transform(inverse_laplace_transform(hat)) == hat);
    CHECK(inverse_laplace_transform(laplace_transform(e1())) == normalize(e1()));
    try {
        inverse_laplace_transform(f);
        FAIL("expected NotCanonicalTheta");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotCanonicalTheta);
    }
}

TEST_CASE("preconditions") {
    auto f = to_filtrations(e1());
    auto moved = f;
    moved.layout.theta0 = CirclePoint(GaussRational(4, 1), 0);
    try {
        laplace_transform(moved);
        FAIL("expected NotCanonicalTheta");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotCanonicalTheta);
    }
    CHECK(align_base_direction(moved) == f);
    auto far = f;
    far.layout.theta0 = CirclePoint(GaussRational(-1, 4), 0);
    CHECK_THROWS_AS(align_base_direction(far), Error);
    auto t = trivial(GaussRational(1), 1, CirclePoint());
    auto bad = direct_sum(t, trivial(GaussRational(-2), 1, CirclePoint()));
    try {
        laplace_transform(bad);
        FAIL("expected NotAligned");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAligned);
    }
}

TEST_CASE("transform commutes with sums, kernels and extensions") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 20; ++k) {
        auto l = fixtures::random_layout(rng, 3, 2, true);
        std::vector<std::pair<GaussRational, int>> exps;
        for (int i = 0; i < l.n(); ++i) exps.emplace_back(GaussRational(l.C[i].re * l.C[i].re + 1), l.ranks[i]);
        bool distinct = true;
        for (size_t i = 0; i < exps.size(); ++i)
            for (size_t j = i + 1; j < exps.size(); ++j) distinct = distinct && !(exps[i].first == exps[j].first);
        if (!distinct) continue;
        auto al = sort_exponents(exps, CirclePoint());
        auto f = to_filtrations(sg::random_data(al, rng()));
        auto hat = laplace_transform(f);
        CHECK(hat.dim == f.dim);
        CHECK(inverse_laplace_transform(hat) == f);
        auto homs = hom_space(f, f);
        for (auto& h : homs) {
            auto ker = kernel_morphism({f, f, h});
            auto khat = kernel_morphism({hat, hat, h});
            CHECK(khat.data.F == ker.data.F);
            auto cok = cokernel_morphism({f, f, h});
            auto chat = cokernel_morphism({hat, hat, h});
            CHECK(chat.data.F == cok.data.F);
        }
        auto ext = add_trivial(f, GaussRational(q(1, 2)), 1);
        auto ehat = laplace_transform(ext.data);
        CHECK(ehat.F == ext.data.F);
    }
}
