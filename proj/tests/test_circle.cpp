#include "doctest.h"
#include "fixtures.hpp"
#include "stokes_gauss/circle_sheaf.hpp"
#include "stokes_gauss/errors.hpp"

using namespace sg;
using fixtures::e1;
using fixtures::q;

namespace {

StokesMatrices rank_one(const GaussRational& c) {
    StokesMatrices d;
    d.layout = sort_exponents({{c, 1}}, CirclePoint());
    for (auto& s : d.S) s = Matrix::identity(1);
    d.T = {Matrix::identity(1)};
    return d;
}

std::pair<long, long> h01(const CellSheaf& f) {
    auto h = cohomology(f);
    return {h.h[0], h.h[1]};
}

}  // namespace

TEST_CASE("circle model vertex counts") {
    auto l = e1().layout;
    auto m = build_circle_model(l, GaussRational(3));
    CHECK(m.n_vertices() == 8);
    for (int nu = 0; nu < 4; ++nu) CHECK(m.vertices[m.base[nu]] == l.base(nu));
    auto one = rank_one(GaussRational(1)).layout;
    CHECK(build_circle_model(one, GaussRational(1)).n_vertices() == 4);
    CHECK(build_circle_model(l, GaussRational(1)).n_vertices() == 8);
    auto mixed = sort_exponents({{GaussRational(1), 1}, {GaussRational(q(2), q(1)), 1}}, CirclePoint());
    CHECK(build_circle_model(mixed, GaussRational(0, 3)).n_vertices() == 16);
    CHECK_THROWS_AS(build_circle_model(l, GaussRational(1, 1)), Error);
    check_complex(m.complex());
}

TEST_CASE("rank one sheaves") {
    auto d = rank_one(GaussRational(q(2), q(1)));
    CHECK(h01(sheaf_leq(d, d.layout.C[0])) == std::pair<long, long>{1, 1});
    auto lt = sheaf_lt(d, d.layout.C[0]);
    for (int s : lt.stalk) CHECK(s == 0);
    CHECK(h01(sheaf_lt(d, GaussRational(0))) == std::pair<long, long>{0, 2});
    CHECK(h0_leq_closed_form(d, d.layout.C[0]) == 1);
    CHECK(euler_characteristic_leq(d, d.layout.C[0]) == 0);
}

TEST_CASE("E1 sheaves") {
    auto d = e1();
    auto lt = sheaf_lt(d, GaussRational(3));
    auto m = build_circle_model(d.layout, GaussRational(3));
    std::vector<int> edge_dims;
    for (int k = 0; k < m.n_vertices(); ++k) edge_dims.push_back(lt.stalk[m.edge(k)]);
    CHECK(edge_dims == std::vector<int>{2, 0, 0, 2, 2, 0, 0, 2});
    CHECK(h01(lt) == std::pair<long, long>{0, 4});
    CHECK(h01(sheaf_leq(d, GaussRational(1))) == std::pair<long, long>{0, 2});
    CHECK(h0_leq_closed_form(d, GaussRational(1)) == 0);
    CHECK(euler_characteristic_leq(d, GaussRational(1)) == -2);
    CHECK(euler_characteristic_leq(d, GaussRational(3)) == -4);
    CHECK(h01(local_system(d, m)) == std::pair<long, long>{2, 2});
    auto dis = disc_cohomology_Fleq0(d);
    CHECK(dis.h0 == 0);
    CHECK(dis.h1 == 2);
    CHECK(dis.h2 == 0);
}

TEST_CASE("block diagonal E1 has a global section of L_<=1") {
    auto d = e1();
    for (int nu = 0; nu < 4; ++nu) {
        d.S[nu](0, 1) = Scalar(0);
        d.S[nu](1, 0) = Scalar(0);
    }
    d.S[0] = fixtures::mat({{2, 0}, {0, q(1, 2)}});
    d.S[0] = fixtures::mat({{1, 0}, {0, 1}});
    REQUIRE(validate(d).empty());
    CHECK(h0_leq_closed_form(d, GaussRational(1)) == 1);
    CHECK(cohomology(sheaf_leq(d, GaussRational(1))).h[0] == 1);
}

TEST_CASE("cohomology properties on random data") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 25; ++k) {
        auto l = fixtures::random_layout(rng, 3, 2);
        auto d = sg::random_data(l, rng());
        int r = l.total_rank();
        for (int i = 0; i < l.n(); ++i) {
            GaussRational c0 = l.C[i];
            auto lt = cohomology(sheaf_lt(d, c0));
            auto le = cohomology(sheaf_leq(d, c0));
            auto gr = cohomology(sheaf_gr(d, c0));
            CHECK(lt.h[0] == 0);
            CHECK(lt.h[1] == 2 * (r - l.ranks[i]));
            CHECK(le.h[0] == h0_leq_closed_form(d, c0));
            CHECK(le.chi == 2 * l.ranks[i] - 2 * r);
            auto T = formal_monodromies(d)[i];
            long kerT = kernel(T - Matrix::identity(l.ranks[i])).dim();
            CHECK(gr.h[0] == kerT);
            CHECK(gr.h[1] == kerT);
            CHECK(lt.chi - le.chi + gr.chi == 0);
        }
        auto lt0 = cohomology(sheaf_lt(d, GaussRational(0)));
        CHECK(lt0.h[0] == 0);
        CHECK(lt0.h[1] == 2 * r);
        auto dis = disc_cohomology_Fleq0(d);
        CHECK(dis.h1 == r);
    }
}

TEST_CASE("subdivision invariance") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 10; ++k) {
        auto l = fixtures::random_layout(rng, 3, 2);
        auto d = sg::random_data(l, rng());
        GaussRational c0 = l.C[0];
        std::vector<CirclePoint> extra;
        std::vector<GaussRational> C = l.C;
        while (extra.size() < 5) {
            CirclePoint p(GaussRational(fixtures::q(static_cast<long>(rng() % 11) - 5), fixtures::q(static_cast<long>(rng() % 11) - 5, 7)), static_cast<int>(rng() % 2));
            if (is_generic(p, C)) extra.push_back(p);
        }
        auto coarse = build_circle_model(l, c0), fine = build_circle_model(l, c0, extra);
        CHECK(fine.n_vertices() > coarse.n_vertices());
        for (bool strict : {false, true}) {
            auto a = cohomology(sheaf_leq(d, c0, coarse, strict)), b = cohomology(sheaf_leq(d, c0, fine, strict));
            CHECK(a.h == b.h);
        }
    }
}

TEST_CASE("good interval splittings") {
    auto d = e1();
    for (int nu = 0; nu < 4; ++nu) {
        auto p = good_interval_splitting(d, nu, 17);
        REQUIRE(p.size() == 2);
        CHECK(p[0] == Subspace::coordinates(2, {0}));
        CHECK(p[1] == Subspace::coordinates(2, {1}));
    }
    std::mt19937_64 rng(8);
    for (int k = 0; k < 10; ++k) {
        auto l = fixtures::random_layout(rng, 3, 2);
        auto d2 = sg::random_data(l, rng());
        auto f = to_filtrations(d2);
        for (auto& h : hom_space(f, f)) {
            StokesMorphism m{f, f, h};
            for (int nu = 0; nu < 4; ++nu) CHECK(morphism_graded_on_interval(m, nu));
        }
    }
}
