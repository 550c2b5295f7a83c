#include "doctest.h"
#include "fixtures.hpp"
#include "stokes_gauss/errors.hpp"
#include "stokes_gauss/laplace_oracle.hpp"

#include <cmath>

using namespace sg;
using fixtures::e1;
using fixtures::q;

TEST_CASE("half-line traces") {
    GaussRational gamma(q(-3, 4));
    CHECK(halfline_trace(GaussRational(2), gamma, 3).kind == TraceKind::FullLine);
    CHECK(halfline_trace(GaussRational(1), gamma, 3).kind == TraceKind::TwoComponents);
    auto lens = halfline_trace(GaussRational(1), gamma, 0);
    CHECK(lens.kind == TraceKind::OneLens);
    REQUIRE(lens.lo.has_value());
    CHECK(*lens.lo == QuadReal(Rational(1, 2)));
    CHECK(*lens.hi == QuadReal(Rational(3, 2)));
    CHECK(halfline_trace(GaussRational(2), gamma, 0).kind == TraceKind::Empty);
    CHECK_THROWS_AS(halfline_trace(GaussRational(1), GaussRational(q(3, 4)), 1), Error);
}

TEST_CASE("half-line trace agrees with the defining inequality") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
        long p = 1 + rng() % 9, qd = 1 + rng() % 9, gp = 1 + rng() % 9, gq = 1 + rng() % 9;
        GaussRational c(q(p, qd)), gamma(q(-gp, gq));
        if (q(p, qd) * q(gp, gq) == 1) continue;
        int nu = static_cast<int>(rng() % 4);
        auto t = halfline_trace(c, gamma, nu);
        double a = static_cast<double>(p) / qd, g = static_cast<double>(gp) / gq;
        int flip = nu % 2 ? -1 : 1;
        for (double s : {0.0, 0.01, 0.3, 0.7, 1.0, 1.9, 3.0, 10.0, 1e4}) {
            bool in = flip * (a * s * s - 2 * s + g) < 0;
            bool predicted;
            switch (t.kind) {
                case TraceKind::FullLine: predicted = true; break;
                case TraceKind::Empty: predicted = false; break;
                case TraceKind::TwoComponents: predicted = s < t.lo->approx() || s > t.hi->approx(); break;
                default: predicted = s > t.lo->approx() && s < t.hi->approx(); break;
            }
            double margin = std::abs(a * s * s - 2 * s + g);
            if (margin > 1e-9) CHECK(in == predicted);
        }
    }
}

TEST_CASE("half-line filtration of E1") {
    auto d = normalize(e1());
    auto f = to_filtrations(d);
    Subspace s = halfline_filtration(d, GaussRational(q(-3, 4)), 1);
    CHECK(s == f.F[1][1]);
    CHECK(halfline_filtration(d, GaussRational(q(-1, 4)), 1).dim() == 0);
    CHECK(halfline_filtration(d, GaussRational(-5), 3).dim() == 2);
    CHECK_THROWS_AS(halfline_filtration(d, GaussRational(-5), 2), Error);
}

TEST_CASE("disc models") {
    auto l = e1().layout;
    for (int nu = 0; nu < 4; ++nu) {
        auto m = build_disc_model(l, GaussRational(q(-3, 4)), nu);
        long chi = 0;
        for (auto& c : m.complex.cells) chi += c.dim % 2 ? -1 : 1;
        CHECK(chi == 1);
        auto g = cohomology(sheaf_G(normalize(e1()), m));
        CHECK(g.h == std::vector<long>{2, 0, 0});
    }
    CHECK_THROWS_AS(build_disc_model(l, GaussRational(0), 0), Error);
    CHECK_THROWS_AS(build_disc_model(l, GaussRational(-1), 0), Error);
}

TEST_CASE("rank one: filtration jumps at |gamma| = 1") {
    auto f = trivial(GaussRational(1), 1, CirclePoint());
    auto rep = verify_theorem(f);
    CHECK(rep.pass);
    auto d = to_matrices(f);
    for (int nu : {1, 3}) {
        CHECK(disc_filtration(d, build_disc_model(f.layout, GaussRational(-2), nu)).subspace.dim() == 1);
        CHECK(disc_filtration(d, build_disc_model(f.layout, GaussRational(q(-1, 2)), nu)).subspace.dim() == 0);
    }
}

TEST_CASE("E1 verification") {
    auto rep = verify_theorem(to_filtrations(e1()));
    CHECK(rep.cases.size() == 12);
    for (auto& c : rep.cases) {
        INFO("nu = " << c.nu << " gamma = " << to_string(c.gamma) << " oracle " << c.oracle_dim << " predicted " << c.predicted_dim
                     << " h1 " << c.h[1]);
        CHECK(c.equal);
    }
    CHECK(rep.pass);
}
