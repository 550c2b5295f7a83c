#include "doctest.h"
#include "stokes_gauss/errors.hpp"
#include "stokes_gauss/exact.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace sg;

namespace {

double angle_of(const CirclePoint& p) {
    double a = std::atan2(p.doubled().im.get_d(), p.doubled().re.get_d());
    if (a < 0) a += 2 * M_PI;
    return a / 2 + p.branch() * M_PI;
}

Rational rat(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

std::complex<double> approx(const GaussRational& z) { return {z.re.get_d(), z.im.get_d()}; }

GaussRational random_gauss(std::mt19937_64& rng, int bound = 5) {
    std::uniform_int_distribution<int> d(-bound, bound), den(1, 4);
    return {rat(d(rng), den(rng)), rat(d(rng), den(rng))};
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-3")) == "-3/1");
    CHECK(to_string(Rational(0)) == "0/1");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(is_square(Rational(9, 4)));
    CHECK_FALSE(is_square(Rational(2)));
    CHECK(sqrt_exact(Rational(9, 4)) == Rational(3, 2));
}

TEST_CASE("gaussian rational arithmetic") {
    GaussRational a(1, 2), b(3, -1);
    CHECK(a * b == GaussRational(5, 5));
    CHECK(a * a.inverse() == GaussRational(1));
    CHECK((a - b) + b == a);
    CHECK(parse_gauss("1/2-3i") == GaussRational(Rational(1, 2), -3));
    CHECK(parse_gauss("i") == GaussRational(0, 1));
    CHECK(parse_gauss(to_string(GaussRational(Rational(-5, 13), Rational(12, 13)))) == GaussRational(Rational(-5, 13), Rational(12, 13)));
    CHECK_THROWS_AS(GaussRational(0).inverse(), Error);
}

TEST_CASE("quadratic reals agree with interval evaluation") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-9, 9), rad(0, 12);
    for (int k = 0; k < 3000; ++k) {
        Rational dd(rad(rng));
        QuadReal x(rat(d(rng), 3), rat(d(rng), 2), dd);
        QuadReal y(rat(d(rng), 3), rat(d(rng), 2), rng() % 2 ? dd : Rational(rad(rng)));
        double gap = x.approx() - y.approx();
        auto c = quad_compare(x, y);
        if (std::abs(gap) > 1e-9) CHECK((gap < 0) == (c < 0));
        else CHECK(c == 0);
        CHECK((x.sign() > 0) == (x.approx() > 1e-12));
    }
    QuadReal r2(0, 1, 2);
    CHECK(r2 * r2 == QuadReal(2));
    CHECK(QuadReal(0, 1, 4) == QuadReal(2));
    CHECK(QuadReal(1, 1, 8) == QuadReal(1, 2, 2));
    QuadReal lo(0, 1, 2), hi(Rational(3, 2));
    Rational m = rational_between(lo, hi);
    CHECK(lo < QuadReal(m));
    CHECK(QuadReal(m) < hi);
}

TEST_CASE("circle points: rotations and order") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 500; ++k) {
        GaussRational q = random_gauss(rng);
        if (q.is_zero()) continue;
        CirclePoint p(q, static_cast<int>(rng() % 2));
        CHECK(p.rotate(4) == p);
        CHECK(p.rotate_half().rotate_half() == p);
        CHECK(p.pi_minus().pi_minus() == p);
        double a = angle_of(p);
        double rq = std::fmod(a + M_PI / 2, 2 * M_PI);
        CHECK(std::abs(angle_of(p.rotate_quarter()) - rq) < 1e-9);
        double pm = std::fmod(3 * M_PI - a, 2 * M_PI);
        CHECK(std::abs(angle_of(p.pi_minus()) - pm) < 1e-9);
        GaussRational q2 = random_gauss(rng);
        if (q2.is_zero()) continue;
        CirclePoint p2(q2, static_cast<int>(rng() % 2));
        double b = angle_of(p2);
        if (std::abs(a - b) > 1e-9) CHECK(((p <=> p2) < 0) == (a < b));
        else CHECK(p == p2);
    }
}

TEST_CASE("leq_at and sign_on_cell_after match numeric evaluation") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 1000; ++k) {
        GaussRational d = random_gauss(rng), q = random_gauss(rng);
        if (q.is_zero() || d.is_zero()) continue;
        CirclePoint th(q, 0);
        double phi = angle_of(th);
        auto val = [&](double t) { return (approx(d) * std::exp(std::complex<double>(0, -2 * t))).real(); };
        Order o = leq_at(d, GaussRational(0), th);
        double v = val(phi);
        if (std::abs(v) > 1e-9) CHECK((o == Order::LessStrict) == (v < 0));
        else CHECK(o == Order::Incomparable);
        int s = sign_on_cell_after(th, d);
        double after = val(phi + 1e-6);
        if (std::abs(after) > 1e-12) CHECK(s == (after > 0 ? 1 : -1));
    }
    for (int k = 0; k < 200; ++k) {
        GaussRational c = random_gauss(rng), c2 = random_gauss(rng);
        if (c == c2) continue;
        auto dirs = stokes_directions(c, c2);
        REQUIRE(dirs.size() == 4);
        for (size_t i = 0; i < dirs.size(); ++i) {
            CHECK(leq_at(c, c2, dirs[i]) == Order::Incomparable);
            if (i) CHECK(dirs[i - 1] < dirs[i]);
            CHECK_FALSE(is_generic(dirs[i], {c, c2}));
        }
    }
    CHECK(leq_at(GaussRational(2), GaussRational(2), CirclePoint()) == Order::Equal);
}

TEST_CASE("half-open arcs") {
    CirclePoint a(GaussRational(1), 0), b = a.rotate_quarter(), c = a.rotate_half();
    CHECK(in_arc(a, a, c));
    CHECK(in_arc(b, a, c));
    CHECK_FALSE(in_arc(c, a, c));
    CHECK(in_arc(a, c, a.rotate(5)));
    CHECK_FALSE(in_arc(b, c, a));
}
