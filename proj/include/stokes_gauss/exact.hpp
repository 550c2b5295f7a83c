#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

namespace sg {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& x);
inline int sign(const Rational& x) { return sgn(x); }
bool is_square(const Rational& x);
Rational sqrt_exact(const Rational& x);  // requires is_square(x)

struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(long v) : re(v), im(0) {}
    GaussRational(Rational r) : re(std::move(r)), im(0) {}
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }
    GaussRational inverse() const;

    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o);
};

GaussRational operator+(GaussRational a, const GaussRational& b);
GaussRational operator-(GaussRational a, const GaussRational& b);
GaussRational operator*(const GaussRational& a, const GaussRational& b);
GaussRational operator/(const GaussRational& a, const GaussRational& b);
GaussRational operator-(const GaussRational& a);
bool operator==(const GaussRational& a, const GaussRational& b);

// accepts "p/q", "a+bi", "a-bi", "bi", "i"
GaussRational parse_gauss(const std::string& s);
std::string to_string(const GaussRational& z);

// a + b*sqrt(d), d >= 0
struct QuadReal {
    Rational a;
    Rational b;
    Rational d;

    QuadReal() = default;
    QuadReal(Rational a_) : a(std::move(a_)), b(0), d(0) {}
    QuadReal(Rational a_, Rational b_, Rational d_);

    int sign() const;
    bool is_rational() const { return sgn(b) == 0; }
    double approx() const;
    QuadReal conj() const { return {a, -b, d}; }
};

QuadReal operator+(const QuadReal& x, const QuadReal& y);
QuadReal operator-(const QuadReal& x, const QuadReal& y);
QuadReal operator*(const QuadReal& x, const QuadReal& y);
QuadReal operator/(const QuadReal& x, const QuadReal& y);
QuadReal operator-(const QuadReal& x);
std::strong_ordering quad_compare(const QuadReal& x, const QuadReal& y);
inline bool operator==(const QuadReal& x, const QuadReal& y) { return quad_compare(x, y) == 0; }
inline std::strong_ordering operator<=>(const QuadReal& x, const QuadReal& y) { return quad_compare(x, y); }
std::string to_string(const QuadReal& x);

// rational strictly between lo < hi
Rational rational_between(const QuadReal& lo, const QuadReal& hi);

// theta = arg(doubled)/2 + branch*pi, arg in [0, 2pi)
class CirclePoint {
public:
    CirclePoint() : CirclePoint(GaussRational(1), 0) {}
    CirclePoint(const GaussRational& doubled, int branch);

    const GaussRational& doubled() const { return q_; }
    int branch() const { return b_; }

    CirclePoint rotate_quarter() const;  // theta + pi/2
    CirclePoint rotate_half() const { return CirclePoint(q_, 1 - b_); }
    CirclePoint pi_minus() const;        // pi - theta
    CirclePoint rotate(int quarters) const;

    friend bool operator==(const CirclePoint& a, const CirclePoint& b) { return a.b_ == b.b_ && a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const CirclePoint& a, const CirclePoint& b);

private:
    GaussRational q_;
    int b_;
};

std::string to_string(const CirclePoint& p);

enum class Order { LessStrict, Equal, GreaterStrict, Incomparable };

Order leq_at(const GaussRational& c, const GaussRational& c2, const CirclePoint& theta);
std::vector<CirclePoint> stokes_directions(const GaussRational& c, const GaussRational& c2);
bool is_generic(const CirclePoint& theta, const std::vector<GaussRational>& C);
int sign_on_cell_after(const CirclePoint& v, const GaussRational& d);

// true iff p lies in the half-open arc [from, to) going counterclockwise
bool in_arc(const CirclePoint& p, const CirclePoint& from, const CirclePoint& to);

}  // namespace sg
