#include "stokes_gauss/exact.hpp"

#include "stokes_gauss/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sg {

const char* error_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::NonGenericDirection: return "NonGenericDirection";
    case ErrorCode::MonodromyNotIdentity: return "MonodromyNotIdentity";
    case ErrorCode::NotOpposite: return "NotOpposite";
    case ErrorCode::NotExtreme: return "NotExtreme";
    case ErrorCode::IncompatibleLayouts: return "IncompatibleLayouts";
    case ErrorCode::ExponentNotInC: return "ExponentNotInC";
    case ErrorCode::ZeroExponent: return "ZeroExponent";
    case ErrorCode::NotAligned: return "NotAligned";
    case ErrorCode::NotCanonicalTheta: return "NotCanonicalTheta";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::EvenParity: return "EvenParity";
    case ErrorCode::DegeneratePencil: return "DegeneratePencil";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::GluingViolation: return "GluingViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantError: return "InvariantError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NonRationalModulus: return "NonRationalModulus";
    case ErrorCode::InvalidData: return "InvalidData";
    }
    return "Unknown";
}

static bool valid_int(const std::string& s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw Error(ErrorCode::ParseError, "malformed rational '" + s + "'");
    if (num[0] == '+') num = num.substr(1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

bool is_square(const Rational& x) {
    if (sgn(x) < 0) return false;
    return mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
}

Rational sqrt_exact(const Rational& x) {
    if (!is_square(x)) throw std::logic_error("sqrt_exact of a non-square");
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
    return Rational(n, d);
}

// ---- GaussRational

GaussRational GaussRational::inverse() const {
    if (is_zero()) throw Error(ErrorCode::InvalidData, "division by zero");
    if (is_real()) return GaussRational(Rational(1 / re));
    Rational n = norm2();
    return {re / n, -im / n};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re += o.re;
    if (sgn(o.im) != 0) im += o.im;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re -= o.re;
    if (sgn(o.im) != 0) im -= o.im;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    *this = *this * o;
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    *this = *this / o;
    return *this;
}

GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }

GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    bool ar = a.is_real(), br = b.is_real();
    if (ar && br) return GaussRational(Rational(a.re * b.re));
    if (ar) return {a.re * b.re, a.re * b.im};
    if (br) return {a.re * b.re, a.im * b.re};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    if (b.is_zero()) throw Error(ErrorCode::InvalidData, "division by zero");
    if (b.is_real()) {
        if (a.is_real()) return GaussRational(Rational(a.re / b.re));
        return {a.re / b.re, a.im / b.re};
    }
    return a * b.inverse();
}

GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }

bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }

GaussRational parse_gauss(const std::string& in) {
    std::string s;
    for (char ch : in)
        if (ch != ' ') s += ch;
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty complex number");
    if (s.back() != 'i') return GaussRational(parse_rational(s));
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;)
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    std::string re_s = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_s = split == std::string::npos ? s : s.substr(split);
    Rational im;
    if (im_s.empty() || im_s == "+") im = 1;
    else if (im_s == "-") im = -1;
    else im = parse_rational(im_s);
    Rational re = re_s.empty() ? Rational(0) : parse_rational(re_s);
    return {re, im};
}

std::string to_string(const GaussRational& z) {
    if (z.is_real()) return to_string(z.re);
    std::string s = sgn(z.re) == 0 ? "" : to_string(z.re);
    if (sgn(z.im) > 0 && !s.empty()) s += "+";
    return s + to_string(z.im) + "i";
}

// ---- QuadReal

QuadReal::QuadReal(Rational a_, Rational b_, Rational d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {
    if (sgn(d) < 0) throw Error(ErrorCode::InvalidData, "negative radicand");
    if (sgn(b) == 0 || sgn(d) == 0) {
        b = 0;
        d = 0;
    } else if (is_square(d)) {
        a += b * sqrt_exact(d);
        b = 0;
        d = 0;
    }
}

int QuadReal::sign() const {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    int c = cmp(Rational(a * a), Rational(b * b * d));
    if (c > 0) return sa;
    if (c < 0) return sb;
    return 0;
}

double QuadReal::approx() const { return a.get_d() + b.get_d() * std::sqrt(d.get_d()); }

static const Rational& common_radicand(const QuadReal& x, const QuadReal& y) {
    if (x.is_rational()) return y.d;
    if (!y.is_rational() && x.d != y.d) throw std::logic_error("QuadReal arithmetic across radicands");
    return x.d;
}

QuadReal operator+(const QuadReal& x, const QuadReal& y) {
    const Rational& d = common_radicand(x, y);
    return {x.a + y.a, x.b + y.b, d};
}

QuadReal operator-(const QuadReal& x, const QuadReal& y) {
    const Rational& d = common_radicand(x, y);
    return {x.a - y.a, x.b - y.b, d};
}

QuadReal operator*(const QuadReal& x, const QuadReal& y) {
    const Rational& d = common_radicand(x, y);
    return {x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d};
}

QuadReal operator/(const QuadReal& x, const QuadReal& y) {
    if (y.sign() == 0) throw Error(ErrorCode::InvalidData, "division by zero");
    QuadReal yc = y.conj();
    QuadReal num = x * yc;
    Rational den = y.a * y.a - y.b * y.b * y.d;
    return {num.a / den, num.b / den, num.d};
}

QuadReal operator-(const QuadReal& x) { return {-x.a, -x.b, x.d}; }

std::strong_ordering quad_compare(const QuadReal& x, const QuadReal& y) {
    int s;
    if (x.is_rational() || y.is_rational() || x.d == y.d) {
        s = (x - y).sign();
    } else {
        // sign(X + Y) with X = (x.a - y.a) + x.b sqrt(x.d), Y = -y.b sqrt(y.d)
        QuadReal X(x.a - y.a, x.b, x.d);
        int sx = X.sign();
        int sy = -sgn(y.b);
        if (sx == 0 || sx == sy) s = sy;
        else {
            QuadReal X2 = X * X;
            int c = (X2 - QuadReal(Rational(y.b * y.b * y.d))).sign();
            s = c > 0 ? sx : (c < 0 ? sy : 0);
        }
    }
    return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const QuadReal& x) {
    if (x.is_rational()) return to_string(x.a);
    return to_string(x.a) + "+" + to_string(x.b) + "*sqrt(" + to_string(x.d) + ")";
}

Rational rational_between(const QuadReal& lo, const QuadReal& hi) {
    if (quad_compare(lo, hi) >= 0) throw std::logic_error("rational_between: empty interval");
    if (lo.is_rational() && hi.is_rational()) return (lo.a + hi.a) / 2;
    // bisection on rational brackets around the irrational end points
    auto bracket = [](const QuadReal& x) {
        Rational l(static_cast<long>(std::floor(x.approx())) - 1), h = l + 3;
        while (quad_compare(QuadReal(l), x) >= 0) l -= 1;
        while (quad_compare(QuadReal(h), x) <= 0) h += 1;
        return std::pair<Rational, Rational>{l, h};
    };
    auto [l1, h1] = bracket(lo);
    auto [l2, h2] = bracket(hi);
    for (;;) {
        if (quad_compare(QuadReal(h1), hi) < 0) return h1;
        if (quad_compare(QuadReal(l2), lo) > 0) return l2;
        Rational m1 = (l1 + h1) / 2;
        if (quad_compare(QuadReal(m1), lo) > 0) h1 = m1;
        else l1 = m1;
        Rational m2 = (l2 + h2) / 2;
        if (quad_compare(QuadReal(m2), hi) < 0) l2 = m2;
        else h2 = m2;
    }
}

// ---- CirclePoint

static bool upper_half(const GaussRational& q) { return sgn(q.im) > 0 || (sgn(q.im) == 0 && sgn(q.re) > 0); }

CirclePoint::CirclePoint(const GaussRational& doubled, int branch) : q_(doubled), b_(branch & 1) {
    if (q_.is_zero()) throw Error(ErrorCode::InvalidData, "CirclePoint with zero doubled angle");
    Rational s = abs(q_.re) + abs(q_.im);
    q_.re /= s;
    q_.im /= s;
}

CirclePoint CirclePoint::rotate_quarter() const { return CirclePoint(-q_, upper_half(q_) ? b_ : 1 - b_); }

CirclePoint CirclePoint::pi_minus() const {
    bool positive_real = q_.is_real() && sgn(q_.re) > 0;
    return CirclePoint(q_.conj(), positive_real ? 1 - b_ : b_);
}

CirclePoint CirclePoint::rotate(int quarters) const {
    CirclePoint p = *this;
    for (int k = 0; k < ((quarters % 4) + 4) % 4; ++k) p = p.rotate_quarter();
    return p;
}

std::strong_ordering operator<=>(const CirclePoint& a, const CirclePoint& b) {
    if (a.b_ != b.b_) return a.b_ <=> b.b_;
    bool ua = upper_half(a.q_), ub = upper_half(b.q_);
    if (ua != ub) return ua ? std::strong_ordering::less : std::strong_ordering::greater;
    // Im(conj(qa) qb) > 0 means qa comes first
    Rational cross = a.q_.re * b.q_.im - a.q_.im * b.q_.re;
    int s = sgn(cross);
    if (s > 0) return std::strong_ordering::less;
    if (s < 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string to_string(const CirclePoint& p) {
    return "(" + to_string(p.doubled()) + ", " + std::to_string(p.branch()) + ")";
}

Order leq_at(const GaussRational& c, const GaussRational& c2, const CirclePoint& theta) {
    if (c == c2) return Order::Equal;
    GaussRational d = c - c2;
    const GaussRational& q = theta.doubled();
    int s = sgn(Rational(d.re * q.re + d.im * q.im));
    if (s < 0) return Order::LessStrict;
    if (s > 0) return Order::GreaterStrict;
    return Order::Incomparable;
}

std::vector<CirclePoint> stokes_directions(const GaussRational& c, const GaussRational& c2) {
    if (c == c2) throw Error(ErrorCode::DegeneratePair, "stokes_directions of equal exponents");
    GaussRational d = c - c2;
    GaussRational id{-d.im, d.re};
    std::vector<CirclePoint> out{CirclePoint(id, 0), CirclePoint(-id, 0), CirclePoint(id, 1), CirclePoint(-id, 1)};
    std::sort(out.begin(), out.end());
    return out;
}

bool is_generic(const CirclePoint& theta, const std::vector<GaussRational>& C) {
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = i + 1; j < C.size(); ++j)
            if (leq_at(C[i], C[j], theta) == Order::Incomparable) return false;
    return true;
}

int sign_on_cell_after(const CirclePoint& v, const GaussRational& d) {
    const GaussRational& q = v.doubled();
    // d * conj(q)
    Rational re = d.re * q.re + d.im * q.im;
    Rational im = d.im * q.re - d.re * q.im;
    if (sgn(re) != 0) return sgn(re);
    if (sgn(im) != 0) return sgn(im);
    throw std::logic_error("sign_on_cell_after with d = 0");
}

bool in_arc(const CirclePoint& p, const CirclePoint& from, const CirclePoint& to) {
    if (from <= to) return from <= p && p < to;
    return p >= from || p < to;
}

}  // namespace sg
