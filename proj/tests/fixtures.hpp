#pragma once

#include "stokes_gauss/stokes.hpp"

#include <initializer_list>
#include <random>

namespace fixtures {

using namespace sg;

inline Rational q(long a, long b = 1) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

inline Matrix mat(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::vector<Vec> v;
    int cols = 0;
    for (auto& r : rows) {
        Vec x;
        for (auto& e : r) x.emplace_back(e);
        cols = static_cast<int>(x.size());
        v.push_back(x);
    }
    return Matrix::from_rows(v, cols);
}

inline StokesMatrices e1() {
    StokesMatrices d;
    d.layout = sort_exponents({{GaussRational(1), 1}, {GaussRational(2), 1}}, CirclePoint());
    d.form = Form::General;
    d.S[1] = mat({{1, 0}, {1, 1}});
    d.S[2] = mat({{1, 1}, {0, 1}});
    d.S[3] = mat({{1, 0}, {q(-1, 2), 1}});
    d.S[0] = mat({{q(1, 2), -1}, {0, 2}});
    return d;
}

// n <= max_n exponents with ranks <= max_rank, theta0 = 0 generic for C and 0
inline ExponentLayout random_layout(std::mt19937_64& rng, int max_n = 4, int max_rank = 3, bool real_only = false) {
    std::uniform_int_distribution<int> coef(-4, 4), nd(1, max_n), rd(1, max_rank);
    for (;;) {
        int n = nd(rng);
        std::vector<std::pair<GaussRational, int>> exps;
        std::vector<GaussRational> C{GaussRational(0)};
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            GaussRational c(q(coef(rng), 1 + rng() % 2), real_only ? q(0) : q(coef(rng), 1 + rng() % 2));
            for (auto& x : C) ok = ok && !(x == c);
            C.push_back(c);
            exps.emplace_back(c, rd(rng));
        }
        if (!ok || !is_generic(CirclePoint(), C)) continue;
        return sort_exponents(exps, CirclePoint());
    }
}

}  // namespace fixtures
