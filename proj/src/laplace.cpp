#include "stokes_gauss/laplace.hpp"

#include "stokes_gauss/errors.hpp"

#include <algorithm>
#include <random>

namespace sg {

bool is_aligned(const std::vector<GaussRational>& C) {
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = i + 1; j < C.size(); ++j) {
            GaussRational p = C[i] * C[j].conj();
            if (sgn(p.im) != 0 || sgn(p.re) <= 0) return false;
        }
    return true;
}

CirclePoint canonical_theta(const std::vector<GaussRational>& C) {
    if (C.empty()) throw Error(ErrorCode::InvalidData, "no exponents");
    return CirclePoint(C[0], 0);
}

std::vector<GaussRational> laplace_exponents(const std::vector<GaussRational>& C) {
    std::vector<GaussRational> out;
    for (auto& c : C) {
        if (c.is_zero()) throw Error(ErrorCode::ZeroExponent, "0 has no Laplace image");
        out.push_back(-c.inverse());
    }
    return out;
}

CirclePoint hat_theta(const CirclePoint& theta0) { return theta0.pi_minus(); }

static void check_aligned(const ExponentLayout& l) {
    if (!l.pure) throw Error(ErrorCode::NotPure, "the Laplace rule needs pure data");
    for (auto& c : l.C)
        if (c.is_zero()) throw Error(ErrorCode::ZeroExponent, "0 in C");
    if (!is_aligned(l.C)) throw Error(ErrorCode::NotAligned, "exponents do not share one argument");
}

static StokesFiltrations relabel(const StokesFiltrations& data) {
    StokesFiltrations out = data;
    out.layout.C = laplace_exponents(data.layout.C);
    out.layout.theta0 = hat_theta(data.layout.theta0);
    try {
        check_layout(out.layout);
    } catch (const Error& e) {
        throw Error(ErrorCode::InvariantError, std::string("transformed layout: ") + e.what());
    }
    auto v = validate(out);
    if (!v.empty()) throw Error(ErrorCode::InvariantError, "transformed data invalid: " + v.front().detail);
    return out;
}

static void require_valid(const StokesFiltrations& data) {
    auto v = validate(data);
    if (!v.empty()) throw Error(ErrorCode::InvalidData, v.front().invariant + ": " + v.front().detail);
}

StokesFiltrations laplace_transform(const StokesFiltrations& data) {
    check_aligned(data.layout);
    require_valid(data);
    if (!(data.layout.theta0 == canonical_theta(data.layout.C)))
        throw Error(ErrorCode::NotCanonicalTheta, "theta0 = " + to_string(data.layout.theta0) + " is not half the argument of C");
    return relabel(data);
}

StokesFiltrations inverse_laplace_transform(const StokesFiltrations& data) {
    check_aligned(data.layout);
    require_valid(data);
    CirclePoint expected = hat_theta(canonical_theta(laplace_exponents(data.layout.C)));
    if (!(data.layout.theta0 == expected))
        throw Error(ErrorCode::NotCanonicalTheta, "theta0 = " + to_string(data.layout.theta0) + " is not on the transformed side, expected " +
                                                      to_string(expected));
    return relabel(data);
}

StokesMatrices laplace_transform(const StokesMatrices& data) { return to_matrices(laplace_transform(to_filtrations(data))); }

StokesMatrices inverse_laplace_transform(const StokesMatrices& data) {
    return to_matrices(inverse_laplace_transform(to_filtrations(data)));
}

StokesFiltrations align_base_direction(const StokesFiltrations& data) {
    check_aligned(data.layout);
    CirclePoint target = canonical_theta(data.layout.C);
    if (data.layout.theta0 == target) return data;
    if (data.layout.n() >= 2) {
        auto dirs = stokes_directions(data.layout.C[0], data.layout.C[1]);
        for (size_t k = 0; k < dirs.size(); ++k) {
            const CirclePoint& from = dirs[k];
            const CirclePoint& to = dirs[(k + 1) % dirs.size()];
            if (in_arc(target, from, to) && !in_arc(data.layout.theta0, from, to))
                throw Error(ErrorCode::NotCanonicalTheta, "theta0 lies in another chamber than the canonical direction");
        }
    }
    StokesFiltrations out = data;
    out.layout.theta0 = target;
    check_layout(out.layout);
    return out;
}

Subspace filtration_below(const StokesFiltrations& data, const GaussRational& gamma, int nu) {
    CirclePoint th = data.layout.base(nu);
    Subspace s(data.dim);
    for (int j = 0; j < data.layout.n(); ++j)
        if (leq_at(data.layout.C[j], gamma, th) == Order::LessStrict) s = sum(s, data.F[((nu % 4) + 4) % 4][j]);
    return s;
}

ExponentLayout random_aligned_layout(const std::vector<int>& ranks, std::uint64_t seed) {
    if (ranks.empty()) throw Error(ErrorCode::InvalidData, "no blocks requested");
    static const std::vector<std::pair<long, long>> units_num = {{1, 0}, {0, 1}, {3, 4}, {-5, 12}, {-1, 0}, {8, -15}};
    static const std::vector<long> units_den = {1, 1, 5, 13, 1, 17};
    std::mt19937_64 rng(seed);
    size_t u = rng() % units_num.size();
    Rational ux(units_num[u].first, units_den[u]), uy(units_num[u].second, units_den[u]);
    ux.canonicalize();
    uy.canonicalize();
    std::vector<Rational> scales;
    for (long k = 1; k <= 8; ++k) {
        Rational s(k, 2);
        s.canonicalize();
        scales.push_back(s);
    }
    std::shuffle(scales.begin(), scales.end(), rng);
    if (ranks.size() > scales.size()) throw Error(ErrorCode::InvalidData, "too many blocks requested");
    std::vector<std::pair<GaussRational, int>> exps;
    std::vector<GaussRational> C;
    for (size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] < 1) throw Error(ErrorCode::InvalidData, "block ranks must be positive");
        GaussRational c(scales[i] * ux, scales[i] * uy);
        exps.emplace_back(c, ranks[i]);
        C.push_back(c);
    }
    return sort_exponents(exps, canonical_theta(C));
}

}  // namespace sg
