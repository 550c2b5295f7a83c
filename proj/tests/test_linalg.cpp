#include "doctest.h"
#include "stokes_gauss/errors.hpp"
#include "stokes_gauss/linalg.hpp"

#include <random>

using namespace sg;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int r, int c, int rank_cap = -1) {
    std::uniform_int_distribution<int> d(-3, 3);
    auto fill = [&](int rr, int cc) {
        Matrix m(rr, cc);
        for (int i = 0; i < rr; ++i)
            for (int j = 0; j < cc; ++j) m(i, j) = Scalar(d(rng));
        return m;
    };
    if (rank_cap < 0) return fill(r, c);
    return fill(r, rank_cap) * fill(rank_cap, c);
}

Subspace random_subspace(std::mt19937_64& rng, int n) {
    int k = static_cast<int>(rng() % (n + 1));
    return Subspace::column_span(random_matrix(rng, n, k));
}

}  // namespace

TEST_CASE("rref, rank and inverse") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 100; ++k) {
        int n = 1 + static_cast<int>(rng() % 5);
        Matrix a = random_matrix(rng, n, n);
        if (rank(a) == n) {
            Matrix ai = inverse(a);
            CHECK(a * ai == Matrix::identity(n));
            CHECK(ai * a == Matrix::identity(n));
        } else {
            CHECK_THROWS_AS(inverse(a), Error);
        }
        Matrix low = random_matrix(rng, 5, 4, 2);
        CHECK(rank(low) <= 2);
        CHECK(rank(low) + kernel(low).dim() == 4);
        CHECK(rank(low.transpose()) == rank(low));
    }
}

TEST_CASE("solve and coordinates") {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 50; ++k) {
        Matrix a = random_matrix(rng, 4, 3);
        Matrix x = random_matrix(rng, 3, 2);
        auto s = solve(a, a * x);
        REQUIRE(s.has_value());
        CHECK(a * *s == a * x);
        if (rank(a) == 3) CHECK(coordinates_in(a, a * x) == x);
    }
    Matrix a = Matrix::identity(2);
    a(1, 1) = Scalar(0);
    Vec b{Scalar(0), Scalar(1)};
    CHECK_FALSE(solve(a, b).has_value());
}

TEST_CASE("subspace lattice identities") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        int n = 1 + static_cast<int>(rng() % 5);
        Subspace u = random_subspace(rng, n), v = random_subspace(rng, n);
        Subspace i = intersect(u, v), s = sum(u, v);
        CHECK(i.dim() + s.dim() == u.dim() + v.dim());
        CHECK(u.contains(i));
        CHECK(v.contains(i));
        CHECK(s.contains(u));
        CHECK(u.annihilator().dim() == n - u.dim());
        CHECK(u.annihilator().annihilator() == u);
        for (auto& b : u.basis()) CHECK(u.reduce(b) == Vec(n));
        Matrix m = random_matrix(rng, n, n);
        Subspace pre = preimage(m, v);
        CHECK(v.contains(image(m, pre)));
        CHECK(pre.contains(kernel(m)));
        CHECK(Subspace::span(u.basis(), n) == u);
    }
}

TEST_CASE("sparse echelon agrees with dense rank") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
        Matrix a = random_matrix(rng, 7, 6, 1 + static_cast<int>(rng() % 5));
        SparseEchelon e(6);
        for (int i = 0; i < a.rows(); ++i) {
            SparseRow row;
            for (int j = 0; j < 6; ++j)
                if (!a(i, j).is_zero()) row.emplace_back(j, a(i, j));
            e.add(row);
        }
        CHECK(e.rank() == rank(a));
        for (int i = 0; i < a.rows(); ++i) {
            SparseRow row;
            for (int j = 0; j < 6; ++j)
                if (!a(i, j).is_zero()) row.emplace_back(j, a(i, j));
            CHECK(e.reduce(row).empty());
        }
    }
}
