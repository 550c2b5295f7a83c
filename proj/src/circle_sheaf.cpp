#include "stokes_gauss/circle_sheaf.hpp"

#include "stokes_gauss/errors.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace sg {

int CellComplex::count(int dim) const {
    int k = 0;
    for (auto& c : cells) k += c.dim == dim;
    return k;
}

void check_complex(const CellComplex& cx) {
    for (size_t t = 0; t < cx.cells.size(); ++t) {
        const Cell& tau = cx.cells[t];
        std::map<int, int> dd;
        for (auto [s, inc] : tau.faces) {
            if (cx.cells[s].dim != tau.dim - 1) throw Error(ErrorCode::InvariantError, "face of wrong dimension");
            for (auto [rho, inc2] : cx.cells[s].faces) dd[rho] += inc * inc2;
        }
        for (auto [rho, v] : dd)
            if (v != 0) throw Error(ErrorCode::InvariantError, "boundary of boundary does not vanish at cell " + std::to_string(t));
    }
}

std::vector<int> cochain_offsets(const CellSheaf& f) {
    std::map<int, int> next;
    std::vector<int> off(f.complex.cells.size());
    for (size_t c = 0; c < off.size(); ++c) {
        int d = f.complex.cells[c].dim;
        off[c] = next[d];
        next[d] += f.stalk[c];
    }
    return off;
}

std::vector<SparseRow> coboundary_rows(const CellSheaf& f, int k) {
    auto off = cochain_offsets(f);
    std::vector<SparseRow> rows;
    for (size_t t = 0; t < f.complex.cells.size(); ++t) {
        const Cell& tau = f.complex.cells[t];
        if (tau.dim != k + 1) continue;
        for (int a = 0; a < f.stalk[t]; ++a) {
            std::map<int, Scalar> acc;
            for (auto [s, inc] : tau.faces) {
                if (f.stalk[s] == 0) continue;
                const Matrix& g = f.gen.at({s, static_cast<int>(t)});
                for (int b = 0; b < g.cols(); ++b) {
                    if (g(a, b).is_zero()) continue;
                    acc[off[s] + b] += inc > 0 ? g(a, b) : -g(a, b);
                }
            }
            SparseRow row;
            for (auto& [c, x] : acc)
                if (!x.is_zero()) row.emplace_back(c, x);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

CohomologyResult cohomology(const CellSheaf& f) {
    int top = 0;
    for (auto& c : f.complex.cells) top = std::max(top, c.dim);
    CohomologyResult out;
    out.cochain_dim.assign(top + 1, 0);
    for (size_t c = 0; c < f.complex.cells.size(); ++c) out.cochain_dim[f.complex.cells[c].dim] += f.stalk[c];
    std::vector<long> rk(top + 1, 0);
    for (int k = 0; k < top; ++k) {
        SparseEchelon e(static_cast<int>(out.cochain_dim[k]));
        for (auto& row : coboundary_rows(f, k)) e.add(row);
        rk[k] = e.rank();
    }
    for (int k = 0; k <= top; ++k) {
        out.h.push_back(out.cochain_dim[k] - rk[k] - (k > 0 ? rk[k - 1] : 0));
        out.chi += (k % 2 ? -1 : 1) * out.h.back();
    }
    return out;
}

CellSheaf coordinate_sheaf(const CellComplex& cx, const std::vector<CoordinateCell>& cells, const StokesMatrices& data) {
    const auto& l = data.layout;
    int r = l.total_rank();
    auto P = chart_frames(data);
    std::array<Matrix, 4> Pinv;
    for (int nu = 0; nu < 4; ++nu) Pinv[nu] = inverse(P[nu]);
    std::array<std::array<Matrix, 4>, 4> conv;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) conv[a][b] = a == b ? Matrix::identity(r) : P[a] * Pinv[b];
    auto coords = [&](const std::vector<int>& blocks) {
        std::vector<int> c;
        for (int j : blocks) {
            auto cj = l.coords(j);
            c.insert(c.end(), cj.begin(), cj.end());
        }
        return c;
    };
    std::vector<std::vector<int>> keep(cells.size());
    for (size_t c = 0; c < cells.size(); ++c) keep[c] = coords(cells[c].keep);
    CellSheaf f;
    f.complex = cx;
    for (auto& k : keep) f.stalk.push_back(static_cast<int>(k.size()));
    for (size_t t = 0; t < cx.cells.size(); ++t) {
        std::vector<bool> ok(r, false);
        for (int x : coords(cells[t].allowed)) ok[x] = true;
        std::vector<int> forbidden;
        for (int x = 0; x < r; ++x)
            if (!ok[x]) forbidden.push_back(x);
        for (auto [s, inc] : cx.cells[t].faces) {
            const Matrix& T = conv[cells[t].chart][cells[s].chart];
            if (!T.select(forbidden, keep[s]).is_zero())
                throw Error(ErrorCode::GluingViolation, "generization from cell " + std::to_string(s) + " to cell " + std::to_string(t) +
                                                            " leaves the stalk");
            f.gen[{s, static_cast<int>(t)}] = T.select(keep[t], keep[s]);
        }
    }
    return f;
}

// ---- circle

CellComplex CircleModel::complex() const {
    CellComplex cx;
    int N = n_vertices();
    cx.cells.resize(2 * N);
    for (int k = 0; k < N; ++k) {
        cx.cells[edge(k)].dim = 1;
        cx.cells[edge(k)].faces = {{k, -1}, {(k + 1) % N, 1}};
    }
    return cx;
}

int chart_of(const ExponentLayout& layout, const CirclePoint& p) {
    for (int nu = 0; nu < 4; ++nu)
        if (in_arc(p, layout.base(nu), layout.base(nu + 1))) return nu;
    throw Error(ErrorCode::InvariantError, "point outside every chart");
}

CircleModel build_circle_model(const ExponentLayout& layout, const GaussRational& c0, const std::vector<CirclePoint>& extra) {
    std::vector<GaussRational> C = layout.C;
    if (layout.index_of(c0) < 0) C.push_back(c0);
    if (!is_generic(layout.theta0, C))
        throw Error(ErrorCode::NonGenericDirection, "theta0 is not generic for C and c0 = " + to_string(c0));
    CircleModel m;
    m.layout = layout;
    m.c0 = c0;
    std::vector<CirclePoint> v;
    for (int nu = 0; nu < 4; ++nu) v.push_back(layout.base(nu));
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = i + 1; j < C.size(); ++j) {
            auto d = stokes_directions(C[i], C[j]);
            v.insert(v.end(), d.begin(), d.end());
        }
    v.insert(v.end(), extra.begin(), extra.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    m.vertices = v;
    for (int nu = 0; nu < 4; ++nu)
        m.base[nu] = static_cast<int>(std::find(v.begin(), v.end(), layout.base(nu)) - v.begin());
    for (auto& p : v) m.chart.push_back(chart_of(layout, p));
    return m;
}

std::vector<int> blocks_below(const CircleModel& m, int cell, const GaussRational& c0, bool strict) {
    std::vector<int> out;
    int N = m.n_vertices();
    for (int j = 0; j < m.layout.n(); ++j) {
        const GaussRational& c = m.layout.C[j];
        bool in;
        if (c == c0) in = !strict;
        else if (cell < N) in = leq_at(c, c0, m.vertices[cell]) == Order::LessStrict;
        else in = sign_on_cell_after(m.vertices[cell - N], c - c0) < 0;
        if (in) out.push_back(j);
    }
    return out;
}

static std::vector<int> all_blocks(const ExponentLayout& l) {
    std::vector<int> a(l.n());
    for (int j = 0; j < l.n(); ++j) a[j] = j;
    return a;
}

static std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

template <class F>
static CellSheaf circle_coordinate_sheaf(const StokesMatrices& data, const CircleModel& m, F cell_data) {
    if (!(m.layout.C == data.layout.C) || !(m.layout.theta0 == data.layout.theta0))
        throw Error(ErrorCode::IncompatibleLayouts, "circle model built for another layout");
    int N = m.n_vertices();
    std::vector<CoordinateCell> cells(2 * N);
    for (int c = 0; c < 2 * N; ++c) {
        cells[c] = cell_data(c);
        cells[c].chart = m.chart[c % N];
    }
    return coordinate_sheaf(m.complex(), cells, data);
}

CellSheaf local_system(const StokesMatrices& data, const CircleModel& m) {
    auto all = all_blocks(data.layout);
    return circle_coordinate_sheaf(data, m, [&](int) { return CoordinateCell{0, all, all}; });
}

CellSheaf sheaf_leq(const StokesMatrices& data, const GaussRational& c0, const CircleModel& m, bool strict) {
    return circle_coordinate_sheaf(data, m, [&](int c) {
        auto b = blocks_below(m, c, c0, strict);
        return CoordinateCell{0, b, b};
    });
}

CellSheaf sheaf_leq(const StokesMatrices& data, const GaussRational& c0) {
    return sheaf_leq(data, c0, build_circle_model(data.layout, c0), false);
}

CellSheaf sheaf_lt(const StokesMatrices& data, const GaussRational& c0) {
    return sheaf_leq(data, c0, build_circle_model(data.layout, c0), true);
}

CellSheaf sheaf_gr(const StokesMatrices& data, const GaussRational& c) {
    if (data.layout.index_of(c) < 0) throw Error(ErrorCode::ExponentNotInC, to_string(c) + " is not an exponent");
    CircleModel m = build_circle_model(data.layout, c);
    return circle_coordinate_sheaf(data, m, [&](int cell) {
        auto le = blocks_below(m, cell, c, false);
        return CoordinateCell{0, minus(le, blocks_below(m, cell, c, true)), le};
    });
}

CellSheaf sheaf_quotient(const StokesMatrices& data, const GaussRational& c0, const CircleModel& m) {
    auto all = all_blocks(data.layout);
    return circle_coordinate_sheaf(data, m, [&](int cell) { return CoordinateCell{0, minus(all, blocks_below(m, cell, c0, false)), all}; });
}

long h0_leq_closed_form(const StokesMatrices& data, const GaussRational& c0) {
    int i0 = data.layout.index_of(c0);
    if (i0 < 0) throw Error(ErrorCode::ExponentNotInC, to_string(c0) + " is not an exponent");
    StokesMatrices n = normalize(data);
    const auto& l = n.layout;
    std::vector<Vec> rows;
    for (int nu = 0; nu < 4; ++nu)
        for (int c = 0; c < l.n(); ++c) {
            if (c == i0) continue;
            Matrix b = n.S[nu].block(l.offset(c), l.offset(i0), l.ranks[c], l.ranks[i0]);
            for (int a = 0; a < b.rows(); ++a) rows.push_back(b.row(a));
        }
    if (rows.empty()) return l.ranks[i0];
    return kernel(Matrix::from_rows(rows, l.ranks[i0])).dim();
}

long euler_characteristic_leq(const StokesMatrices& data, const GaussRational& c0) {
    long chi = cohomology(sheaf_leq(data, c0)).chi;
    int i0 = data.layout.index_of(c0);
    long expected = (i0 >= 0 ? 2L * data.layout.ranks[i0] : 0L) - 2L * data.layout.total_rank();
    if (chi != expected)
        throw Error(ErrorCode::InvariantError, "chi(L_<=c0) = " + std::to_string(chi) + ", expected " + std::to_string(expected));
    return chi;
}

std::vector<Subspace> good_interval_splitting(const StokesMatrices& data, int nu, std::uint64_t shuffle_seed) {
    const auto& l = data.layout;
    if (l.n() == 0) return {};
    nu = ((nu % 4) + 4) % 4;
    int r = l.total_rank();
    CircleModel m = build_circle_model(l, l.C[0]);
    int N = m.n_vertices();
    std::vector<int> cells;
    for (int k = m.base[nu];; k = (k + 1) % N) {
        cells.push_back(k);
        if (k == m.base[(nu + 1) % 4]) break;
        cells.push_back(m.edge(k));
    }
    auto P = chart_frames(data);
    std::array<Matrix, 4> to_nu;
    for (int mu = 0; mu < 4; ++mu) to_nu[mu] = P[nu] * inverse(P[mu]);
    auto shuffled = cells;
    std::mt19937_64 rng(shuffle_seed);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<Subspace> pieces;
    Subspace total(r);
    for (int j = 0; j < l.n(); ++j) {
        auto sections = [&](const std::vector<int>& order) {
            Subspace s = Subspace::full(r);
            std::set<std::pair<int, std::vector<int>>> seen;
            for (int cell : order) {
                auto below = blocks_below(m, cell, l.C[j], false);
                int chart = m.chart[cell % N];
                if (!seen.emplace(chart, below).second) continue;
                std::vector<int> c;
                for (int b : below) {
                    auto cb = l.coords(b);
                    c.insert(c.end(), cb.begin(), cb.end());
                }
                s = intersect(s, image(to_nu[chart], Subspace::coordinates(r, c)));
            }
            return s;
        };
        Subspace a = sections(cells);
        if (!(a == sections(shuffled))) throw Error(ErrorCode::InvariantError, "sections depend on traversal order");
        if (a.dim() != l.ranks[j])
            throw Error(ErrorCode::InvariantError, "Gamma(I, L_<=c) has dimension " + std::to_string(a.dim()) + ", expected " +
                                                       std::to_string(l.ranks[j]));
        total = sum(total, a);
        pieces.push_back(std::move(a));
    }
    if (total.dim() != r) throw Error(ErrorCode::InvariantError, "interval pieces do not span the stalk");
    return pieces;
}

bool morphism_graded_on_interval(const StokesMorphism& m, int nu) {
    bool endo = m.source == m.target;
    StokesMatrices s = to_matrices(m.source);
    StokesMatrices t = endo ? s : to_matrices(m.target);
    auto Ps = chart_frames(s), Pt = chart_frames(t);
    Matrix Bs = s.frame.rows() ? s.frame : Matrix::identity(m.source.dim);
    Matrix Bt = t.frame.rows() ? t.frame : Matrix::identity(m.target.dim);
    Matrix lam = Pt[nu] * inverse(Bt) * m.map * Bs * inverse(Ps[nu]);
    auto ps = good_interval_splitting(s, nu);
    auto pt = endo ? ps : good_interval_splitting(t, nu);
    for (size_t j = 0; j < ps.size(); ++j)
        if (!pt[j].contains(image(lam, ps[j]))) return false;
    return true;
}

DiscCohomology disc_cohomology_Fleq0(const StokesMatrices& data) {
    if (!data.layout.pure) throw Error(ErrorCode::NotPure, "disc cohomology needs pure data");
    const auto& l = data.layout;
    int r = l.total_rank();
    CircleModel m = build_circle_model(l, GaussRational(0));
    CellSheaf q = sheaf_quotient(data, GaussRational(0), m);
    CohomologyResult hq = cohomology(q);
    auto P = chart_frames(data);
    auto off = cochain_offsets(q);
    Matrix rho(static_cast<int>(hq.cochain_dim[0]), r);
    auto all = all_blocks(l);
    for (int k = 0; k < m.n_vertices(); ++k) {
        int row = off[k];
        for (int b : minus(all, blocks_below(m, k, GaussRational(0), false)))
            for (int x : l.coords(b)) {
                for (int y = 0; y < r; ++y) rho(row, y) = P[m.chart[k]](x, y);
                ++row;
            }
    }
    for (auto& drow : coboundary_rows(q, 0))
        for (int y = 0; y < r; ++y) {
            Scalar acc;
            for (auto& [c, x] : drow) acc += x * rho(c, y);
            if (!acc.is_zero()) throw Error(ErrorCode::InvariantError, "restriction L -> C^0(Q) is not a cocycle");
        }
    long rk = rank(rho);
    DiscCohomology out{r - rk, hq.h[0] - rk, hq.h[1]};
    if (out.h0 != 0 || out.h1 != r || out.h2 != 0)
        throw Error(ErrorCode::InvariantError, "disc cohomology of F_<=0 is (" + std::to_string(out.h0) + "," + std::to_string(out.h1) + "," +
                                                   std::to_string(out.h2) + "), expected (0," + std::to_string(r) + ",0)");
    return out;
}

}  // namespace sg
