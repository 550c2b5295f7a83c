#include "stokes_gauss/laplace_oracle.hpp"

#include "stokes_gauss/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sg {

std::optional<Rational> rational_modulus(const GaussRational& z) {
    Rational n = z.norm2();
    if (!is_square(n)) return std::nullopt;
    return sqrt_exact(n);
}

const char* trace_name(TraceKind k) {
    switch (k) {
        case TraceKind::FullLine: return "FullLine";
        case TraceKind::Empty: return "Empty";
        case TraceKind::TwoComponents: return "TwoComponents";
        case TraceKind::OneLens: return "OneLens";
    }
    return "?";
}

static int mod4(int nu) { return ((nu % 4) + 4) % 4; }

static void check_gamma_aligned(const GaussRational& c, const GaussRational& gamma) {
    if (gamma.is_zero()) return;
    GaussRational p = gamma * c;
    if (sgn(p.im) != 0 || sgn(p.re) >= 0)
        throw Error(ErrorCode::NotAligned, "gamma = " + to_string(gamma) + " is not on the ray of -1/c for c = " + to_string(c));
}

HalflineTrace halfline_trace(const GaussRational& c, const GaussRational& gamma, int nu) {
    if (c.is_zero()) throw Error(ErrorCode::ZeroExponent, "c = 0");
    check_gamma_aligned(c, gamma);
    Rational ag2 = c.norm2() * gamma.norm2();
    int s = cmp(ag2, Rational(1));
    if (s == 0) throw Error(ErrorCode::DegeneratePencil, "|c||gamma| = 1");
    HalflineTrace t;
    bool odd = mod4(nu) % 2 == 1;
    if (odd) t.kind = s > 0 ? TraceKind::FullLine : TraceKind::TwoComponents;
    else t.kind = s < 0 ? TraceKind::OneLens : TraceKind::Empty;
    auto a = rational_modulus(c), g = rational_modulus(gamma);
    if (s < 0 && a && g) {
        Rational inv = 1 / *a;
        t.lo = QuadReal(inv, -inv, 1 - *a * *g);
        t.hi = QuadReal(inv, inv, 1 - *a * *g);
    }
    return t;
}

static Matrix frame_of(const StokesMatrices& d) { return d.frame.rows() ? d.frame : Matrix::identity(d.layout.total_rank()); }

Subspace halfline_filtration(const StokesMatrices& data, const GaussRational& gamma, int nu) {
    if (mod4(nu) % 2 == 0) throw Error(ErrorCode::EvenParity, "the half-line path needs odd nu");
    const auto& l = data.layout;
    int r = l.total_rank();
    std::vector<int> coords;
    for (int j = 0; j < l.n(); ++j)
        if (halfline_trace(l.C[j], gamma, nu).kind == TraceKind::FullLine) {
            auto cj = l.coords(j);
            coords.insert(coords.end(), cj.begin(), cj.end());
        }
    auto P = chart_frames(data);
    return image(frame_of(data) * inverse(P[mod4(nu)]), Subspace::coordinates(r, coords));
}

// ---- disc model

namespace {

enum class GraphKind { Curve, Diag, Anti };

struct Graph {
    GraphKind kind;
    int c = -1;
};

struct Builder {
    int nu;
    Rational g;
    std::vector<Rational> a;
    DiscModel m;
    std::vector<std::pair<QuadReal, QuadReal>> witness;  // per cell, finite cells only
    std::vector<bool> at_infinity;

    int add_cell(int dim, std::vector<std::pair<int, int>> faces, QuadReal u = QuadReal(), QuadReal v = QuadReal(), bool inf = false) {
        m.complex.cells.push_back({dim, std::move(faces)});
        witness.emplace_back(u, v);
        at_infinity.push_back(inf);
        return static_cast<int>(m.complex.cells.size()) - 1;
    }

    QuadReal value(const Graph& gr, const QuadReal& u) const {
        switch (gr.kind) {
            case GraphKind::Diag: return u;
            case GraphKind::Anti: return -u;
            case GraphKind::Curve: return (u - QuadReal(g)) / (QuadReal(a[gr.c]) * u - QuadReal(Rational(1)));
        }
        return u;
    }

    bool pole_at(const Graph& gr, const QuadReal& u) const {
        return gr.kind == GraphKind::Curve && quad_compare(u, QuadReal(Rational(1 / a[gr.c]))) == 0;
    }

    // +1 if the curve tends to +infinity just right of its pole, -1 otherwise
    int right_of_pole(const Graph& gr) const { return cmp(Rational(a[gr.c] * g), Rational(1)) < 0 ? 1 : -1; }

    static int end_direction(const Graph& gr, bool plus) {
        switch (gr.kind) {
            case GraphKind::Curve: return plus ? 0 : 4;
            case GraphKind::Diag: return plus ? 1 : 5;
            case GraphKind::Anti: return plus ? 7 : 3;
        }
        return 0;
    }

    int sector_chart(const QuadReal& u, const QuadReal& v) const {
        int dm = (u - v).sign(), dp = (u + v).sign();
        int off;
        if (dm == 0 && dp == 0) off = 0;
        else if (dp > 0 && dm >= 0) off = 0;
        else if (dm < 0 && dp >= 0) off = -1;
        else if (dp < 0 && dm <= 0) off = -2;
        else off = 1;
        return mod4(nu + off);
    }

    std::vector<int> finite_members(const QuadReal& u, const QuadReal& v) const {
        std::vector<int> out;
        int flip = nu % 2 ? -1 : 1;
        for (size_t j = 0; j < a.size(); ++j) {
            QuadReal q = QuadReal(a[j]) * u * v - u - v + QuadReal(g);
            if (flip * q.sign() < 0) out.push_back(static_cast<int>(j));
        }
        return out;
    }
};

QuadReal midpoint(const QuadReal& x, const QuadReal& y) { return (x + y) * QuadReal(Rational(1, 2)); }

Rational rational_below(const QuadReal& x) {
    Rational r(static_cast<long>(std::floor(x.approx())) - 1);
    while (quad_compare(QuadReal(r), x) >= 0) r -= 1;
    return r;
}

Rational rational_above(const QuadReal& x) {
    Rational r(static_cast<long>(std::ceil(x.approx())) + 1);
    while (quad_compare(QuadReal(r), x) <= 0) r += 1;
    return r;
}

}  // namespace

DiscModel build_disc_model(const ExponentLayout& layout, const GaussRational& gamma, int nu) {
    if (gamma.is_zero()) throw Error(ErrorCode::DegeneratePencil, "gamma = 0");
    Builder b;
    b.nu = mod4(nu);
    auto g = rational_modulus(gamma);
    if (!g) throw Error(ErrorCode::NonRationalModulus, "|gamma| is irrational for gamma = " + to_string(gamma));
    b.g = *g;
    for (auto& c : layout.C) {
        check_gamma_aligned(c, gamma);
        auto a = rational_modulus(c);
        if (!a) throw Error(ErrorCode::NonRationalModulus, "|c| is irrational for c = " + to_string(c));
        if (*a * b.g == 1) throw Error(ErrorCode::DegeneratePencil, "|c||gamma| = 1 for c = " + to_string(c));
        b.a.push_back(*a);
    }
    for (size_t i = 0; i < b.a.size(); ++i)
        for (size_t j = i + 1; j < b.a.size(); ++j)
            if (b.a[i] == b.a[j]) throw Error(ErrorCode::DegeneratePencil, "two exponents share a modulus");
    b.m.nu = b.nu;
    b.m.g = b.g;
    b.m.moduli = b.a;

    std::vector<Graph> graphs;
    for (size_t j = 0; j < b.a.size(); ++j) graphs.push_back({GraphKind::Curve, static_cast<int>(j)});
    graphs.push_back({GraphKind::Diag});
    graphs.push_back({GraphKind::Anti});

    // critical abscissae: crossings of any two graphs, and poles
    std::vector<QuadReal> crit{QuadReal(Rational(0)), QuadReal(b.g)};
    for (auto& a : b.a) {
        Rational inv = 1 / a;
        crit.emplace_back(inv);
        crit.emplace_back(Rational(0), Rational(1), b.g / a);
        crit.emplace_back(Rational(0), Rational(-1), b.g / a);
        if (a * b.g < 1) {
            crit.emplace_back(inv, inv, 1 - a * b.g);
            crit.emplace_back(inv, -inv, 1 - a * b.g);
        }
    }
    std::sort(crit.begin(), crit.end(), [](auto& x, auto& y) { return quad_compare(x, y) < 0; });
    crit.erase(std::unique(crit.begin(), crit.end(), [](auto& x, auto& y) { return quad_compare(x, y) == 0; }), crit.end());
    int m = static_cast<int>(crit.size());

    for (int k = 0; k < 8; ++k) b.m.boundary_vertex[k] = b.add_cell(0, {}, QuadReal(), QuadReal(), true);
    for (int k = 0; k < 8; ++k)
        b.m.boundary_arc[k] = b.add_cell(1, {{b.m.boundary_vertex[k], -1}, {b.m.boundary_vertex[(k + 1) % 8], 1}}, QuadReal(), QuadReal(), true);
    const int top = b.m.boundary_vertex[2], bottom = b.m.boundary_vertex[6];

    // vertical lines
    std::vector<std::vector<int>> chain_nodes(m), chain_edges(m);
    std::vector<std::vector<int>> graph_vertex(m, std::vector<int>(graphs.size(), -1));
    for (int k = 0; k < m; ++k) {
        std::vector<std::pair<QuadReal, int>> vals;
        for (size_t gi = 0; gi < graphs.size(); ++gi)
            if (!b.pole_at(graphs[gi], crit[k])) vals.emplace_back(b.value(graphs[gi], crit[k]), static_cast<int>(gi));
        std::sort(vals.begin(), vals.end(), [](auto& x, auto& y) { return quad_compare(x.first, y.first) < 0; });
        chain_nodes[k].push_back(bottom);
        std::vector<QuadReal> node_v;
        for (size_t i = 0; i < vals.size(); ++i) {
            if (i == 0 || quad_compare(vals[i].first, vals[i - 1].first) != 0) {
                int vid = b.add_cell(0, {}, crit[k], vals[i].first);
                chain_nodes[k].push_back(vid);
                node_v.push_back(vals[i].first);
                if (vals[i].first.sign() == 0 && crit[k].sign() == 0) b.m.origin = vid;
            }
            graph_vertex[k][vals[i].second] = chain_nodes[k].back();
        }
        chain_nodes[k].push_back(top);
        for (size_t i = 0; i + 1 < chain_nodes[k].size(); ++i) {
            QuadReal w;
            if (i == 0) w = QuadReal(rational_below(node_v.front()));
            else if (i + 2 == chain_nodes[k].size()) w = QuadReal(rational_above(node_v.back()));
            else w = midpoint(node_v[i - 1], node_v[i]);
            chain_edges[k].push_back(b.add_cell(1, {{chain_nodes[k][i], -1}, {chain_nodes[k][i + 1], 1}}, crit[k], w));
        }
    }
    auto pos = [&](int k, int vid) {
        auto it = std::find(chain_nodes[k].begin(), chain_nodes[k].end(), vid);
        if (it == chain_nodes[k].end()) throw Error(ErrorCode::InvariantError, "vertex missing from vertical line");
        return static_cast<int>(it - chain_nodes[k].begin());
    };
    auto arcs = [&](int from, int to) {
        std::vector<int> out;
        for (int k = from; k != to; k = (k + 1) % 8) out.push_back(b.m.boundary_arc[k]);
        return out;
    };
    auto dir_of = [&](int vid) {
        for (int k = 0; k < 8; ++k)
            if (b.m.boundary_vertex[k] == vid) return k;
        throw Error(ErrorCode::InvariantError, "expected a vertex at infinity");
    };

    // slabs
    for (int j = 0; j <= m; ++j) {
        Rational uw = j == 0 ? rational_below(crit[0]) : j == m ? rational_above(crit[m - 1]) : rational_between(crit[j - 1], crit[j]);
        QuadReal u(uw);
        std::vector<std::pair<QuadReal, int>> order;
        for (size_t gi = 0; gi < graphs.size(); ++gi) order.emplace_back(b.value(graphs[gi], u), static_cast<int>(gi));
        std::sort(order.begin(), order.end(), [](auto& x, auto& y) { return quad_compare(x.first, y.first) < 0; });
        for (size_t i = 1; i < order.size(); ++i)
            if (quad_compare(order[i].first, order[i - 1].first) == 0) throw Error(ErrorCode::InvariantError, "graphs meet inside a slab");
        struct Piece {
            int left, right, edge;
        };
        std::vector<Piece> pieces;
        for (auto& [val, gi] : order) {
            const Graph& gr = graphs[gi];
            int left, right;
            if (j == 0) left = b.m.boundary_vertex[Builder::end_direction(gr, false)];
            else if (b.pole_at(gr, crit[j - 1])) left = b.right_of_pole(gr) > 0 ? top : bottom;
            else left = graph_vertex[j - 1][gi];
            if (j == m) right = b.m.boundary_vertex[Builder::end_direction(gr, true)];
            else if (b.pole_at(gr, crit[j])) right = b.right_of_pole(gr) > 0 ? bottom : top;
            else right = graph_vertex[j][gi];
            int e = b.add_cell(1, {{left, -1}, {right, 1}}, u, val);
            pieces.push_back({left, right, e});
        }
        std::vector<Piece> bounds;
        bounds.push_back({bottom, bottom, -1});
        bounds.insert(bounds.end(), pieces.begin(), pieces.end());
        bounds.push_back({top, top, -1});
        for (size_t i = 0; i + 1 < bounds.size(); ++i) {
            const Piece& lo = bounds[i];
            const Piece& hi = bounds[i + 1];
            std::vector<std::pair<int, int>> faces;
            if (lo.edge >= 0) faces.emplace_back(lo.edge, 1);
            if (hi.edge >= 0) faces.emplace_back(hi.edge, -1);
            if (j < m) {
                for (int p = pos(j, lo.right); p < pos(j, hi.right); ++p) faces.emplace_back(chain_edges[j][p], 1);
            } else {
                for (int arc : arcs(dir_of(lo.right), dir_of(hi.right))) faces.emplace_back(arc, 1);
            }
            if (j > 0) {
                for (int p = pos(j - 1, lo.left); p < pos(j - 1, hi.left); ++p) faces.emplace_back(chain_edges[j - 1][p], -1);
            } else {
                for (int arc : arcs(dir_of(hi.left), dir_of(lo.left))) faces.emplace_back(arc, 1);
            }
            QuadReal w;
            if (lo.edge < 0) w = QuadReal(rational_below(order.front().first));
            else if (hi.edge < 0) w = QuadReal(rational_above(order.back().first));
            else w = midpoint(order[i - 1].first, order[i].first);
            b.add_cell(2, std::move(faces), u, w);
        }
    }

    check_complex(b.m.complex);
    long chi = 0;
    for (auto& c : b.m.complex.cells) chi += c.dim % 2 ? -1 : 1;
    if (chi != 1) throw Error(ErrorCode::InvariantError, "disc model has Euler characteristic " + std::to_string(chi));
    if (b.m.origin < 0) throw Error(ErrorCode::InvariantError, "origin missing from the disc model");

    // charts and memberships
    std::vector<int> all(b.a.size());
    for (size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(j);
    int flip = b.nu % 2 ? -1 : 1;
    static const int uv_sign_vertex[8] = {0, 1, 0, -1, 0, 1, 0, -1};
    static const int uv_sign_arc[8] = {1, 1, -1, -1, 1, 1, -1, -1};
    static const int chart_vertex[8] = {0, 0, -1, -1, -2, -2, 1, 1};
    static const int chart_arc[8] = {0, -1, -1, -2, -2, 1, 1, 0};
    size_t n_cells = b.m.complex.cells.size();
    b.m.chart.assign(n_cells, b.nu);
    b.m.members.assign(n_cells, {});
    for (int k = 0; k < 8; ++k) {
        b.m.chart[b.m.boundary_vertex[k]] = mod4(b.nu + chart_vertex[k]);
        b.m.chart[b.m.boundary_arc[k]] = mod4(b.nu + chart_arc[k]);
        if (flip * uv_sign_vertex[k] < 0) b.m.members[b.m.boundary_vertex[k]] = all;
        if (flip * uv_sign_arc[k] < 0) b.m.members[b.m.boundary_arc[k]] = all;
    }
    for (size_t c = 0; c < n_cells; ++c) {
        if (b.at_infinity[c]) continue;
        auto& [u, v] = b.witness[c];
        b.m.chart[c] = b.sector_chart(u, v);
        b.m.members[c] = b.finite_members(u, v);
    }
    return b.m;
}

static CellSheaf disc_sheaf(const StokesMatrices& data, const DiscModel& model, bool cut) {
    std::vector<int> all(data.layout.n());
    for (int j = 0; j < data.layout.n(); ++j) all[j] = j;
    std::vector<CoordinateCell> cells;
    for (size_t c = 0; c < model.complex.cells.size(); ++c) {
        const auto& keep = cut ? model.members[c] : all;
        cells.push_back({model.chart[c], keep, keep});
    }
    return coordinate_sheaf(model.complex, cells, data);
}

CellSheaf sheaf_G_lt_gamma(const StokesMatrices& data, const DiscModel& model) { return disc_sheaf(data, model, true); }

CellSheaf sheaf_G(const StokesMatrices& data, const DiscModel& model) { return disc_sheaf(data, model, false); }

DiscFiltration disc_filtration(const StokesMatrices& data, const DiscModel& model) {
    int r = data.layout.total_rank();
    CellSheaf f = sheaf_G_lt_gamma(data, model);
    DiscFiltration out;
    out.h = cohomology(f);
    auto off = cochain_offsets(f);
    auto P = chart_frames(data);
    std::array<Matrix, 4> Pinv;
    for (int mu = 0; mu < 4; ++mu) Pinv[mu] = inverse(P[mu]);
    int from = (2 * model.nu + 5) % 8, to = (2 * model.nu + 1) % 8;
    std::vector<SparseRow> phi(r);
    for (int k = from; k != to; k = (k + 1) % 8) {
        int arc = model.boundary_arc[k];
        if (f.stalk[arc] == 0) continue;
        if (f.stalk[arc] != r) throw Error(ErrorCode::InvariantError, "boundary arc with partial stalk");
        const Matrix& T = Pinv[model.chart[arc]];
        for (int j = 0; j < r; ++j)
            for (int x = 0; x < r; ++x)
                if (!T(j, x).is_zero()) phi[j].emplace_back(off[arc] + x, T(j, x));
    }
    for (auto& row : phi) std::sort(row.begin(), row.end(), [](auto& x, auto& y) { return x.first < y.first; });
    SparseEchelon rowspace(static_cast<int>(out.h.cochain_dim[1]));
    for (auto& row : coboundary_rows(f, 1)) rowspace.add(row);
    std::map<int, int> support;
    std::vector<SparseRow> residual;
    for (auto& row : phi) {
        residual.push_back(rowspace.reduce(row));
        for (auto& [c, x] : residual.back()) support.emplace(c, 0);
    }
    int k = 0;
    for (auto& [c, idx] : support) idx = k++;
    Matrix M(k, r);
    for (int j = 0; j < r; ++j)
        for (auto& [c, x] : residual[j]) M(support[c], j) = x;
    Subspace perp = kernel(M);
    Subspace w = perp.annihilator();
    out.subspace = image(frame_of(data), w);
    return out;
}

std::vector<GaussRational> default_gamma_samples(const ExponentLayout& transformed) {
    if (transformed.n() == 0) return {};
    std::vector<Rational> mods;
    for (auto& c : transformed.C) {
        auto a = rational_modulus(c);
        if (!a) throw Error(ErrorCode::NonRationalModulus, "|c| is irrational for c = " + to_string(c));
        mods.push_back(*a);
    }
    GaussRational unit = transformed.C[0] * GaussRational(Rational(1 / mods[0]));
    std::sort(mods.begin(), mods.end());
    std::vector<Rational> samples{mods.front() / 2};
    for (size_t i = 0; i + 1 < mods.size(); ++i) samples.push_back((mods[i] + mods[i + 1]) / 2);
    samples.push_back(mods.back() + 1);
    std::vector<GaussRational> out;
    for (auto& s : samples) out.push_back(unit * GaussRational(s));
    return out;
}

VerifyReport verify_theorem(const StokesFiltrations& data, const std::vector<GaussRational>& gammas) {
    StokesFiltrations hat = laplace_transform(data);
    StokesMatrices mats = to_matrices(data);
    auto samples = gammas.empty() ? default_gamma_samples(hat.layout) : gammas;
    VerifyReport rep;
    for (int nu = 0; nu < 4; ++nu)
        for (auto& gamma : samples) {
            VerifyCase vc;
            vc.nu = nu;
            vc.gamma = gamma;
            Subspace predicted = filtration_below(hat, gamma, nu);
            DiscFiltration df = disc_filtration(mats, build_disc_model(data.layout, gamma, nu));
            vc.h = df.h.h;
            vc.oracle_dim = df.subspace.dim();
            vc.predicted_dim = predicted.dim();
            bool shape = df.h.h.size() == 3 && df.h.h[0] == 0 && df.h.h[2] == 0 && df.h.h[1] == predicted.dim();
            if (nu % 2 == 1) {
                vc.halfline_checked = true;
                vc.halfline_equal = halfline_filtration(mats, gamma, nu) == df.subspace;
            }
            vc.equal = shape && vc.halfline_equal && df.subspace == predicted;
            rep.pass = rep.pass && vc.equal;
            rep.cases.push_back(std::move(vc));
        }
    return rep;
}

}  // namespace sg
