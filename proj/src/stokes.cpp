#include "stokes_gauss/stokes.hpp"

#include "stokes_gauss/errors.hpp"

#include <algorithm>
#include <random>

namespace sg {

const char* field_name(Field f) { return f == Field::Q ? "Q" : "Q(i)"; }

int ExponentLayout::total_rank() const {
    int r = 0;
    for (int x : ranks) r += x;
    return r;
}

int ExponentLayout::offset(int i) const {
    int o = 0;
    for (int k = 0; k < i; ++k) o += ranks[k];
    return o;
}

std::vector<int> ExponentLayout::coords(int i) const {
    std::vector<int> out;
    for (int k = 0, o = offset(i); k < ranks[i]; ++k) out.push_back(o + k);
    return out;
}

int ExponentLayout::index_of(const GaussRational& c) const {
    for (int i = 0; i < n(); ++i)
        if (C[i] == c) return i;
    return -1;
}

ExponentLayout sort_exponents(const std::vector<std::pair<GaussRational, int>>& exps, const CirclePoint& theta0, bool pure) {
    ExponentLayout l;
    l.theta0 = theta0;
    l.pure = pure;
    if (pure && exps.empty()) throw Error(ErrorCode::InvalidData, "pure data needs at least one exponent");
    std::vector<GaussRational> C;
    for (auto& [c, r] : exps) {
        if (r < 1) throw Error(ErrorCode::InvalidData, "rank-0 block for exponent " + to_string(c));
        if (pure && c.is_zero()) throw Error(ErrorCode::InvalidData, "pure layout contains 0");
        C.push_back(c);
    }
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = i + 1; j < C.size(); ++j)
            if (C[i] == C[j]) throw Error(ErrorCode::InvalidData, "duplicate exponent " + to_string(C[i]));
    if (!is_generic(theta0, C))
        throw Error(ErrorCode::NonGenericDirection, "theta0 " + to_string(theta0) + " is a Stokes direction");
    auto sorted = exps;
    std::sort(sorted.begin(), sorted.end(), [&](auto& a, auto& b) { return leq_at(a.first, b.first, theta0) == Order::LessStrict; });
    for (auto& [c, r] : sorted) {
        l.C.push_back(c);
        l.ranks.push_back(r);
    }
    return l;
}

void check_layout(const ExponentLayout& l) {
    if (l.C.size() != l.ranks.size()) throw Error(ErrorCode::InvalidData, "exponents and ranks differ in length");
    if (l.pure && l.C.empty()) throw Error(ErrorCode::InvalidData, "pure data needs at least one exponent");
    for (int r : l.ranks)
        if (r < 0) throw Error(ErrorCode::InvalidData, "negative rank");
    for (int i = 0; i < l.n(); ++i) {
        if (l.pure && l.C[i].is_zero()) throw Error(ErrorCode::InvalidData, "pure layout contains 0");
        for (int j = i + 1; j < l.n(); ++j)
            if (l.C[i] == l.C[j]) throw Error(ErrorCode::InvalidData, "duplicate exponent " + to_string(l.C[i]));
    }
    if (!is_generic(l.theta0, l.C))
        throw Error(ErrorCode::NonGenericDirection, "theta0 " + to_string(l.theta0) + " is a Stokes direction");
    for (int i = 0; i + 1 < l.n(); ++i)
        if (leq_at(l.C[i], l.C[i + 1], l.theta0) != Order::LessStrict)
            throw Error(ErrorCode::InvalidData, "exponents are not sorted by the order at theta0");
}

static bool layouts_compatible(const ExponentLayout& a, const ExponentLayout& b) {
    return a.C == b.C && a.theta0 == b.theta0;
}

// ---- matrices

static Matrix blk(const Matrix& m, const ExponentLayout& l, int i, int j) {
    return m.block(l.offset(i), l.offset(j), l.ranks[i], l.ranks[j]);
}

std::array<Matrix, 4> gluing(const StokesMatrices& d) {
    std::array<Matrix, 4> g = d.S;
    if (d.form == Form::Variant) g[0] = block_diagonal(d.T) * d.S[0];
    return g;
}

std::array<Matrix, 4> chart_frames(const StokesMatrices& d) {
    auto g = gluing(d);
    std::array<Matrix, 4> P;
    P[0] = Matrix::identity(d.layout.total_rank());
    for (int nu = 1; nu < 4; ++nu) P[nu] = g[nu] * P[nu - 1];
    return P;
}

Matrix monodromy(const StokesMatrices& d) {
    auto g = gluing(d);
    return g[0] * g[3] * g[2] * g[1];
}

std::vector<Matrix> formal_monodromies(const StokesMatrices& d) {
    auto g = gluing(d);
    std::vector<Matrix> T;
    for (int i = 0; i < d.layout.n(); ++i)
        T.push_back(blk(g[0], d.layout, i, i) * blk(g[3], d.layout, i, i) * blk(g[2], d.layout, i, i) *
                    blk(g[1], d.layout, i, i));
    return T;
}

std::vector<Violation> validate(const StokesMatrices& d) {
    std::vector<Violation> out;
    auto add = [&](std::string inv, std::string detail) { out.push_back({std::move(inv), std::move(detail)}); };
    try {
        check_layout(d.layout);
    } catch (const Error& e) {
        add("layout", e.what());
        return out;
    }
    const auto& l = d.layout;
    int r = l.total_rank();
    for (int nu = 0; nu < 4; ++nu)
        if (d.S[nu].rows() != r || d.S[nu].cols() != r)
            add("shape", "S^(" + std::to_string(nu) + "," + std::to_string((nu + 3) % 4) + ") is not " + std::to_string(r) + "x" + std::to_string(r));
    if (!out.empty()) return out;
    for (int nu = 0; nu < 4; ++nu) {
        std::string name = "S^(" + std::to_string(nu) + "," + std::to_string((nu + 3) % 4) + ")";
        for (int i = 0; i < l.n(); ++i)
            for (int j = 0; j < l.n(); ++j) {
                bool must_vanish = nu % 2 == 0 ? i > j : i < j;
                if (must_vanish && !blk(d.S[nu], l, i, j).is_zero())
                    add("triangularity", name + " block (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") must vanish");
            }
        for (int i = 0; i < l.n(); ++i) {
            Matrix b = blk(d.S[nu], l, i, i);
            if (d.form == Form::Variant) {
                if (!(b == Matrix::identity(l.ranks[i])))
                    add("diagonal", name + " diagonal block " + std::to_string(i + 1) + " is not the identity");
            } else if (rank(b) != l.ranks[i]) {
                add("diagonal", name + " diagonal block " + std::to_string(i + 1) + " is singular");
            }
        }
    }
    if (d.form == Form::Variant) {
        if (static_cast<int>(d.T.size()) != l.n()) add("formal-monodromy", "expected one T per exponent");
        else
            for (int i = 0; i < l.n(); ++i)
                if (d.T[i].rows() != l.ranks[i] || d.T[i].cols() != l.ranks[i] || rank(d.T[i]) != l.ranks[i])
                    add("formal-monodromy", "T_" + std::to_string(i + 1) + " has wrong shape or is singular");
    } else if (!d.T.empty()) {
        add("formal-monodromy", "General form carries no separate T");
    }
    if (d.frame.rows() != 0 && (d.frame.rows() != r || d.frame.cols() != r || rank(d.frame) != r))
        add("frame", "frame must be an invertible r x r matrix");
    if (d.field == Field::Q) {
        bool real = true;
        for (auto& m : d.S) real = real && m.is_real();
        for (auto& m : d.T) real = real && m.is_real();
        real = real && d.frame.is_real();
        if (!real) add("field", "non-real entry in a Q dataset");
    }
    if (!out.empty()) return out;
    if (l.pure && !(monodromy(d) == Matrix::identity(r))) add("monodromy", "total monodromy is not the identity");
    return out;
}

static void require_valid(const StokesMatrices& d) {
    auto v = validate(d);
    if (!v.empty()) {
        ErrorCode code = v.front().invariant == "monodromy" ? ErrorCode::MonodromyNotIdentity : ErrorCode::InvalidData;
        throw Error(code, v.front().invariant + ": " + v.front().detail);
    }
}

StokesMatrices to_general(const StokesMatrices& d) {
    StokesMatrices g = d;
    g.S = gluing(d);
    g.form = Form::General;
    g.T.clear();
    return g;
}

StokesMatrices normalize(const StokesMatrices& d) {
    require_valid(d);
    const auto& l = d.layout;
    auto g = gluing(d);
    std::array<std::vector<Matrix>, 4> lam;
    for (int i = 0; i < l.n(); ++i) lam[0].push_back(Matrix::identity(l.ranks[i]));
    for (int nu = 1; nu < 4; ++nu)
        for (int i = 0; i < l.n(); ++i) lam[nu].push_back(lam[nu - 1][i] * inverse(blk(g[nu], l, i, i)));
    StokesMatrices out = d;
    out.form = Form::Variant;
    for (int nu = 0; nu < 4; ++nu) {
        int prev = (nu + 3) % 4;
        std::vector<Matrix> inv_prev;
        for (auto& m : lam[prev]) inv_prev.push_back(inverse(m));
        out.S[nu] = block_diagonal(lam[nu]) * g[nu] * block_diagonal(inv_prev);
    }
    out.T.clear();
    std::vector<Matrix> tinv;
    for (int i = 0; i < l.n(); ++i) {
        out.T.push_back(blk(out.S[0], l, i, i));
        tinv.push_back(inverse(out.T.back()));
    }
    out.S[0] = block_diagonal(tinv) * out.S[0];
    if (out.frame.rows() != 0 && out.frame == Matrix::identity(l.total_rank())) out.frame = Matrix();
    return out;
}

static std::vector<int> blocks_coords(const ExponentLayout& l, int from, int to) {
    std::vector<int> c;
    for (int i = from; i <= to; ++i) {
        auto ci = l.coords(i);
        c.insert(c.end(), ci.begin(), ci.end());
    }
    return c;
}

StokesFiltrations to_filtrations(const StokesMatrices& d) {
    require_valid(d);
    const auto& l = d.layout;
    int r = l.total_rank(), n = l.n();
    auto P = chart_frames(d);
    Matrix B0 = d.frame.rows() == 0 ? Matrix::identity(r) : d.frame;
    std::array<Matrix, 4> to_L;
    for (int nu = 0; nu < 4; ++nu) to_L[nu] = B0 * inverse(P[nu]);
    auto incr = [&](int i) { return Subspace::coordinates(r, blocks_coords(l, 0, i)); };
    auto decr = [&](int i) { return Subspace::coordinates(r, blocks_coords(l, i, n - 1)); };
    StokesFiltrations f;
    f.layout = l;
    f.field = d.field;
    f.dim = r;
    for (int i = 0; i < n; ++i) {
        f.F[0].push_back(image(to_L[0], incr(i)));
        f.F[1].push_back(image(to_L[0], decr(i)));
        f.F[2].push_back(image(to_L[2], incr(i)));
        f.F[3].push_back(image(to_L[2], decr(i)));
        // each filtration is also graded by the neighbouring chart
        if (!(image(to_L[1], decr(i)) == f.F[1][i]) || !(image(to_L[1], incr(i)) == f.F[2][i]) ||
            !(image(to_L[3], decr(i)) == f.F[3][i]) || !(image(to_L[3], incr(i)) == f.F[0][i]))
            throw Error(ErrorCode::InvariantError, "transported filtrations disagree");
    }
    return f;
}

std::vector<Subspace> graded_pieces(const StokesFiltrations& f, int nu) {
    std::vector<Subspace> g;
    for (int i = 0; i < f.layout.n(); ++i) g.push_back(intersect(f.F[nu][i], f.F[(nu + 1) % 4][i]));
    return g;
}

std::vector<Violation> validate(const StokesFiltrations& f) {
    std::vector<Violation> out;
    auto add = [&](std::string inv, std::string detail) { out.push_back({std::move(inv), std::move(detail)}); };
    try {
        check_layout(f.layout);
    } catch (const Error& e) {
        add("layout", e.what());
        return out;
    }
    int n = f.layout.n();
    if (f.layout.total_rank() != f.dim) add("rank", "sum of ranks differs from dim L");
    for (int nu = 0; nu < 4; ++nu) {
        if (static_cast<int>(f.F[nu].size()) != n) {
            add("shape", "filtration " + std::to_string(nu) + " has wrong length");
            return out;
        }
        for (auto& s : f.F[nu])
            if (s.ambient() != f.dim) {
                add("shape", "subspace outside L");
                return out;
            }
    }
    for (int nu = 0; nu < 4; ++nu) {
        std::string name = "filtration " + std::to_string(nu);
        for (int i = 0; i + 1 < n; ++i) {
            bool ok = nu % 2 == 0 ? f.F[nu][i + 1].contains(f.F[nu][i]) : f.F[nu][i].contains(f.F[nu][i + 1]);
            if (!ok) add("monotone", name + " is not monotone at index " + std::to_string(i + 1));
        }
        if (n > 0) {
            const Subspace& top = nu % 2 == 0 ? f.F[nu][n - 1] : f.F[nu][0];
            if (top.dim() != f.dim) add("exhaustive", name + " does not reach L");
        }
        auto g = graded_pieces(f, nu);
        Subspace total(f.dim);
        int dims = 0;
        for (int i = 0; i < n; ++i) {
            if (g[i].dim() != f.layout.ranks[i])
                add("opposite", "dim G_" + std::to_string(i + 1) + "^(" + std::to_string(nu) + ") = " + std::to_string(g[i].dim()) +
                                    " differs from rank " + std::to_string(f.layout.ranks[i]));
            total = sum(total, g[i]);
            dims += g[i].dim();
        }
        if (total.dim() != f.dim || dims != f.dim)
            add("opposite", "filtrations " + std::to_string(nu) + " and " + std::to_string((nu + 1) % 4) + " are not opposite");
    }
    if (f.field == Field::Q) {
        for (auto& fn : f.F)
            for (auto& s : fn)
                for (auto& b : s.basis())
                    for (auto& x : b)
                        if (!x.is_real()) {
                            add("field", "non-real entry in a Q dataset");
                            return out;
                        }
    }
    return out;
}

StokesMatrices to_matrices(const StokesFiltrations& f) {
    auto v = validate(f);
    if (!v.empty()) {
        ErrorCode code = v.front().invariant == "opposite" ? ErrorCode::NotOpposite : ErrorCode::InvalidData;
        throw Error(code, v.front().invariant + ": " + v.front().detail);
    }
    int r = f.dim;
    std::array<Matrix, 4> B;
    for (int nu = 0; nu < 4; ++nu) {
        std::vector<Vec> cols;
        for (auto& g : graded_pieces(f, nu))
            for (auto& b : g.basis()) cols.push_back(b);
        B[nu] = Matrix::from_columns(cols, r);
    }
    StokesMatrices m;
    m.layout = f.layout;
    m.field = f.field;
    m.form = Form::General;
    for (int nu = 0; nu < 4; ++nu) m.S[nu] = inverse(B[nu]) * B[(nu + 3) % 4];
    m.frame = B[0] == Matrix::identity(r) ? Matrix() : B[0];
    StokesMatrices out = normalize(m);
    auto check = validate(out);
    if (!check.empty()) throw Error(ErrorCode::InvariantError, "to_matrices produced invalid data: " + check.front().detail);
    return out;
}

// ---- morphisms

bool is_morphism(const StokesFiltrations& s, const StokesFiltrations& t, const Matrix& map) {
    if (!layouts_compatible(s.layout, t.layout) || map.rows() != t.dim || map.cols() != s.dim) return false;
    for (int nu = 0; nu < 4; ++nu)
        for (int i = 0; i < s.layout.n(); ++i)
            if (!t.F[nu][i].contains(image(map, s.F[nu][i]))) return false;
    return true;
}

std::vector<Matrix> morphism_blocks(const StokesMorphism& m, int nu) {
    auto gs = graded_pieces(m.source, nu);
    auto gt = graded_pieces(m.target, nu);
    std::vector<Matrix> out;
    for (size_t i = 0; i < gs.size(); ++i) {
        Matrix bs = gs[i].basis_columns(), bt = gt[i].basis_columns();
        if (gs[i].dim() == 0) {
            out.emplace_back(gt[i].dim(), 0);
            continue;
        }
        Matrix img = m.map * bs;
        if (gt[i].dim() == 0) {
            if (!img.is_zero()) throw Error(ErrorCode::InvariantError, "morphism is not graded");
            out.emplace_back(0, gs[i].dim());
            continue;
        }
        out.push_back(coordinates_in(bt, img));
    }
    return out;
}

std::vector<Matrix> hom_space(const StokesFiltrations& s, const StokesFiltrations& t) {
    if (!layouts_compatible(s.layout, t.layout)) throw Error(ErrorCode::IncompatibleLayouts, "hom_space across layouts");
    int rs = s.dim, rt = t.dim;
    if (rs == 0 || rt == 0) return {};
    // preserving F[0] and F[1] is the same as being block diagonal on the graded pieces G^{(0)}
    auto gs = graded_pieces(s, 0), gt = graded_pieces(t, 0);
    std::vector<Vec> cs, ct;
    std::vector<std::pair<int, int>> unknowns;
    for (size_t i = 0; i < gs.size(); ++i) {
        int y0 = static_cast<int>(cs.size()), x0 = static_cast<int>(ct.size());
        for (auto& v : gs[i].basis()) cs.push_back(v);
        for (auto& v : gt[i].basis()) ct.push_back(v);
        for (int x = x0; x < static_cast<int>(ct.size()); ++x)
            for (int y = y0; y < static_cast<int>(cs.size()); ++y) unknowns.emplace_back(x, y);
    }
    Matrix Gs = Matrix::from_columns(cs, rs), Gt = Matrix::from_columns(ct, rt);
    Matrix Gs_inv = inverse(Gs);
    int nvar = static_cast<int>(unknowns.size());
    if (nvar == 0) return {};
    std::vector<Vec> rows;
    for (int nu = 2; nu < 4; ++nu)
        for (int i = 0; i < s.layout.n(); ++i) {
            Matrix beta = Gs_inv * s.F[nu][i].basis_columns();
            Subspace ann = t.F[nu][i].annihilator();
            for (auto& a : ann.basis()) {
                Vec alpha(rt);
                for (int x = 0; x < rt; ++x)
                    for (int z = 0; z < rt; ++z)
                        if (!a[z].is_zero() && !Gt(z, x).is_zero()) alpha[x] += a[z] * Gt(z, x);
                for (int q = 0; q < beta.cols(); ++q) {
                    Vec row(nvar);
                    for (int u = 0; u < nvar; ++u) {
                        auto [x, y] = unknowns[u];
                        if (!alpha[x].is_zero() && !beta(y, q).is_zero()) row[u] = alpha[x] * beta(y, q);
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    Subspace k = rows.empty() ? Subspace::full(nvar) : kernel(Matrix::from_rows(rows, nvar));
    std::vector<Matrix> out;
    for (auto& v : k.basis()) {
        Matrix d(rt, rs);
        for (int u = 0; u < nvar; ++u) d(unknowns[u].first, unknowns[u].second) = v[u];
        out.push_back(Gt * d * Gs_inv);
    }
    return out;
}

static StokesFiltrations with_ranks_from_pieces(StokesFiltrations f) {
    f.layout.ranks.clear();
    for (auto& g : graded_pieces(f, 0)) f.layout.ranks.push_back(g.dim());
    return f;
}

static void require_valid(const StokesFiltrations& f, const char* what) {
    auto v = validate(f);
    if (!v.empty()) throw Error(ErrorCode::InvariantError, std::string(what) + ": " + v.front().invariant + ": " + v.front().detail);
}

SubObject kernel_morphism(const StokesMorphism& m) {
    if (!layouts_compatible(m.source.layout, m.target.layout))
        throw Error(ErrorCode::IncompatibleLayouts, "morphism between different layouts");
    if (!is_morphism(m.source, m.target, m.map)) throw Error(ErrorCode::InvalidData, "map does not preserve the filtrations");
    Subspace K = kernel(m.map);
    Matrix incl = K.basis_columns();
    StokesFiltrations k;
    k.layout = m.source.layout;
    k.field = m.source.field;
    k.dim = K.dim();
    for (int nu = 0; nu < 4; ++nu)
        for (auto& s : m.source.F[nu]) {
            Subspace w = intersect(s, K);
            k.F[nu].push_back(w.dim() == 0 ? Subspace(k.dim) : Subspace::column_span(coordinates_in(incl, w.basis_columns())));
        }
    k = with_ranks_from_pieces(std::move(k));
    require_valid(k, "kernel");
    return {k, StokesMorphism{k, m.source, incl}};
}

SubObject cokernel_morphism(const StokesMorphism& m) {
    if (!layouts_compatible(m.source.layout, m.target.layout))
        throw Error(ErrorCode::IncompatibleLayouts, "morphism between different layouts");
    if (!is_morphism(m.source, m.target, m.map)) throw Error(ErrorCode::InvalidData, "map does not preserve the filtrations");
    Subspace im = Subspace::column_span(m.map);
    std::vector<bool> piv(m.target.dim, false);
    for (int p : im.pivots()) piv[p] = true;
    std::vector<int> free;
    for (int j = 0; j < m.target.dim; ++j)
        if (!piv[j]) free.push_back(j);
    Matrix proj(static_cast<int>(free.size()), m.target.dim);
    for (int j = 0; j < m.target.dim; ++j) {
        Vec e(m.target.dim);
        e[j] = Scalar(1);
        Vec red = im.reduce(e);
        for (size_t k = 0; k < free.size(); ++k) proj(static_cast<int>(k), j) = red[free[k]];
    }
    StokesFiltrations q;
    q.layout = m.target.layout;
    q.field = m.target.field;
    q.dim = static_cast<int>(free.size());
    for (int nu = 0; nu < 4; ++nu)
        for (auto& s : m.target.F[nu]) q.F[nu].push_back(image(proj, s));
    q = with_ranks_from_pieces(std::move(q));
    require_valid(q, "cokernel");
    return {q, StokesMorphism{m.target, q, proj}};
}

// ---- sums and trivial data

StokesFiltrations extend_layout(const StokesFiltrations& d, const ExponentLayout& big) {
    if (!(big.theta0 == d.layout.theta0)) throw Error(ErrorCode::IncompatibleLayouts, "extend_layout changes theta0");
    StokesFiltrations out;
    out.layout = big;
    out.field = d.field;
    out.dim = d.dim;
    out.layout.ranks.assign(big.n(), 0);
    for (int i = 0; i < d.layout.n(); ++i) {
        int k = big.index_of(d.layout.C[i]);
        if (k < 0) throw Error(ErrorCode::IncompatibleLayouts, "extend_layout drops an exponent");
        out.layout.ranks[k] = d.layout.ranks[i];
    }
    for (int nu = 0; nu < 4; ++nu) {
        CirclePoint th = big.base(nu);
        for (int k = 0; k < big.n(); ++k) {
            int i = d.layout.index_of(big.C[k]);
            if (i >= 0) {
                out.F[nu].push_back(d.F[nu][i]);
                continue;
            }
            Subspace s(d.dim);
            for (int j = 0; j < d.layout.n(); ++j)
                if (leq_at(d.layout.C[j], big.C[k], th) == Order::LessStrict) s = sum(s, d.F[nu][j]);
            out.F[nu].push_back(s);
        }
    }
    return out;
}

static Subspace embed(const Subspace& s, int offset, int ambient) {
    std::vector<Vec> vecs;
    for (auto& b : s.basis()) {
        Vec v(ambient);
        std::copy(b.begin(), b.end(), v.begin() + offset);
        vecs.push_back(std::move(v));
    }
    return Subspace::span(vecs, ambient);
}

StokesFiltrations direct_sum(const StokesFiltrations& a, const StokesFiltrations& b) {
    if (!(a.layout.theta0 == b.layout.theta0)) throw Error(ErrorCode::IncompatibleLayouts, "direct_sum across base directions");
    std::vector<std::pair<GaussRational, int>> exps;
    for (int i = 0; i < a.layout.n(); ++i) exps.emplace_back(a.layout.C[i], a.layout.ranks[i]);
    for (int i = 0; i < b.layout.n(); ++i) {
        bool found = false;
        for (auto& e : exps)
            if (e.first == b.layout.C[i]) {
                e.second += b.layout.ranks[i];
                found = true;
            }
        if (!found) exps.emplace_back(b.layout.C[i], b.layout.ranks[i]);
    }
    ExponentLayout big;
    big.theta0 = a.layout.theta0;
    big.pure = a.layout.pure && b.layout.pure;
    if (!is_generic(big.theta0, [&] {
            std::vector<GaussRational> C;
            for (auto& e : exps) C.push_back(e.first);
            return C;
        }()))
        throw Error(ErrorCode::NonGenericDirection, "theta0 is not generic for the union of exponents");
    std::sort(exps.begin(), exps.end(), [&](auto& x, auto& y) { return leq_at(x.first, y.first, big.theta0) == Order::LessStrict; });
    for (auto& e : exps) {
        big.C.push_back(e.first);
        big.ranks.push_back(e.second);
    }
    StokesFiltrations ea = extend_layout(a, big), eb = extend_layout(b, big);
    StokesFiltrations out;
    out.layout = big;
    out.field = (a.field == Field::QI || b.field == Field::QI) ? Field::QI : Field::Q;
    out.dim = a.dim + b.dim;
    for (int nu = 0; nu < 4; ++nu)
        for (int k = 0; k < big.n(); ++k)
            out.F[nu].push_back(sum(embed(ea.F[nu][k], 0, out.dim), embed(eb.F[nu][k], a.dim, out.dim)));
    return out;
}

StokesFiltrations trivial(const GaussRational& c0, int dim, const CirclePoint& theta0, Field field) {
    if (dim < 1) throw Error(ErrorCode::InvalidData, "trivial data needs positive dimension");
    StokesFiltrations f;
    f.layout.C = {c0};
    f.layout.ranks = {dim};
    f.layout.theta0 = theta0;
    f.layout.pure = !c0.is_zero();
    f.field = field;
    f.dim = dim;
    for (int nu = 0; nu < 4; ++nu) f.F[nu] = {Subspace::full(dim)};
    return f;
}

TrivialExtension add_trivial(const StokesFiltrations& d, const GaussRational& c0, int dim) {
    if (d.layout.index_of(c0) >= 0) throw Error(ErrorCode::NotExtreme, "c0 already belongs to C");
    for (int nu = 0; nu < 4; ++nu) {
        CirclePoint th = d.layout.base(nu);
        for (auto& c : d.layout.C) {
            Order o = nu % 2 == 0 ? leq_at(c0, c, th) : leq_at(c, c0, th);
            if (o != Order::LessStrict)
                throw Error(ErrorCode::NotExtreme, "c0 = " + to_string(c0) + " is not extreme at nu = " + std::to_string(nu));
        }
    }
    StokesFiltrations t = trivial(c0, dim, d.layout.theta0, d.field);
    StokesFiltrations sum_data = direct_sum(d, t);
    StokesFiltrations ed = extend_layout(d, sum_data.layout), et = extend_layout(t, sum_data.layout);
    Matrix incl(sum_data.dim, d.dim), proj(dim, sum_data.dim);
    for (int i = 0; i < d.dim; ++i) incl(i, i) = Scalar(1);
    for (int i = 0; i < dim; ++i) proj(i, d.dim + i) = Scalar(1);
    return {sum_data, StokesMorphism{ed, sum_data, incl}, StokesMorphism{sum_data, et, proj}};
}

// ---- rigidity

long centralizer_dim(const Matrix& t) {
    int r = t.rows();
    Matrix k(r * r, r * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int a = 0; a < r; ++a) {
                k(i * r + j, a * r + j) += t(i, a);
                k(i * r + j, i * r + a) -= t(a, j);
            }
    return r * r - rank(k);
}

Rigidity rigidity_index(const StokesMatrices& d) {
    Rigidity out;
    auto T = formal_monodromies(normalize(d));
    for (int i = 0; i < d.layout.n(); ++i) {
        out.eta += centralizer_dim(T[i]);
        out.sum_r2 += static_cast<long>(d.layout.ranks[i]) * d.layout.ranks[i];
    }
    out.rig = out.eta + out.sum_r2;
    out.rigid = out.rig == 2;
    return out;
}

// ---- random generation

StokesMatrices random_data(const ExponentLayout& layout, std::uint64_t seed) {
    check_layout(layout);
    if (!layout.pure) throw Error(ErrorCode::NotPure, "random_data needs a pure layout");
    for (int r : layout.ranks)
        if (r < 1) throw Error(ErrorCode::InvalidData, "rank-0 block");
    const auto& l = layout;
    int n = l.n(), r = l.total_rank();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-3, 3);
    auto random_unipotent = [&](bool lower) {
        Matrix m = Matrix::identity(r);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (lower ? i > j : i < j)
                    for (int a : l.coords(i))
                        for (int b : l.coords(j)) m(a, b) = Scalar(entry(rng));
        return m;
    };
    for (int attempt = 0; attempt < 32; ++attempt) {
        Matrix S10 = random_unipotent(true), S21 = random_unipotent(false);
        Matrix N = inverse(S21 * S10);
        // N = U L with U block-upper, L block-lower unipotent: block LU of the block-reversed matrix
        auto A = [&](int i, int j) { return blk(N, l, n - 1 - i, n - 1 - j); };
        auto rk = [&](int i) { return l.ranks[n - 1 - i]; };
        std::vector<std::vector<Matrix>> Lw(n, std::vector<Matrix>(n)), Uw(n, std::vector<Matrix>(n));
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            for (int i = k; i < n; ++i) {
                Matrix x = A(i, k);
                for (int m = 0; m < k; ++m) x = x - Lw[i][m] * Uw[m][k];
                Lw[i][k] = x;
            }
            if (rank(Lw[k][k]) != rk(k)) {
                ok = false;
                break;
            }
            Matrix inv = inverse(Lw[k][k]);
            Uw[k][k] = Matrix::identity(rk(k));
            for (int j = k + 1; j < n; ++j) {
                Matrix x = A(k, j);
                for (int m = 0; m < k; ++m) x = x - Lw[k][m] * Uw[m][j];
                Uw[k][j] = inv * x;
            }
        }
        if (!ok) continue;
        Matrix U(r, r), L(r, r);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int bi = n - 1 - i, bj = n - 1 - j;
                if (i >= j) U.set_block(l.offset(bi), l.offset(bj), Lw[i][j]);
                if (i <= j) L.set_block(l.offset(bi), l.offset(bj), Uw[i][j]);
            }
        StokesMatrices d;
        d.layout = l;
        d.field = Field::Q;
        d.form = Form::Variant;
        std::vector<Matrix> tinv;
        for (int i = 0; i < n; ++i) {
            d.T.push_back(blk(U, l, i, i));
            tinv.push_back(inverse(d.T.back()));
        }
        d.S[1] = S10;
        d.S[2] = S21;
        d.S[3] = L;
        d.S[0] = block_diagonal(tinv) * U;
        auto v = validate(d);
        if (!v.empty()) throw Error(ErrorCode::InvariantError, "random_data produced invalid data: " + v.front().detail);
        return d;
    }
    throw Error(ErrorCode::GenerationFailed, "random_data: corner minors kept vanishing");
}

ExponentLayout random_layout(const std::vector<int>& ranks, std::uint64_t seed) {
    if (ranks.empty()) throw Error(ErrorCode::InvalidData, "no blocks requested");
    for (int r : ranks)
        if (r < 1) throw Error(ErrorCode::InvalidData, "block ranks must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-4, 4), den(1, 2);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::pair<GaussRational, int>> exps;
        std::vector<GaussRational> C{GaussRational(0)};
        bool ok = true;
        for (int r : ranks) {
            Rational re(coef(rng), den(rng)), im(coef(rng), den(rng));
            re.canonicalize();
            im.canonicalize();
            GaussRational c(re, im);
            for (const auto& x : C) ok = ok && !(x == c);
            C.push_back(c);
            exps.emplace_back(c, r);
        }
        if (ok && is_generic(CirclePoint(), C)) return sort_exponents(exps, CirclePoint());
    }
    throw Error(ErrorCode::GenerationFailed, "no generic layout found");
}

}  // namespace sg
