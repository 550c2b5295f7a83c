#include "stokes_gauss/io.hpp"

#include "stokes_gauss/errors.hpp"

#include <initializer_list>

namespace sg {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::ParseError, msg + " at " + (path.empty() ? "/" : path), path.empty() ? "/" : path);
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
}

void expect_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
}

const json& member(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "/" + key, "missing field");
    return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) fail(path + "/" + it.key(), "unknown field");
    }
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

long get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

Field parse_field(const json& j, const std::string& path) {
    std::string s = get_string(j, path);
    if (s == "Q") return Field::Q;
    if (s == "Q(i)") return Field::QI;
    fail(path, "unknown field '" + s + "'");
}

Matrix parse_matrix(const json& j, const std::string& path) {
    expect_array(j, path);
    std::vector<Vec> rows;
    int cols = -1;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string rp = path + "/" + std::to_string(i);
        expect_array(j[i], rp);
        if (cols >= 0 && static_cast<int>(j[i].size()) != cols) fail(rp, "ragged matrix row");
        cols = static_cast<int>(j[i].size());
        Vec row;
        for (size_t k = 0; k < j[i].size(); ++k) row.push_back(scalar_from_json(j[i][k], rp + "/" + std::to_string(k)));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return Matrix(0, 0);
    return Matrix::from_rows(rows, cols);
}

Subspace parse_subspace(const json& j, int dim, const std::string& path) {
    expect_array(j, path);
    std::vector<Vec> vecs;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string vp = path + "/" + std::to_string(i);
        expect_array(j[i], vp);
        if (static_cast<int>(j[i].size()) != dim) fail(vp, "vector length differs from dim");
        Vec v;
        for (size_t k = 0; k < j[i].size(); ++k) v.push_back(scalar_from_json(j[i][k], vp + "/" + std::to_string(k)));
        vecs.push_back(std::move(v));
    }
    return Subspace::span(vecs, dim);
}

ExponentLayout parse_layout(const json& j, const std::string& path) {
    expect_object(j, path);
    only_keys(j, {"exponents", "ranks", "theta0", "pure"}, path);
    ExponentLayout l;
    const json& ex = member(j, "exponents", path);
    expect_array(ex, path + "/exponents");
    for (size_t i = 0; i < ex.size(); ++i) l.C.push_back(scalar_from_json(ex[i], path + "/exponents/" + std::to_string(i)));
    const json& rk = member(j, "ranks", path);
    expect_array(rk, path + "/ranks");
    if (rk.size() != ex.size()) fail(path + "/ranks", "ranks and exponents differ in length");
    for (size_t i = 0; i < rk.size(); ++i) {
        std::string rp = path + "/ranks/" + std::to_string(i);
        long r = get_int(rk[i], rp);
        if (r < 0 || r > 1 << 16) fail(rp, "rank out of range");
        l.ranks.push_back(static_cast<int>(r));
    }
    std::string tp = path + "/theta0";
    const json& th = member(j, "theta0", path);
    expect_object(th, tp);
    only_keys(th, {"doubled", "branch"}, tp);
    Scalar q = scalar_from_json(member(th, "doubled", tp), tp + "/doubled");
    long b = get_int(member(th, "branch", tp), tp + "/branch");
    if (b != 0 && b != 1) fail(tp + "/branch", "branch must be 0 or 1");
    if (q.is_zero()) fail(tp + "/doubled", "direction must be nonzero");
    l.theta0 = CirclePoint(q, static_cast<int>(b));
    l.pure = get_bool(member(j, "pure", path), path + "/pure");
    return l;
}

StokesMatrices parse_matrices(const json& p) {
    const std::string path = "/payload";
    expect_object(p, path);
    only_keys(p, {"field", "layout", "form", "S10", "S21", "S32", "S03", "T", "frame"}, path);
    StokesMatrices d;
    d.field = parse_field(member(p, "field", path), path + "/field");
    d.layout = parse_layout(member(p, "layout", path), path + "/layout");
    std::string form = get_string(member(p, "form", path), path + "/form");
    if (form == "variant") d.form = Form::Variant;
    else if (form == "general") d.form = Form::General;
    else fail(path + "/form", "form must be 'variant' or 'general'");
    const char* names[4] = {"S03", "S10", "S21", "S32"};
    for (int nu = 0; nu < 4; ++nu)
        d.S[nu] = parse_matrix(member(p, names[nu], path), path + "/" + names[nu]);
    if (d.form == Form::Variant) {
        const json& t = member(p, "T", path);
        expect_array(t, path + "/T");
        for (size_t i = 0; i < t.size(); ++i) d.T.push_back(parse_matrix(t[i], path + "/T/" + std::to_string(i)));
    } else if (p.contains("T")) {
        fail(path + "/T", "T is only allowed in the variant form");
    }
    if (p.contains("frame")) {
        d.frame = parse_matrix(p["frame"], path + "/frame");
        if (d.frame.rows() == d.frame.cols() && d.frame == Matrix::identity(d.frame.rows())) d.frame = Matrix();
    }
    return d;
}

StokesFiltrations parse_filtrations(const json& p) {
    const std::string path = "/payload";
    expect_object(p, path);
    only_keys(p, {"field", "layout", "dim", "filtrations"}, path);
    StokesFiltrations d;
    d.field = parse_field(member(p, "field", path), path + "/field");
    d.layout = parse_layout(member(p, "layout", path), path + "/layout");
    long dim = get_int(member(p, "dim", path), path + "/dim");
    if (dim < 0 || dim > 1 << 16) fail(path + "/dim", "dim out of range");
    d.dim = static_cast<int>(dim);
    std::string fp = path + "/filtrations";
    const json& f = member(p, "filtrations", path);
    expect_array(f, fp);
    if (f.size() != 4) fail(fp, "expected four filtrations");
    for (int nu = 0; nu < 4; ++nu) {
        std::string np = fp + "/" + std::to_string(nu);
        expect_array(f[nu], np);
        if (static_cast<int>(f[nu].size()) != d.layout.n()) fail(np, "expected one subspace per exponent");
        for (size_t i = 0; i < f[nu].size(); ++i)
            d.F[nu].push_back(parse_subspace(f[nu][i], d.dim, np + "/" + std::to_string(i)));
    }
    return d;
}

Report parse_report(const json& p) {
    const std::string path = "/payload";
    expect_object(p, path);
    get_string(member(p, "tool_version", path), path + "/tool_version");
    parse_field(member(p, "field", path), path + "/field");
    return Report{p};
}

json layout_to_json(const ExponentLayout& l) {
    json ex = json::array();
    for (const auto& c : l.C) ex.push_back(scalar_to_json(c));
    return json{{"exponents", ex},
                {"ranks", l.ranks},
                {"theta0", {{"doubled", scalar_to_json(l.theta0.doubled())}, {"branch", l.theta0.branch()}}},
                {"pure", l.pure}};
}

}  // namespace

json scalar_to_json(const Scalar& z) { return to_string(z); }

Scalar scalar_from_json(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a number string such as \"p/q\" or \"a+bi\"");
    try {
        return parse_gauss(j.get<std::string>());
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json subspace_to_json(const Subspace& s) {
    json vecs = json::array();
    for (const Vec& v : s.basis()) {
        json jv = json::array();
        for (const auto& x : v) jv.push_back(scalar_to_json(x));
        vecs.push_back(std::move(jv));
    }
    return vecs;
}

std::string Document::kind() const {
    switch (body.index()) {
    case 0: return "stokes-matrices";
    case 1: return "stokes-filtrations";
    default: return "report";
    }
}

Field Document::field() const {
    if (auto* m = std::get_if<StokesMatrices>(&body)) return m->field;
    if (auto* f = std::get_if<StokesFiltrations>(&body)) return f->field;
    return std::get<Report>(body).payload.at("field") == "Q" ? Field::Q : Field::QI;
}

Document parse_document(const json& doc) {
    expect_object(doc, "");
    only_keys(doc, {"kind", "version", "payload"}, "");
    std::string kind = get_string(member(doc, "kind", ""), "/kind");
    std::string version = get_string(member(doc, "version", ""), "/version");
    if (version != format_version) fail("/version", "unsupported version '" + version + "'");
    const json& p = member(doc, "payload", "");
    if (kind == "stokes-matrices") return Document{parse_matrices(p)};
    if (kind == "stokes-filtrations") return Document{parse_filtrations(p)};
    if (kind == "report") return Document{parse_report(p)};
    fail("/kind", "unknown document kind '" + kind + "'");
}

Document parse_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("", std::string("malformed JSON: ") + e.what());
    }
    return parse_document(doc);
}

json to_json(const Document& doc) {
    json payload;
    if (auto* m = std::get_if<StokesMatrices>(&doc.body)) {
        payload = {{"field", field_name(m->field)},
                   {"layout", layout_to_json(m->layout)},
                   {"form", m->form == Form::Variant ? "variant" : "general"},
                   {"S03", matrix_to_json(m->S[0])},
                   {"S10", matrix_to_json(m->S[1])},
                   {"S21", matrix_to_json(m->S[2])},
                   {"S32", matrix_to_json(m->S[3])}};
        if (m->form == Form::Variant) {
            json t = json::array();
            for (const auto& b : m->T) t.push_back(matrix_to_json(b));
            payload["T"] = t;
        }
        if (m->frame.rows() > 0 && !(m->frame.rows() == m->frame.cols() && m->frame == Matrix::identity(m->frame.rows())))
            payload["frame"] = matrix_to_json(m->frame);
    } else if (auto* f = std::get_if<StokesFiltrations>(&doc.body)) {
        json fs = json::array();
        for (int nu = 0; nu < 4; ++nu) {
            json row = json::array();
            for (const auto& s : f->F[nu]) row.push_back(subspace_to_json(s));
            fs.push_back(row);
        }
        payload = {{"field", field_name(f->field)},
                   {"layout", layout_to_json(f->layout)},
                   {"dim", f->dim},
                   {"filtrations", fs}};
    } else {
        payload = std::get<Report>(doc.body).payload;
    }
    return json{{"kind", doc.kind()}, {"version", format_version}, {"payload", payload}};
}

std::string serialize_document(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

Report make_report(Field field, json fields) {
    if (!fields.is_object()) throw Error(ErrorCode::InvalidData, "report fields must be an object");
    fields["tool_version"] = tool_version;
    fields["field"] = field_name(field);
    return Report{std::move(fields)};
}

}  // namespace sg
