#include "stokes_gauss.h"

#include "stokes_gauss/circle_sheaf.hpp"
#include "stokes_gauss/errors.hpp"
#include "stokes_gauss/io.hpp"
#include "stokes_gauss/laplace.hpp"
#include "stokes_gauss/laplace_oracle.hpp"

#include <cstring>
#include <random>

struct sg_document {
    sg::Document doc;
};

namespace {

struct LastError {
    std::string message;
    std::string path;
    std::string as_json;
};

thread_local LastError last_error;

sg_status record(sg_status status, const std::string& code, const std::string& message, const std::string& path) {
    last_error.message = message;
    last_error.path = path;
    sg::json err = {{"code", code}, {"message", message}};
    err["path"] = path.empty() ? sg::json(nullptr) : sg::json(path);
    last_error.as_json = sg::json{{"error", err}}.dump();
    return status;
}

template <class F>
sg_status guarded(F&& f) {
    try {
        f();
        return SG_OK;
    } catch (const sg::Error& e) {
        return record(static_cast<sg_status>(e.code()), sg::error_name(e.code()), e.what(), e.path());
    } catch (const std::invalid_argument& e) {
        return record(SG_ERR_INVALID_ARGUMENT, "InvalidArgument", e.what(), "");
    } catch (const std::exception& e) {
        return record(SG_ERR_INTERNAL, "Internal", e.what(), "");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void* p, const char* what) {
    if (!p) throw std::invalid_argument(std::string(what) + " is null");
}

void require_valid(const sg::StokesMatrices& m) {
    auto v = sg::validate(m);
    if (!v.empty()) throw sg::Error(sg::ErrorCode::InvariantError, "invalid data: " + v[0].invariant + ": " + v[0].detail);
}

void require_valid(const sg::StokesFiltrations& f) {
    auto v = sg::validate(f);
    if (!v.empty()) throw sg::Error(sg::ErrorCode::InvariantError, "invalid data: " + v[0].invariant + ": " + v[0].detail);
}

sg::StokesMatrices as_matrices(const sg_document* d) {
    need(d, "document");
    if (auto* m = std::get_if<sg::StokesMatrices>(&d->doc.body)) {
        require_valid(*m);
        return *m;
    }
    if (auto* f = std::get_if<sg::StokesFiltrations>(&d->doc.body)) {
        require_valid(*f);
        return sg::to_matrices(*f);
    }
    throw sg::Error(sg::ErrorCode::InvalidData, "expected Stokes data, got a report");
}

sg::StokesFiltrations as_filtrations(const sg_document* d) {
    need(d, "document");
    if (auto* f = std::get_if<sg::StokesFiltrations>(&d->doc.body)) {
        require_valid(*f);
        return *f;
    }
    if (auto* m = std::get_if<sg::StokesMatrices>(&d->doc.body)) {
        require_valid(*m);
        return sg::to_filtrations(*m);
    }
    throw sg::Error(sg::ErrorCode::InvalidData, "expected Stokes data, got a report");
}

void emit(sg_document** out, sg::Document doc) {
    need(out, "out");
    *out = new sg_document{std::move(doc)};
}

sg::json violations_json(const std::vector<sg::Violation>& v) {
    sg::json arr = sg::json::array();
    for (const auto& x : v) arr.push_back({{"invariant", x.invariant}, {"detail", x.detail}});
    return arr;
}

sg::json verify_json(const sg::VerifyReport& r) {
    sg::json cases = sg::json::array();
    for (const auto& c : r.cases) {
        sg::json jc = {{"nu", c.nu},
                       {"gamma", sg::scalar_to_json(c.gamma)},
                       {"oracle_dim", c.oracle_dim},
                       {"predicted_dim", c.predicted_dim},
                       {"h", c.h},
                       {"equal", c.equal}};
        if (c.halfline_checked) jc["halfline_equal"] = c.halfline_equal;
        cases.push_back(std::move(jc));
    }
    return {{"pass", r.pass}, {"cases", cases}};
}

std::string report_text(sg::Field field, sg::json fields) {
    return sg::serialize_document(sg::Document{sg::make_report(field, std::move(fields))});
}

}  // namespace

extern "C" {

const char* sg_version(void) { return sg::tool_version; }

const char* sg_status_name(sg_status status) {
    if (status == SG_OK) return "OK";
    if (status == SG_ERR_INVALID_ARGUMENT) return "InvalidArgument";
    if (status == SG_ERR_INTERNAL) return "Internal";
    if (status >= SG_ERR_DEGENERATE_PAIR && status <= SG_ERR_INVALID_DATA)
        return sg::error_name(static_cast<sg::ErrorCode>(status));
    return "Unknown";
}

const char* sg_last_error(void) { return last_error.message.c_str(); }
const char* sg_last_error_path(void) { return last_error.path.c_str(); }
const char* sg_last_error_json(void) { return last_error.as_json.c_str(); }

void sg_string_free(char* s) { std::free(s); }

sg_status sg_document_parse(const char* text, sg_document** out) {
    return guarded([&] {
        need(text, "text");
        emit(out, sg::parse_document(std::string(text)));
    });
}

void sg_document_free(sg_document* doc) { delete doc; }

sg_status sg_document_serialize(const sg_document* doc, char** out) {
    return guarded([&] {
        need(doc, "document");
        need(out, "out");
        *out = dup_string(sg::serialize_document(doc->doc));
    });
}

sg_status sg_document_kind(const sg_document* doc, const char** kind) {
    return guarded([&] {
        need(doc, "document");
        need(kind, "kind");
        switch (doc->doc.body.index()) {
        case 0: *kind = "stokes-matrices"; break;
        case 1: *kind = "stokes-filtrations"; break;
        default: *kind = "report";
        }
    });
}

sg_status sg_validate(const sg_document* doc, int* valid, char** report) {
    return guarded([&] {
        need(doc, "document");
        need(valid, "valid");
        need(report, "report");
        std::vector<sg::Violation> v;
        if (auto* m = std::get_if<sg::StokesMatrices>(&doc->doc.body)) v = sg::validate(*m);
        else if (auto* f = std::get_if<sg::StokesFiltrations>(&doc->doc.body)) v = sg::validate(*f);
        else throw sg::Error(sg::ErrorCode::InvalidData, "reports cannot be validated");
        *valid = v.empty() ? 1 : 0;
        *report = dup_string(report_text(doc->doc.field(), {{"report", "validate"},
                                                            {"kind", doc->doc.kind()},
                                                            {"valid", v.empty()},
                                                            {"violations", violations_json(v)}}));
    });
}

sg_status sg_normalize(const sg_document* doc, sg_document** out) {
    return guarded([&] { emit(out, sg::Document{sg::normalize(as_matrices(doc))}); });
}

sg_status sg_to_filtrations(const sg_document* doc, sg_document** out) {
    return guarded([&] { emit(out, sg::Document{as_filtrations(doc)}); });
}

sg_status sg_to_matrices(const sg_document* doc, sg_document** out) {
    return guarded([&] { emit(out, sg::Document{as_matrices(doc)}); });
}

sg_status sg_laplace(const sg_document* doc, int inverse, sg_document** out) {
    return guarded([&] {
        need(doc, "document");
        if (std::holds_alternative<sg::StokesMatrices>(doc->doc.body)) {
            auto m = as_matrices(doc);
            emit(out, sg::Document{inverse ? sg::inverse_laplace_transform(m) : sg::laplace_transform(m)});
        } else {
            auto f = as_filtrations(doc);
            emit(out, sg::Document{inverse ? sg::inverse_laplace_transform(f) : sg::laplace_transform(f)});
        }
    });
}

sg_status sg_cohomology(const sg_document* doc, const char* c0, int strict, long* h0, long* h1, long* chi) {
    return guarded([&] {
        need(c0, "c0");
        need(h0, "h0");
        need(h1, "h1");
        need(chi, "chi");
        auto m = as_matrices(doc);
        sg::GaussRational c = sg::parse_gauss(c0);
        auto r = sg::cohomology(strict ? sg::sheaf_lt(m, c) : sg::sheaf_leq(m, c));
        *h0 = r.h.size() > 0 ? r.h[0] : 0;
        *h1 = r.h.size() > 1 ? r.h[1] : 0;
        *chi = r.chi;
    });
}

sg_status sg_disc_cohomology(const sg_document* doc, long* h0, long* h1, long* h2) {
    return guarded([&] {
        need(h0, "h0");
        need(h1, "h1");
        need(h2, "h2");
        auto r = sg::disc_cohomology_Fleq0(as_matrices(doc));
        *h0 = r.h0;
        *h1 = r.h1;
        *h2 = r.h2;
    });
}

sg_status sg_rigidity(const sg_document* doc, long* rig, int* rigid) {
    return guarded([&] {
        need(rig, "rig");
        need(rigid, "rigid");
        auto r = sg::rigidity_index(as_matrices(doc));
        *rig = r.rig;
        *rigid = r.rigid ? 1 : 0;
    });
}

sg_status sg_splitting(const sg_document* doc, int nu, char** out) {
    return guarded([&] {
        need(out, "out");
        if (nu < 0 || nu > 3) throw std::invalid_argument("nu must be in 0..3");
        auto m = sg::normalize(as_matrices(doc));
        auto pieces = sg::good_interval_splitting(m, nu);
        auto P = sg::chart_frames(m);
        int r = m.layout.total_rank();
        sg::Matrix B0 = m.frame.rows() == 0 ? sg::Matrix::identity(r) : m.frame;
        sg::Matrix to_L = B0 * sg::inverse(P[nu]);
        sg::json arr = sg::json::array();
        for (size_t i = 0; i < pieces.size(); ++i)
            arr.push_back({{"exponent", sg::scalar_to_json(m.layout.C[i])},
                           {"basis", sg::subspace_to_json(sg::image(to_L, pieces[i]))}});
        *out = dup_string(sg::json{{"nu", nu}, {"pieces", arr}}.dump());
    });
}

sg_status sg_gen_random(int n, const int* ranks, uint64_t seed, int aligned, sg_document** out) {
    return guarded([&] {
        if (n < 1) throw std::invalid_argument("n must be positive");
        need(ranks, "ranks");
        std::vector<int> rk(ranks, ranks + n);
        auto layout = aligned ? sg::random_aligned_layout(rk, seed) : sg::random_layout(rk, seed);
        emit(out, sg::Document{sg::random_data(layout, seed)});
    });
}

sg_status sg_verify_laplace(const sg_document* doc, int* pass, char** report) {
    return guarded([&] {
        need(pass, "pass");
        need(report, "report");
        auto f = as_filtrations(doc);
        auto r = sg::verify_theorem(f);
        *pass = r.pass ? 1 : 0;
        sg::json fields = verify_json(r);
        fields["report"] = "verify-laplace";
        *report = dup_string(report_text(f.field, std::move(fields)));
    });
}

sg_status sg_verify_laplace_random(int samples, uint64_t seed, int* pass, char** report) {
    return guarded([&] {
        need(pass, "pass");
        need(report, "report");
        if (samples < 1) throw std::invalid_argument("samples must be positive");
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> nd(1, 3), rd(1, 2);
        sg::json datasets = sg::json::array();
        bool all = true;
        for (int k = 0; k < samples; ++k) {
            std::vector<int> ranks(nd(rng));
            for (int& x : ranks) x = rd(rng);
            std::uint64_t s = rng();
            auto layout = sg::random_aligned_layout(ranks, s);
            auto f = sg::to_filtrations(sg::random_data(layout, s));
            auto r = sg::verify_theorem(f);
            all = all && r.pass;
            sg::json d = verify_json(r);
            sg::json ex = sg::json::array();
            for (const auto& c : layout.C) ex.push_back(sg::scalar_to_json(c));
            d["exponents"] = ex;
            d["ranks"] = layout.ranks;
            d["seed"] = std::to_string(s);
            datasets.push_back(std::move(d));
        }
        *pass = all ? 1 : 0;
        *report = dup_string(report_text(sg::Field::Q, {{"report", "verify-laplace"}, {"pass", all}, {"datasets", datasets}}));
    });
}

}  // extern "C"
