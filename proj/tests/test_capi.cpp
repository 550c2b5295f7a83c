#include "doctest.h"
#include "stokes_gauss.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

namespace {

std::string e1_text() {
    std::ifstream in(std::string(SG_TEST_DATA) + "/E1.json");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

sg_document* parse(const std::string& text) {
    sg_document* d = nullptr;
    REQUIRE(sg_document_parse(text.c_str(), &d) == SG_OK);
    return d;
}

std::string take(char* s) {
    std::string out(s);
    sg_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("E1 through the C API") {
    sg_document* d = parse(e1_text());
    const char* kind = nullptr;
    CHECK(sg_document_kind(d, &kind) == SG_OK);
    CHECK(std::string(kind) == "stokes-matrices");

    int valid = 0;
    char* report = nullptr;
    CHECK(sg_validate(d, &valid, &report) == SG_OK);
    CHECK(valid == 1);
    CHECK(take(report).find("\"tool_version\"") != std::string::npos);

    long rig = 0;
    int rigid = 1;
    CHECK(sg_rigidity(d, &rig, &rigid) == SG_OK);
    CHECK(rig == 4);
    CHECK(rigid == 0);

    long h0 = -1, h1 = -1, chi = 0;
    CHECK(sg_cohomology(d, "3/1", 1, &h0, &h1, &chi) == SG_OK);
    CHECK(h0 == 0);
    CHECK(h1 == 4);
    CHECK(sg_cohomology(d, "1", 0, &h0, &h1, &chi) == SG_OK);
    CHECK(chi == -2);

    long h2 = -1;
    CHECK(sg_disc_cohomology(d, &h0, &h1, &h2) == SG_OK);
    CHECK((h0 == 0 && h1 == 2 && h2 == 0));

    char* split = nullptr;
    CHECK(sg_splitting(d, 2, &split) == SG_OK);
    CHECK(take(split).find("\"pieces\"") != std::string::npos);

    sg_document* f = nullptr;
    sg_document* back = nullptr;
    sg_document* norm = nullptr;
    CHECK(sg_to_filtrations(d, &f) == SG_OK);
    CHECK(sg_to_matrices(f, &back) == SG_OK);
    CHECK(sg_normalize(d, &norm) == SG_OK);
    char* a = nullptr;
    char* b = nullptr;
    CHECK(sg_document_serialize(back, &a) == SG_OK);
    CHECK(sg_document_serialize(norm, &b) == SG_OK);
    CHECK(take(a) == take(b));

    sg_document* hat = nullptr;
    sg_document* again = nullptr;
    CHECK(sg_laplace(f, 0, &hat) == SG_OK);
    CHECK(sg_laplace(hat, 1, &again) == SG_OK);
    CHECK(sg_document_serialize(again, &a) == SG_OK);
    CHECK(sg_document_serialize(f, &b) == SG_OK);
    CHECK(take(a) == take(b));

    int pass = 0;
    CHECK(sg_verify_laplace(d, &pass, &report) == SG_OK);
    CHECK(pass == 1);
    sg_string_free(report);

    for (sg_document* x : {d, f, back, norm, hat, again}) sg_document_free(x);
}

TEST_CASE("errors set status, message and path") {
    sg_document* d = nullptr;
    CHECK(sg_document_parse("{\"kind\":", &d) == SG_ERR_PARSE);
    CHECK(d == nullptr);
    CHECK(std::strlen(sg_last_error()) > 0);

    std::string text = e1_text();
    text.replace(text.find("\"1/2\""), 5, "\"1/0\"");
    CHECK(sg_document_parse(text.c_str(), &d) == SG_ERR_PARSE);
    CHECK(std::string(sg_last_error_path()) == "/payload/S03/0/0");
    CHECK(std::string(sg_last_error_json()).find("\"ParseError\"") != std::string::npos);
    CHECK(std::string(sg_status_name(SG_ERR_PARSE)) == "ParseError");

    sg_document* e1 = parse(e1_text());
    sg_document* out = nullptr;
    CHECK(sg_laplace(e1, 1, &out) == SG_ERR_NOT_CANONICAL_THETA);
    CHECK(out == nullptr);
    long h0, h1, chi;
    CHECK(sg_cohomology(e1, "x", 0, &h0, &h1, &chi) == SG_ERR_PARSE);
    CHECK(sg_cohomology(e1, nullptr, 0, &h0, &h1, &chi) == SG_ERR_INVALID_ARGUMENT);
    char* s = nullptr;
    CHECK(sg_splitting(e1, 4, &s) == SG_ERR_INVALID_ARGUMENT);
    sg_document_free(e1);

    text = e1_text();
    text.replace(text.find("\"1/2\""), 5, "\"1/1\"");
    sg_document* bad = parse(text);
    int valid = 1;
    char* report = nullptr;
    CHECK(sg_validate(bad, &valid, &report) == SG_OK);
    CHECK(valid == 0);
    CHECK(take(report).find("monodromy") != std::string::npos);
    long rig;
    int rigid;
    CHECK(sg_rigidity(bad, &rig, &rigid) == SG_ERR_INVARIANT);
    sg_document_free(bad);
}

TEST_CASE("last error is per thread") {
    sg_document* d = nullptr;
    CHECK(sg_document_parse("[", &d) == SG_ERR_PARSE);
    std::string here = sg_last_error();
    std::thread t([] {
        sg_document* x = nullptr;
        int ranks[1] = {1};
        CHECK(sg_gen_random(1, ranks, 3, 0, &x) == SG_OK);
        sg_document_free(x);
        CHECK(std::string(sg_last_error()).empty());
    });
    t.join();
    CHECK(std::string(sg_last_error()) == here);
}

TEST_CASE("generation is deterministic") {
    int ranks[3] = {1, 2, 1};
    sg_document* a = nullptr;
    sg_document* b = nullptr;
    CHECK(sg_gen_random(3, ranks, 42, 1, &a) == SG_OK);
    CHECK(sg_gen_random(3, ranks, 42, 1, &b) == SG_OK);
    char* sa = nullptr;
    char* sb = nullptr;
    sg_document_serialize(a, &sa);
    sg_document_serialize(b, &sb);
    CHECK(take(sa) == take(sb));
    int pass = 0;
    char* report = nullptr;
    CHECK(sg_verify_laplace(a, &pass, &report) == SG_OK);
    CHECK(pass == 1);
    sg_string_free(report);
    CHECK(sg_verify_laplace_random(2, 7, &pass, &report) == SG_OK);
    CHECK(pass == 1);
    sg_string_free(report);
    CHECK(sg_gen_random(0, ranks, 1, 0, &a) == SG_ERR_INVALID_ARGUMENT);
    sg_document_free(b);
}
