#include "doctest.h"
#include "fixtures.hpp"
#include "stokes_gauss/errors.hpp"
#include "stokes_gauss/io.hpp"
#include "stokes_gauss/laplace.hpp"

#include <fstream>
#include <sstream>

using namespace sg;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string e1_text() { return read_file(std::string(SG_TEST_DATA) + "/E1.json"); }

std::string parse_error_path(const std::string& text) {
    try {
        parse_document(text);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) return e.path();
        return "wrong code " + std::string(error_name(e.code()));
    }
    return "no error";
}

std::string mutate(const std::string& key, const json& value) {
    json doc = json::parse(e1_text());
    if (value.is_null()) doc["payload"].erase(key);
    else doc["payload"][key] = value;
    return doc.dump();
}

}  // namespace

TEST_CASE("E1 document parses to the E1 fixture") {
    Document d = parse_document(e1_text());
    CHECK(d.kind() == "stokes-matrices");
    CHECK(std::get<StokesMatrices>(d.body) == fixtures::e1());
}

TEST_CASE("canonical documents round trip byte for byte") {
    std::string once = serialize_document(parse_document(e1_text()));
    CHECK(serialize_document(parse_document(once)) == once);
    CHECK(json::parse(once) == json::parse(e1_text()));

    std::mt19937_64 rng(11);
    for (int k = 0; k < 20; ++k) {
        auto m = sg::random_data(fixtures::random_layout(rng), 500 + k);
        std::string sm = serialize_document(Document{m});
        CHECK(std::get<StokesMatrices>(parse_document(sm).body) == m);
        CHECK(serialize_document(parse_document(sm)) == sm);
        auto f = to_filtrations(m);
        std::string sf = serialize_document(Document{f});
        CHECK(std::get<StokesFiltrations>(parse_document(sf).body) == f);
        CHECK(serialize_document(parse_document(sf)) == sf);
    }
}

TEST_CASE("non-canonical input is canonicalized") {
    json doc = json::parse(e1_text());
    doc["payload"]["S03"][0][0] = "2/4";
    doc["payload"]["frame"] = json::array({json::array({"1", "0"}), json::array({"0", "1"})});
    auto d = parse_document(doc.dump());
    CHECK(serialize_document(d) == serialize_document(parse_document(e1_text())));

    auto f = to_filtrations(fixtures::e1());
    json jf = to_json(Document{f});
    jf["payload"]["filtrations"][3][1] = json::array({json::array({"-1", "2"})});
    CHECK(std::get<StokesFiltrations>(parse_document(jf).body) == f);
}

TEST_CASE("parse errors carry JSON pointers") {
    CHECK(parse_error_path(mutate("S03", nullptr)) == "/payload/S03");
    CHECK(parse_error_path(mutate("S03", json::array({json::array({"1/0", "-1"}), json::array({"0", "2"})}))) ==
          "/payload/S03/0/0");
    CHECK(parse_error_path(mutate("extra", 1)) == "/payload/extra");
    CHECK(parse_error_path(mutate("S10", json::array({json::array({"1", "0"}), json::array({"1"})}))) == "/payload/S10/1");
    CHECK(parse_error_path(mutate("form", "upper")) == "/payload/form");
    CHECK(parse_error_path(mutate("field", "R")) == "/payload/field");
    CHECK(parse_error_path(mutate("S21", 3)) == "/payload/S21");
    CHECK(parse_error_path("{\"kind\": \"stokes-matrices\"") == "/");
    CHECK(parse_error_path("{\"kind\":\"other\",\"version\":\"1\",\"payload\":{}}") == "/kind");
    CHECK(parse_error_path("{\"kind\":\"report\",\"version\":\"2\",\"payload\":{}}") == "/version");
    CHECK(parse_error_path("{\"kind\":\"report\",\"version\":\"1\",\"payload\":{}}") == "/payload/tool_version");

    json doc = json::parse(e1_text());
    doc["payload"]["layout"]["theta0"]["branch"] = 2;
    CHECK(parse_error_path(doc.dump()) == "/payload/layout/theta0/branch");
    doc = json::parse(e1_text());
    doc["payload"]["layout"]["ranks"] = json::array({1});
    CHECK(parse_error_path(doc.dump()) == "/payload/layout/ranks");
}

TEST_CASE("mathematical defects survive parsing and are left to validate") {
    auto d = parse_document(mutate("S10", json::array({json::array({"1", "1"}), json::array({"1", "1"})})));
    CHECK_FALSE(validate(std::get<StokesMatrices>(d.body)).empty());
}

TEST_CASE("reports round trip") {
    Report r = make_report(Field::QI, {{"report", "demo"}, {"value", 3}});
    std::string s = serialize_document(Document{r});
    auto d = parse_document(s);
    CHECK(d.kind() == "report");
    CHECK(d.field() == Field::QI);
    CHECK(serialize_document(d) == s);
    CHECK(std::get<Report>(d.body).payload["tool_version"] == tool_version);
}

TEST_CASE("Gaussian scalars and general form") {
    std::mt19937_64 rng(3);
    auto m = to_general(sg::random_data(fixtures::random_layout(rng), 9));
    m.field = Field::QI;
    std::string s = serialize_document(Document{m});
    CHECK(std::get<StokesMatrices>(parse_document(s).body) == m);
    CHECK(json::parse(s)["payload"].contains("T") == false);
}

TEST_CASE("seeded layout generators") {
    auto a = random_layout({1, 2, 3}, 5);
    CHECK(a == random_layout({1, 2, 3}, 5));
    CHECK(a.ranks.size() == 3);
    check_layout(a);
    auto b = random_aligned_layout({2, 1}, 8);
    CHECK(is_aligned(b.C));
    CHECK(b.theta0 == canonical_theta(b.C));
    CHECK(validate(sg::random_data(b, 8)).empty());
}
