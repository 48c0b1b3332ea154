#include <doctest.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

#include "tribill/service.hpp"

using namespace tribill;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("canonical serialization") {
    json j = {{"b", 0.1 + 0.2}, {"a", {1, -0.0, std::nan("")}}, {"c", "x\"y"}, {"d", true}};
    CHECK(canonical_json(j) == R"({"a":[1,0,null],"b":0.3,"c":"x\"y","d":true})");
    CHECK(canonical_json(json(1.0 / 3.0)) == "0.333333333333");
    CHECK(canonical_json(json(123456789012345.0)) == "1.23456789012e+14");
    CHECK(canonical_json(json(std::numeric_limits<double>::infinity())) == "null");
}

TEST_CASE("error kinds map to HTTP statuses") {
    CHECK(http_status(ErrorKind::InvalidArgument) == 400);
    CHECK(http_status(ErrorKind::Precondition) == 422);
    CHECK(http_status(ErrorKind::Unsupported) == 422);
    CHECK(error_body(ErrorKind::Precondition, "m")["status"] == 422);
}

TEST_CASE("schema validation") {
    CHECK(kind_of([] { run_op("nope", json::object()); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { run_op("stability", {{"word", "1313"}, {"extra", 1}}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { run_op("stability", {{"word", 1313}}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { run_op("omega", json::object()); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { run_op("omega", {{"n", 4.5}}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { run_op("unfold", {{"word", "1313"}, {"at", "veech:3"}, {"format", "gif"}}); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([] { run_op("membership", {{"word", "1313"}, {"family", "A"}, {"n", 3}, {"at", "veech:3"}}); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([] { run_op("membership", {{"word", "1313"}, {"x1", 0.3}}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] {
              run_op("tile", {{"word", "1313"}, {"x1min", 0.3}, {"x1max", 0.3}, {"x2min", 0.3}, {"x2max", 0.4}});
          }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { run_request({{"op", "stability"}, {"params", {{"word", "12"}}}, {"junk", 1}}); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([] { run_request({{"op", "omega"}, {"params", {{"n", 4}}}, {"tolerance", 1e-9}}); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("precondition failures") {
    CHECK(kind_of([] { run_op("membership", {{"word", "1213"}, {"at", "veech:3"}}); }) == ErrorKind::Precondition);
    CHECK(kind_of([] { run_op("membership", {{"word", "123"}, {"at", "veech:3"}, {"raw", true}}); }) ==
          ErrorKind::Precondition);
}

TEST_CASE("operations answer") {
    CHECK(run_op("stability", {{"word", "2323132313123232313131"}}).body["stable"] == true);
    Reply m = run_op("membership", {{"word", "2323132313123232313131"}, {"at", "veech:3"}});
    CHECK(m.body["member"] == true);
    CHECK(m.body["separation"].get<double>() > 1e-3);
    Reply o = run_op("omega", {{"n", 4}});
    CHECK(o.body["vertices"].size() == 4);
    CHECK(o.body["vertices"][0][0] == 1.0);
    Reply f = run_op("families", {{"n", 4}});
    CHECK(f.body["families"].size() >= 6);
    Reply svg = run_op("unfold", {{"family", "A"}, {"n", 4}, {"at", "veech:4"}, {"format", "svg"}});
    CHECK(svg.content_type == "image/svg+xml");
    CHECK(svg.bytes.find("<svg") == 0);
    Reply h = run_op("homology", {{"n", 6}, {"depth", 0}});
    CHECK(h.body["witness"]["phi"] == json::array({0, 0}));
    CHECK(h.body["formula"]["verified"] == false);
}

TEST_CASE("text parameters give identical answers") {
    json typed = {{"op", "membership"}, {"params", {{"family", "A"}, {"n", 4}, {"x1", 0.38}, {"x2", 0.37}}}};
    json text = {{"op", "membership"}, {"params", {{"family", "A"}, {"n", "4"}, {"x1", "0.38"}, {"x2", "0.37"}}}};
    CHECK(canonical_json(run_request(typed).body) == canonical_json(run_request(text, true).body));
    CHECK(kind_of([&] {
              json bad = text;
              bad["params"]["n"] = "4x";
              run_request(bad, true);
          }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] {
              json bad = text;
              bad["params"]["n"] = 4;
              run_request(bad, true);
          }) == ErrorKind::InvalidArgument);
}

TEST_CASE("tolerance and format in the envelope") {
    json env = {{"op", "membership"},
                {"params", {{"family", "A"}, {"n", 4}, {"x1", 0.38}, {"x2", 0.38}}},
                {"tolerance", 10.0}};
    CHECK(run_request(env).body["member"] == false);
    env.erase("tolerance");
    CHECK(run_request(env).body["member"] == true);
    json t = {{"op", "tile"},
              {"params", {{"family", "A"}, {"n", 4}, {"x1min", 0.3}, {"x1max", 0.4}, {"x2min", 0.3}, {"x2max", 0.4}, {"nx", 4}, {"ny", 4}}},
              {"format", "png"}};
    CHECK(run_request(t).content_type == "image/png");
    CHECK(kind_of([] { run_request({{"op", "omega"}, {"params", {{"n", 4}}}, {"format", "svg"}}); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("openapi description") {
    json spec = openapi();
    CHECK(spec["openapi"] == "3.0.3");
    for (const char* p : {"/tile", "/unfolding", "/membership", "/families", "/omega", "/homology/certificate", "/spec"})
        CHECK(spec["paths"].contains(p));
    const json& params = spec["paths"]["/membership"]["get"]["parameters"];
    bool has_word = false;
    for (const json& p : params) has_word = has_word || p["name"] == "word";
    CHECK(has_word);
}

TEST_CASE("A_4 unfolding at V_4 matches the golden SVG") {
    std::ifstream in(std::string(TRIBILL_GOLDEN_DIR) + "/unfold_A4_V4.svg", std::ios::binary);
    REQUIRE(in);
    std::string want((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Reply r = run_op("unfold", {{"family", "A"}, {"n", 4}, {"at", "veech:4"}, {"format", "svg"}});
    CHECK(r.bytes == want);
}
