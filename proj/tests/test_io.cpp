#include "doctest.h"
#include "helpers.hpp"
#include "mvdyn/json_io.hpp"

using namespace mvdyn;
using namespace mvdyn::testing;
using nlohmann::json;

TEST_SUITE("io") {
    TEST_CASE("system files round trip through their JSON form") {
        SplitMix64 rng(95);
        for (int trial = 0; trial < 20; ++trial) {
            MultiSystem sys = random_system(rng, 6, 3);
            MultiSystem back = system_from_json(system_to_json(sys, "fixture"));
            CHECK(back.maps == sys.maps);
            CHECK(back.labels == sys.labels);
            MultiSystem twice = system_from_json(system_to_json(back, "fixture"));
            CHECK(twice.maps == back.maps);
        }
    }

    TEST_CASE("malformed system files are rejected with input errors") {
        CHECK_THROWS_AS(system_from_json(json::parse(R"({"points": ["a"], "maps": [[0, 0]]})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(system_from_json(json::parse(R"({"points": ["a", "a"], "maps": [[0, 0]]})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(system_from_json(json::parse(R"({"points": ["a", "b"], "maps": [[0, 2]]})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(system_from_json(json::parse(R"({"points": [], "maps": []})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(system_from_json(json::parse(R"({"maps": [[0]]})")), std::invalid_argument);
    }

    TEST_CASE("polynomial files parse letters and coefficients") {
        json j = json::parse(R"({"terms": [
            {"word": [1, 2], "coeff": [[1.0, 0.0], [0.0, -2.0]]},
            {"word": [],     "coeff": [[3.0, 0.0], [4.0, 0.0]]}
        ]})");
        Polynomial a = poly_from_json(j, 2, 2);
        CHECK(a.terms.size() == 2);
        CHECK(a.terms.at(Word{{1, 2}}) == CoeffFn{cplx(1.0), cplx(0.0, -2.0)});
        CHECK(a.terms.at(Word{}) == CoeffFn{cplx(3.0), cplx(4.0)});

        Polynomial back = poly_from_json(poly_to_json(a), 2, 2);
        CHECK(back == a);

        CHECK_THROWS_AS(poly_from_json(json::parse(R"({"terms": [{"word": [3], "coeff": [[1,0],[0,0]]}]})"), 2, 2),
                        std::invalid_argument);
        CHECK_THROWS_AS(poly_from_json(json::parse(R"({"terms": [{"word": [1], "coeff": [[1,0]]}]})"), 2, 2),
                        std::invalid_argument);
    }

    TEST_CASE("cycle notation round trips") {
        CHECK(parse_cycles("e", 3) == Perm{1, 2, 3});
        CHECK(parse_cycles("(1 2)", 3) == Perm{2, 1, 3});
        CHECK(parse_cycles("(1 2)(3)", 3) == Perm{2, 1, 3});
        CHECK(parse_cycles("(1 2 3)", 3) == Perm{2, 3, 1});
        CHECK(cycles_string({2, 3, 1}) == "(1 2 3)");
        CHECK(cycles_string({1, 2, 3}) == "e");
        CHECK(cycles_string({2, 1, 3}) == "(1 2)");
        for (const Perm& alpha : all_perms(4))
            CHECK(parse_cycles(cycles_string(alpha), 4) == alpha);

        CHECK_THROWS_AS(parse_cycles("(1 5)", 3), std::invalid_argument);
        CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)", 3), std::invalid_argument);
        CHECK_THROWS_AS(parse_cycles("(1 2", 3), std::invalid_argument);
    }

    TEST_CASE("floating output uses fixed twelve digits") {
        CHECK(fmt_fixed(std::sqrt(2.0)) == "1.414213562373");
        CHECK(fmt_fixed(0.0) == "0.000000000000");
        CHECK(fmt_fixed(-1.5) == "-1.500000000000");
    }
}
