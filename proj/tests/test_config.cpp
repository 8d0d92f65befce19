#include <catch2/catch_amalgamated.hpp>

#include "tiltlab/config.hpp"

using namespace tiltlab;

namespace {

const char* kQuintic = R"({
  "name": "quintic_surface",
  "char_p": 5,
  "kodaira": 2,
  "quasi_elliptic": false,
  "K2_min": 5,
  "chi_O_min": 5,
  "ns": {"rank": 1, "gram": [[5]]},
  "ample_H": [1],
  "canonical": [1],
  "bd_candidates": [[1], [2], [3]],
  "effective_generators": [[1]],
  "minimal": true,
  "hypersurface_degree": 5
})";

const char* kRationalCoords = R"({
  "name": "fractional",
  "char_p": 3,
  "kodaira": "minus_infinity",
  "K2_min": 8,
  "chi_O_min": 1,
  "ns": {"rank": 2, "gram": [[0, 1], [1, 0]]},
  "ample_H": ["1/2", "3/2"],
  "canonical": [-2, -2],
  "minimal": true
})";

}  // namespace

TEST_CASE("rational literals") {
    CHECK(parse_rational("+3") == 3);
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("0/5") == 0);
    CHECK(parse_rational("2/-3") == Rational(-2, 3));  // sign normalized
    for (const char* bad : {"", "1.5", "1/0", "a", "1/", "/2", "--2", "+"})
        CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
    CHECK(parse_rational_vector("1,-3/4,0") ==
          RationalVector{1, Rational(-3, 4), 0});
    CHECK(parse_rational_vector("").empty());
    CHECK_THROWS_AS(parse_rational_vector("1,,2"), std::invalid_argument);
}

TEST_CASE("config parses to a working model") {
    const SurfaceConfig cfg = parse_surface_config(kQuintic);
    CHECK(cfg.name == "quintic_surface");
    CHECK(cfg.char_p == 5);
    CHECK(cfg.kodaira == Kodaira::Two);
    CHECK(cfg.rank == 1);
    CHECK(cfg.bd_candidates.size() == 3);
    REQUIRE(cfg.hypersurface_degree.has_value());
    CHECK(*cfg.hypersurface_degree == 5);

    const SurfaceModel s = to_surface_model(cfg);
    CHECK(c_constant(s) == 2);
}

TEST_CASE("round trip is the identity") {
    for (const char* text : {kQuintic, kRationalCoords}) {
        const SurfaceConfig once = parse_surface_config(text);
        const std::string serialized = serialize_surface_config(once);
        const SurfaceConfig twice = parse_surface_config(serialized);
        CHECK(once == twice);
        // serialization itself is canonical
        CHECK(serialize_surface_config(twice) == serialized);
    }
}

TEST_CASE("rational strings parse exactly") {
    const SurfaceConfig cfg = parse_surface_config(kRationalCoords);
    CHECK(cfg.ample_h == RationalVector{Rational(1, 2), Rational(3, 2)});
    const SurfaceModel s = to_surface_model(cfg);
    CHECK(self_intersection(s.ample()) == Rational(3, 2));
}

TEST_CASE("decimal numbers are rejected everywhere") {
    CHECK_THROWS_MATCHES(
        parse_surface_config(R"({"name":"x","char_p":2,"kodaira":0,"K2_min":1.5,
            "chi_O_min":2,"ns":{"rank":1,"gram":[[2]]},"ample_H":[1],"canonical":[0]})"),
        ConfigError, Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("K2_min")));
    CHECK_THROWS_MATCHES(
        parse_surface_config(R"({"name":"x","char_p":2,"kodaira":0,"K2_min":0,
            "chi_O_min":2,"ns":{"rank":1,"gram":[[2.0]]},"ample_H":[1],"canonical":[0]})"),
        ConfigError, Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("gram")));
}

TEST_CASE("diagnostics name the offending field") {
    const auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            to_surface_model(parse_surface_config(text));
            FAIL("expected a ConfigError mentioning " << needle);
        } catch (const ConfigError& e) {
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
        }
    };
    expect_error("not json at all", "not valid JSON");
    expect_error(R"({"char_p":2})", "name");
    expect_error(R"({"name":"x","char_p":9,"kodaira":0,"K2_min":0,"chi_O_min":2,
        "ns":{"rank":1,"gram":[[2]]},"ample_H":[1],"canonical":[0]})",
                 "characteristic");  // caught at model construction: 9 is not prime
    expect_error(R"({"name":"x","char_p":2,"kodaira":3,"K2_min":0,"chi_O_min":2,
        "ns":{"rank":1,"gram":[[2]]},"ample_H":[1],"canonical":[0]})",
                 "kodaira");
    expect_error(R"({"name":"x","char_p":2,"kodaira":0,"K2_min":0,"chi_O_min":2,
        "ns":{"rank":2,"gram":[[2]]},"ample_H":[1,0],"canonical":[0,0]})",
                 "gram");
    expect_error(R"({"name":"x","char_p":2,"kodaira":0,"K2_min":0,"chi_O_min":2,
        "ns":{"rank":1,"gram":[[2]]},"ample_H":[1,0],"canonical":[0]})",
                 "ample_H");
    expect_error(R"({"name":"x","char_p":2,"kodaira":0,"K2_min":0,"chi_O_min":2,
        "ns":{"rank":1,"gram":[[2]]},"ample_H":["1/0"],"canonical":[0]})",
                 "ample_H");
}

TEST_CASE("invalid geometry surfaces as a config error") {
    // gram with the wrong signature
    const char* bad = R"({
      "name": "bad",
      "char_p": 2,
      "kodaira": 0,
      "K2_min": 0,
      "chi_O_min": 2,
      "ns": {"rank": 2, "gram": [[1, 0], [0, 1]]},
      "ample_H": [1, 0],
      "canonical": [0, 0]
    })";
    CHECK_THROWS_AS(to_surface_model(parse_surface_config(bad)), ConfigError);
}

TEST_CASE("config_from_model mirrors the model") {
    const SurfaceModel s = degree_d_surface_model(6);
    const SurfaceConfig cfg = config_from_model(s, Int(6));
    const SurfaceModel back = to_surface_model(cfg);
    CHECK(back.name() == s.name());
    CHECK(c_constant(back) == c_constant(s));
    CHECK(parse_surface_config(serialize_surface_config(cfg)) == cfg);
}
