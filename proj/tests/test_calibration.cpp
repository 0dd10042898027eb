// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include <stereoquilt/calibration.hpp>

#include "test_helpers.hpp"

using Catch::Matchers::ContainsSubstring;
using sqtest::TempDir;

static const char* kFixture = R"({
  "pitch": 20.348921,
  "slope": -0.198654,
  "center": 4.0,
  "views": 32,
  "screenW": 2560,
  "screenH": 1600,
  "viewCone": 49.5,
  "dpi": 324.0,
  "serial": "unit-test-panel"
})";

TEST_CASE("fixture calibration parses completely", "[calib]") {
    sq::Calibration cal = sq::parse_calibration(kFixture);
    REQUIRE(cal.pitch_x == Catch::Approx(20.348921));
    REQUIRE(cal.slope_tan == Catch::Approx(-0.198654));
    REQUIRE(cal.i_off == Catch::Approx(4.0));
    REQUIRE(cal.n_views == 32);
    REQUIRE(cal.panel_width == 2560);
    REQUIRE(cal.panel_height == 1600);
    REQUIRE(cal.view_cone_deg == Catch::Approx(49.5));
}

TEST_CASE("viewCone defaults to 50 when absent", "[calib]") {
    sq::Calibration cal = sq::parse_calibration(
        R"({"pitch": 8, "slope": 0.1, "center": 0, "views": 4, "screenW": 10, "screenH": 10})");
    REQUIRE(cal.view_cone_deg == 50.0);
}

TEST_CASE("every missing required field is named", "[calib]") {
    for (const char* key : {"pitch", "slope", "center", "views", "screenW", "screenH"}) {
        nlohmann::json j = nlohmann::json::parse(
            R"({"pitch": 8, "slope": 0.1, "center": 0, "views": 4, "screenW": 10, "screenH": 10})");
        j.erase(key);
        REQUIRE_THROWS_WITH(sq::parse_calibration(j.dump()),
                            ContainsSubstring("\"" + std::string(key) + "\""));
    }
}

TEST_CASE("non-numeric and malformed input rejected", "[calib]") {
    REQUIRE_THROWS_WITH(
        sq::parse_calibration(
            R"({"pitch": "wide", "slope": 0, "center": 0, "views": 4, "screenW": 1, "screenH": 1})"),
        ContainsSubstring("not a number"));
    REQUIRE_THROWS_WITH(sq::parse_calibration("pitch: 8"), ContainsSubstring("unparsable"));
    REQUIRE_THROWS_WITH(sq::parse_calibration("[1, 2, 3]"),
                        ContainsSubstring("not an object"));
}

TEST_CASE("loader enforces value invariants", "[calib]") {
    REQUIRE_THROWS_WITH(
        sq::parse_calibration(
            R"({"pitch": 0, "slope": 0, "center": 0, "views": 4, "screenW": 1, "screenH": 1})"),
        ContainsSubstring("pitch"));
    REQUIRE_THROWS_WITH(
        sq::parse_calibration(
            R"({"pitch": 8, "slope": 0, "center": 0, "views": 1, "screenW": 1, "screenH": 1})"),
        ContainsSubstring("views"));
    REQUIRE_THROWS_WITH(
        sq::parse_calibration(
            R"({"pitch": 8, "slope": 0, "center": 0, "views": 4, "screenW": 0, "screenH": 1})"),
        ContainsSubstring("panel dimensions"));
}

TEST_CASE("calibration roundtrips through serialization", "[calib]") {
    TempDir tmp;
    sq::Calibration cal = sq::parse_calibration(kFixture);

    REQUIRE(sq::parse_calibration(sq::calibration_to_json(cal)) == cal);

    sq::save_calibration(cal, tmp.file("cal.json"));
    REQUIRE(sq::load_calibration(tmp.file("cal.json")) == cal);
}

TEST_CASE("load_calibration reports the missing path", "[calib]") {
    TempDir tmp;
    REQUIRE_THROWS_WITH(sq::load_calibration(tmp.file("nope.json")),
                        ContainsSubstring("nope.json"));
}

TEST_CASE("repository sample calibration is valid", "[calib]") {
    std::string path = std::string(STEREOQUILT_SOURCE_DIR) + "/data/sample_calibration.json";
    sq::Calibration cal = sq::load_calibration(path);
    REQUIRE(cal.panel_width == 2560);
    REQUIRE(cal.panel_height == 1600);
    REQUIRE(cal.n_views == 32);
    REQUIRE(cal.pitch_x > 0.0);
}
