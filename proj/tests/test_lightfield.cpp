// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <stereoquilt/lightfield.hpp>

#include "test_helpers.hpp"

namespace {

// Independent oracle: same formula, recomputed from scratch with a
// floor-based modulo instead of the library's fmod-based one.
double oracle_view_number(double i, int j, const sq::Calibration& cal) {
    double arg = i - cal.i_off - 3.0 * j * cal.slope_tan;
    double m = arg - cal.pitch_x * std::floor(arg / cal.pitch_x);
    if (m >= cal.pitch_x)
        m -= cal.pitch_x;
    if (m < 0.0)
        m = 0.0;
    double n = cal.n_views * m / cal.pitch_x;
    return n >= cal.n_views ? 0.0 : n;
}

std::pair<int, int> oracle_map(int x, int y, int c, const sq::Calibration& cal,
                               const sq::QuiltLayout& layout) {
    int v = static_cast<int>(std::floor(oracle_view_number(3.0 * x + c, y, cal)));
    if (v < 0)
        v = 0;
    if (v > cal.n_views - 1)
        v = cal.n_views - 1;
    int row_from_bottom = v / layout.cols;
    int col = v - layout.cols * row_from_bottom;
    long long lx = static_cast<long long>(x) * layout.tile_width / cal.panel_width;
    long long ly = static_cast<long long>(y) * layout.tile_height / cal.panel_height;
    int qx = col * layout.tile_width + static_cast<int>(lx);
    int qy = layout.rows * layout.tile_height - layout.tile_height * (1 + row_from_bottom) +
             static_cast<int>(ly);
    return {qx, qy};
}

// Distance on the circular view axis [0, n).
double circular_distance(double a, double b, int n) {
    double d = std::abs(a - b);
    return std::min(d, n - d);
}

sq::Calibration random_calibration(std::mt19937& rng, int panel_w, int panel_h, int views) {
    std::uniform_real_distribution<double> pitch(3.0, 64.0);
    std::uniform_real_distribution<double> slope(-0.5, 0.5);
    sq::Calibration cal;
    cal.pitch_x = pitch(rng);
    cal.slope_tan = slope(rng);
    std::uniform_real_distribution<double> off(-cal.pitch_x, cal.pitch_x);
    cal.i_off = off(rng);
    cal.n_views = views;
    cal.panel_width = panel_w;
    cal.panel_height = panel_h;
    return cal;
}

} // namespace

TEST_CASE("unit-pitch identity case", "[lightfield]") {
    sq::Calibration cal;
    cal.pitch_x = 32.0;
    cal.slope_tan = 0.0;
    cal.i_off = 0.0;
    cal.n_views = 32;
    cal.panel_width = 64;
    cal.panel_height = 64;

    REQUIRE(sq::view_number(0.0, 0, cal) == 0.0);
    REQUIRE(sq::view_number(16.0, 0, cal) == 16.0);
    REQUIRE(sq::view_number(33.0, 0, cal) == 1.0);
    REQUIRE(sq::view_number(33.0, 17, cal) == 1.0);  // slope 0: rows identical
}

TEST_CASE("hand-evaluated slanted example", "[lightfield]") {
    sq::Calibration cal;
    cal.pitch_x = 10.5;
    cal.slope_tan = 0.1;
    cal.i_off = 2.0;
    cal.n_views = 32;
    cal.panel_width = 128;
    cal.panel_height = 128;

    // i - i_off - 3*j*slope = 100 - 2 - 15 = 83; mod(83, 10.5) = 9.5;
    // 9.5 / 10.5 * 32 = 28.952380952...
    REQUIRE(sq::view_number(100.0, 50, cal) ==
            Catch::Approx(28.952380952380953).margin(1e-9));
}

TEST_CASE("modulo maps negative arguments into [0, pitch)", "[lightfield]") {
    sq::Calibration cal;
    cal.pitch_x = 4.0;
    cal.slope_tan = 0.0;
    cal.i_off = 1.0;
    cal.n_views = 4;
    cal.panel_width = 8;
    cal.panel_height = 8;

    REQUIRE(sq::view_number(0.0, 0, cal) == 3.0);  // mod(-1, 4) = 3

    cal.i_off = 9.0;  // arg = -9: more than one period below zero
    REQUIRE(sq::view_number(0.0, 0, cal) == 3.0);
}

TEST_CASE("view number stays in [0, n_views)", "[lightfield]") {
    std::mt19937 rng(71);
    std::uniform_int_distribution<int> coord(-5000, 5000);
    for (int trial = 0; trial < 200; ++trial) {
        sq::Calibration cal = random_calibration(rng, 64, 40, 32);
        for (int k = 0; k < 50; ++k) {
            double n = sq::view_number(coord(rng), coord(rng), cal);
            REQUIRE(n >= 0.0);
            REQUIRE(n < cal.n_views);
        }
    }
}

TEST_CASE("periodicity in i with period pitch_x", "[lightfield]") {
    std::mt19937 rng(72);
    std::uniform_real_distribution<double> ireal(-2000.0, 2000.0);
    std::uniform_int_distribution<int> jint(0, 2000);
    for (int trial = 0; trial < 100; ++trial) {
        sq::Calibration cal = random_calibration(rng, 64, 40, 32);
        for (int k = 0; k < 20; ++k) {
            double i = ireal(rng);
            int j = jint(rng);
            double a = sq::view_number(i, j, cal);
            double b = sq::view_number(i + cal.pitch_x, j, cal);
            REQUIRE(circular_distance(a, b, cal.n_views) <= 1e-9 * cal.n_views);
        }
    }
}

TEST_CASE("slant couples rows to a horizontal shift", "[lightfield]") {
    // Exactly representable slope and integer inputs: the two argument
    // evaluations are exact, so the equality is bitwise.
    for (double slope : {0.25, -0.5, 0.125}) {
        sq::Calibration cal;
        cal.pitch_x = 7.0;
        cal.slope_tan = slope;
        cal.i_off = 3.0;
        cal.n_views = 8;
        cal.panel_width = 16;
        cal.panel_height = 16;
        for (int i = -20; i <= 20; ++i)
            for (int j = 0; j < 8; ++j)
                REQUIRE(sq::view_number(i, j + 1, cal) ==
                        sq::view_number(i - 3 * slope, j, cal));
    }

    // Arbitrary slopes: same property up to floating-point tolerance.
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> ireal(-100.0, 100.0);
    for (int trial = 0; trial < 50; ++trial) {
        sq::Calibration cal = random_calibration(rng, 64, 40, 32);
        double i = ireal(rng);
        int j = trial % 7;
        REQUIRE(circular_distance(sq::view_number(i, j + 1, cal),
                                  sq::view_number(i - 3 * cal.slope_tan, j, cal),
                                  cal.n_views) <= 1e-9 * cal.n_views);
    }
}

TEST_CASE("subpixel mapping stays inside the view tile", "[lightfield]") {
    sq::Calibration cal;
    cal.pitch_x = 20.35;
    cal.slope_tan = -0.2;
    cal.i_off = 4.0;
    cal.n_views = 32;
    cal.panel_width = 2560;
    cal.panel_height = 1600;
    sq::QuiltLayout layout{4, 8, 512, 256};

    auto [qx_hi, qy_hi] = sq::map_subpixel({2559, 1599, 2}, cal, layout);
    REQUIRE(qx_hi % layout.tile_width == 511);
    REQUIRE(qy_hi % layout.tile_height == 255);

    auto [qx_lo, qy_lo] = sq::map_subpixel({0, 0, 0}, cal, layout);
    REQUIRE(qx_lo % layout.tile_width == 0);
    REQUIRE(qy_lo % layout.tile_height == 0);
}

TEST_CASE("mapping equals the independent oracle on random addresses", "[lightfield]") {
    std::mt19937 rng(74);
    sq::QuiltLayout layout{4, 8, 512, 256};
    for (int block = 0; block < 5; ++block) {
        sq::Calibration cal = random_calibration(rng, 2560, 1600, 32);
        std::uniform_int_distribution<int> px(0, cal.panel_width - 1);
        std::uniform_int_distribution<int> py(0, cal.panel_height - 1);
        std::uniform_int_distribution<int> pc(0, 2);
        for (int k = 0; k < 2000; ++k) {
            int x = px(rng), y = py(rng), c = pc(rng);
            auto got = sq::map_subpixel({x, y, c}, cal, layout);
            auto want = oracle_map(x, y, c, cal, layout);
            REQUIRE(got == want);
            REQUIRE(got.first >= 0);
            REQUIRE(got.first < layout.quilt_width());
            REQUIRE(got.second >= 0);
            REQUIRE(got.second < layout.quilt_height());
        }
    }
}

TEST_CASE("uniform quilt renders to a uniform native image", "[lightfield]") {
    sq::QuiltLayout layout{4, 8, 16, 10};
    sq::Quilt quilt{sq::RasterImage::solid(64, 80, 12, 200, 99), layout};

    sq::Calibration cal;
    cal.pitch_x = 11.25;
    cal.slope_tan = 0.3;
    cal.i_off = -2.0;
    cal.n_views = 32;
    cal.panel_width = 64;
    cal.panel_height = 40;

    sq::NativeImage native = sq::render_native_direct(quilt, cal);
    REQUIRE(native == sq::RasterImage::solid(64, 40, 12, 200, 99));
}

TEST_CASE("per-view gray levels land per the formula", "[lightfield]") {
    // View v is solid gray 8*v; every output subpixel must carry exactly
    // the level of the view Eq-derived view index picks.
    sq::QuiltLayout layout{4, 8, 16, 10};
    sq::ViewSequence views;
    for (int v = 0; v < 32; ++v)
        views.views.push_back(sq::RasterImage::solid(16, 10, std::uint8_t(8 * v),
                                                     std::uint8_t(8 * v),
                                                     std::uint8_t(8 * v)));
    sq::Quilt quilt = sq::assemble_quilt(views, layout);

    sq::Calibration cal;
    cal.pitch_x = 13.6;
    cal.slope_tan = -0.15;
    cal.i_off = 1.5;
    cal.n_views = 32;
    cal.panel_width = 64;
    cal.panel_height = 40;

    sq::NativeImage native = sq::render_native_direct(quilt, cal);
    for (int y = 0; y < 40; ++y)
        for (int x = 0; x < 64; ++x)
            for (int c = 0; c < 3; ++c) {
                int v = static_cast<int>(std::floor(sq::view_number({x, y, c}, cal)));
                REQUIRE(static_cast<int>(native.at(x, y, c)) == 8 * v);
            }
}

TEST_CASE("reference calibration renders the full panel", "[lightfield]") {
    sq::Calibration cal;
    cal.pitch_x = 20.348921;
    cal.slope_tan = -0.198654;
    cal.i_off = 4.0;
    cal.n_views = 32;
    cal.panel_width = 2560;
    cal.panel_height = 1600;

    sq::Quilt quilt{sqtest::random_raster(2048, 2048, 75), sq::QuiltLayout{4, 8, 512, 256}};
    sq::NativeImage native = sq::render_native_direct(quilt, cal);
    REQUIRE(native.width == 2560);
    REQUIRE(native.height == 1600);
    REQUIRE(native.data.size() == 2560u * 1600u * 3u);
}

TEST_CASE("mismatched quilt and calibration rejected", "[lightfield]") {
    sq::Calibration cal;
    cal.pitch_x = 10.0;
    cal.n_views = 16;  // quilt below holds 32
    cal.panel_width = 64;
    cal.panel_height = 40;
    sq::Quilt quilt{sq::RasterImage(64, 80), sq::QuiltLayout{4, 8, 16, 10}};
    REQUIRE_THROWS_WITH(sq::render_native_direct(quilt, cal),
                        Catch::Matchers::ContainsSubstring("32 views"));
}
