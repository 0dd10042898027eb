// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace sq {

/// Per-device lenticular display parameters.
///
/// JSON schema (see data/sample_calibration.json):
///   pitch   (required)  lenticular pitch P_x, in subpixel units
///   slope   (required)  tan(alpha), lens slant vs. panel columns
///   center  (required)  horizontal subpixel offset i_off
///   views   (required)  total view count
///   screenW (required)  panel width in pixels
///   screenH (required)  panel height in pixels
///   viewCone (optional) view cone in degrees, default 50
///   dpi and any unknown keys are accepted and ignored.
///
/// pitch is stored directly in subpixel units and slope directly as a
/// tangent; converting from physical units (lenticules per inch, dpi) is up
/// to whoever produces the file. load_calibration enforces pitch > 0,
/// views >= 2 and panel dims >= 1; the struct itself is a plain value.
struct Calibration {
    double pitch_x = 1.0;
    double slope_tan = 0.0;
    double i_off = 0.0;
    int n_views = 2;
    int panel_width = 1;
    int panel_height = 1;
    double view_cone_deg = 50.0;

    friend bool operator==(const Calibration& a, const Calibration& b) {
        return a.pitch_x == b.pitch_x && a.slope_tan == b.slope_tan && a.i_off == b.i_off &&
               a.n_views == b.n_views && a.panel_width == b.panel_width &&
               a.panel_height == b.panel_height && a.view_cone_deg == b.view_cone_deg;
    }
};

namespace detail {

inline double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw std::runtime_error(std::string("calibration: missing required field \"") + key +
                                 "\"");
    if (!j.at(key).is_number())
        throw std::runtime_error(std::string("calibration: field \"") + key +
                                 "\" is not a number");
    return j.at(key).get<double>();
}

} // namespace detail

/// Parse calibration JSON text.
inline Calibration parse_calibration(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("calibration: unparsable JSON: ") + e.what());
    }
    if (!j.is_object())
        throw std::runtime_error("calibration: top-level JSON value is not an object");

    Calibration cal;
    cal.pitch_x = detail::require_number(j, "pitch");
    cal.slope_tan = detail::require_number(j, "slope");
    cal.i_off = detail::require_number(j, "center");
    cal.n_views = static_cast<int>(detail::require_number(j, "views"));
    cal.panel_width = static_cast<int>(detail::require_number(j, "screenW"));
    cal.panel_height = static_cast<int>(detail::require_number(j, "screenH"));
    cal.view_cone_deg = j.contains("viewCone") ? detail::require_number(j, "viewCone") : 50.0;

    if (!(cal.pitch_x > 0.0))
        throw std::runtime_error("calibration: \"pitch\" must be > 0");
    if (cal.n_views < 2)
        throw std::runtime_error("calibration: \"views\" must be >= 2");
    if (cal.panel_width < 1 || cal.panel_height < 1)
        throw std::runtime_error("calibration: panel dimensions must be >= 1");
    return cal;
}

inline Calibration load_calibration(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("calibration: cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_calibration(text);
}

/// Serialize; load_calibration(save_calibration(c)) == c.
inline std::string calibration_to_json(const Calibration& cal) {
    nlohmann::json j;
    j["pitch"] = cal.pitch_x;
    j["slope"] = cal.slope_tan;
    j["center"] = cal.i_off;
    j["views"] = cal.n_views;
    j["screenW"] = cal.panel_width;
    j["screenH"] = cal.panel_height;
    j["viewCone"] = cal.view_cone_deg;
    return j.dump(2) + "\n";
}

inline void save_calibration(const Calibration& cal, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("calibration: cannot open file for writing: " + path);
    out << calibration_to_json(cal);
    if (!out)
        throw std::runtime_error("calibration: write failure: " + path);
}

} // namespace sq
