// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "calibration.hpp"
#include "quilt.hpp"
#include "raster.hpp"

namespace sq {

/// A single RGB subpixel of the panel. Subpixel columns are numbered
/// i = 3x + c across the row (j is the pixel row y).
struct SubpixelAddress {
    int x = 0;
    int y = 0;
    int c = 0;

    int subpixel_column() const { return 3 * x + c; }
};

/// The panel-resolution output; every subpixel holds the quilt sample the
/// lens array routes to it.
using NativeImage = RasterImage;

namespace detail {

/// Mathematical modulo: result in [0, p) for any sign of a.
inline double positive_mod(double a, double p) {
    double m = std::fmod(a, p);
    if (m < 0.0)
        m += p;
    if (m >= p)  // fp corner: -eps + p can round to p
        m -= p;
    return m;
}

} // namespace detail

/// Fractional view number routed to subpixel column i on row j:
///   N = n_views * mod(i - i_off - 3*j*slope_tan, pitch_x) / pitch_x
/// Output lies in [0, n_views) and is periodic in i with period pitch_x.
inline double view_number(double i, int j, const Calibration& cal) {
    double phase = detail::positive_mod(i - cal.i_off - 3.0 * j * cal.slope_tan, cal.pitch_x);
    double n = cal.n_views * phase / cal.pitch_x;
    if (n >= cal.n_views)  // fp corner: phase within half an ulp of pitch_x
        n = 0.0;
    return n;
}

inline double view_number(const SubpixelAddress& addr, const Calibration& cal) {
    return view_number(static_cast<double>(addr.subpixel_column()), addr.y, cal);
}

/// Absolute quilt coordinates sampled by one panel subpixel: the view is
/// floor(view_number) clamped to [0, n_views-1]; within the view's tile the
/// panel position scales by floor(x*tile_w/panel_w), floor(y*tile_h/panel_h),
/// so coordinates never leave the tile.
inline std::pair<int, int> map_subpixel(const SubpixelAddress& addr, const Calibration& cal,
                                        const QuiltLayout& layout) {
    int view = static_cast<int>(std::floor(view_number(addr, cal)));
    view = detail::clamp_int(view, 0, cal.n_views - 1);
    auto [x0, y0] = tile_origin(layout, view);
    int qx_local = static_cast<int>(static_cast<std::int64_t>(addr.x) * layout.tile_width /
                                    cal.panel_width);
    int qy_local = static_cast<int>(static_cast<std::int64_t>(addr.y) * layout.tile_height /
                                    cal.panel_height);
    return {x0 + qx_local, y0 + qy_local};
}

namespace detail {

inline void check_quilt_calibration(const Quilt& quilt, const Calibration& cal,
                                    const char* who) {
    quilt.layout.validate();
    if (quilt.layout.view_count() != cal.n_views)
        throw std::invalid_argument(std::string(who) + ": quilt holds " +
                                    std::to_string(quilt.layout.view_count()) +
                                    " views but calibration expects " +
                                    std::to_string(cal.n_views));
    if (quilt.image.width != quilt.layout.quilt_width() ||
        quilt.image.height != quilt.layout.quilt_height())
        throw std::invalid_argument(std::string(who) + ": quilt image/layout mismatch");
}

} // namespace detail

/// Direct rendering path: evaluate the mapping per subpixel, every frame.
inline NativeImage render_native_direct(const Quilt& quilt, const Calibration& cal) {
    detail::check_quilt_calibration(quilt, cal, "render_native_direct");

    NativeImage out(cal.panel_width, cal.panel_height);
    const std::uint8_t* src = quilt.image.data.data();
    int qw = quilt.image.width;
    std::size_t o = 0;
    for (int y = 0; y < cal.panel_height; ++y) {
        for (int x = 0; x < cal.panel_width; ++x) {
            for (int c = 0; c < 3; ++c) {
                auto [qx, qy] = map_subpixel({x, y, c}, cal, quilt.layout);
                out.data[o++] = src[(static_cast<std::size_t>(qy) * qw + qx) * 3 + c];
            }
        }
    }
    return out;
}

} // namespace sq
