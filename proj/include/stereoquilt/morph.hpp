// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "flow.hpp"
#include "raster.hpp"

namespace sq {

/// Ordered morph sequence: views[0] is the left endpoint (t=0),
/// views[count-1] the right endpoint (t=1). All views share dimensions.
struct ViewSequence {
    std::vector<RasterImage> views;

    int count() const { return static_cast<int>(views.size()); }
};

namespace detail {

/// Inverse warp into a float buffer (3 floats per pixel, no rounding):
/// out(x, y) = image(x - scale*u, y - scale*v), bilinear, clamp-to-edge.
inline std::vector<float> warp_to_float(const RasterImage& image, const FlowField& field,
                                        double scale) {
    std::vector<float> out(static_cast<std::size_t>(image.width) * image.height * 3);
    std::size_t o = 0;
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            std::size_t i = field.index(x, y);
            double sx = x - scale * field.u[i];
            double sy = y - scale * field.v[i];
            // Imported fields may carry NaN/Inf "unknown" markers; pass those
            // pixels through unwarped instead of feeding NaN to the sampler.
            if (!std::isfinite(sx)) sx = x;
            if (!std::isfinite(sy)) sy = y;
            if (scale == 0.0 || (field.u[i] == 0.f && field.v[i] == 0.f)) {
                const std::uint8_t* p = image.pixel(x, y);
                out[o++] = p[0];
                out[o++] = p[1];
                out[o++] = p[2];
            } else {
                out[o++] = static_cast<float>(bilinear_channel(image, sx, sy, 0));
                out[o++] = static_cast<float>(bilinear_channel(image, sx, sy, 1));
                out[o++] = static_cast<float>(bilinear_channel(image, sx, sy, 2));
            }
        }
    }
    return out;
}

inline void check_warp_dims(const RasterImage& image, const FlowField& field, const char* who) {
    if (image.width != field.width || image.height != field.height)
        throw std::invalid_argument(std::string(who) + ": image/flow dimension mismatch (" +
                                    std::to_string(image.width) + "x" +
                                    std::to_string(image.height) + " vs " +
                                    std::to_string(field.width) + "x" +
                                    std::to_string(field.height) + ")");
}

} // namespace detail

/// Inverse-warp a raster along a scaled flow field. scale=0 (or a zero field)
/// reproduces the input byte-for-byte.
inline RasterImage warp_image(const RasterImage& image, const FlowField& field, double scale) {
    detail::check_warp_dims(image, field, "warp_image");
    std::vector<float> buf = detail::warp_to_float(image, field, scale);
    RasterImage out(image.width, image.height);
    for (std::size_t i = 0; i < buf.size(); ++i)
        out.data[i] = detail::round_to_u8(buf[i]);
    return out;
}

/// Intermediate frame at time t: left warped forward by t and weighted (1-t),
/// right warped backward by (1-t) and weighted t. Blending happens in float;
/// each channel is rounded once at the end.
inline RasterImage morph_frame(const RasterImage& left, const RasterImage& right,
                               const FlowField& forward, const FlowField& backward, double t) {
    if (!left.same_dims(right))
        throw std::invalid_argument("morph_frame: left/right dimension mismatch");
    detail::check_warp_dims(left, forward, "morph_frame");
    detail::check_warp_dims(right, backward, "morph_frame");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("morph_frame: t = " + std::to_string(t) +
                                    " outside [0, 1]");

    std::vector<float> from_left = detail::warp_to_float(left, forward, t);
    std::vector<float> from_right = detail::warp_to_float(right, backward, 1.0 - t);
    RasterImage out(left.width, left.height);
    double wl = 1.0 - t, wr = t;
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = detail::round_to_u8(wl * from_left[i] + wr * from_right[i]);
    return out;
}

/// Morph `count` views from left (frame 0) to right (frame count-1) at
/// t = k/(count-1). Frames are independent; `threads` > 1 computes them
/// concurrently with byte-identical output.
inline ViewSequence generate_views(const StereoFrame& frame, const FlowField& forward,
                                   const FlowField& backward, int count, int threads = 1) {
    if (count < 2)
        throw std::invalid_argument("generate_views: count must be >= 2, got " +
                                    std::to_string(count));
    if (!frame.left.same_dims(frame.right))
        throw std::invalid_argument("generate_views: left/right dimension mismatch");

    ViewSequence seq;
    seq.views.resize(count);
    auto render_range = [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            double t = static_cast<double>(k) / (count - 1);
            seq.views[k] = morph_frame(frame.left, frame.right, forward, backward, t);
        }
    };

    int workers = std::max(1, std::min(threads, count));
    if (workers == 1) {
        render_range(0, count);
    } else {
        std::vector<std::thread> pool;
        int per = (count + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            int begin = w * per;
            int end = std::min(count, begin + per);
            if (begin < end)
                pool.emplace_back(render_range, begin, end);
        }
        for (auto& th : pool)
            th.join();
    }
    return seq;
}

} // namespace sq
