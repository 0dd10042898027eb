// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "raster.hpp"

namespace sq {

/// Dense per-pixel 2D displacement field. A feature at (x, y) in the source
/// sits at (x + u, y + v) in the target. Row-major, top row first.
struct FlowField {
    int width = 0;
    int height = 0;
    std::vector<float> u;
    std::vector<float> v;

    FlowField() = default;

    FlowField(int w, int h)
        : width(w), height(h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("FlowField: dimensions must be >= 1");
        u.assign(static_cast<std::size_t>(w) * h, 0.f);
        v.assign(static_cast<std::size_t>(w) * h, 0.f);
    }

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }

    friend bool operator==(const FlowField& a, const FlowField& b) {
        return a.width == b.width && a.height == b.height && a.u == b.u && a.v == b.v;
    }
};

/// Coarse-to-fine Horn–Schunck settings.
struct FlowParams {
    int max_levels = 5;        // pyramid levels including full resolution
    int min_level_size = 16;   // no level narrower/shorter than this
    int iterations = 100;      // Jacobi sweeps per level
    double smoothness = 0.01;  // regularizer weight for [0,1] intensities
};

namespace detail {

inline float luma_bilinear(const LumaGrid& g, double x, double y) {
    double cx = std::clamp(x, 0.0, static_cast<double>(g.width - 1));
    double cy = std::clamp(y, 0.0, static_cast<double>(g.height - 1));
    int x0 = static_cast<int>(std::floor(cx));
    int y0 = static_cast<int>(std::floor(cy));
    int x1 = std::min(x0 + 1, g.width - 1);
    int y1 = std::min(y0 + 1, g.height - 1);
    double fx = cx - x0;
    double fy = cy - y0;
    double top = g.at(x0, y0) * (1.0 - fx) + g.at(x1, y0) * fx;
    double bot = g.at(x0, y1) * (1.0 - fx) + g.at(x1, y1) * fx;
    return static_cast<float>(top * (1.0 - fy) + bot * fy);
}

/// Half-size level: 2x2 box average, odd edges replicated.
inline LumaGrid downsample_half(const LumaGrid& g) {
    int w2 = (g.width + 1) / 2;
    int h2 = (g.height + 1) / 2;
    LumaGrid out(w2, h2);
    for (int y = 0; y < h2; ++y) {
        int y0 = std::min(2 * y, g.height - 1);
        int y1 = std::min(2 * y + 1, g.height - 1);
        for (int x = 0; x < w2; ++x) {
            int x0 = std::min(2 * x, g.width - 1);
            int x1 = std::min(2 * x + 1, g.width - 1);
            out.at(x, y) = 0.25f * (g.at(x0, y0) + g.at(x1, y0) + g.at(x0, y1) + g.at(x1, y1));
        }
    }
    return out;
}

/// Bilinear flow upsample; components rescaled by the size ratio.
inline FlowField upsample_flow(const FlowField& f, int out_w, int out_h) {
    FlowField out(out_w, out_h);
    double sx = static_cast<double>(f.width) / out_w;
    double sy = static_cast<double>(f.height) / out_h;
    double gain_x = static_cast<double>(out_w) / f.width;
    double gain_y = static_cast<double>(out_h) / f.height;
    for (int y = 0; y < out_h; ++y) {
        double src_y = (y + 0.5) * sy - 0.5;
        double cy = std::clamp(src_y, 0.0, static_cast<double>(f.height - 1));
        int y0 = static_cast<int>(std::floor(cy));
        int y1 = std::min(y0 + 1, f.height - 1);
        double fy = cy - y0;
        for (int x = 0; x < out_w; ++x) {
            double src_x = (x + 0.5) * sx - 0.5;
            double cx = std::clamp(src_x, 0.0, static_cast<double>(f.width - 1));
            int x0 = static_cast<int>(std::floor(cx));
            int x1 = std::min(x0 + 1, f.width - 1);
            double fx = cx - x0;
            auto lerp2 = [&](const std::vector<float>& comp) {
                double top = comp[f.index(x0, y0)] * (1.0 - fx) + comp[f.index(x1, y0)] * fx;
                double bot = comp[f.index(x0, y1)] * (1.0 - fx) + comp[f.index(x1, y1)] * fx;
                return top * (1.0 - fy) + bot * fy;
            };
            out.u[out.index(x, y)] = static_cast<float>(lerp2(f.u) * gain_x);
            out.v[out.index(x, y)] = static_cast<float>(lerp2(f.v) * gain_y);
        }
    }
    return out;
}

inline void central_gradient(const LumaGrid& g, std::vector<float>& gx, std::vector<float>& gy) {
    int w = g.width, h = g.height;
    gx.assign(static_cast<std::size_t>(w) * h, 0.f);
    gy.assign(static_cast<std::size_t>(w) * h, 0.f);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int xm = std::max(x - 1, 0), xp = std::min(x + 1, w - 1);
            int ym = std::max(y - 1, 0), yp = std::min(y + 1, h - 1);
            float dx = (g.at(xp, y) - g.at(xm, y)) / static_cast<float>(xp - xm);
            float dy = (g.at(x, yp) - g.at(x, ym)) / static_cast<float>(yp - ym);
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            gx[i] = dx;
            gy[i] = dy;
        }
    }
}

/// One pyramid level: warp the source by the incoming flow, linearize, then run
/// Jacobi sweeps on the total flow. The smoothness term couples neighbors via
/// their 4-neighbor average (edges replicated).
inline void solve_level(const LumaGrid& source, const LumaGrid& target, FlowField& flow,
                        const FlowParams& params) {
    int w = source.width, h = source.height;
    std::size_t n = static_cast<std::size_t>(w) * h;

    LumaGrid warped(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            warped.at(x, y) = luma_bilinear(source, x - flow.u[i], y - flow.v[i]);
        }

    std::vector<float> gsx, gsy, gtx, gty;
    central_gradient(warped, gsx, gsy);
    central_gradient(target, gtx, gty);

    std::vector<float> ix(n), iy(n), it(n), den(n);
    double lambda = params.smoothness;
    for (std::size_t i = 0; i < n; ++i) {
        ix[i] = 0.5f * (gsx[i] + gtx[i]);
        iy[i] = 0.5f * (gsy[i] + gty[i]);
        it[i] = warped.data[i] - target.data[i];
        den[i] = static_cast<float>(lambda + static_cast<double>(ix[i]) * ix[i] +
                                    static_cast<double>(iy[i]) * iy[i]);
    }

    std::vector<float> u0 = flow.u, v0 = flow.v;  // linearization point
    std::vector<float> nu(n), nv(n);
    auto avg4 = [&](const std::vector<float>& f, int x, int y) {
        int xm = std::max(x - 1, 0), xp = std::min(x + 1, w - 1);
        int ym = std::max(y - 1, 0), yp = std::min(y + 1, h - 1);
        std::size_t row = static_cast<std::size_t>(y) * w;
        return 0.25f * (f[row + xm] + f[row + xp] + f[static_cast<std::size_t>(ym) * w + x] +
                        f[static_cast<std::size_t>(yp) * w + x]);
    };
    for (int iter = 0; iter < params.iterations; ++iter) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                std::size_t i = static_cast<std::size_t>(y) * w + x;
                float ub = avg4(flow.u, x, y);
                float vb = avg4(flow.v, x, y);
                float num = it[i] - (ix[i] * (ub - u0[i]) + iy[i] * (vb - v0[i]));
                nu[i] = ub + ix[i] * num / den[i];
                nv[i] = vb + iy[i] * num / den[i];
            }
        }
        flow.u.swap(nu);
        flow.v.swap(nv);
    }
}

} // namespace detail

/// Dense flow between two equally-sized luminance grids, coarse-to-fine.
/// The result satisfies target(x + u, y + v) ~= source(x, y) in the
/// least-squares sense and is always finite (the regularizer keeps the
/// update bounded even on textureless input).
inline FlowField estimate_flow(const LumaGrid& source, const LumaGrid& target,
                               const FlowParams& params = {}) {
    if (source.width != target.width || source.height != target.height)
        throw std::invalid_argument("estimate_flow: dimension mismatch (" +
                                    std::to_string(source.width) + "x" +
                                    std::to_string(source.height) + " vs " +
                                    std::to_string(target.width) + "x" +
                                    std::to_string(target.height) + ")");
    if (std::min(source.width, source.height) < params.min_level_size)
        throw std::invalid_argument("estimate_flow: images smaller than the coarsest pyramid "
                                    "level (" + std::to_string(params.min_level_size) + " px)");

    std::vector<LumaGrid> pyr_s{source}, pyr_t{target};
    while (static_cast<int>(pyr_s.size()) < params.max_levels) {
        const LumaGrid& top = pyr_s.back();
        int w2 = (top.width + 1) / 2, h2 = (top.height + 1) / 2;
        if (std::min(w2, h2) < params.min_level_size)
            break;
        pyr_s.push_back(detail::downsample_half(pyr_s.back()));
        pyr_t.push_back(detail::downsample_half(pyr_t.back()));
    }

    FlowField flow(pyr_s.back().width, pyr_s.back().height);
    for (int level = static_cast<int>(pyr_s.size()) - 1; level >= 0; --level) {
        if (level != static_cast<int>(pyr_s.size()) - 1)
            flow = detail::upsample_flow(flow, pyr_s[level].width, pyr_s[level].height);
        detail::solve_level(pyr_s[level], pyr_t[level], flow, params);
    }
    return flow;
}

} // namespace sq
