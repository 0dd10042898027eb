// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sq {

/// 8-bit RGB image. Row-major, top row first, channels interleaved.
struct RasterImage {
    int width = 0;
    int height = 0;
    static constexpr int channels = 3;
    std::vector<std::uint8_t> data;

    RasterImage() = default;

    RasterImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("RasterImage: dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h * channels, fill);
    }

    static RasterImage solid(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        RasterImage img(w, h);
        for (std::size_t i = 0; i < img.data.size(); i += 3) {
            img.data[i] = r;
            img.data[i + 1] = g;
            img.data[i + 2] = b;
        }
        return img;
    }

    std::size_t index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * width + x) * channels + c;
    }

    std::uint8_t at(int x, int y, int c) const { return data[index(x, y, c)]; }
    std::uint8_t& at(int x, int y, int c) { return data[index(x, y, c)]; }

    const std::uint8_t* pixel(int x, int y) const { return data.data() + index(x, y, 0); }
    std::uint8_t* pixel(int x, int y) { return data.data() + index(x, y, 0); }

    bool same_dims(const RasterImage& other) const {
        return width == other.width && height == other.height;
    }

    friend bool operator==(const RasterImage& a, const RasterImage& b) {
        return a.width == b.width && a.height == b.height && a.data == b.data;
    }
};

/// Left/right halves of a side-by-side stereo capture. Same dimensions each.
struct StereoFrame {
    RasterImage left;
    RasterImage right;
};

/// Single-channel luminance grid in [0,1], row-major, top row first.
struct LumaGrid {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    LumaGrid() = default;

    LumaGrid(int w, int h, float fill = 0.f)
        : width(w), height(h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("LumaGrid: dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h, fill);
    }

    float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

namespace detail {

inline int clamp_int(int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

/// Bilinear sample of one channel at real coordinates, clamp-to-edge.
inline double bilinear_channel(const RasterImage& img, double x, double y, int c) {
    double cx = std::clamp(x, 0.0, static_cast<double>(img.width - 1));
    double cy = std::clamp(y, 0.0, static_cast<double>(img.height - 1));
    int x0 = static_cast<int>(std::floor(cx));
    int y0 = static_cast<int>(std::floor(cy));
    int x1 = std::min(x0 + 1, img.width - 1);
    int y1 = std::min(y0 + 1, img.height - 1);
    double fx = cx - x0;
    double fy = cy - y0;
    double top = img.at(x0, y0, c) * (1.0 - fx) + img.at(x1, y0, c) * fx;
    double bot = img.at(x0, y1, c) * (1.0 - fx) + img.at(x1, y1, c) * fx;
    return top * (1.0 - fy) + bot * fy;
}

inline std::uint8_t round_to_u8(double v) {
    long r = std::lround(v);
    return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
}

} // namespace detail

/// Cut a side-by-side frame into equal left/right halves. Width must be even.
inline StereoFrame split_stereo(const RasterImage& frame) {
    if (frame.width % 2 != 0)
        throw std::invalid_argument("split_stereo: frame width " +
                                    std::to_string(frame.width) + " is odd");
    int hw = frame.width / 2;
    StereoFrame out{RasterImage(hw, frame.height), RasterImage(hw, frame.height)};
    for (int y = 0; y < frame.height; ++y) {
        const std::uint8_t* row = frame.pixel(0, y);
        std::copy(row, row + static_cast<std::size_t>(hw) * 3, out.left.pixel(0, y));
        std::copy(row + static_cast<std::size_t>(hw) * 3,
                  row + static_cast<std::size_t>(frame.width) * 3, out.right.pixel(0, y));
    }
    return out;
}

/// Side-by-side concatenation; inverse of split_stereo.
inline RasterImage hconcat(const RasterImage& left, const RasterImage& right) {
    if (left.height != right.height)
        throw std::invalid_argument("hconcat: height mismatch");
    RasterImage out(left.width + right.width, left.height);
    for (int y = 0; y < left.height; ++y) {
        std::copy(left.pixel(0, y), left.pixel(0, y) + static_cast<std::size_t>(left.width) * 3,
                  out.pixel(0, y));
        std::copy(right.pixel(0, y), right.pixel(0, y) + static_cast<std::size_t>(right.width) * 3,
                  out.pixel(0, y) + static_cast<std::size_t>(left.width) * 3);
    }
    return out;
}

inline RasterImage crop(const RasterImage& img, int x0, int y0, int w, int h) {
    if (x0 < 0 || y0 < 0 || w < 1 || h < 1 || x0 + w > img.width || y0 + h > img.height)
        throw std::invalid_argument("crop: window exceeds image bounds");
    RasterImage out(w, h);
    for (int y = 0; y < h; ++y)
        std::copy(img.pixel(x0, y0 + y), img.pixel(x0, y0 + y) + static_cast<std::size_t>(w) * 3,
                  out.pixel(0, y));
    return out;
}

/// Bilinear resize with pixel-center alignment. Same-size resize is the identity.
inline RasterImage resize_bilinear(const RasterImage& img, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1)
        throw std::invalid_argument("resize_bilinear: target dimensions must be >= 1");
    if (out_w == img.width && out_h == img.height)
        return img;
    RasterImage out(out_w, out_h);
    double sx = static_cast<double>(img.width) / out_w;
    double sy = static_cast<double>(img.height) / out_h;
    for (int y = 0; y < out_h; ++y) {
        double src_y = (y + 0.5) * sy - 0.5;
        for (int x = 0; x < out_w; ++x) {
            double src_x = (x + 0.5) * sx - 0.5;
            for (int c = 0; c < 3; ++c)
                out.at(x, y, c) =
                    detail::round_to_u8(detail::bilinear_channel(img, src_x, src_y, c));
        }
    }
    return out;
}

/// Scale to target_width (aspect preserved, bilinear), then take target_height
/// rows starting at crop_top. Both halves of a stereo pair must use the same
/// crop_top so their rows stay aligned.
inline RasterImage prepare_view(const RasterImage& img, int target_width, int target_height,
                                int crop_top) {
    if (target_width < 1 || target_height < 1)
        throw std::invalid_argument("prepare_view: target dimensions must be >= 1");
    if (crop_top < 0)
        throw std::invalid_argument("prepare_view: crop_top must be >= 0");
    int scaled_h = static_cast<int>(
        std::lround(static_cast<double>(img.height) * target_width / img.width));
    scaled_h = std::max(scaled_h, 1);
    if (crop_top + target_height > scaled_h)
        throw std::invalid_argument(
            "prepare_view: crop window [" + std::to_string(crop_top) + ", " +
            std::to_string(crop_top + target_height) + ") exceeds scaled height " +
            std::to_string(scaled_h));
    RasterImage scaled = resize_bilinear(img, target_width, scaled_h);
    if (crop_top == 0 && target_height == scaled_h)
        return scaled;
    return crop(scaled, 0, crop_top, target_width, target_height);
}

/// Rec.601 luma on [0,1].
inline LumaGrid to_grayscale(const RasterImage& img) {
    LumaGrid out(img.width, img.height);
    const std::uint8_t* p = img.data.data();
    for (std::size_t i = 0, n = static_cast<std::size_t>(img.width) * img.height; i < n; ++i) {
        double luma = 0.299 * p[3 * i] + 0.587 * p[3 * i + 1] + 0.114 * p[3 * i + 2];
        out.data[i] = static_cast<float>(luma / 255.0);
    }
    return out;
}

} // namespace sq
