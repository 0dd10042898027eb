// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lightfield.hpp"

namespace sq {

/// Precomputed subpixel -> quilt mapping: one coordinate matrix per color
/// channel, each entry an interleaved (qx, qy) pair of 16-bit unsigned
/// integers. Immutable after build/load; safe to share across threads.
struct LookupTable {
    int panel_width = 0;
    int panel_height = 0;
    int quilt_width = 0;   // bounds the entries were built for
    int quilt_height = 0;
    std::array<std::vector<std::uint16_t>, 3> channels;  // row-major (qx, qy) pairs

    std::size_t entries_per_channel() const {
        return static_cast<std::size_t>(panel_width) * panel_height * 2;
    }

    friend bool operator==(const LookupTable& a, const LookupTable& b) {
        return a.panel_width == b.panel_width && a.panel_height == b.panel_height &&
               a.quilt_width == b.quilt_width && a.quilt_height == b.quilt_height &&
               a.channels == b.channels;
    }
};

inline constexpr char kLutMagic[8] = {'S', 'Q', 'L', 'U', 'T', '\0', '\0', '\1'};

/// Scan every panel subpixel once and record its quilt coordinates.
/// Quilt dimensions must fit 16-bit coordinates (< 65536).
inline LookupTable build_lut(const Calibration& cal, const QuiltLayout& layout) {
    layout.validate();
    if (layout.view_count() != cal.n_views)
        throw std::invalid_argument("build_lut: layout holds " +
                                    std::to_string(layout.view_count()) +
                                    " views but calibration expects " +
                                    std::to_string(cal.n_views));
    if (layout.quilt_width() > 0xffff || layout.quilt_height() > 0xffff)
        throw std::invalid_argument("build_lut: quilt " + std::to_string(layout.quilt_width()) +
                                    "x" + std::to_string(layout.quilt_height()) +
                                    " exceeds 16-bit coordinate range");

    LookupTable lut;
    lut.panel_width = cal.panel_width;
    lut.panel_height = cal.panel_height;
    lut.quilt_width = layout.quilt_width();
    lut.quilt_height = layout.quilt_height();
    for (int c = 0; c < 3; ++c) {
        lut.channels[c].resize(lut.entries_per_channel());
        std::uint16_t* entry = lut.channels[c].data();
        for (int y = 0; y < cal.panel_height; ++y) {
            for (int x = 0; x < cal.panel_width; ++x) {
                auto [qx, qy] = map_subpixel({x, y, c}, cal, layout);
                *entry++ = static_cast<std::uint16_t>(qx);
                *entry++ = static_cast<std::uint16_t>(qy);
            }
        }
    }
    return lut;
}

namespace detail {

inline void put_u32_le(std::ostream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

inline std::uint32_t take_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace detail

/// Binary layout: 8-byte magic "SQLUT\0\0\1"; little-endian uint32
/// panel_width, panel_height, quilt_width, quilt_height; then channels
/// R,G,B, each row-major, each entry qx then qy as little-endian uint16.
/// Total size: 24 + 3*W*H*4 bytes.
inline void save_lut(const LookupTable& lut, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("save_lut: cannot open file for writing: " + path);
    out.write(kLutMagic, 8);
    detail::put_u32_le(out, static_cast<std::uint32_t>(lut.panel_width));
    detail::put_u32_le(out, static_cast<std::uint32_t>(lut.panel_height));
    detail::put_u32_le(out, static_cast<std::uint32_t>(lut.quilt_width));
    detail::put_u32_le(out, static_cast<std::uint32_t>(lut.quilt_height));
    for (int c = 0; c < 3; ++c) {
        for (std::uint16_t v : lut.channels[c]) {
            char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
            out.write(b, 2);
        }
    }
    if (!out)
        throw std::runtime_error("save_lut: write failure: " + path);
}

/// Exact inverse of save_lut; header and every coordinate are re-validated.
inline LookupTable load_lut(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("load_lut: cannot open file: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (buf.size() < 24)
        throw std::runtime_error("load_lut: truncated header: " + path);
    if (std::memcmp(buf.data(), kLutMagic, 8) != 0)
        throw std::runtime_error("load_lut: bad magic: " + path);

    const unsigned char* p = reinterpret_cast<const unsigned char*>(buf.data());
    LookupTable lut;
    lut.panel_width = static_cast<int>(detail::take_u32_le(p + 8));
    lut.panel_height = static_cast<int>(detail::take_u32_le(p + 12));
    lut.quilt_width = static_cast<int>(detail::take_u32_le(p + 16));
    lut.quilt_height = static_cast<int>(detail::take_u32_le(p + 20));
    if (lut.panel_width < 1 || lut.panel_height < 1 || lut.quilt_width < 1 ||
        lut.quilt_height < 1 || lut.quilt_width > 0xffff || lut.quilt_height > 0xffff)
        throw std::runtime_error("load_lut: implausible header dimensions: " + path);

    std::size_t expected = 24 + 3 * lut.entries_per_channel() * 2;
    if (buf.size() != expected)
        throw std::runtime_error("load_lut: size mismatch (" + std::to_string(buf.size()) +
                                 " bytes, expected " + std::to_string(expected) + "): " + path);

    const unsigned char* q = p + 24;
    for (int c = 0; c < 3; ++c) {
        lut.channels[c].resize(lut.entries_per_channel());
        for (std::size_t i = 0; i < lut.channels[c].size(); ++i) {
            lut.channels[c][i] = static_cast<std::uint16_t>(q[0] | (q[1] << 8));
            q += 2;
        }
        for (std::size_t i = 0; i < lut.channels[c].size(); i += 2) {
            if (lut.channels[c][i] >= lut.quilt_width || lut.channels[c][i + 1] >= lut.quilt_height)
                throw std::runtime_error("load_lut: out-of-bounds coordinate in channel " +
                                         std::to_string(c) + " at entry " + std::to_string(i / 2) +
                                         ": " + path);
        }
    }
    return lut;
}

namespace detail {

inline void apply_lut_rows(const LookupTable& lut, const Quilt& quilt, NativeImage& out,
                           int row_begin, int row_end) {
    int qw = quilt.image.width;
    const std::uint8_t* src = quilt.image.data.data();
    for (int y = row_begin; y < row_end; ++y) {
        std::size_t o = static_cast<std::size_t>(y) * lut.panel_width * 3;
        std::size_t e = static_cast<std::size_t>(y) * lut.panel_width * 2;
        for (int x = 0; x < lut.panel_width; ++x) {
            for (int c = 0; c < 3; ++c) {
                const std::uint16_t* entry = lut.channels[c].data() + e;
                out.data[o + c] =
                    src[(static_cast<std::size_t>(entry[1]) * qw + entry[0]) * 3 + c];
            }
            o += 3;
            e += 2;
        }
    }
}

inline void check_lut_quilt(const LookupTable& lut, const Quilt& quilt) {
    if (quilt.image.width != lut.quilt_width || quilt.image.height != lut.quilt_height)
        throw std::invalid_argument("apply_lut: quilt is " + std::to_string(quilt.image.width) +
                                    "x" + std::to_string(quilt.image.height) +
                                    " but the table was built for " +
                                    std::to_string(lut.quilt_width) + "x" +
                                    std::to_string(lut.quilt_height));
}

} // namespace detail

/// Fast rendering path: one table fetch per subpixel. Byte-identical to
/// render_native_direct for the calibration the table was built from.
inline NativeImage apply_lut(const LookupTable& lut, const Quilt& quilt) {
    detail::check_lut_quilt(lut, quilt);
    NativeImage out(lut.panel_width, lut.panel_height);
    detail::apply_lut_rows(lut, quilt, out, 0, lut.panel_height);
    return out;
}

/// apply_lut over `bands` disjoint horizontal row bands, one thread each.
/// Output is byte-identical to the serial path for any band count.
inline NativeImage apply_lut_parallel(const LookupTable& lut, const Quilt& quilt, int bands) {
    detail::check_lut_quilt(lut, quilt);
    if (bands < 1)
        throw std::invalid_argument("apply_lut_parallel: bands must be >= 1");

    NativeImage out(lut.panel_width, lut.panel_height);
    int workers = std::min(bands, lut.panel_height);
    if (workers == 1) {
        detail::apply_lut_rows(lut, quilt, out, 0, lut.panel_height);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    int per = (lut.panel_height + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int begin = w * per;
        int end = std::min(lut.panel_height, begin + per);
        if (begin < end)
            pool.emplace_back(detail::apply_lut_rows, std::cref(lut), std::cref(quilt),
                              std::ref(out), begin, end);
    }
    for (auto& th : pool)
        th.join();
    return out;
}

} // namespace sq
