// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "flow.hpp"

namespace sq {

/// Sanity-check constant at the head of every .flo file ("PIEH" when read as
/// little-endian bytes).
inline constexpr float kFloMagic = 202021.25f;

namespace detail {

inline void put_le32(std::string& buf, std::uint32_t v) {
    buf.push_back(static_cast<char>(v & 0xff));
    buf.push_back(static_cast<char>((v >> 8) & 0xff));
    buf.push_back(static_cast<char>((v >> 16) & 0xff));
    buf.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline std::uint32_t get_le32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline void put_le_float(std::string& buf, float f) {
    put_le32(buf, std::bit_cast<std::uint32_t>(f));
}

inline float get_le_float(const unsigned char* p) {
    return std::bit_cast<float>(get_le32(p));
}

} // namespace detail

/// Serialize a flow field in the standard .flo layout: float magic 202021.25,
/// int32 width, int32 height, then width*height interleaved (u, v) float
/// pairs, row-major, top row first. All fields little-endian.
inline void write_flo(const FlowField& field, const std::string& path) {
    if (field.width < 1 || field.height < 1)
        throw std::invalid_argument("write_flo: empty flow field");
    for (std::size_t i = 0; i < field.u.size(); ++i)
        if (!std::isfinite(field.u[i]) || !std::isfinite(field.v[i]))
            throw std::invalid_argument("write_flo: non-finite flow entry at index " +
                                        std::to_string(i));

    std::string buf;
    buf.reserve(12 + field.u.size() * 8);
    detail::put_le_float(buf, kFloMagic);
    detail::put_le32(buf, static_cast<std::uint32_t>(field.width));
    detail::put_le32(buf, static_cast<std::uint32_t>(field.height));
    for (std::size_t i = 0; i < field.u.size(); ++i) {
        detail::put_le_float(buf, field.u[i]);
        detail::put_le_float(buf, field.v[i]);
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("write_flo: cannot open file for writing: " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out)
        throw std::runtime_error("write_flo: write failure: " + path);
}

/// Parse a .flo file (exact inverse of write_flo).
inline FlowField read_flo(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_flo: cannot open file: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const unsigned char* p = reinterpret_cast<const unsigned char*>(buf.data());

    if (buf.size() < 12)
        throw std::runtime_error("read_flo: truncated header: " + path);
    float magic = detail::get_le_float(p);
    if (magic != kFloMagic)
        throw std::runtime_error("read_flo: wrong magic (expected 202021.25): " + path);
    std::int32_t w = static_cast<std::int32_t>(detail::get_le32(p + 4));
    std::int32_t h = static_cast<std::int32_t>(detail::get_le32(p + 8));
    if (w < 1 || h < 1)
        throw std::runtime_error("read_flo: nonpositive dimensions " + std::to_string(w) + "x" +
                                 std::to_string(h) + ": " + path);

    std::size_t expected = 12 + static_cast<std::size_t>(w) * h * 8;
    if (buf.size() != expected)
        throw std::runtime_error("read_flo: truncated payload (" + std::to_string(buf.size()) +
                                 " bytes, expected " + std::to_string(expected) + "): " + path);

    FlowField field(w, h);
    const unsigned char* q = p + 12;
    for (std::size_t i = 0, n = static_cast<std::size_t>(w) * h; i < n; ++i) {
        field.u[i] = detail::get_le_float(q);
        field.v[i] = detail::get_le_float(q + 4);
        q += 8;
    }
    return field;
}

} // namespace sq
