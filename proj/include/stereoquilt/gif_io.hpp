// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "morph.hpp"

namespace sq {

namespace detail {

/// LZW bit packer: codes go out LSB-first, chopped into <=255-byte sub-blocks.
class GifBitWriter {
public:
    void put(std::uint32_t code, int bits) {
        acc_ |= code << filled_;
        filled_ += bits;
        while (filled_ >= 8) {
            block_.push_back(static_cast<std::uint8_t>(acc_ & 0xff));
            acc_ >>= 8;
            filled_ -= 8;
            if (block_.size() == 255)
                flush_block();
        }
    }

    void finish(std::string& out) {
        if (filled_ > 0) {
            block_.push_back(static_cast<std::uint8_t>(acc_ & 0xff));
            acc_ = 0;
            filled_ = 0;
        }
        if (!block_.empty())
            flush_block();
        out_.push_back('\0');  // block terminator
        out += out_;
    }

private:
    void flush_block() {
        out_.push_back(static_cast<char>(block_.size()));
        out_.append(reinterpret_cast<const char*>(block_.data()), block_.size());
        block_.clear();
    }

    std::uint32_t acc_ = 0;
    int filled_ = 0;
    std::vector<std::uint8_t> block_;
    std::string out_;
};

/// GIF-variant LZW over 8-bit palette indices.
inline void gif_lzw_encode(const std::vector<std::uint8_t>& indices, std::string& out) {
    constexpr int kMinCodeSize = 8;
    constexpr std::uint32_t kClear = 1 << kMinCodeSize;  // 256
    constexpr std::uint32_t kEnd = kClear + 1;           // 257

    out.push_back(static_cast<char>(kMinCodeSize));
    GifBitWriter bits;

    std::unordered_map<std::uint32_t, std::uint32_t> dict;
    dict.reserve(4096);
    std::uint32_t next_code = kEnd + 1;
    int code_bits = kMinCodeSize + 1;

    bits.put(kClear, code_bits);
    std::uint32_t prefix = indices[0];
    for (std::size_t i = 1; i < indices.size(); ++i) {
        std::uint32_t k = indices[i];
        std::uint32_t key = (prefix << 8) | k;
        auto it = dict.find(key);
        if (it != dict.end()) {
            prefix = it->second;
            continue;
        }
        bits.put(prefix, code_bits);
        dict.emplace(key, next_code);
        if (next_code == (1u << code_bits) && code_bits < 12)
            ++code_bits;
        ++next_code;
        if (next_code == 4096) {  // table full: reset
            bits.put(kClear, code_bits);
            dict.clear();
            next_code = kEnd + 1;
            code_bits = kMinCodeSize + 1;
        }
        prefix = k;
    }
    bits.put(prefix, code_bits);
    bits.put(kEnd, code_bits);
    bits.finish(out);
}

inline void put_u16_le(std::string& out, unsigned v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

// Fixed 6x7x6 color cube (252 entries): R and B get 6 levels, G 7.
inline int gif_palette_index(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    int ri = (r * 5 + 127) / 255;
    int gi = (g * 6 + 127) / 255;
    int bi = (b * 5 + 127) / 255;
    return ri * 42 + gi * 6 + bi;
}

} // namespace detail

/// Write an animated GIF of the sequence (fixed 252-color cube, infinite
/// loop). delay_cs is the per-frame delay in hundredths of a second.
inline void write_gif(const ViewSequence& seq, const std::string& path, int delay_cs = 8) {
    if (seq.count() < 1)
        throw std::invalid_argument("write_gif: empty sequence");
    int w = seq.views[0].width, h = seq.views[0].height;
    for (const RasterImage& f : seq.views)
        if (f.width != w || f.height != h)
            throw std::invalid_argument("write_gif: frames differ in size");
    if (w > 0xffff || h > 0xffff)
        throw std::invalid_argument("write_gif: frame too large for GIF");
    if (delay_cs < 0 || delay_cs > 0xffff)
        throw std::invalid_argument("write_gif: delay out of range");

    std::string out;
    out += "GIF89a";
    detail::put_u16_le(out, static_cast<unsigned>(w));
    detail::put_u16_le(out, static_cast<unsigned>(h));
    out.push_back(static_cast<char>(0xf7));  // GCT present, 256 entries
    out.push_back('\0');                     // background index
    out.push_back('\0');                     // aspect ratio

    for (int ri = 0; ri < 6; ++ri)
        for (int gi = 0; gi < 7; ++gi)
            for (int bi = 0; bi < 6; ++bi) {
                out.push_back(static_cast<char>(ri * 51));
                out.push_back(static_cast<char>((gi * 255 + 3) / 6));
                out.push_back(static_cast<char>(bi * 51));
            }
    for (int pad = 252; pad < 256; ++pad) {
        out.push_back('\0');
        out.push_back('\0');
        out.push_back('\0');
    }

    // NETSCAPE looping extension: loop forever.
    out += "\x21\xff\x0b";
    out += "NETSCAPE2.0";
    out += "\x03\x01";
    detail::put_u16_le(out, 0);
    out.push_back('\0');

    std::vector<std::uint8_t> indices(static_cast<std::size_t>(w) * h);
    for (const RasterImage& frame : seq.views) {
        out += "\x21\xf9\x04\x04";  // graphic control, disposal = leave in place
        detail::put_u16_le(out, static_cast<unsigned>(delay_cs));
        out.push_back('\0');  // no transparent color
        out.push_back('\0');

        out.push_back('\x2c');  // image descriptor, full frame
        detail::put_u16_le(out, 0);
        detail::put_u16_le(out, 0);
        detail::put_u16_le(out, static_cast<unsigned>(w));
        detail::put_u16_le(out, static_cast<unsigned>(h));
        out.push_back('\0');

        for (std::size_t i = 0, n = indices.size(); i < n; ++i)
            indices[i] = static_cast<std::uint8_t>(detail::gif_palette_index(
                frame.data[3 * i], frame.data[3 * i + 1], frame.data[3 * i + 2]));
        detail::gif_lzw_encode(indices, out);
    }
    out.push_back('\x3b');  // trailer

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::runtime_error("write_gif: cannot open file for writing: " + path);
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file)
        throw std::runtime_error("write_gif: write failure: " + path);
}

} // namespace sq
