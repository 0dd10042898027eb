// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <csetjmp>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <png.h>

#include "raster.hpp"

namespace sq {

namespace detail {

struct FileHandle {
    std::FILE* f = nullptr;
    explicit FileHandle(const std::string& path, const char* mode) : f(std::fopen(path.c_str(), mode)) {}
    ~FileHandle() {
        if (f) std::fclose(f);
    }
    FileHandle(const FileHandle&) = delete;
    FileHandle& operator=(const FileHandle&) = delete;
};

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    PngReader() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
    }
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    PngWriter() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
    }
    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

} // namespace detail

/// Decode an 8-bit PNG as RGB. Grayscale, paletted and alpha images are
/// expanded/flattened; 16-bit channels are rejected.
inline RasterImage load_png(const std::string& path) {
    detail::FileHandle file(path, "rb");
    if (!file.f)
        throw std::runtime_error("load_png: cannot open file: " + path);

    detail::PngReader reader;
    if (!reader.png || !reader.info)
        throw std::runtime_error("load_png: failed to allocate PNG reader");

    // libpng reports errors via longjmp back to here.
    if (setjmp(png_jmpbuf(reader.png)))
        throw std::runtime_error("load_png: malformed PNG: " + path);

    png_init_io(reader.png, file.f);
    png_read_info(reader.png, reader.info);

    png_uint_32 width = png_get_image_width(reader.png, reader.info);
    png_uint_32 height = png_get_image_height(reader.png, reader.info);
    int bit_depth = png_get_bit_depth(reader.png, reader.info);
    int color_type = png_get_color_type(reader.png, reader.info);

    if (bit_depth > 8)
        throw std::runtime_error("load_png: unsupported bit depth " +
                                 std::to_string(bit_depth) + " (max 8 per channel): " + path);

    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(reader.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(reader.png);
    if (png_get_valid(reader.png, reader.info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(reader.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(reader.png);
    png_set_strip_alpha(reader.png);
    png_read_update_info(reader.png, reader.info);

    if (png_get_rowbytes(reader.png, reader.info) != width * 3)
        throw std::runtime_error("load_png: unexpected row layout after RGB expansion: " + path);

    RasterImage img(static_cast<int>(width), static_cast<int>(height));
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y)
        rows[y] = img.data.data() + static_cast<std::size_t>(y) * width * 3;
    png_read_image(reader.png, rows.data());
    png_read_end(reader.png, nullptr);
    return img;
}

/// Write an 8-bit RGB PNG. Round-trips pixel-exactly through load_png.
inline void save_png(const RasterImage& img, const std::string& path) {
    if (img.width < 1 || img.height < 1)
        throw std::invalid_argument("save_png: empty image");

    detail::FileHandle file(path, "wb");
    if (!file.f)
        throw std::runtime_error("save_png: cannot open file for writing: " + path);

    detail::PngWriter writer;
    if (!writer.png || !writer.info)
        throw std::runtime_error("save_png: failed to allocate PNG writer");

    if (setjmp(png_jmpbuf(writer.png)))
        throw std::runtime_error("save_png: write failure: " + path);

    png_init_io(writer.png, file.f);
    png_set_IHDR(writer.png, writer.info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(writer.png, writer.info);

    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y)
        rows[y] = const_cast<png_bytep>(img.data.data()) +
                  static_cast<std::size_t>(y) * img.width * 3;
    png_write_image(writer.png, rows.data());
    png_write_end(writer.png, nullptr);
}

} // namespace sq
