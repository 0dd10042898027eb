// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <stdexcept>
#include <string>

#include "morph.hpp"
#include "raster.hpp"

namespace sq {

/// Tile grid of a quilt. View k lives in column (k mod cols) of tile-row
/// (k div cols) counted from the BOTTOM of the image: view 0 is the
/// bottom-left (leftmost) view, the last view top-right (rightmost).
struct QuiltLayout {
    int cols = 0;
    int rows = 0;
    int tile_width = 0;
    int tile_height = 0;

    int view_count() const { return cols * rows; }
    int quilt_width() const { return cols * tile_width; }
    int quilt_height() const { return rows * tile_height; }

    void validate() const {
        if (cols < 1 || rows < 1 || tile_width < 1 || tile_height < 1)
            throw std::invalid_argument("QuiltLayout: all fields must be >= 1");
    }

    friend bool operator==(const QuiltLayout& a, const QuiltLayout& b) {
        return a.cols == b.cols && a.rows == b.rows && a.tile_width == b.tile_width &&
               a.tile_height == b.tile_height;
    }
};

/// All views packed into one raster per the layout above.
struct Quilt {
    RasterImage image;
    QuiltLayout layout;
};

/// Top-left pixel of view k's tile, in quilt image coordinates
/// (image rows are stored top-first; the bottom-first view order is
/// purely this indexing rule).
inline std::pair<int, int> tile_origin(const QuiltLayout& layout, int view) {
    int col = view % layout.cols;
    int row_from_bottom = view / layout.cols;
    int x0 = layout.tile_width * col;
    int y0 = layout.quilt_height() - layout.tile_height * (1 + row_from_bottom);
    return {x0, y0};
}

/// Pack views into a quilt. Exact pixel copy, no resampling.
inline Quilt assemble_quilt(const ViewSequence& views, const QuiltLayout& layout) {
    layout.validate();
    if (views.count() != layout.view_count())
        throw std::invalid_argument("assemble_quilt: " + std::to_string(views.count()) +
                                    " views do not fill a " + std::to_string(layout.cols) + "x" +
                                    std::to_string(layout.rows) + " layout");
    for (int k = 0; k < views.count(); ++k)
        if (views.views[k].width != layout.tile_width ||
            views.views[k].height != layout.tile_height)
            throw std::invalid_argument(
                "assemble_quilt: view " + std::to_string(k) + " is " +
                std::to_string(views.views[k].width) + "x" +
                std::to_string(views.views[k].height) + ", expected " +
                std::to_string(layout.tile_width) + "x" + std::to_string(layout.tile_height));

    Quilt quilt{RasterImage(layout.quilt_width(), layout.quilt_height()), layout};
    for (int k = 0; k < views.count(); ++k) {
        auto [x0, y0] = tile_origin(layout, k);
        const RasterImage& view = views.views[k];
        for (int y = 0; y < layout.tile_height; ++y)
            std::copy(view.pixel(0, y),
                      view.pixel(0, y) + static_cast<std::size_t>(layout.tile_width) * 3,
                      quilt.image.pixel(x0, y0 + y));
    }
    return quilt;
}

/// Unpack a quilt back into its views. Exact inverse of assemble_quilt.
inline ViewSequence extract_views(const Quilt& quilt) {
    quilt.layout.validate();
    if (quilt.image.width != quilt.layout.quilt_width() ||
        quilt.image.height != quilt.layout.quilt_height())
        throw std::invalid_argument("extract_views: quilt image is " +
                                    std::to_string(quilt.image.width) + "x" +
                                    std::to_string(quilt.image.height) + ", layout implies " +
                                    std::to_string(quilt.layout.quilt_width()) + "x" +
                                    std::to_string(quilt.layout.quilt_height()));

    ViewSequence seq;
    seq.views.reserve(quilt.layout.view_count());
    for (int k = 0; k < quilt.layout.view_count(); ++k) {
        auto [x0, y0] = tile_origin(quilt.layout, k);
        seq.views.push_back(
            crop(quilt.image, x0, y0, quilt.layout.tile_width, quilt.layout.tile_height));
    }
    return seq;
}

} // namespace sq
