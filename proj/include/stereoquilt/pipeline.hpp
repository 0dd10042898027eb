// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>

#include "calibration.hpp"
#include "flo_io.hpp"
#include "flow.hpp"
#include "lightfield.hpp"
#include "lut.hpp"
#include "morph.hpp"
#include "png_io.hpp"
#include "quilt.hpp"
#include "raster.hpp"

namespace sq {

/// End-to-end run description. Flow comes from the built-in estimator unless
/// both `.flo` paths are set. An empty native_path skips the final mapping
/// stage (and then no calibration is needed).
struct PipelineConfig {
    std::string input_path;
    std::string calibration_path;

    int view_count = 32;
    int view_width = 512;
    int view_height = 256;
    int crop_top = 0;
    int quilt_cols = 4;
    int quilt_rows = 8;

    std::string quilt_path;
    std::string native_path;
    bool use_lut = true;
    int bands = 1;

    std::string forward_flo;
    std::string backward_flo;

    bool keep_intermediates = false;
    std::string work_dir = ".";

    QuiltLayout layout() const {
        return QuiltLayout{quilt_cols, quilt_rows, view_width, view_height};
    }

    void validate() const {
        if (input_path.empty())
            throw std::invalid_argument("pipeline: no input image given");
        layout().validate();
        if (view_count != quilt_cols * quilt_rows)
            throw std::invalid_argument(
                "pipeline: view count " + std::to_string(view_count) + " does not fill a " +
                std::to_string(quilt_cols) + "x" + std::to_string(quilt_rows) + " quilt");
        if (crop_top < 0)
            throw std::invalid_argument("pipeline: negative crop row");
        if (bands < 1)
            throw std::invalid_argument("pipeline: band count must be >= 1");
        if (forward_flo.empty() != backward_flo.empty())
            throw std::invalid_argument(
                "pipeline: flow import needs both the forward and the backward field");
        if (!native_path.empty() && calibration_path.empty())
            throw std::invalid_argument("pipeline: native output requires a calibration file");
    }
};

namespace detail {

template <typename F>
auto pipeline_stage(const char* name, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw std::runtime_error("pipeline stage '" + std::string(name) + "': " + e.what());
    }
}

inline std::string work_path(const PipelineConfig& cfg, const std::string& leaf) {
    return (std::filesystem::path(cfg.work_dir) / leaf).string();
}

inline std::string view_leaf(int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "view_%03d.png", k);
    return buf;
}

} // namespace detail

/// Run split -> prepare -> flow -> morph -> quilt -> native mapping, writing
/// the requested artifacts. Any stage failure is rethrown with the stage
/// name prefixed. Deterministic: the same config and inputs give
/// byte-identical outputs, regardless of band count.
inline void run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    namespace d = detail;

    RasterImage input = d::pipeline_stage("load", [&] { return load_png(cfg.input_path); });

    StereoFrame halves = d::pipeline_stage("split", [&] { return split_stereo(input); });
    if (cfg.keep_intermediates) {
        save_png(halves.left, d::work_path(cfg, "left.png"));
        save_png(halves.right, d::work_path(cfg, "right.png"));
    }

    StereoFrame prepared = d::pipeline_stage("prepare", [&] {
        return StereoFrame{
            prepare_view(halves.left, cfg.view_width, cfg.view_height, cfg.crop_top),
            prepare_view(halves.right, cfg.view_width, cfg.view_height, cfg.crop_top)};
    });
    if (cfg.keep_intermediates) {
        save_png(prepared.left, d::work_path(cfg, "left_prepared.png"));
        save_png(prepared.right, d::work_path(cfg, "right_prepared.png"));
    }

    auto [forward, backward] = d::pipeline_stage("flow", [&] {
        if (!cfg.forward_flo.empty())
            return std::pair{read_flo(cfg.forward_flo), read_flo(cfg.backward_flo)};
        LumaGrid gray_left = to_grayscale(prepared.left);
        LumaGrid gray_right = to_grayscale(prepared.right);
        return std::pair{estimate_flow(gray_left, gray_right),
                         estimate_flow(gray_right, gray_left)};
    });
    if (cfg.keep_intermediates) {
        write_flo(forward, d::work_path(cfg, "forward.flo"));
        write_flo(backward, d::work_path(cfg, "backward.flo"));
    }

    ViewSequence views = d::pipeline_stage("morph", [&] {
        return generate_views(prepared, forward, backward, cfg.view_count, cfg.bands);
    });
    if (cfg.keep_intermediates)
        for (int k = 0; k < views.count(); ++k)
            save_png(views.views[k], d::work_path(cfg, d::view_leaf(k)));

    Quilt quilt = d::pipeline_stage("quilt", [&] { return assemble_quilt(views, cfg.layout()); });
    if (!cfg.quilt_path.empty())
        d::pipeline_stage("quilt", [&] { save_png(quilt.image, cfg.quilt_path); return 0; });

    if (cfg.native_path.empty())
        return;
    Calibration cal = d::pipeline_stage("calibration",
                                        [&] { return load_calibration(cfg.calibration_path); });
    NativeImage native = d::pipeline_stage("native", [&] {
        if (!cfg.use_lut)
            return render_native_direct(quilt, cal);
        LookupTable lut = build_lut(cal, quilt.layout);
        if (cfg.keep_intermediates)
            save_lut(lut, d::work_path(cfg, "mapping.lut"));
        return cfg.bands > 1 ? apply_lut_parallel(lut, quilt, cfg.bands) : apply_lut(lut, quilt);
    });
    d::pipeline_stage("native", [&] { save_png(native, cfg.native_path); return 0; });
}

} // namespace sq
