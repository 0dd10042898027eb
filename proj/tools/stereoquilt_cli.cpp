// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <stereoquilt/stereoquilt.hpp>

namespace {

std::string view_name(const std::string& dir, int k) {
    char leaf[32];
    std::snprintf(leaf, sizeof leaf, "view_%03d.png", k);
    return (std::filesystem::path(dir) / leaf).string();
}

sq::QuiltLayout layout_for_image(const sq::RasterImage& img, int cols, int rows) {
    if (cols < 1 || rows < 1 || img.width % cols != 0 || img.height % rows != 0)
        throw std::invalid_argument("quilt of " + std::to_string(img.width) + "x" +
                                    std::to_string(img.height) + " does not divide into " +
                                    std::to_string(cols) + "x" + std::to_string(rows) +
                                    " tiles");
    return sq::QuiltLayout{cols, rows, img.width / cols, img.height / rows};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stereoquilt: stereo pair -> multiview quilt -> lenticular native image"};
    app.require_subcommand(1);

    // split
    auto* split = app.add_subcommand("split", "Split a side-by-side stereo PNG into halves");
    std::string split_in, split_left, split_right;
    split->add_option("input", split_in, "side-by-side stereo PNG")->required();
    split->add_option("left", split_left, "output PNG for the left half")->required();
    split->add_option("right", split_right, "output PNG for the right half")->required();
    split->callback([&] {
        sq::StereoFrame halves = sq::split_stereo(sq::load_png(split_in));
        sq::save_png(halves.left, split_left);
        sq::save_png(halves.right, split_right);
    });

    // prepare
    auto* prepare = app.add_subcommand("prepare", "Resize to the view width, then crop rows");
    std::string prep_in, prep_out;
    int prep_w = 512, prep_h = 256, prep_crop = 0;
    prepare->add_option("input", prep_in)->required();
    prepare->add_option("output", prep_out)->required();
    prepare->add_option("--width", prep_w, "view width (default 512)");
    prepare->add_option("--height", prep_h, "view height (default 256)");
    prepare->add_option("--crop-top", prep_crop, "rows to drop from the top (default 0)");
    prepare->callback([&] {
        sq::save_png(sq::prepare_view(sq::load_png(prep_in), prep_w, prep_h, prep_crop),
                     prep_out);
    });

    // flow
    auto* flow = app.add_subcommand("flow", "Estimate dense optical flow, write a .flo file");
    std::string flow_src, flow_dst, flow_out;
    sq::FlowParams flow_params;
    flow->add_option("source", flow_src)->required();
    flow->add_option("target", flow_dst)->required();
    flow->add_option("output", flow_out, "output .flo path")->required();
    flow->add_option("--iterations", flow_params.iterations, "solver sweeps per level");
    flow->add_option("--levels", flow_params.max_levels, "maximum pyramid levels");
    flow->add_option("--smoothness", flow_params.smoothness, "regularization weight");
    flow->callback([&] {
        sq::LumaGrid src = sq::to_grayscale(sq::load_png(flow_src));
        sq::LumaGrid dst = sq::to_grayscale(sq::load_png(flow_dst));
        sq::write_flo(sq::estimate_flow(src, dst, flow_params), flow_out);
    });

    // morph
    auto* morph = app.add_subcommand("morph", "Interpolate views between a stereo pair");
    std::string morph_left, morph_right, morph_dir, morph_fwd, morph_bwd, morph_gif;
    int morph_views = 32, morph_threads = 1, morph_delay = 8;
    morph->add_option("left", morph_left)->required();
    morph->add_option("right", morph_right)->required();
    morph->add_option("outdir", morph_dir, "directory for view_NNN.png")->required();
    morph->add_option("--views", morph_views, "number of views (default 32)");
    morph->add_option("--forward", morph_fwd, "left-to-right .flo (skips estimation)");
    morph->add_option("--backward", morph_bwd, "right-to-left .flo (skips estimation)");
    morph->add_option("--threads", morph_threads, "worker threads (default 1)");
    morph->add_option("--gif", morph_gif, "also write an animated GIF of the sweep");
    morph->add_option("--delay", morph_delay, "GIF frame delay, 1/100 s (default 8)");
    morph->callback([&] {
        if (morph_fwd.empty() != morph_bwd.empty())
            throw std::invalid_argument("morph: --forward and --backward go together");
        sq::StereoFrame frame{sq::load_png(morph_left), sq::load_png(morph_right)};
        sq::FlowField fwd, bwd;
        if (!morph_fwd.empty()) {
            fwd = sq::read_flo(morph_fwd);
            bwd = sq::read_flo(morph_bwd);
        } else {
            sq::LumaGrid gl = sq::to_grayscale(frame.left);
            sq::LumaGrid gr = sq::to_grayscale(frame.right);
            fwd = sq::estimate_flow(gl, gr);
            bwd = sq::estimate_flow(gr, gl);
        }
        sq::ViewSequence seq = sq::generate_views(frame, fwd, bwd, morph_views, morph_threads);
        std::filesystem::create_directories(morph_dir);
        for (int k = 0; k < seq.count(); ++k)
            sq::save_png(seq.views[k], view_name(morph_dir, k));
        if (!morph_gif.empty())
            sq::write_gif(seq, morph_gif, morph_delay);
    });

    // quilt
    auto* quilt = app.add_subcommand("quilt", "Pack view PNGs into a quilt (view 0 first)");
    std::string quilt_out;
    std::vector<std::string> quilt_views;
    int quilt_cols = 4, quilt_rows = 8;
    quilt->add_option("output", quilt_out)->required();
    quilt->add_option("views", quilt_views, "view PNGs, bottom-left view first")
        ->required()
        ->expected(-1);
    quilt->add_option("--cols", quilt_cols, "tile columns (default 4)");
    quilt->add_option("--rows", quilt_rows, "tile rows (default 8)");
    quilt->callback([&] {
        sq::ViewSequence seq;
        seq.views.reserve(quilt_views.size());
        for (const std::string& p : quilt_views)
            seq.views.push_back(sq::load_png(p));
        if (seq.count() == 0)
            throw std::invalid_argument("quilt: no views given");
        sq::QuiltLayout layout{quilt_cols, quilt_rows, seq.views[0].width,
                               seq.views[0].height};
        sq::save_png(sq::assemble_quilt(seq, layout).image, quilt_out);
    });

    // native
    auto* native = app.add_subcommand("native", "Map a quilt to the panel without a table");
    std::string native_quilt, native_cal, native_out;
    int native_cols = 4, native_rows = 8;
    native->add_option("quilt", native_quilt)->required();
    native->add_option("calibration", native_cal, "calibration JSON")->required();
    native->add_option("output", native_out)->required();
    native->add_option("--cols", native_cols, "tile columns (default 4)");
    native->add_option("--rows", native_rows, "tile rows (default 8)");
    native->callback([&] {
        sq::RasterImage img = sq::load_png(native_quilt);
        sq::Quilt q{img, layout_for_image(img, native_cols, native_rows)};
        sq::Calibration cal = sq::load_calibration(native_cal);
        sq::save_png(sq::render_native_direct(q, cal), native_out);
    });

    // lut build | lut apply
    auto* lut = app.add_subcommand("lut", "Precomputed subpixel table");
    lut->require_subcommand(1);
    auto* lut_build = lut->add_subcommand("build", "Build a table from a calibration");
    std::string lb_cal, lb_out;
    int lb_cols = 4, lb_rows = 8, lb_tw = 512, lb_th = 256;
    lut_build->add_option("calibration", lb_cal)->required();
    lut_build->add_option("output", lb_out, "output table path")->required();
    lut_build->add_option("--cols", lb_cols, "tile columns (default 4)");
    lut_build->add_option("--rows", lb_rows, "tile rows (default 8)");
    lut_build->add_option("--tile-width", lb_tw, "tile width (default 512)");
    lut_build->add_option("--tile-height", lb_th, "tile height (default 256)");
    lut_build->callback([&] {
        sq::Calibration cal = sq::load_calibration(lb_cal);
        sq::save_lut(sq::build_lut(cal, sq::QuiltLayout{lb_cols, lb_rows, lb_tw, lb_th}),
                     lb_out);
    });

    auto* lut_apply = lut->add_subcommand("apply", "Render a quilt through a table");
    std::string la_lut, la_quilt, la_out;
    int la_bands = 1;
    lut_apply->add_option("table", la_lut)->required();
    lut_apply->add_option("quilt", la_quilt)->required();
    lut_apply->add_option("output", la_out)->required();
    lut_apply->add_option("--bands", la_bands, "parallel row bands (default 1)");
    lut_apply->callback([&] {
        sq::LookupTable table = sq::load_lut(la_lut);
        sq::Quilt q{sq::load_png(la_quilt), sq::QuiltLayout{}};
        sq::NativeImage out = la_bands > 1 ? sq::apply_lut_parallel(table, q, la_bands)
                                           : sq::apply_lut(table, q);
        sq::save_png(out, la_out);
    });

    // bench
    auto* bench = app.add_subcommand("bench", "Time direct mapping against the table path");
    std::string bench_cal, bench_quilt;
    int bench_cols = 4, bench_rows = 8, bench_tw = 512, bench_th = 256, bench_reps = 10;
    bench->add_option("calibration", bench_cal)->required();
    bench->add_option("quilt", bench_quilt, "quilt PNG (default: random noise quilt)");
    bench->add_option("--cols", bench_cols, "tile columns (default 4)");
    bench->add_option("--rows", bench_rows, "tile rows (default 8)");
    bench->add_option("--tile-width", bench_tw, "tile width (default 512)");
    bench->add_option("--tile-height", bench_th, "tile height (default 256)");
    bench->add_option("--reps", bench_reps, "timed repetitions per path (default 10)");
    bench->callback([&] {
        sq::Calibration cal = sq::load_calibration(bench_cal);
        sq::Quilt q;
        if (!bench_quilt.empty()) {
            q.image = sq::load_png(bench_quilt);
            q.layout = layout_for_image(q.image, bench_cols, bench_rows);
        } else {
            q.layout = sq::QuiltLayout{bench_cols, bench_rows, bench_tw, bench_th};
            q.image = sq::RasterImage(q.layout.quilt_width(), q.layout.quilt_height());
            std::mt19937 rng(1u);
            for (std::uint8_t& b : q.image.data)
                b = static_cast<std::uint8_t>(rng() & 0xff);
        }
        sq::BenchmarkReport report = sq::run_benchmark(cal, q.layout, q, bench_reps);
        sq::print_report(report, std::cout);
    });

    // pipeline
    auto* pipe = app.add_subcommand("pipeline", "Run every stage from stereo PNG to outputs");
    sq::PipelineConfig cfg;
    pipe->add_option("input", cfg.input_path, "side-by-side stereo PNG")->required();
    pipe->add_option("--calibration", cfg.calibration_path, "calibration JSON");
    pipe->add_option("--quilt", cfg.quilt_path, "quilt PNG to write");
    pipe->add_option("--native", cfg.native_path, "panel-native PNG to write");
    pipe->add_option("--views", cfg.view_count, "number of views (default 32)");
    pipe->add_option("--cols", cfg.quilt_cols, "tile columns (default 4)");
    pipe->add_option("--rows", cfg.quilt_rows, "tile rows (default 8)");
    pipe->add_option("--width", cfg.view_width, "view width (default 512)");
    pipe->add_option("--height", cfg.view_height, "view height (default 256)");
    pipe->add_option("--crop-top", cfg.crop_top, "rows to drop from the top (default 0)");
    pipe->add_option("--bands", cfg.bands, "worker threads for morph and table (default 1)");
    pipe->add_option("--forward", cfg.forward_flo, "import left-to-right .flo");
    pipe->add_option("--backward", cfg.backward_flo, "import right-to-left .flo");
    pipe->add_flag("--direct", [&](std::int64_t) { cfg.use_lut = false; },
                   "map per subpixel instead of building a table");
    pipe->add_flag("--keep-intermediates", cfg.keep_intermediates,
                   "write every intermediate artifact");
    pipe->add_option("--workdir", cfg.work_dir, "directory for intermediates (default .)");
    pipe->callback([&] { sq::run_pipeline(cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
