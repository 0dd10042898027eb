// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lut.hpp"

namespace sq {

/// Quilt -> native conversion timings. Medians over `repetitions` timed runs;
/// one warm-up run per path is discarded; the one-off LUT build cost is
/// reported separately.
struct BenchmarkReport {
    int repetitions = 0;
    double lut_build_seconds = 0.0;
    double direct_median_seconds = 0.0;
    double lut_median_seconds = 0.0;
    double speedup = 0.0;  // direct / LUT
    std::vector<std::pair<int, double>> parallel_seconds;  // (bands, median seconds)
    std::uint32_t output_digest = 0;  // folded from rendered output; keeps runs honest
};

namespace detail {

inline double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

template <typename F>
inline double timed_seconds(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

inline std::uint32_t fold_image(const NativeImage& img) {
    std::uint32_t acc = 2166136261u;
    for (std::size_t i = 0; i < img.data.size(); i += 4097)
        acc = (acc ^ img.data[i]) * 16777619u;
    return acc;
}

} // namespace detail

/// Benchmark direct per-subpixel mapping against the LUT path (serial and
/// banded) on one quilt.
inline BenchmarkReport run_benchmark(const Calibration& cal, const QuiltLayout& layout,
                                     const Quilt& quilt, int repetitions,
                                     const std::vector<int>& band_counts = {1, 2, 4}) {
    if (repetitions < 3)
        throw std::invalid_argument("run_benchmark: repetitions must be >= 3");
    detail::check_quilt_calibration(quilt, cal, "run_benchmark");

    BenchmarkReport report;
    report.repetitions = repetitions;

    LookupTable lut;
    report.lut_build_seconds = detail::timed_seconds([&] { lut = build_lut(cal, layout); });

    std::vector<double> direct_times, lut_times;
    {
        NativeImage warm = render_native_direct(quilt, cal);
        report.output_digest ^= detail::fold_image(warm);
    }
    for (int r = 0; r < repetitions; ++r) {
        NativeImage out;
        direct_times.push_back(
            detail::timed_seconds([&] { out = render_native_direct(quilt, cal); }));
        report.output_digest ^= detail::fold_image(out);
    }
    {
        NativeImage warm = apply_lut(lut, quilt);
        report.output_digest ^= detail::fold_image(warm);
    }
    for (int r = 0; r < repetitions; ++r) {
        NativeImage out;
        lut_times.push_back(detail::timed_seconds([&] { out = apply_lut(lut, quilt); }));
        report.output_digest ^= detail::fold_image(out);
    }
    report.direct_median_seconds = detail::median(direct_times);
    report.lut_median_seconds = detail::median(lut_times);
    report.speedup = report.lut_median_seconds > 0.0
                         ? report.direct_median_seconds / report.lut_median_seconds
                         : 0.0;

    for (int bands : band_counts) {
        if (bands < 1)
            continue;
        std::vector<double> times;
        NativeImage warm = apply_lut_parallel(lut, quilt, bands);
        report.output_digest ^= detail::fold_image(warm);
        for (int r = 0; r < repetitions; ++r) {
            NativeImage out;
            times.push_back(
                detail::timed_seconds([&] { out = apply_lut_parallel(lut, quilt, bands); }));
            report.output_digest ^= detail::fold_image(out);
        }
        report.parallel_seconds.emplace_back(bands, detail::median(times));
    }
    return report;
}

inline void print_report(const BenchmarkReport& r, std::ostream& out) {
    out << "repetitions:        " << r.repetitions << "\n"
        << "lut build (s):      " << r.lut_build_seconds << "\n"
        << "direct median (s):  " << r.direct_median_seconds << "\n"
        << "lut median (s):     " << r.lut_median_seconds << "\n"
        << "speedup (direct/lut): " << r.speedup << "\n";
    for (const auto& [bands, secs] : r.parallel_seconds)
        out << "lut parallel x" << bands << " (s): " << secs << "\n";
}

} // namespace sq
