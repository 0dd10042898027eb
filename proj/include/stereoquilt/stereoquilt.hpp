// stereoquilt — turn stereo pairs into lenticular lightfield images.
// SPDX-License-Identifier: MIT

#pragma once

#include "benchmark.hpp"
#include "calibration.hpp"
#include "flo_io.hpp"
#include "flow.hpp"
#include "gif_io.hpp"
#include "lightfield.hpp"
#include "lut.hpp"
#include "morph.hpp"
#include "pipeline.hpp"
#include "png_io.hpp"
#include "quilt.hpp"
#include "raster.hpp"
