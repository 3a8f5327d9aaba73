#pragma once

// Umbrella header: kernel interpolation/regression on point clouds and
// the implicit-surface geometry and operators built on top of it.

#include "kgeom/cloud.hpp"
#include "kgeom/contour.hpp"
#include "kgeom/csv.hpp"
#include "kgeom/errors.hpp"
#include "kgeom/experiments.hpp"
#include "kgeom/geometry.hpp"
#include "kgeom/interpolant.hpp"
#include "kgeom/kernels.hpp"
#include "kgeom/model_io.hpp"
#include "kgeom/rng.hpp"
#include "kgeom/surface_ops.hpp"
#include "kgeom/testbeds.hpp"
