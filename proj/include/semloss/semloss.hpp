#pragma once

// Umbrella header: the whole library in one include.

#include "semloss/errors.hpp"
#include "semloss/grid.hpp"
#include "semloss/grid_csv.hpp"
#include "semloss/fixtures.hpp"
#include "semloss/link.hpp"
#include "semloss/model1d.hpp"
#include "semloss/surface.hpp"
#include "semloss/finite_diff.hpp"
#include "semloss/metrics.hpp"
#include "semloss/rng.hpp"
#include "semloss/fit_config.hpp"
#include "semloss/fit_report.hpp"
#include "semloss/fit_linear.hpp"
#include "semloss/fit_nonlinear.hpp"
#include "semloss/fit_surface.hpp"
