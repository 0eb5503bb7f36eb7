#pragma once

#include "schoenberg/bounds.hpp"
#include "schoenberg/bspline.hpp"
#include "schoenberg/eigen_solver.hpp"
#include "schoenberg/functions.hpp"
#include "schoenberg/grid.hpp"
#include "schoenberg/knots.hpp"
#include "schoenberg/matrix.hpp"
#include "schoenberg/operator.hpp"
#include "schoenberg/smoothness.hpp"
#include "schoenberg/spectral.hpp"
#include "schoenberg/version.hpp"
