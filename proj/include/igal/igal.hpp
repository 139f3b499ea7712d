#pragma once

#include "igal/bench/config.hpp"
#include "igal/bench/report.hpp"
#include "igal/bench/runner.hpp"
#include "igal/bvp/definition.hpp"
#include "igal/bvp/examples.hpp"
#include "igal/bvp/operators.hpp"
#include "igal/collocation/assemble.hpp"
#include "igal/collocation/field.hpp"
#include "igal/collocation/points.hpp"
#include "igal/error.hpp"
#include "igal/geometry/geometry_map.hpp"
#include "igal/linalg/cost_model.hpp"
#include "igal/linalg/solver.hpp"
#include "igal/metrics/errors.hpp"
#include "igal/metrics/quadrature.hpp"
#include "igal/nurbs/knot_vector.hpp"
#include "igal/nurbs/tensor_spline.hpp"
#include "igal/types.hpp"
