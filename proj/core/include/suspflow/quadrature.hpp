#pragma once

#include <functional>

#include "suspflow/errors.hpp"

namespace suspflow {

/// Adaptive Simpson integration of f over [a, b] to the given absolute
/// tolerance. Throws QuadratureFailure if the recursion depth budget is
/// exhausted before the local error estimates fall under tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 48);

}  // namespace suspflow
