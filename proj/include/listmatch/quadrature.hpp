#pragma once

#include <functional>

namespace listmatch {

// Adaptive Gauss-Kronrod (G7,K15) with interval bisection. Integrand must be
// finite on [a, b]. Throws std::runtime_error if the tolerance cannot be met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 48);

}  // namespace listmatch
