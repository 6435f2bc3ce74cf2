#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mbwave/errors.hpp"

namespace mbwave {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 48;
};

// Adaptive Gauss-Kronrod 15(7) integration of f over [a, b].
// Throws NumericalError when the error estimate stalls above tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// Same, but the interior points of `breakpoints` that fall in (a, b) are
// inserted as panel boundaries first, so integrand kinks land on panel edges.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, const QuadratureOptions& opt = {});

} // namespace mbwave
