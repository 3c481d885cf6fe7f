#pragma once

#include "nlsb/core.hpp"

namespace nlsb {

// Richardson-extrapolated central differences.
//
// The base stencils are the classical 4th-order five-point formulas; combining
// steps h and 2h as (16 D(h) - D(2h)) / 15 cancels the h^4 error term. These
// derivatives serve as residual oracles and must stay independent of any
// analytic differentiation of the formulas under test.

template <class F>
cplx diff1_4(F&& f, double x, double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

template <class F>
cplx diff2_4(F&& f, double x, double h) {
    return (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)) /
           (12.0 * h * h);
}

template <class F>
cplx diff1(F&& f, double x, double h) {
    return (16.0 * diff1_4(f, x, h) - diff1_4(f, x, 2 * h)) / 15.0;
}

template <class F>
cplx diff2(F&& f, double x, double h) {
    return (16.0 * diff2_4(f, x, h) - diff2_4(f, x, 2 * h)) / 15.0;
}

}  // namespace nlsb
