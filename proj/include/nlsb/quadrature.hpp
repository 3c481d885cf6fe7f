#pragma once

#include <cstddef>
#include <queue>

#include "nlsb/core.hpp"

namespace nlsb {

// Adaptive Gauss–Kronrod quadrature (G7/K15) for complex-valued integrands on a
// real interval. Subintervals are bisected worst-error-first until the summed
// Kronrod-minus-Gauss error estimate meets the tolerance.

namespace gk {

// Kronrod 15 abscissae on [-1,1]; odd indices are the embedded Gauss-7 nodes.
inline constexpr double nodes[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr double weights_k[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr double weights_g[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

}  // namespace gk

struct QuadResult {
    cplx value{0.0};
    double abs_err = 0.0;   // summed error estimate
    std::size_t evals = 0;  // integrand evaluations
    bool converged = false;
};

template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 1e-14,
                     std::size_t max_intervals = 2000) {
    struct Panel {
        double a, b, err;
        cplx val;
        bool operator<(const Panel& o) const { return err < o.err; }
    };

    auto rule = [&](double lo, double hi) -> Panel {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        cplx sum_k = 0.0, sum_g = 0.0;
        for (int i = 0; i < 15; ++i) {
            const cplx fx = f(mid + half * gk::nodes[i]);
            sum_k += gk::weights_k[i] * fx;
            if (i % 2 == 1) sum_g += gk::weights_g[i / 2] * fx;
        }
        sum_k *= half;
        sum_g *= half;
        return {lo, hi, std::abs(sum_k - sum_g), sum_k};
    };

    std::priority_queue<Panel> panels;
    Panel first = rule(a, b);
    cplx total = first.val;
    double total_err = first.err;
    std::size_t evals = 15;
    panels.push(first);

    while (panels.size() < max_intervals) {
        const double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= tol) break;
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = rule(worst.a, mid), right = rule(mid, worst.b);
        total += left.val + right.val - worst.val;
        total_err += left.err + right.err - worst.err;
        evals += 30;
        panels.push(left);
        panels.push(right);
    }

    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    return {total, total_err, evals, total_err <= tol};
}

}  // namespace nlsb
