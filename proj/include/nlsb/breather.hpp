#pragma once

#include <string>

#include "nlsb/core.hpp"
#include "nlsb/numdiff.hpp"

namespace nlsb {

// Exact solutions of the normalized focusing NLS equation
//
//     i u_t + (1/2) u_xx + (|u|^2 - 1) u = 0
//
// on the unit constant background:
//
//   Akhmediev breather (x-periodic, t-localized), lambda0 in (0,1):
//     u = -1 + [2(1-l^2) cosh(s t) + i s sinh(s t)] / [cosh(s t) - l cos(k x)],
//     k = 2 sqrt(1-l^2),  s = l k,  spatial period L = 2 pi / k.
//
//   Kuznetsov–Ma breather (t-periodic, x-localized), lambda0 in (1,inf):
//     u = -1 + [2(l^2-1) cos(a t) + i a sin(a t)] / [l cosh(b x) - cos(a t)],
//     b = 2 sqrt(l^2-1),  a = l b,  temporal period T = 2 pi / a.
//
//   Peregrine rogue wave (doubly localized, the l -> 1 limit of both):
//     u = -1 + 4 (1 + 2 i t) / (1 + 4 (x^2 + t^2)).

enum class BreatherKind { Constant, Akhmediev, KuznetsovMa, Peregrine };

inline const char* to_string(BreatherKind k) {
    switch (k) {
        case BreatherKind::Constant: return "constant";
        case BreatherKind::Akhmediev: return "ab";
        case BreatherKind::KuznetsovMa: return "kmb";
        case BreatherKind::Peregrine: return "prw";
    }
    return "?";
}

struct BreatherSpec {
    BreatherKind kind = BreatherKind::Constant;
    double lambda0 = 0.0;  // spectral parameter; meaningful for AB and KMB

    // derived constants (AB)
    double k0 = 0.0, sigma0 = 0.0, spatial_period = 0.0;
    // derived constants (KMB)
    double beta0 = 0.0, alpha0 = 0.0, temporal_period = 0.0;

    static BreatherSpec constant() { return {}; }

    static BreatherSpec akhmediev(double lambda0) {
        if (!(lambda0 > 0.0 && lambda0 < 1.0))
            throw std::invalid_argument("akhmediev: lambda0 must lie in the open interval (0,1)");
        BreatherSpec s;
        s.kind = BreatherKind::Akhmediev;
        s.lambda0 = lambda0;
        s.k0 = 2.0 * std::sqrt(1.0 - lambda0 * lambda0);
        s.sigma0 = lambda0 * s.k0;
        s.spatial_period = 2.0 * pi / s.k0;
        return s;
    }

    static BreatherSpec kuznetsov_ma(double lambda0) {
        if (!(lambda0 > 1.0))
            throw std::invalid_argument("kuznetsov_ma: lambda0 must lie in (1,inf)");
        BreatherSpec s;
        s.kind = BreatherKind::KuznetsovMa;
        s.lambda0 = lambda0;
        s.beta0 = 2.0 * std::sqrt(lambda0 * lambda0 - 1.0);
        s.alpha0 = lambda0 * s.beta0;
        s.temporal_period = 2.0 * pi / s.alpha0;
        return s;
    }

    static BreatherSpec peregrine() {
        BreatherSpec s;
        s.kind = BreatherKind::Peregrine;
        s.lambda0 = 1.0;
        return s;
    }
};

// Pointwise evaluation of the closed forms. Hyperbolic arguments beyond 300 are
// replaced by the analytic asymptote (the formulas have settled to it within
// round-off long before, and cosh would overflow past ~709).
inline cplx eval_breather(const BreatherSpec& s, double x, double t) {
    switch (s.kind) {
        case BreatherKind::Constant: return 1.0;
        case BreatherKind::Akhmediev: {
            const double l = s.lambda0, st = s.sigma0 * t;
            if (std::abs(st) > 300.0)
                return cplx(1.0 - 2.0 * l * l, (st > 0 ? 1.0 : -1.0) * s.k0 * l);
            const double ch = std::cosh(st), sh = std::sinh(st);
            return -1.0 + (2.0 * (1.0 - l * l) * ch + iu * s.sigma0 * sh) /
                              (ch - l * std::cos(s.k0 * x));
        }
        case BreatherKind::KuznetsovMa: {
            const double l = s.lambda0, bx = s.beta0 * x;
            if (std::abs(bx) > 300.0) return -1.0;
            const double at = s.alpha0 * t;
            return -1.0 + (2.0 * (l * l - 1.0) * std::cos(at) + iu * s.alpha0 * std::sin(at)) /
                              (l * std::cosh(bx) - std::cos(at));
        }
        case BreatherKind::Peregrine:
            return -1.0 + 4.0 * (1.0 + 2.0 * iu * t) / (1.0 + 4.0 * (x * x + t * t));
    }
    return 0.0;
}

inline FieldEval breather_field(const BreatherSpec& s) {
    return [s](double x, double t) { return eval_breather(s, x, t); };
}

enum class Direction { TPlusInf, TMinusInf, XPlusInf, XMinusInf };

// Analytic limits: AB settles to a unit-modulus constant as t -> +-inf, KMB
// decays to -1 as x -> +-inf. PRW and the constant background admit all four.
inline cplx asymptotic_value(const BreatherSpec& s, Direction dir) {
    const bool t_dir = (dir == Direction::TPlusInf || dir == Direction::TMinusInf);
    switch (s.kind) {
        case BreatherKind::Constant: return 1.0;
        case BreatherKind::Peregrine: return -1.0;
        case BreatherKind::Akhmediev: {
            if (!t_dir)
                throw std::invalid_argument("asymptotic_value: AB admits t-limits only");
            const double l = s.lambda0;
            const double sign = (dir == Direction::TPlusInf) ? 1.0 : -1.0;
            return cplx(1.0 - 2.0 * l * l, sign * s.k0 * l);
        }
        case BreatherKind::KuznetsovMa:
            if (t_dir)
                throw std::invalid_argument("asymptotic_value: KMB admits x-limits only");
            return -1.0;
    }
    return 0.0;
}

// Residual of the squared-modulus identity delivered by the Darboux
// transformation, |u|^2 = 1 + d^2/dx^2 log(|p0|^2+|q0|^2), in its closed form:
//   AB : |u|^2 = 1 + l k^2 [cosh(s t) cos(k x) - l] / [cosh(s t) - l cos(k x)]^2
//   KMB: |u|^2 = 1 + a b [l - cosh(b x) cos(a t)] / [l cosh(b x) - cos(a t)]^2
// Returns max over the grid of | |u|^2 - RHS |.
inline double modulus_identity_residual(const BreatherSpec& s, const SpaceTimeGrid& g) {
    if (s.kind != BreatherKind::Akhmediev && s.kind != BreatherKind::KuznetsovMa)
        throw std::invalid_argument(
            "modulus_identity_residual: identity only holds for AB and KMB");
    const double l = s.lambda0;
    return grid_max(g, [&](double x, double t) {
        const double lhs = std::norm(eval_breather(s, x, t));
        double rhs;
        if (s.kind == BreatherKind::Akhmediev) {
            const double den = std::cosh(s.sigma0 * t) - l * std::cos(s.k0 * x);
            rhs = 1.0 + l * s.k0 * s.k0 * (std::cosh(s.sigma0 * t) * std::cos(s.k0 * x) - l) /
                            (den * den);
        } else {
            const double den = l * std::cosh(s.beta0 * x) - std::cos(s.alpha0 * t);
            rhs = 1.0 + s.alpha0 * s.beta0 *
                            (l - std::cosh(s.beta0 * x) * std::cos(s.alpha0 * t)) / (den * den);
        }
        return lhs - rhs;
    });
}

struct ResidualReport {
    double value = 0.0;
    bool under_resolved = false;
};

// Shortest oscillation/width scale of the solution, for resolution checks.
inline double breather_x_scale(const BreatherSpec& s) {
    switch (s.kind) {
        case BreatherKind::Akhmediev: return s.spatial_period;
        case BreatherKind::KuznetsovMa: return 2.0 * pi / s.beta0;
        case BreatherKind::Peregrine: return 1.0;
        default: return 1.0;
    }
}
inline double breather_t_scale(const BreatherSpec& s) {
    switch (s.kind) {
        case BreatherKind::Akhmediev: return 2.0 * pi / s.sigma0;
        case BreatherKind::KuznetsovMa: return s.temporal_period;
        case BreatherKind::Peregrine: return 1.0;
        default: return 1.0;
    }
}

// Max-norm residual of i u_t + u_xx/2 + (|u|^2-1) u over the grid, with
// derivatives from the Richardson FD oracle applied to analytic samples. The
// stencil step is a fixed fraction of the grid spacing, so the residual still
// vanishes at the stencil order under grid refinement; the localized kinds get
// a finer fraction because their peak derivatives carry large constants.
// Under-resolution (< 16 points per scale) is flagged, not fatal.
inline ResidualReport nls_residual(const BreatherSpec& s, const SpaceTimeGrid& g) {
    ResidualReport rep;
    rep.under_resolved = (g.dx() > breather_x_scale(s) / 16.0 + 1e-15) ||
                         (g.dt() > breather_t_scale(s) / 16.0 + 1e-15);
    const double frac = (s.kind == BreatherKind::KuznetsovMa || s.kind == BreatherKind::Peregrine)
                            ? 0.0625
                            : 0.25;
    const double hx = frac * g.dx(), ht = frac * g.dt();
    rep.value = grid_max(g, [&](double x, double t) {
        const cplx u = eval_breather(s, x, t);
        const cplx ut = diff1([&](double tt) { return eval_breather(s, x, tt); }, t, ht);
        const cplx uxx = diff2([&](double xx) { return eval_breather(s, xx, t); }, x, hx);
        return iu * ut + 0.5 * uxx + (std::norm(u) - 1.0) * u;
    });
    return rep;
}

// ── sampled wave field ────────────────────────────────────────────────────────

struct WaveField {
    BreatherSpec spec;
    SpaceTimeGrid grid;
    std::vector<cplx> values;  // row-major, nt rows of nx samples

    cplx& at(std::size_t jt, std::size_t ix) { return values[jt * grid.nx + ix]; }
    const cplx& at(std::size_t jt, std::size_t ix) const { return values[jt * grid.nx + ix]; }

    static WaveField sample(const BreatherSpec& s, const SpaceTimeGrid& g) {
        WaveField f{s, g, {}};
        f.values.resize(g.nx * g.nt);
        for (std::size_t j = 0; j < g.nt; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) f.at(j, i) = eval_breather(s, g.x(i), g.t(j));
        return f;
    }
};

}  // namespace nlsb
