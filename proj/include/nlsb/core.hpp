#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace nlsb {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iu{0.0, 1.0};

// ── small complex linear algebra ──────────────────────────────────────────────

// 2-vector over C; components named (p,q) after the Zakharov–Shabat convention.
struct Vec2 {
    cplx p{0.0}, q{0.0};

    Vec2 operator+(const Vec2& o) const { return {p + o.p, q + o.q}; }
    Vec2 operator-(const Vec2& o) const { return {p - o.p, q - o.q}; }
    Vec2 operator-() const { return {-p, -q}; }
    friend Vec2 operator*(cplx s, const Vec2& v) { return {s * v.p, s * v.q}; }

    double norm() const { return std::sqrt(std::norm(p) + std::norm(q)); }
};

// 2x2 complex matrix [[a, b], [c, d]].
struct Mat2 {
    cplx a{0.0}, b{0.0}, c{0.0}, d{0.0};

    Vec2 operator*(const Vec2& v) const { return {a * v.p + b * v.q, c * v.p + d * v.q}; }
    Mat2 operator*(const Mat2& m) const {
        return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
    }
    Mat2 operator+(const Mat2& m) const { return {a + m.a, b + m.b, c + m.c, d + m.d}; }
    Mat2 operator-(const Mat2& m) const { return {a - m.a, b - m.b, c - m.c, d - m.d}; }
    friend Mat2 operator*(cplx s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

    cplx det() const { return a * d - b * c; }
    Mat2 inverse() const {
        const cplx dd = det();
        return {d / dd, -b / dd, -c / dd, a / dd};
    }
    double norm() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

// Scalar field evaluator u(x,t).
using FieldEval = std::function<cplx(double, double)>;

// ── space-time sampling grid ──────────────────────────────────────────────────

enum class GridBoundary { Periodic, TruncatedLine };

// Uniform sampling box [x_min,x_max] x [t_min,t_max], endpoints included.
// For Periodic boundary the x-span must be an integer number of periods.
struct SpaceTimeGrid {
    double x_min = 0.0, x_max = 1.0;
    std::size_t nx = 2;
    double t_min = 0.0, t_max = 1.0;
    std::size_t nt = 2;
    GridBoundary boundary = GridBoundary::TruncatedLine;
    double period = 0.0;  // fundamental period L; Periodic only

    static SpaceTimeGrid make(double x_min, double x_max, std::size_t nx, double t_min,
                              double t_max, std::size_t nt,
                              GridBoundary boundary = GridBoundary::TruncatedLine,
                              double period = 0.0) {
        if (nx < 2 || nt < 2) throw std::invalid_argument("SpaceTimeGrid: nx, nt must be >= 2");
        if (!(x_max > x_min)) throw std::invalid_argument("SpaceTimeGrid: need x_max > x_min");
        if (!(t_max > t_min)) throw std::invalid_argument("SpaceTimeGrid: need t_max > t_min");
        if (boundary == GridBoundary::Periodic) {
            if (!(period > 0.0))
                throw std::invalid_argument("SpaceTimeGrid: Periodic boundary needs a period");
            const double cycles = (x_max - x_min) / period;
            if (std::abs(cycles - std::round(cycles)) > 1e-9 * std::max(1.0, cycles))
                throw std::invalid_argument(
                    "SpaceTimeGrid: x-span is not an integer multiple of the period");
        }
        return {x_min, x_max, nx, t_min, t_max, nt, boundary, period};
    }

    double dx() const { return (x_max - x_min) / double(nx - 1); }
    double dt() const { return (t_max - t_min) / double(nt - 1); }
    double x(std::size_t i) const { return x_min + double(i) * dx(); }
    double t(std::size_t j) const { return t_min + double(j) * dt(); }
};

// Max of |f(x_i,t_j)| over the grid.
template <class F>
double grid_max(const SpaceTimeGrid& g, F&& f) {
    double m = 0.0;
    for (std::size_t j = 0; j < g.nt; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) m = std::max(m, std::abs(f(g.x(i), g.t(j))));
    return m;
}

}  // namespace nlsb
