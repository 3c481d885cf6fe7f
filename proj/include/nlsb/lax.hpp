#pragma once

#include <optional>
#include <vector>

#include "nlsb/core.hpp"
#include "nlsb/numdiff.hpp"
#include "nlsb/quadrature.hpp"

namespace nlsb {

// The Lax system of the normalized NLS equation,
//
//   phi_x = U(u,lambda) phi,   phi_t = V(u,lambda) phi,
//
// whose x-part is the Zakharov–Shabat spectral problem. In eigenvalue form
// (L - lambda) phi = 0 with L = [[d/dx, -u], [-conj(u), -d/dx]]. This header
// provides the closed-form solutions at the constant background u = 1, the
// lambda -> -conj(lambda) symmetry, residual oracles against U/V, the
// classification of the background spectrum
//
//   Sigma_0 = i R  union  [-1,1],
//
// and the Fredholm pairing used to decide solvability of the generalized
// eigenfunction equation (L - lambda) phi_g = phi.

inline Mat2 lax_U(cplx u, cplx lambda) { return {lambda, u, -std::conj(u), -lambda}; }

inline Mat2 lax_V(cplx u, cplx u_x, cplx lambda) {
    const cplx w = lambda * lambda + 0.5 * (std::norm(u) - 1.0);
    return {iu * w, iu * (lambda * u + 0.5 * u_x), iu * (-lambda * std::conj(u) + 0.5 * std::conj(u_x)),
            -iu * w};
}

enum class BoundaryClass { PeriodicL, AntiperiodicL, Localized, Bounded, Unbounded };
enum class SolutionRole { Eigenfunction, GeneralizedEigenfunction, SecondSolution };

struct VectorSolution {
    std::function<Vec2(double, double)> eval;
    cplx lambda{0.0};
    BoundaryClass boundary = BoundaryClass::Bounded;
    SolutionRole role = SolutionRole::Eigenfunction;
    double period = 0.0;  // for (anti)periodic classes

    Vec2 operator()(double x, double t) const { return eval(x, t); }
};

// (p,q) at lambda  ->  (-conj q, conj p) at -conj(lambda). Involution up to sign.
inline VectorSolution symmetry_partner(const VectorSolution& s) {
    VectorSolution out = s;
    out.lambda = -std::conj(s.lambda);
    out.eval = [f = s.eval](double x, double t) {
        const Vec2 v = f(x, t);
        return Vec2{-std::conj(v.q), std::conj(v.p)};
    };
    return out;
}

// Adjoint-kernel eigenfunction (conj q, conj p) of (L* - conj lambda), where
// L* is the adjoint in the sesquilinear L^2 product.
inline VectorSolution adjoint_eigenfunction(const VectorSolution& s) {
    VectorSolution out = s;
    out.lambda = std::conj(s.lambda);
    out.eval = [f = s.eval](double x, double t) {
        const Vec2 v = f(x, t);
        return Vec2{std::conj(v.q), std::conj(v.p)};
    };
    return out;
}

// Transpose-kernel solution (q, p) of (L^T - lambda), the annihilator of
// ran(L - lambda) in the bilinear (conjugation-free) duality.
inline VectorSolution transpose_kernel(const VectorSolution& s) {
    VectorSolution out = s;
    out.eval = [f = s.eval](double x, double t) {
        const Vec2 v = f(x, t);
        return Vec2{v.q, v.p};
    };
    return out;
}

inline cplx wronskian(const VectorSolution& f, const VectorSolution& g, double x, double t) {
    const Vec2 a = f(x, t), b = g(x, t);
    return a.p * b.q - a.q * b.p;
}

// ── closed-form solutions at u = 1 ────────────────────────────────────────────

// Solutions exist in closed form for every lambda in Sigma_0:
//   lambda in (0,1):  phi = (sqrt(l - ik/2), -sqrt(l + ik/2))^T e^{-ik(x+ilt)/2}
//                     psi = (sqrt(l + ik/2), -sqrt(l - ik/2))^T e^{+ik(x+ilt)/2},
//                     k(l) = 2 sqrt(1 - l^2)
//   lambda = +-1:     constant eigenvector plus a linearly growing second solution
//   lambda = i g:     oscillatory pair with k(g) = 2 sqrt(1 + g^2)
//   lambda = 0:       (1,-i)^T e^{-ix}, (1,i)^T e^{+ix}, plus the generalized pair
//                     (t, -1-it)^T e^{-ix}, (-t, -1-it)^T e^{+ix}
// Negative real lambda follows from the symmetry map.
inline std::vector<VectorSolution> background_solutions(cplx lambda, double tol = 1e-9) {
    const double re = lambda.real(), im = lambda.imag();
    const bool on_real = std::abs(im) <= tol && std::abs(re) <= 1.0 + tol;
    const bool on_imag = std::abs(re) <= tol;
    if (!on_real && !on_imag)
        throw std::domain_error(
            "background_solutions: lambda must lie in Sigma_0 = iR U [-1,1]");

    std::vector<VectorSolution> out;

    if (on_real && std::abs(re) > tol) {
        const double l = std::min(std::abs(re), 1.0);
        if (1.0 - l <= tol) {
            // lambda = 1: geometrically simple
            VectorSolution phi{[](double, double) { return Vec2{1.0, -1.0}; }, 1.0,
                               BoundaryClass::PeriodicL, SolutionRole::Eigenfunction, 0.0};
            VectorSolution psi{[](double x, double t) {
                                   const cplx z = cplx(x, t);
                                   return Vec2{z + 1.0, -z};
                               },
                               1.0, BoundaryClass::Unbounded, SolutionRole::SecondSolution, 0.0};
            out = {phi, psi};
        } else {
            const double k = 2.0 * std::sqrt(1.0 - l * l);
            const cplx a = std::sqrt(cplx(l, -0.5 * k)), b = std::sqrt(cplx(l, 0.5 * k));
            const double L = 4.0 * pi / k;
            auto expo = [k, l](double x, double t, double sgn) {
                return std::exp(sgn * cplx(0.0, -0.5 * k) * cplx(x, l * t));
            };
            VectorSolution phi{[=](double x, double t) {
                                   const cplx e = expo(x, t, 1.0);
                                   return Vec2{a * e, -b * e};
                               },
                               l, BoundaryClass::PeriodicL, SolutionRole::Eigenfunction, L};
            VectorSolution psi{[=](double x, double t) {
                                   const cplx e = expo(x, t, -1.0);
                                   return Vec2{b * e, -a * e};
                               },
                               l, BoundaryClass::PeriodicL, SolutionRole::Eigenfunction, L};
            out = {phi, psi};
        }
    } else if (on_real && std::abs(re) <= tol && std::abs(im) <= tol) {
        // lambda = 0: two eigenfunctions and two generalized eigenfunctions
        VectorSolution phi{[](double x, double) {
                               const cplx e = std::exp(-iu * x);
                               return Vec2{e, -iu * e};
                           },
                           0.0, BoundaryClass::PeriodicL, SolutionRole::Eigenfunction, 2.0 * pi};
        VectorSolution psi{[](double x, double) {
                               const cplx e = std::exp(iu * x);
                               return Vec2{e, iu * e};
                           },
                           0.0, BoundaryClass::PeriodicL, SolutionRole::Eigenfunction, 2.0 * pi};
        VectorSolution phi_g{[](double x, double t) {
                                 const cplx e = std::exp(-iu * x);
                                 return Vec2{t * e, (-1.0 - iu * t) * e};
                             },
                             0.0, BoundaryClass::PeriodicL,
                             SolutionRole::GeneralizedEigenfunction, 2.0 * pi};
        VectorSolution psi_g{[](double x, double t) {
                                 const cplx e = std::exp(iu * x);
                                 return Vec2{-t * e, (-1.0 - iu * t) * e};
                             },
                             0.0, BoundaryClass::PeriodicL,
                             SolutionRole::GeneralizedEigenfunction, 2.0 * pi};
        out = {phi, psi, phi_g, psi_g};
    } else {
        // lambda = i gamma, gamma != 0. The closed forms hold for either sign of
        // gamma (the radicands k/2 -+ gamma stay positive); the symmetry map fixes
        // purely imaginary lambda, so no reflection step is involved.
        const double g = im;
        const double k = 2.0 * std::sqrt(1.0 + g * g);
        const double sa = std::sqrt(0.5 * k - g), sb = std::sqrt(0.5 * k + g);
        const double L = 4.0 * pi / k;
        auto expo = [k, g](double x, double t, double sgn) {
            return std::exp(sgn * cplx(0.0, -0.5 * k) * (x - g * t));
        };
        VectorSolution phi{[=](double x, double t) {
                               const cplx e = expo(x, t, 1.0);
                               return Vec2{sa * e, -iu * sb * e};
                           },
                           cplx(0.0, g), BoundaryClass::PeriodicL, SolutionRole::Eigenfunction,
                           L};
        VectorSolution psi{[=](double x, double t) {
                               const cplx e = expo(x, t, -1.0);
                               return Vec2{sb * e, iu * sa * e};
                           },
                           cplx(0.0, g), BoundaryClass::PeriodicL, SolutionRole::Eigenfunction,
                           L};
        out = {phi, psi};
    }

    if (on_real && re < -tol)
        for (auto& s : out) s = symmetry_partner(s);
    return out;
}

// ── residual oracles ──────────────────────────────────────────────────────────

struct LaxResidual {
    double x_residual = 0.0;
    double t_residual = 0.0;
};

// Max-norms of phi_x - U phi and phi_t - V phi over the grid, all derivatives
// from the Richardson FD oracle at a quarter of the grid spacing (including
// u_x inside V).
inline LaxResidual lax_residual(const FieldEval& u, cplx lambda, const VectorSolution& phi,
                                const SpaceTimeGrid& g) {
    const double hx = 0.25 * g.dx(), ht = 0.25 * g.dt();
    LaxResidual r;
    for (std::size_t j = 0; j < g.nt; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const double x = g.x(i), t = g.t(j);
            const Vec2 v = phi(x, t);
            const cplx px = diff1([&](double xx) { return phi(xx, t).p; }, x, hx);
            const cplx qx = diff1([&](double xx) { return phi(xx, t).q; }, x, hx);
            const cplx pt = diff1([&](double tt) { return phi(x, tt).p; }, t, ht);
            const cplx qt = diff1([&](double tt) { return phi(x, tt).q; }, t, ht);
            const cplx uv = u(x, t);
            const cplx ux = diff1([&](double xx) { return u(xx, t); }, x, hx);
            const Vec2 rx = Vec2{px, qx} - lax_U(uv, lambda) * v;
            const Vec2 rt = Vec2{pt, qt} - lax_V(uv, ux, lambda) * v;
            r.x_residual = std::max(r.x_residual, rx.norm());
            r.t_residual = std::max(r.t_residual, rt.norm());
        }
    return r;
}

// Apply the eigenvalue-form operator (L - lambda) to a solution with the FD
// oracle: (L-lambda)phi = (p_x - u q - lambda p, -conj(u) p - q_x - lambda q).
inline Vec2 apply_eigen_operator(const FieldEval& u, cplx lambda,
                                 const std::function<Vec2(double, double)>& phi, double x,
                                 double t, double h) {
    const cplx px = diff1([&](double xx) { return phi(xx, t).p; }, x, h);
    const cplx qx = diff1([&](double xx) { return phi(xx, t).q; }, x, h);
    const Vec2 v = phi(x, t);
    const cplx uv = u(x, t);
    return {px - uv * v.q - lambda * v.p, -std::conj(uv) * v.p - qx - lambda * v.q};
}

// Max-norm of (L - lambda) phi_g - rhs over the grid; rhs may be null for the
// homogeneous equation.
inline double eigen_chain_residual(const FieldEval& u, cplx lambda, const VectorSolution& phi_g,
                                   const VectorSolution* rhs, const SpaceTimeGrid& g) {
    const double hx = 0.25 * g.dx();
    double m = 0.0;
    for (std::size_t j = 0; j < g.nt; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const double x = g.x(i), t = g.t(j);
            Vec2 r = apply_eigen_operator(u, lambda, phi_g.eval, x, t, hx);
            if (rhs) r = r - (*rhs)(x, t);
            m = std::max(m, r.norm());
        }
    return m;
}

// ── background spectrum classification ────────────────────────────────────────

enum class SpectralDomain { WholeLine, PeriodicL, AntiperiodicL };

struct SpectralPoint {
    cplx lambda;
    SpectralDomain domain = SpectralDomain::WholeLine;
    double L = 0.0;  // for the periodic/antiperiodic domains
};

struct MultiplicityRecord {
    cplx lambda;
    int geometric = 0;
    int algebraic = 0;
};

// Discrete background spectra over period L:
//   periodic:      +- sqrt(1 - pi^2 m^2 / L^2),  m in {0, even}
//   antiperiodic:  +- sqrt(1 - pi^2 m^2 / L^2),  m odd
inline cplx background_discrete_eigenvalue(std::size_t m, double L) {
    return std::sqrt(cplx(1.0 - pi * pi * double(m * m) / (L * L), 0.0));
}

// Multiplicities at the constant background: +-1 are algebraically simple,
// lambda = 0 has geometric multiplicity two and algebraic multiplicity four,
// every other point of Sigma_0 is double-double. On the discrete domains the
// same rules apply to the members of the periodic/antiperiodic sets.
inline MultiplicityRecord classify_background_lambda(const SpectralPoint& pt,
                                                     double tol = 1e-9) {
    const cplx l = pt.lambda;
    auto near = [tol](cplx a, cplx b) { return std::abs(a - b) <= tol; };

    if (pt.domain == SpectralDomain::WholeLine) {
        const bool on_real = std::abs(l.imag()) <= tol && std::abs(l.real()) <= 1.0 + tol;
        const bool on_imag = std::abs(l.real()) <= tol;
        if (!on_real && !on_imag)
            throw std::domain_error(
                "classify_background_lambda: lambda off Sigma_0 = iR U [-1,1]");
        if (near(l, 1.0) || near(l, -1.0)) return {l, 1, 1};
        if (near(l, 0.0)) return {l, 2, 4};
        return {l, 2, 2};
    }

    if (!(pt.L > 0.0))
        throw std::invalid_argument("classify_background_lambda: discrete domain needs L > 0");
    const bool even = pt.domain == SpectralDomain::PeriodicL;
    for (std::size_t m = even ? 0 : 1;; m += 2) {
        const cplx lm = background_discrete_eigenvalue(m, pt.L);
        if (near(l, lm) || near(l, -lm)) {
            if (std::abs(lm) <= tol) return {l, 2, 4};
            if (m == 0) return {l, 1, 1};
            return {l, 2, 2};
        }
        // past the point where the imaginary branch outruns |lambda|
        if (std::abs(lm) > std::abs(l) + 1.0 && m > 2 * std::size_t(pt.L) + 4)
            throw std::domain_error(
                "classify_background_lambda: lambda not in the discrete spectrum for this L");
    }
}

// ── Fredholm pairing ──────────────────────────────────────────────────────────

// Bilinear pairing <f,g> = int_a^b (f1 g1 + f2 g2) dx at frozen t, by adaptive
// quadrature; no conjugation is applied inside. Pass adjoint_eigenfunction(phi)
// as f for the sesquilinear solvability checks (the constant-background
// multiplicity computations) and transpose_kernel(phi) for the bilinear ones
// (the breather certificates); both decide solvability of (L-lambda) w = g.
inline cplx fredholm_inner_product(const VectorSolution& f, const VectorSolution& g, double a,
                                   double b, double t, double rel_tol = 1e-10) {
    auto integrand = [&](double x) {
        const Vec2 vf = f(x, t), vg = g(x, t);
        return vf.p * vg.p + vf.q * vg.q;
    };
    const QuadResult r = integrate(integrand, a, b, rel_tol);
    if (!r.converged)
        throw std::runtime_error("fredholm_inner_product: quadrature did not converge, error " +
                                 std::to_string(r.abs_err));
    return r.value;
}

}  // namespace nlsb
