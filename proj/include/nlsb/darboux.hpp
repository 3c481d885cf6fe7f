#pragma once

#include <string>
#include <vector>

#include "nlsb/breather.hpp"
#include "nlsb/core.hpp"
#include "nlsb/lax.hpp"

namespace nlsb {

// One-fold Darboux transformation at the constant background u0 = 1 with real
// positive lambda0, the regime that produces the AB and KMB breathers:
//
//   u-hat = u0 + 2 (lambda0 + conj lambda0) p0 conj(q0) / (|p0|^2 + |q0|^2),
//   (p-hat, q-hat) = (lambda0 + conj lambda0) / (|p0|^2+|q0|^2) * (-conj q0, conj p0),
//   D(lambda) = I + (lambda - lambda0)^{-1} (p-hat, q-hat)^T (-q0  p0),
//   det D(lambda) = (lambda + conj lambda0) / (lambda - lambda0).
//
// The seed (p0,q0) is the second column of the background fundamental matrix
//
//   Phi(lambda) = [[p_+, p_-], [q_+, q_-]],
//   p_+-(lambda) = sqrt(l - ik/2) E +- sqrt(l + ik/2) / E,
//   q_+-(lambda) = -sqrt(l + ik/2) E -+ sqrt(l - ik/2) / E,
//   E = exp((-i k x + sigma t)/2),  k(l) = 2 sqrt(1 - l^2),  sigma = l k,
//
// evaluated at lambda0. Everything below is written over complex k0, so the
// same code serves AB (k0 real) and KMB (k0 = i beta0, sigma0 = i alpha0).

// Background fundamental-matrix columns at spectral parameter lambda with an
// explicitly chosen branch k of 2 sqrt(1 - lambda^2). Callers tracking a
// contour across the k branch cut pass their own continuous k.
struct BackgroundColumns {
    cplx p_plus, p_minus, q_plus, q_minus;
};

inline BackgroundColumns background_columns(cplx lambda, cplx k, double x, double t) {
    const cplx a = std::sqrt(lambda - 0.5 * iu * k);
    const cplx b = std::sqrt(lambda + 0.5 * iu * k);
    const cplx sigma = lambda * k;
    const cplx E = std::exp(0.5 * (-iu * k * x + sigma * t));
    const cplx Ei = 1.0 / E;
    return {a * E + b * Ei, a * E - b * Ei, -b * E - a * Ei, -b * E + a * Ei};
}

// Principal branch of 2 sqrt(1 - lambda^2), with the signed zero of the
// imaginary part normalized so that real lambda > 1 lands on the upper side of
// the cut (k = +i beta, matching the k0 = i beta0 convention).
inline cplx k_of_lambda(cplx lambda) {
    const cplx r = 1.0 - lambda * lambda;
    return 2.0 * std::sqrt(cplx(r.real(), r.imag() + 0.0));
}

inline Mat2 background_fundamental(cplx lambda, cplx k, double x, double t) {
    const BackgroundColumns c = background_columns(lambda, k, x, t);
    return {c.p_plus, c.p_minus, c.q_plus, c.q_minus};
}

struct DarbouxSeed {
    BreatherKind kind = BreatherKind::Akhmediev;
    double lambda0 = 0.0;
    cplx k0{0.0}, sigma0{0.0};  // k0 real for AB, i*beta0 for KMB

    cplx a0{0.0}, b0{0.0};  // sqrt(lambda0 -+ i k0 / 2)

    cplx E(double x, double t) const { return std::exp(0.5 * (-iu * k0 * x + sigma0 * t)); }

    Vec2 seed(double x, double t) const {  // (p0, q0) = minus-column at lambda0
        const cplx e = E(x, t), ei = 1.0 / e;
        return {a0 * e - b0 * ei, -b0 * e + a0 * ei};
    }
    Vec2 plus_column(double x, double t) const {  // (p_+, q_+) at lambda0
        const cplx e = E(x, t), ei = 1.0 / e;
        return {a0 * e + b0 * ei, -b0 * e - a0 * ei};
    }

    double sum_sq(double x, double t) const {  // |p0|^2 + |q0|^2, strictly positive
        const Vec2 s = seed(x, t);
        return std::norm(s.p) + std::norm(s.q);
    }

    Vec2 transformed(double x, double t) const {  // (p-hat0, q-hat0)
        const Vec2 s = seed(x, t);
        const double c = 2.0 * lambda0 / (std::norm(s.p) + std::norm(s.q));
        return {-c * std::conj(s.q), c * std::conj(s.p)};
    }

    // cosh/sinh argument sigma0 t - i k0 x shared by the Laurent coefficients
    cplx W(double x, double t) const { return sigma0 * t - iu * k0 * x; }

    double spatial_period() const { return (2.0 * pi / k0.real()); }  // AB only
};

inline DarbouxSeed build_seed(BreatherKind kind, double lambda0) {
    DarbouxSeed s;
    s.kind = kind;
    s.lambda0 = lambda0;
    if (kind == BreatherKind::Akhmediev) {
        if (!(lambda0 > 0.0 && lambda0 < 1.0))
            throw std::invalid_argument("build_seed: AB needs lambda0 in (0,1)");
    } else if (kind == BreatherKind::KuznetsovMa) {
        if (!(lambda0 > 1.0))
            throw std::invalid_argument("build_seed: KMB needs lambda0 in (1,inf)");
    } else {
        throw std::invalid_argument("build_seed: seed kinds are AB and KMB");
    }
    s.k0 = k_of_lambda(lambda0);  // principal branch: real for AB, +i beta0 for KMB
    s.sigma0 = cplx(lambda0) * s.k0;
    s.a0 = std::sqrt(lambda0 - 0.5 * iu * s.k0);
    s.b0 = std::sqrt(lambda0 + 0.5 * iu * s.k0);
    return s;
}

inline BreatherSpec breather_spec_of(const DarbouxSeed& s) {
    return s.kind == BreatherKind::Akhmediev ? BreatherSpec::akhmediev(s.lambda0)
                                             : BreatherSpec::kuznetsov_ma(s.lambda0);
}

// Seed as a Lax solution at u = 1 (for residual certification).
inline VectorSolution seed_solution(const DarbouxSeed& s) {
    VectorSolution v;
    v.lambda = s.lambda0;
    v.boundary = s.kind == BreatherKind::Akhmediev ? BoundaryClass::AntiperiodicL
                                                   : BoundaryClass::Unbounded;
    v.period = s.kind == BreatherKind::Akhmediev ? s.spatial_period() : 0.0;
    v.eval = [s](double x, double t) { return s.seed(x, t); };
    return v;
}

// Transformed potential u-hat = 1 + 4 lambda0 p0 conj(q0) / (|p0|^2 + |q0|^2).
// Agrees with the displayed AB/KMB closed forms; the two routes are independent.
inline FieldEval transform_potential(const DarbouxSeed& s) {
    return [s](double x, double t) {
        const Vec2 v = s.seed(x, t);
        const double sum = std::norm(v.p) + std::norm(v.q);
        return 1.0 + 4.0 * s.lambda0 * v.p * std::conj(v.q) / sum;
    };
}

// Transformed eigenfunction (p-hat0, q-hat0): L-antiperiodic for AB,
// exponentially localized for KMB.
inline VectorSolution transform_eigenfunction(const DarbouxSeed& s) {
    VectorSolution v;
    v.lambda = s.lambda0;
    v.role = SolutionRole::Eigenfunction;
    if (s.kind == BreatherKind::Akhmediev) {
        v.boundary = BoundaryClass::AntiperiodicL;
        v.period = s.spatial_period();
    } else {
        v.boundary = BoundaryClass::Localized;
    }
    v.eval = [s](double x, double t) { return s.transformed(x, t); };
    return v;
}

struct DarbouxMatrix {
    DarbouxSeed seed;
    double pole_guard = 1e-6;

    Mat2 operator()(cplx lambda, double x, double t) const {
        if (std::abs(lambda - seed.lambda0) < pole_guard ||
            std::abs(lambda + seed.lambda0) < pole_guard)
            throw std::domain_error(
                "DarbouxMatrix: lambda at a pole (+-lambda0); the Laurent expansion "
                "provides the solutions there");
        const Vec2 s = seed.seed(x, t), h = seed.transformed(x, t);
        const cplx f = 1.0 / (lambda - seed.lambda0);
        return Mat2{1.0 + f * (-h.p * s.q), f * (h.p * s.p), f * (-h.q * s.q),
                    1.0 + f * (h.q * s.p)};
    }

    cplx det_analytic(cplx lambda) const {
        return (lambda + seed.lambda0) / (lambda - seed.lambda0);
    }
};

inline DarbouxMatrix darboux_matrix(const DarbouxSeed& s) { return {s, 1e-6}; }

// New Lax solution D(lambda) phi at the transformed potential. AB: D is
// L-periodic and bounded, so the boundary class survives; KMB: D is bounded
// with different constant limits at x -> +-inf, so (anti)periodicity degrades
// to boundedness while decay survives.
inline VectorSolution transform_solution(const DarbouxMatrix& D, const VectorSolution& phi,
                                         cplx lambda) {
    if (std::abs(lambda - D.seed.lambda0) < D.pole_guard ||
        std::abs(lambda + D.seed.lambda0) < D.pole_guard)
        throw std::domain_error(
            "transform_solution: lambda at a pole of D; use laurent_expansion");
    VectorSolution out = phi;
    out.lambda = lambda;
    if (D.seed.kind == BreatherKind::KuznetsovMa &&
        (phi.boundary == BoundaryClass::PeriodicL ||
         phi.boundary == BoundaryClass::AntiperiodicL))
        out.boundary = BoundaryClass::Bounded;
    out.eval = [D, lambda, f = phi.eval](double x, double t) {
        return D(lambda, x, t) * f(x, t);
    };
    return out;
}

// ── Laurent expansion of the transformed fundamental matrix at lambda0 ────────
//
//   Phi-hat(lambda) = Phi_{-1}/(lambda-lambda0) + Phi_0 + Phi_1 (lambda-lambda0) + ...
//   Phi_{-1} = [2 i k0 phi0, 0],  Phi_0 = [2 i k0 phi1, psi0],  Phi_1 = [2 i k0 phi2, psi1],
//
// with the chain (L - lambda0) phi0 = 0, (L-lambda0) phi1 = phi0,
// (L-lambda0) phi2 = phi1, (L-lambda0) psi0 = 0, (L-lambda0) psi1 = psi0.
// For AB, phi0 and phi1 are L-antiperiodic and psi0, phi2, psi1 are not; for
// KMB, phi0 is localized and the companions grow.

struct LaurentExpansion {
    DarbouxSeed seed;
    VectorSolution phi0, phi1, phi2;  // pole column: residue, constant, linear
    VectorSolution psi0, psi1;        // regular column: constant, linear
};

inline LaurentExpansion laurent_expansion(const DarbouxSeed& s) {
    const double l = s.lambda0;
    const cplx k = s.k0;
    const bool ab = s.kind == BreatherKind::Akhmediev;
    const double L = ab ? s.spatial_period() : 0.0;
    const BoundaryClass anti = ab ? BoundaryClass::AntiperiodicL : BoundaryClass::Localized;
    const BoundaryClass grow = BoundaryClass::Unbounded;

    LaurentExpansion le;
    le.seed = s;

    le.phi0 = VectorSolution{[s](double x, double t) { return s.transformed(x, t); }, l, anti,
                             SolutionRole::Eigenfunction, L};

    le.phi1 = VectorSolution{
        [s, l, k](double x, double t) {
            const Vec2 plus = s.plus_column(x, t), h = s.transformed(x, t);
            const cplx c = (2.0 / (k * k)) * (std::cosh(s.W(x, t)) - l);
            const cplx f = 1.0 / (2.0 * iu * k);
            return Vec2{f * plus.p + c * h.p, f * plus.q + c * h.q};
        },
        l, ab ? BoundaryClass::AntiperiodicL : BoundaryClass::Unbounded,
        SolutionRole::GeneralizedEigenfunction, L};

    le.psi0 = VectorSolution{
        [s, l, k](double x, double t) {
            const Vec2 p0 = s.seed(x, t), h = s.transformed(x, t);
            const cplx c =
                4.0 * (-l * x + iu * (1.0 - 2.0 * l * l) * t + (iu / k) * std::sinh(s.W(x, t)));
            return Vec2{p0.p + c * h.p, p0.q + c * h.q};
        },
        l, grow, SolutionRole::SecondSolution, 0.0};

    le.phi2 = VectorSolution{
        [s, l, k](double x, double t) {
            const Vec2 p0 = s.seed(x, t), h = s.transformed(x, t);
            const cplx A = iu * l * x + (1.0 - 2.0 * l * l) * t;
            const cplx k2 = k * k;
            const cplx c_seed = -iu * A / k2;  // = (lambda0 x - i(1-2 lambda0^2) t)/k0^2
            const cplx c_flip = 0.5 / k2;
            const cplx c_hat = (0.5 / k2) * (4.0 * A * A - 1.0) +
                               (4.0 / (k2 * k)) * A * std::sinh(s.W(x, t)) +
                               (4.0 * l / (k2 * k2)) * (std::cosh(s.W(x, t)) - l);
            return Vec2{c_seed * p0.p + c_flip * p0.p + c_hat * h.p,
                        c_seed * p0.q - c_flip * p0.q + c_hat * h.q};
        },
        l, grow, SolutionRole::GeneralizedEigenfunction, 0.0};

    le.psi1 = VectorSolution{
        [s, l, k](double x, double t) {
            const Vec2 plus = s.plus_column(x, t), h = s.transformed(x, t);
            const cplx A = iu * l * x + (1.0 - 2.0 * l * l) * t;
            const cplx c_plus = 2.0 * A / k;
            const cplx c_flip = iu / k;
            const cplx c_hat = (8.0 * iu / (k * k)) * A * std::cosh(s.W(x, t)) +
                               (8.0 * iu * l / (k * k * k)) * std::sinh(s.W(x, t)) +
                               2.0 * iu * (iu * x - 4.0 * l * t);
            return Vec2{c_plus * plus.p + c_flip * plus.p + c_hat * h.p,
                        c_plus * plus.q - c_flip * plus.q + c_hat * h.q};
        },
        l, grow, SolutionRole::SecondSolution, 0.0};

    return le;
}

// ── Fredholm certificates ─────────────────────────────────────────────────────

struct Certificate {
    std::string quantity;
    cplx analytic{0.0};
    cplx computed{0.0};
    double abs_err = 0.0;
    std::string conclusion;
};

// Transformed lambda = 1 eigenfunction (the L-periodic one for AB, the bounded
// one for KMB): D(1) applied to the constant background eigenvector (1,-1).
inline VectorSolution transformed_unit_eigenfunction(const DarbouxSeed& s) {
    const double l = s.lambda0;
    VectorSolution v;
    v.lambda = 1.0;
    v.boundary =
        s.kind == BreatherKind::Akhmediev ? BoundaryClass::PeriodicL : BoundaryClass::Bounded;
    v.period = s.kind == BreatherKind::Akhmediev ? s.spatial_period() : 0.0;
    v.eval = [s, l](double x, double t) {
        const Vec2 p0 = s.seed(x, t), h = s.transformed(x, t);
        const cplx c = -(p0.p + p0.q) / (1.0 - l);
        return Vec2{1.0 + c * h.p, -1.0 + c * h.q};
    };
    return v;
}

// Evaluates the multiplicity-deciding pairings at t = 0 by quadrature and
// compares them with their analytic values:
//   AB : <phi0*, phi0> = 0                    (generalized eigenfunction exists)
//        <phi0*, phi1> = 2 lambda0^2 L / k0^2 (chain stops: algebraic mult. 2)
//        <phihat*, phihat> at lambda=1 = -2 (1+lambda0) L / (1-lambda0)  (simple)
//   KMB: <phi0*, phi0> = -2 lambda0 / beta0   (lambda0 algebraically simple)
inline std::vector<Certificate> fredholm_certificates(const DarbouxSeed& s,
                                                      double rel_tol = 1e-10) {
    std::vector<Certificate> out;
    const double l = s.lambda0;
    const LaurentExpansion le = laurent_expansion(s);
    const VectorSolution star = transpose_kernel(le.phi0);

    auto push = [&out](const std::string& name, cplx analytic, cplx computed,
                       const std::string& conclusion) {
        out.push_back({name, analytic, computed, std::abs(computed - analytic), conclusion});
    };

    if (s.kind == BreatherKind::Akhmediev) {
        const double L = s.spatial_period();
        const cplx ip00 = fredholm_inner_product(star, le.phi0, 0.0, L, 0.0, rel_tol);
        push("<phi0*,phi0> (AB)", 0.0, ip00,
             "pairing vanishes: (L-lambda0) phi1 = phi0 is solvable, algebraic "
             "multiplicity of lambda0 is at least 2");
        const cplx ip01 = fredholm_inner_product(star, le.phi1, 0.0, L, 0.0, rel_tol);
        push("<phi0*,phi1> (AB)", 2.0 * l * l * L / (s.k0 * s.k0).real(), ip01,
             "pairing nonzero: no second generalized eigenfunction, algebraic "
             "multiplicity of lambda0 is exactly 2");
        const VectorSolution unit = transformed_unit_eigenfunction(s);
        const VectorSolution unit_star = transpose_kernel(unit);
        const cplx ip11 = fredholm_inner_product(unit_star, unit, 0.0, L, 0.0, rel_tol);
        push("<phihat*,phihat> at lambda=1 (AB)", -2.0 * (1.0 + l) * L / (1.0 - l), ip11,
             "pairing nonzero: lambda = 1 is algebraically simple");
    } else {
        const double beta0 = std::abs(s.k0.imag());
        const double X = 50.0 / beta0;  // integrand decays like e^{-beta0 |x|}
        const cplx ip00 = fredholm_inner_product(star, le.phi0, -X, X, 0.0, rel_tol);
        push("<phi0*,phi0> (KMB)", -2.0 * l / beta0, ip00,
             "pairing nonzero: no generalized eigenfunction in L^2, lambda0 is "
             "algebraically simple");
    }
    return out;
}

}  // namespace nlsb
