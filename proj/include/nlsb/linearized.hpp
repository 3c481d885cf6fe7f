#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nlsb/breather.hpp"
#include "nlsb/core.hpp"
#include "nlsb/darboux.hpp"
#include "nlsb/lax.hpp"

namespace nlsb {

// Squared-eigenfunction solutions of the linearized NLS equation
//
//   i v_t + (1/2) v_xx + (2 |u|^2 - 1) v + u^2 conj(v) = 0
//
// about a solution u. Two Lax solutions phi, psi at the same lambda generate
// three pairs of solutions:
//
//   Pair I  : v = phi1^2 - conj(phi2)^2,            v = i (phi1^2 + conj(phi2)^2)
//   Pair II : v = phi1 psi1 - conj(phi2) conj(psi2), v = i (phi1 psi1 + conj(phi2) conj(psi2))
//   Pair III: same as Pair I with psi,
//
// and an eigenfunction/generalized-eigenfunction pair generates
//
//   v = 2 phi1 phig1 - 2 conj(phi2) conj(phig2),  v = 2i (phi1 phig1 + conj(phi2) conj(phig2)).
//
// The complete explicit families live here: the Fourier basis about u = 1, the
// six L-periodic solutions about AB, and the seven bounded solutions about KMB
// (three of them exponentially localized).

enum class Provenance { PairI, PairII, PairIII, Generalized, Combination };
enum class GrowthClass { Decaying, Bounded, LinearT, ExpGrowing, ExpDecaying, UnboundedX };

inline const char* to_string(GrowthClass g) {
    switch (g) {
        case GrowthClass::Decaying: return "decaying";
        case GrowthClass::Bounded: return "bounded";
        case GrowthClass::LinearT: return "linear_t";
        case GrowthClass::ExpGrowing: return "exp_growing";
        case GrowthClass::ExpDecaying: return "exp_decaying";
        case GrowthClass::UnboundedX: return "unbounded_x";
    }
    return "?";
}

struct LinearizedSolution {
    std::function<cplx(double, double)> eval;
    BreatherSpec about;
    Provenance provenance = Provenance::Combination;
    std::string label;
    GrowthClass growth_class = GrowthClass::Bounded;
    double rate = 0.0;  // expected log-slope: d/dt for time classes, d/dx for KMB decay

    cplx operator()(double x, double t) const { return eval(x, t); }
};

inline LinearizedSolution operator*(cplx s, const LinearizedSolution& v) {
    LinearizedSolution out = v;
    out.eval = [s, f = v.eval](double x, double t) { return s * f(x, t); };
    return out;
}

inline LinearizedSolution operator+(const LinearizedSolution& a, const LinearizedSolution& b) {
    LinearizedSolution out = a;
    out.eval = [f = a.eval, g = b.eval](double x, double t) { return f(x, t) + g(x, t); };
    return out;
}

inline LinearizedSolution operator-(const LinearizedSolution& a, const LinearizedSolution& b) {
    return a + (cplx(-1.0) * b);
}

enum class SquaredPair { I, II, III };
enum class MapVariant { Real, Imag };

inline LinearizedSolution squared_map(const VectorSolution& phi, const VectorSolution& psi,
                                      SquaredPair pair, MapVariant variant,
                                      const BreatherSpec& about = BreatherSpec::constant()) {
    if (pair == SquaredPair::II && std::abs(phi.lambda - psi.lambda) > 1e-12)
        throw std::invalid_argument("squared_map: Pair II needs both solutions at one lambda");
    LinearizedSolution v;
    v.about = about;
    v.provenance = pair == SquaredPair::I    ? Provenance::PairI
                   : pair == SquaredPair::II ? Provenance::PairII
                                             : Provenance::PairIII;
    const bool imag = variant == MapVariant::Imag;
    if (pair == SquaredPair::II) {
        v.eval = [imag, f = phi.eval, g = psi.eval](double x, double t) {
            const Vec2 a = f(x, t), b = g(x, t);
            const cplx m = a.p * b.p, n = std::conj(a.q) * std::conj(b.q);
            return imag ? iu * (m + n) : m - n;
        };
    } else {
        auto e = (pair == SquaredPair::I) ? phi.eval : psi.eval;
        v.eval = [imag, e](double x, double t) {
            const Vec2 a = e(x, t);
            const cplx m = a.p * a.p, n = std::conj(a.q) * std::conj(a.q);
            return imag ? iu * (m + n) : m - n;
        };
    }
    return v;
}

inline LinearizedSolution squared_map(const VectorSolution& phi, SquaredPair pair,
                                      MapVariant variant,
                                      const BreatherSpec& about = BreatherSpec::constant()) {
    return squared_map(phi, phi, pair, variant, about);
}

// Solutions from an eigenfunction and a generalized eigenfunction. The chain
// relation (L - lambda) phi_g = phi is residual-checked near the origin.
inline LinearizedSolution generalized_map(const FieldEval& u, const VectorSolution& phi,
                                          const VectorSolution& phi_g, MapVariant variant,
                                          const BreatherSpec& about = BreatherSpec::constant()) {
    const auto g = SpaceTimeGrid::make(-1.0, 1.0, 65, -0.25, 0.25, 3);
    const double res = eigen_chain_residual(u, phi.lambda, phi_g, &phi, g);
    double scale = 0.0;
    for (double x : {-0.8, 0.0, 0.7}) scale = std::max(scale, phi(x, 0.1).norm());
    if (res > 1e-3 * std::max(1.0, scale))
        throw std::invalid_argument(
            "generalized_map: (L - lambda) phi_g = phi fails the residual check");

    LinearizedSolution v;
    v.about = about;
    v.provenance = Provenance::Generalized;
    const bool imag = variant == MapVariant::Imag;
    v.eval = [imag, f = phi.eval, fg = phi_g.eval](double x, double t) {
        const Vec2 a = f(x, t), b = fg(x, t);
        const cplx m = a.p * b.p, n = std::conj(a.q) * std::conj(b.q);
        return imag ? 2.0 * iu * (m + n) : 2.0 * (m - n);
    };
    return v;
}

// ── residual oracle ───────────────────────────────────────────────────────────

// Max-norm of i v_t + v_xx/2 + (2|u|^2 - 1) v + u^2 conj(v) over the grid,
// derivatives from the Richardson FD oracle at a sixteenth of the grid spacing.
inline ResidualReport lin_nls_residual(const BreatherSpec& about, const LinearizedSolution& v,
                                       const SpaceTimeGrid& g) {
    ResidualReport rep;
    rep.under_resolved = (g.dx() > breather_x_scale(about) / 16.0 + 1e-15) ||
                         (g.dt() > breather_t_scale(about) / 16.0 + 1e-15);
    const double hx = 0.0625 * g.dx(), ht = 0.0625 * g.dt();
    rep.value = grid_max(g, [&](double x, double t) {
        const cplx w = v(x, t);
        const cplx u = eval_breather(about, x, t);
        const cplx vt = diff1([&](double tt) { return v(x, tt); }, t, ht);
        const cplx vxx = diff2([&](double xx) { return v(xx, t); }, x, hx);
        return iu * vt + 0.5 * vxx + (2.0 * std::norm(u) - 1.0) * w + u * u * std::conj(w);
    });
    return rep;
}

// ── growth-rate fit ───────────────────────────────────────────────────────────

// Least-squares slope of ln |v(x_probe, t)| over [t0, t1]. If |v| passes
// through (near) zero on the window the probe is shifted and the fit retried,
// up to five attempts.
inline double growth_rate(const LinearizedSolution& v, double t0, double t1,
                          double x_probe = 0.3, std::size_t n_samples = 48) {
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::vector<double> ts(n_samples), ys(n_samples);
        double ymax = -1e300, ymin = 1e300;
        for (std::size_t i = 0; i < n_samples; ++i) {
            ts[i] = t0 + (t1 - t0) * double(i) / double(n_samples - 1);
            const double a = std::abs(v(x_probe, ts[i]));
            if (a <= 0.0) {
                ymin = -1e300;
                break;
            }
            ys[i] = std::log(a);
            ymax = std::max(ymax, ys[i]);
            ymin = std::min(ymin, ys[i]);
        }
        if (ymin < ymax - 40.0 || ymin == -1e300) {  // amplitude collapsed through zero
            x_probe += 0.17 * (1.0 + attempt);
            continue;
        }
        double st = 0, sy = 0, stt = 0, sty = 0;
        for (std::size_t i = 0; i < n_samples; ++i) {
            st += ts[i];
            sy += ys[i];
            stt += ts[i] * ts[i];
            sty += ts[i] * ys[i];
        }
        const double n = double(n_samples);
        return (n * sty - st * sy) / (n * stt - st * st);
    }
    throw std::runtime_error("growth_rate: no probe with sign-definite amplitude found");
}

// x-direction log-slope at frozen t (tail decay fits for KMB entries).
inline double spatial_log_slope(const LinearizedSolution& v, double x0, double x1, double t,
                                std::size_t n_samples = 48) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double x = x0 + (x1 - x0) * double(i) / double(n_samples - 1);
        const double y = std::log(std::abs(v(x, t)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = double(n_samples);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ── Fourier basis about u = 1 ─────────────────────────────────────────────────

// The time profiles v~_k(t) of solutions v~_k(t) e^{i k x}:
//   k = 0     : 2i and 1 + 2it
//   k in (0,2): (2 i l + k) e^{k l t} and (2 i l - k) e^{-k l t}, l = sqrt(4-k^2)/2
//   k = 2     : 2 and i + 2t
//   k > 2     : k cos(k g t) - 2 i g sin(k g t) and 2 i g cos(k g t) + k sin(k g t),
//               g = sqrt(k^2-4)/2
// Modulated by cos(kx)/sin(kx) these solve the linearized equation about u = 1.
inline std::vector<LinearizedSolution> constant_basis(double k) {
    if (k < 0.0) throw std::invalid_argument("constant_basis: k must be nonnegative");
    const BreatherSpec bg = BreatherSpec::constant();
    std::vector<LinearizedSolution> out;

    auto add = [&](const std::string& label, GrowthClass gc, double rate,
                   std::function<cplx(double)> profile, int modulation) {
        LinearizedSolution v;
        v.about = bg;
        v.label = label;
        v.growth_class = gc;
        v.rate = rate;
        v.provenance = Provenance::Combination;
        if (modulation == 0)
            v.eval = [profile](double, double t) { return profile(t); };
        else if (modulation == 1)
            v.eval = [profile, k](double x, double t) { return profile(t) * std::cos(k * x); };
        else
            v.eval = [profile, k](double x, double t) { return profile(t) * std::sin(k * x); };
        out.push_back(std::move(v));
    };

    const double tol = 1e-12;
    if (k < tol) {
        add("v0+", GrowthClass::Bounded, 0.0, [](double) { return 2.0 * iu; }, 0);
        add("v0-", GrowthClass::LinearT, 0.0, [](double t) { return 1.0 + 2.0 * iu * t; }, 0);
    } else if (std::abs(k - 2.0) < tol) {
        add("v2+cos", GrowthClass::Bounded, 0.0, [](double) { return cplx(2.0); }, 1);
        add("v2+sin", GrowthClass::Bounded, 0.0, [](double) { return cplx(2.0); }, 2);
        add("v2-cos", GrowthClass::LinearT, 0.0, [](double t) { return iu + 2.0 * t; }, 1);
        add("v2-sin", GrowthClass::LinearT, 0.0, [](double t) { return iu + 2.0 * t; }, 2);
    } else if (k < 2.0) {
        const double l = 0.5 * std::sqrt(4.0 - k * k), r = k * l;
        auto up = [l, k, r](double t) { return (2.0 * iu * l + k) * std::exp(r * t); };
        auto dn = [l, k, r](double t) { return (2.0 * iu * l - k) * std::exp(-r * t); };
        add("vk+cos", GrowthClass::ExpGrowing, r, up, 1);
        add("vk+sin", GrowthClass::ExpGrowing, r, up, 2);
        add("vk-cos", GrowthClass::ExpDecaying, -r, dn, 1);
        add("vk-sin", GrowthClass::ExpDecaying, -r, dn, 2);
    } else {
        const double g = 0.5 * std::sqrt(k * k - 4.0), w = k * g;
        auto c1 = [k, g, w](double t) { return k * std::cos(w * t) - 2.0 * iu * g * std::sin(w * t); };
        auto c2 = [k, g, w](double t) { return 2.0 * iu * g * std::cos(w * t) + k * std::sin(w * t); };
        add("vk+cos", GrowthClass::Bounded, 0.0, c1, 1);
        add("vk+sin", GrowthClass::Bounded, 0.0, c1, 2);
        add("vk-cos", GrowthClass::Bounded, 0.0, c2, 1);
        add("vk-sin", GrowthClass::Bounded, 0.0, c2, 2);
    }
    return out;
}

// ── families about the breathers ──────────────────────────────────────────────

struct FamilyEntry {
    std::string label;
    LinearizedSolution solution;
    std::string asymptotic_partner;  // matching entry of the u = 1 decomposition
};

struct FamilyCatalog {
    BreatherSpec about;
    std::vector<FamilyEntry> entries;
    std::vector<FamilyEntry> internal;  // unbounded intermediates, exported under debug only
};

// Common scaffolding: Lax solutions about the breather at lambda = 1 and the
// Laurent coefficients at lambda0.
struct BreatherLaxFrame {
    DarbouxSeed seed;
    LaurentExpansion laurent;
    VectorSolution unit_eigen;    // transformed (1,-1) at lambda = 1
    VectorSolution unit_second;   // transformed (x+it+1, -x-it) at lambda = 1
};

inline BreatherLaxFrame breather_lax_frame(BreatherKind kind, double lambda0) {
    BreatherLaxFrame f{build_seed(kind, lambda0), {}, {}, {}};
    f.laurent = laurent_expansion(f.seed);
    const DarbouxMatrix D = darboux_matrix(f.seed);
    const auto bg = background_solutions(1.0);
    f.unit_eigen = transformed_unit_eigenfunction(f.seed);
    f.unit_second = transform_solution(D, bg[1], 1.0);
    return f;
}

// Six linearly independent L-periodic solutions about AB, labelled
// {v1, v2, w2, element_basis, new_plus, new_minus}. v1, v2 come from the
// lambda = 1 eigenfunction, w2 from the lambda0 eigenfunction, and the last
// three are the linear combinations that cancel the x-growing parts of the
// Pair II products, with mixing constants
//   element_basis = lambda0^2 (1-lambda0)/(1+lambda0) v3 - w3
//   new_plus  = k0^2 v_plus  - 2 lambda0 (3-2 lambda0^2)(1-lambda0)/(1+lambda0) v3
//   new_minus = k0^2 v_minus - 2 (1-4 lambda0^2)/lambda0 w4
//                            - 8 lambda0^2 (1-lambda0)/(1+lambda0) v4.
// The unbounded intermediates v3, v4, w3, w4 (and w1, proportional to v1) are
// kept as internal entries.
inline FamilyCatalog ab_family(double lambda0) {
    const BreatherLaxFrame f = breather_lax_frame(BreatherKind::Akhmediev, lambda0);
    const BreatherSpec about = BreatherSpec::akhmediev(lambda0);
    const double l = lambda0, s0 = about.sigma0, k2 = about.k0 * about.k0;

    auto P = [&](const VectorSolution& a, const VectorSolution& b, MapVariant var) {
        return squared_map(a, b, SquaredPair::II, var, about);
    };
    LinearizedSolution v1 = squared_map(f.unit_eigen, SquaredPair::I, MapVariant::Real, about);
    LinearizedSolution v2 = squared_map(f.unit_eigen, SquaredPair::I, MapVariant::Imag, about);
    LinearizedSolution w1 = squared_map(f.laurent.phi0, SquaredPair::I, MapVariant::Real, about);
    LinearizedSolution w2 = squared_map(f.laurent.phi0, SquaredPair::I, MapVariant::Imag, about);
    LinearizedSolution v3 = P(f.unit_eigen, f.unit_second, MapVariant::Real);
    LinearizedSolution v4 = P(f.unit_eigen, f.unit_second, MapVariant::Imag);
    LinearizedSolution w3 = P(f.laurent.phi0, f.laurent.psi0, MapVariant::Real);
    LinearizedSolution w4 = P(f.laurent.phi0, f.laurent.psi0, MapVariant::Imag);
    LinearizedSolution vp = P(f.laurent.phi0, f.laurent.psi1, MapVariant::Real) +
                            P(f.laurent.phi1, f.laurent.psi0, MapVariant::Real);
    LinearizedSolution vm = P(f.laurent.phi0, f.laurent.psi1, MapVariant::Imag) +
                            P(f.laurent.phi1, f.laurent.psi0, MapVariant::Imag);

    LinearizedSolution element = cplx(l * l * (1.0 - l) / (1.0 + l)) * v3 - w3;
    LinearizedSolution new_plus =
        cplx(k2) * vp - cplx(2.0 * l * (3.0 - 2.0 * l * l) * (1.0 - l) / (1.0 + l)) * v3;
    LinearizedSolution new_minus = cplx(k2) * vm - cplx(2.0 * (1.0 - 4.0 * l * l) / l) * w4 -
                                   cplx(8.0 * l * l * (1.0 - l) / (1.0 + l)) * v4;

    auto tag = [](LinearizedSolution& v, const std::string& label, GrowthClass gc, double rate,
                  Provenance prov) {
        v.label = label;
        v.growth_class = gc;
        v.rate = rate;
        v.provenance = prov;
    };
    tag(v1, "v1", GrowthClass::ExpDecaying, -s0, Provenance::PairI);
    tag(v2, "v2", GrowthClass::Bounded, 0.0, Provenance::PairI);
    tag(w1, "w1", GrowthClass::ExpDecaying, -s0, Provenance::PairI);
    tag(w2, "w2", GrowthClass::ExpDecaying, -s0, Provenance::PairI);
    tag(v3, "v3", GrowthClass::UnboundedX, 0.0, Provenance::PairII);
    tag(v4, "v4", GrowthClass::UnboundedX, 0.0, Provenance::PairII);
    tag(w3, "w3", GrowthClass::UnboundedX, 0.0, Provenance::PairII);
    tag(w4, "w4", GrowthClass::UnboundedX, 0.0, Provenance::PairII);
    tag(element, "element_basis", GrowthClass::LinearT, 0.0, Provenance::Combination);
    tag(new_plus, "new_plus", GrowthClass::ExpGrowing, s0, Provenance::Combination);
    tag(new_minus, "new_minus", GrowthClass::ExpGrowing, s0, Provenance::Combination);

    FamilyCatalog cat;
    cat.about = about;
    cat.entries = {{"v1", v1, "v_{lambda(k1)}^-"},
                   {"v2", v2, "~v_0^+"},
                   {"w2", w2, "v_{-lambda(k1)}^-"},
                   {"element_basis", element, "~v_0^-"},
                   {"new_plus", new_plus, "v_{-lambda(k1)}^+"},
                   {"new_minus", new_minus, "v_{lambda(k1)}^+"}};
    cat.internal = {{"w1", w1, ""}, {"v3", v3, ""}, {"v4", v4, ""}, {"w3", w3, ""}, {"w4", w4, ""}};
    return cat;
}

// Seven bounded solutions about KMB: {w1, w2, w3} exponentially decaying in x
// (proportional to the x-, t- and lambda0-derivatives of the breather), w4 and
// v2 bounded with constant tails, v1 proportional to w1, v3 linearly growing
// in t. All from Pairs I/II at lambda0 and lambda = 1.
inline FamilyCatalog kmb_family(double lambda0) {
    const BreatherLaxFrame f = breather_lax_frame(BreatherKind::KuznetsovMa, lambda0);
    const BreatherSpec about = BreatherSpec::kuznetsov_ma(lambda0);
    const double b0 = about.beta0;

    auto P = [&](const VectorSolution& a, const VectorSolution& b, MapVariant var) {
        return squared_map(a, b, SquaredPair::II, var, about);
    };
    LinearizedSolution w1 = squared_map(f.laurent.phi0, SquaredPair::I, MapVariant::Real, about);
    LinearizedSolution w2 = squared_map(f.laurent.phi0, SquaredPair::I, MapVariant::Imag, about);
    LinearizedSolution w3 = P(f.laurent.phi0, f.laurent.psi0, MapVariant::Real);
    LinearizedSolution w4 = P(f.laurent.phi0, f.laurent.psi0, MapVariant::Imag);
    LinearizedSolution v1 = squared_map(f.unit_eigen, SquaredPair::I, MapVariant::Real, about);
    LinearizedSolution v2 = squared_map(f.unit_eigen, SquaredPair::I, MapVariant::Imag, about);
    LinearizedSolution v3 = P(f.unit_eigen, f.unit_second, MapVariant::Real);

    auto tag = [](LinearizedSolution& v, const std::string& label, GrowthClass gc, double rate,
                  Provenance prov) {
        v.label = label;
        v.growth_class = gc;
        v.rate = rate;
        v.provenance = prov;
    };
    tag(w1, "w1", GrowthClass::ExpDecaying, -b0, Provenance::PairI);
    tag(w2, "w2", GrowthClass::ExpDecaying, -b0, Provenance::PairI);
    tag(w3, "w3", GrowthClass::ExpDecaying, -b0, Provenance::PairII);
    tag(w4, "w4", GrowthClass::Bounded, 0.0, Provenance::PairII);
    tag(v1, "v1", GrowthClass::ExpDecaying, -b0, Provenance::PairI);
    tag(v2, "v2", GrowthClass::Bounded, 0.0, Provenance::PairI);
    tag(v3, "v3", GrowthClass::LinearT, 0.0, Provenance::PairII);

    FamilyCatalog cat;
    cat.about = about;
    cat.entries = {{"w1", w1, ""}, {"w2", w2, ""}, {"w3", w3, ""}, {"w4", w4, ""},
                   {"v1", v1, ""}, {"v2", v2, ""}, {"v3", v3, ""}};
    return cat;
}

// ── linear independence certificate ───────────────────────────────────────────

// Smallest singular value of the column-normalized sample matrix of the given
// solutions over the grid; > 0 certifies linear independence. Computed as the
// square root of the smallest eigenvalue of the normalized Gram matrix
// (cyclic-Jacobi diagonalization; the matrices here are tiny).
inline double gram_smallest_singular_value(const std::vector<LinearizedSolution>& sols,
                                           const SpaceTimeGrid& g) {
    const std::size_t n = sols.size();
    std::vector<std::vector<cplx>> samples(n);
    for (std::size_t c = 0; c < n; ++c) {
        samples[c].reserve(g.nx * g.nt);
        for (std::size_t j = 0; j < g.nt; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) samples[c].push_back(sols[c](g.x(i), g.t(j)));
        double nrm = 0.0;
        for (const cplx& z : samples[c]) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) return 0.0;
        for (cplx& z : samples[c]) z /= nrm;
    }
    std::vector<std::vector<cplx>> G(n, std::vector<cplx>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            cplx s = 0.0;
            for (std::size_t m = 0; m < samples[a].size(); ++m)
                s += std::conj(samples[a][m]) * samples[b][m];
            G[a][b] = s;
        }
    // cyclic Jacobi on the Hermitian Gram matrix
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(G[p][q]);
        if (off < 1e-28) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = G[p][q];
                if (std::abs(apq) < 1e-300) continue;
                const double app = G[p][p].real(), aqq = G[q][q].real();
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cth = 1.0 / std::sqrt(1.0 + t * t);
                const double sth = t * cth;
                const cplx phase = apq / std::abs(apq);
                for (std::size_t m = 0; m < n; ++m) {
                    const cplx gmp = G[m][p], gmq = G[m][q];
                    G[m][p] = cth * gmp - sth * std::conj(phase) * gmq;
                    G[m][q] = sth * phase * gmp + cth * gmq;
                }
                for (std::size_t m = 0; m < n; ++m) {
                    const cplx gpm = G[p][m], gqm = G[q][m];
                    G[p][m] = cth * gpm - sth * phase * gqm;
                    G[q][m] = sth * std::conj(phase) * gpm + cth * gqm;
                }
            }
    }
    double min_ev = 1e300;
    for (std::size_t m = 0; m < n; ++m) min_ev = std::min(min_ev, G[m][m].real());
    return std::sqrt(std::max(0.0, min_ev));
}

inline double gram_smallest_singular_value(const FamilyCatalog& cat, const SpaceTimeGrid& g) {
    std::vector<LinearizedSolution> sols;
    for (const auto& e : cat.entries) sols.push_back(e.solution);
    return gram_smallest_singular_value(sols, g);
}

}  // namespace nlsb
