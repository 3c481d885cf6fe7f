#include <catch2/catch.hpp>

#include "nlsb/evolution.hpp"
#include "nlsb/linearized.hpp"

using namespace nlsb;
using Catch::Matchers::WithinAbs;

TEST_CASE("evolution config validation") {
    EvolutionConfig cfg;
    cfg.dt = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.n_modes = 100;  // not a power of two
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.dealias = 0.3;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.dt = 1.0;
    cfg.n_modes = 4096;  // dt kmax^2 beyond the budget
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("constant background is a fixed point") {
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 10.0;
    cfg.span = 2.0 * pi;
    cfg.n_modes = 64;
    cfg.monitor_every = 2000;
    const Trajectory tr = evolve_nls(std::vector<cplx>(64, 1.0), cfg);
    double dev = 0.0;
    for (const cplx& z : tr.final_state) dev = std::max(dev, std::abs(z - 1.0));
    CHECK(dev < 1e-10);
    CHECK(std::abs(tr.diagnostics.back().mass / tr.diagnostics.front().mass - 1.0) < 1e-12);
}

TEST_CASE("AB breather tracks its closed form") {
    const BreatherSpec spec = BreatherSpec::akhmediev(0.6);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_start = -6.0;
    cfg.t_end = 6.0;
    cfg.span = spec.spatial_period;
    cfg.n_modes = 256;
    cfg.monitor_every = 4000;
    std::vector<cplx> u0(cfg.n_modes);
    for (std::size_t i = 0; i < cfg.n_modes; ++i) u0[i] = eval_breather(spec, cfg.x(i), -6.0);
    const Trajectory tr = evolve_nls(std::move(u0), cfg);
    double dev = 0.0;
    for (std::size_t i = 0; i < cfg.n_modes; ++i)
        dev = std::max(dev, std::abs(tr.final_state[i] - eval_breather(spec, cfg.x(i), 6.0)));
    CHECK(dev < 1e-5);
    CHECK(std::abs(tr.diagnostics.back().mass / tr.diagnostics.front().mass - 1.0) < 1e-8);
}

TEST_CASE("self-convergence at second order") {
    const BreatherSpec spec = BreatherSpec::akhmediev(0.6);
    EvolutionConfig cfg;
    cfg.t_start = -2.0;
    cfg.t_end = 2.0;
    cfg.span = spec.spatial_period;
    cfg.n_modes = 128;
    cfg.monitor_every = 1u << 24;
    std::vector<double> errs;
    for (const double dt : {4e-3, 2e-3, 1e-3}) {
        cfg.dt = dt;
        std::vector<cplx> u0(cfg.n_modes);
        for (std::size_t i = 0; i < cfg.n_modes; ++i) u0[i] = eval_breather(spec, cfg.x(i), -2.0);
        const Trajectory tr = evolve_nls(std::move(u0), cfg);
        double dev = 0.0;
        for (std::size_t i = 0; i < cfg.n_modes; ++i)
            dev = std::max(dev, std::abs(tr.final_state[i] - eval_breather(spec, cfg.x(i), 2.0)));
        errs.push_back(dev);
    }
    CHECK_THAT(std::log2(errs[0] / errs[1]), WithinAbs(2.0, 0.2));
    CHECK_THAT(std::log2(errs[1] / errs[2]), WithinAbs(2.0, 0.2));
}

TEST_CASE("KMB returns to its initial data after one period") {
    const BreatherSpec spec = BreatherSpec::kuznetsov_ma(1.25);
    EvolutionConfig cfg;
    cfg.dt = spec.temporal_period / 131072.0;  // integer step count over T
    cfg.t_end = spec.temporal_period;
    cfg.span = 8.0 * 2.0 * pi / 1.6;
    cfg.x_min = -cfg.span / 2.0;
    cfg.n_modes = 1024;
    cfg.monitor_every = 1u << 24;
    std::vector<cplx> u0(cfg.n_modes);
    for (std::size_t i = 0; i < cfg.n_modes; ++i) u0[i] = eval_breather(spec, cfg.x(i), 0.0);
    const std::vector<cplx> init = u0;
    const Trajectory tr = evolve_nls(std::move(u0), cfg);
    double dev = 0.0;
    for (std::size_t i = 0; i < cfg.n_modes; ++i)
        dev = std::max(dev, std::abs(tr.final_state[i] - init[i]));
    CHECK(dev < 1e-5);
}

TEST_CASE("blow-up guard halts the run") {
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.span = 2.0 * pi;
    cfg.n_modes = 64;
    cfg.blowup_guard = 10.0;
    std::vector<cplx> u0(64);
    for (std::size_t i = 0; i < 64; ++i) u0[i] = 20.0 * std::exp(iu * double(i));
    const Trajectory tr = evolve_nls(std::move(u0), cfg);
    CHECK(tr.blew_up);
    CHECK(tr.final_time < 0.5);
}

TEST_CASE("linearized evolution tracks the closed-form family entries") {
    const FamilyCatalog cat = ab_family(0.6);
    const BreatherSpec spec = cat.about;
    const LinearizedSolution& v1 = cat.entries[0].solution;
    EvolutionConfig cfg;
    cfg.dt = 2.0 / 32768.0;  // integer step count to the comparison time
    cfg.t_end = 2.0;
    cfg.span = spec.spatial_period;
    cfg.n_modes = 256;
    cfg.monitor_every = 1u << 24;
    std::vector<cplx> v0(cfg.n_modes);
    for (std::size_t i = 0; i < cfg.n_modes; ++i) v0[i] = v1(cfg.x(i), 0.0);
    const Trajectory tr = evolve_linearized(spec, std::move(v0), cfg);
    double dev = 0.0;
    for (std::size_t i = 0; i < cfg.n_modes; ++i)
        dev = std::max(dev, std::abs(tr.final_state[i] - v1(cfg.x(i), 2.0)));
    CHECK(dev < 1e-5);
}

TEST_CASE("evolved new_plus grows at sigma0") {
    const FamilyCatalog cat = ab_family(0.6);
    const BreatherSpec spec = cat.about;
    const LinearizedSolution& np = cat.entries[4].solution;
    REQUIRE(cat.entries[4].label == "new_plus");
    EvolutionConfig cfg;
    cfg.dt = 5e-4;
    cfg.t_end = 10.0;
    cfg.span = spec.spatial_period;
    cfg.n_modes = 256;
    cfg.monitor_every = 200;
    std::vector<cplx> v0(cfg.n_modes);
    for (std::size_t i = 0; i < cfg.n_modes; ++i) v0[i] = np(cfg.x(i), 0.0);
    const Trajectory tr = evolve_linearized(spec, std::move(v0), cfg);
    std::vector<double> ts, ys;
    for (std::size_t s = 0; s < tr.times.size(); ++s)
        if (tr.times[s] >= 6.0) {
            ts.push_back(tr.times[s]);
            ys.push_back(std::log(tr.diagnostics[s].max_amp));
        }
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
    }
    const double n = double(ts.size());
    const double rate = (n * sty - st * sy) / (n * stt - st * st);
    CHECK_THAT(rate, WithinAbs(0.96, 0.02 * 0.96));
}

TEST_CASE("evolved KMB w1 stays localized") {
    const FamilyCatalog cat = kmb_family(1.25);
    const BreatherSpec spec = cat.about;
    const LinearizedSolution& w1 = cat.entries[0].solution;
    EvolutionConfig cfg;
    cfg.t_end = 2.0 * spec.temporal_period;
    cfg.dt = cfg.t_end / 65536.0;  // the dt^2 error radiates and is band-amplified
    cfg.span = 16.0 * pi;
    cfg.x_min = -cfg.span / 2.0;
    cfg.n_modes = 1024;
    cfg.monitor_every = 500;
    std::vector<cplx> v0(cfg.n_modes);
    for (std::size_t i = 0; i < cfg.n_modes; ++i) v0[i] = w1(cfg.x(i), 0.0);
    const Trajectory tr = evolve_linearized(spec, std::move(v0), cfg);
    double tail = 0.0;
    for (std::size_t s = 0; s < tr.fields.size(); ++s)
        for (std::size_t i = 0; i < cfg.n_modes; ++i)
            if (std::abs(cfg.x(i)) > 20.0) tail = std::max(tail, std::abs(tr.fields[s][i]));
    CHECK(tail < 1e-6);
}

TEST_CASE("modulation instability rates") {
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 14.0;
    cfg.span = 2.0 * pi * 2.0 / std::sqrt(2.0);
    cfg.n_modes = 64;
    cfg.monitor_every = 50;
    const RateReport r1 = instability_experiment(BreatherSpec::constant(), std::sqrt(2.0), 1e-6, cfg);
    CHECK_THAT(r1.predicted, WithinAbs(1.0, 1e-12));
    CHECK(r1.rel_err < 0.02);

    EvolutionConfig cfg2;
    cfg2.dt = 1e-3;
    cfg2.t_end = 14.0;
    cfg2.span = 2.0 * pi * 4.0 / 1.6;
    cfg2.n_modes = 128;
    cfg2.monitor_every = 50;
    const RateReport r2 = instability_experiment(BreatherSpec::constant(), 1.6, 1e-6, cfg2);
    CHECK_THAT(r2.predicted, WithinAbs(0.96, 1e-12));
    CHECK(r2.rel_err < 0.02);

    // incommensurate wavenumber is a configuration error
    CHECK_THROWS_AS(instability_experiment(BreatherSpec::constant(), 1.2345, 1e-6, cfg2),
                    std::invalid_argument);
}
