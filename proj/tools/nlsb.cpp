// Command-line front end: generates fields, runs the verification suites,
// computes spectra and solution families, evolves initial data, and emits
// CSV/JSON/SVG artifacts. Outputs are deterministic for a fixed (config, seed);
// the only timestamped file is the separate run_meta.json.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "nlsb/io.hpp"
#include "nlsb/report.hpp"
#include "nlsb/svg.hpp"

using namespace nlsb;
namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
    std::string out_dir = ".";
    unsigned long seed = 1234;
    std::string config_file;
    KeyValueConfig config;
};

BreatherSpec spec_from(const std::string& kind, double lambda0) {
    if (kind == "constant") return BreatherSpec::constant();
    if (kind == "ab") return BreatherSpec::akhmediev(lambda0);
    if (kind == "kmb") return BreatherSpec::kuznetsov_ma(lambda0);
    if (kind == "prw") return BreatherSpec::peregrine();
    throw CLI::ValidationError("--kind", "unknown kind '" + kind + "'");
}

// Everything that determines the artifact bytes; the output directory and
// timestamps stay out (the latter live in run_meta.json only).
json config_echo(const GlobalOpts& g, const json& extra) {
    json j{{"seed", g.seed}};
    for (const auto& [k, v] : g.config.kv) j["file"][k] = v;
    j["command"] = extra;
    return j;
}

void write_run_meta(const GlobalOpts& g, const std::string& command) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    json meta{{"command", command},
              {"tool_version", version},
              {"timestamp_unix_ms",
               std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};
    write_json(fs::path(g.out_dir) / "run_meta.json", meta);
}

void spectrum_svg(const fs::path& path, const SpectrumReport& rep, const std::string& title) {
    double span = 1.6;
    for (const cplx z : rep.eigenvalues)
        span = std::max({span, std::abs(z.real()), std::abs(z.imag())});
    span = std::min(span, 4.0) * 1.1;
    SvgPlot plot(-span, span, -span, span, 560, 560);
    plot.title(title);
    // analytic band set of the backgrounds: [-1,1] and the imaginary axis
    plot.segment(-1.0, 0.0, 1.0, 0.0, "#2ca02c", 3.0);
    plot.segment(0.0, -span, 0.0, span, "#2ca02c", 3.0);
    std::vector<std::pair<double, double>> evs, dots;
    for (const cplx z : rep.eigenvalues)
        if (std::abs(z.real()) <= span && std::abs(z.imag()) <= span)
            evs.push_back({z.real(), z.imag()});
    plot.circles(evs, 1.6, "#1f77b4");
    for (const auto& m : rep.matches) dots.push_back({m.computed.real(), m.computed.imag()});
    plot.circles(dots, 4.0, "#d62728");
    plot.text(span * 0.62, span * 0.92, "Re/Im eigenvalue plane");
    plot.save(path);
}

void spectrum_csv(const fs::path& path, const SpectrumReport& rep) {
    std::ofstream out(path);
    out << "re,im,role\n";
    for (const cplx z : rep.eigenvalues)
        out << csv_format(z.real()) << ',' << csv_format(z.imag()) << ",eigenvalue\n";
    for (const cplx z : rep.artifacts)
        out << csv_format(z.real()) << ',' << csv_format(z.imag()) << ",band_artifact\n";
    for (const cplx z : rep.analytic_targets)
        out << csv_format(z.real()) << ',' << csv_format(z.imag()) << ",target\n";
}

int cmd_generate(const GlobalOpts& g, const std::string& kind, double lambda0, double x0,
                 double x1, std::size_t nx, double t0, double t1, std::size_t nt) {
    const BreatherSpec spec = spec_from(kind, lambda0);
    const SpaceTimeGrid grid = SpaceTimeGrid::make(x0, x1, nx, t0, t1, nt);
    const WaveField field = WaveField::sample(spec, grid);
    const fs::path base = fs::path(g.out_dir) / ("field_" + kind);
    write_wave_field(base.string() + ".csv", field,
                     config_echo(g, json{{"cmd", "generate"}, {"kind", kind}}));
    std::cout << "wrote " << base.string() << ".csv (+ sidecar)\n";
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& kind, double lambda0) {
    const BreatherSpec spec = spec_from(kind, lambda0);
    const CheckList list = verify_kind(spec);
    json j = to_json(list);
    j["config"] = config_echo(g, json{{"cmd", "verify"}, {"kind", kind}, {"lambda0", lambda0}});
    write_json(fs::path(g.out_dir) / ("verify_" + kind + ".json"), j);
    for (const auto& c : list.checks)
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  value " << c.value << '\n';
    return list.all_pass() ? 0 : 1;
}

int cmd_spectrum(const GlobalOpts& g, const std::string& kind, double lambda0,
                 const std::string& basis_name, std::size_t n, double extent, double t) {
    const BreatherSpec spec = spec_from(kind, lambda0);
    const FieldEval u = breather_field(spec);
    double L = extent;
    if (L <= 0.0) {
        if (basis_name == "line")
            L = 30.0;
        else if (spec.kind == BreatherKind::Akhmediev)
            L = spec.spatial_period;
        else
            L = 2.0 * pi / 1.6;
    }
    BasisSpec basis = basis_name == "periodic" ? BasisSpec::fourier_integer(n ? n : 128, L)
                      : basis_name == "antiperiodic"
                          ? BasisSpec::fourier_half_integer(n ? n : 128, L)
                          : BasisSpec::finite_difference(n ? n : 768, L);
    if (basis_name != "periodic" && basis_name != "antiperiodic" && basis_name != "line")
        throw CLI::ValidationError("--basis", "use periodic, antiperiodic or line");

    std::vector<cplx> targets;
    if (spec.kind == BreatherKind::KuznetsovMa && basis.type == BasisType::FiniteDifference) {
        targets = {cplx(spec.lambda0), cplx(-spec.lambda0)};
    } else if (basis.type != BasisType::FiniteDifference) {
        const std::size_t m0 = basis.type == BasisType::FourierInteger ? 0 : 1;
        for (std::size_t m = m0; m <= 9; m += 2) {
            const cplx lm = background_discrete_eigenvalue(m, L);
            targets.push_back(lm);
            if (m > 0) targets.push_back(-lm);
        }
    }

    const DiscretizedOperator op = discretize(u, t, basis);
    SpectrumReport rep = compute_spectrum(op, targets);
    if (basis.type == BasisType::FiniteDifference) {
        const DiscretizedOperator refined_op = discretize(
            u, t, BasisSpec::finite_difference(basis.n + basis.n / 5, L * 1.2));
        flag_artifacts(rep, compute_spectrum(refined_op), 1e-4);
        // refine the isolated pair on the fine default grid
        const DiscretizedOperator fine =
            discretize(u, t, BasisSpec::finite_difference(2048, L));
        rep.max_match_distance = 0.0;
        for (auto& m : rep.matches) {
            m.computed = refine_isolated(fine, m.target);
            m.distance = std::abs(m.computed - m.target);
            rep.max_match_distance = std::max(rep.max_match_distance, m.distance);
        }
    }
    for (const cplx probe : targets) {
        if (auto mp = multiplicity_probe(op, probe)) rep.multiplicities.push_back(*mp);
        if (rep.multiplicities.size() >= 4) break;
    }

    json j = to_json(rep);
    j["config"] = config_echo(
        g, json{{"cmd", "spectrum"}, {"kind", kind}, {"basis", basis_name}, {"t", t}});
    const fs::path base = fs::path(g.out_dir) / ("spectrum_" + kind + "_" + basis_name);
    write_json(base.string() + ".json", j);
    spectrum_csv(base.string() + ".csv", rep);
    spectrum_svg(base.string() + ".svg", rep, "Lax spectrum (" + kind + ", " + basis_name + ")");
    std::cout << "wrote " << base.string() << ".{json,csv,svg}; max match distance "
              << rep.max_match_distance << '\n';
    return 0;
}

int cmd_family(const GlobalOpts& g, const std::string& kind, double lambda0, bool do_export,
               bool debug) {
    if (kind != "ab" && kind != "kmb")
        throw CLI::ValidationError("--kind", "family needs ab or kmb");
    const FamilyCatalog cat = kind == "ab" ? ab_family(lambda0) : kmb_family(lambda0);
    json manifest = catalog_manifest(cat, debug);
    manifest["config"] =
        config_echo(g, json{{"cmd", "family"}, {"kind", kind}, {"lambda0", lambda0}});
    const fs::path base = fs::path(g.out_dir) / ("family_" + kind);
    write_json(base.string() + "_manifest.json", manifest);
    if (do_export) {
        const BreatherSpec spec = cat.about;
        const SpaceTimeGrid grid =
            kind == "ab" ? SpaceTimeGrid::make(0.0, spec.spatial_period, 96, -3.0, 3.0, 96)
                         : SpaceTimeGrid::make(-12.0, 12.0, 96, 0.0, spec.temporal_period, 96);
        auto dump = [&](const FamilyEntry& e) {
            write_field_csv(base.string() + "_" + e.label + ".csv", grid,
                            [&](double x, double t) { return e.solution(x, t); });
        };
        for (const auto& e : cat.entries) dump(e);
        if (debug)
            for (const auto& e : cat.internal) dump(e);
    }
    std::cout << "wrote " << base.string() << "_manifest.json"
              << (do_export ? " and per-entry CSV fields" : "") << '\n';
    return 0;
}

int cmd_certify(const GlobalOpts& g, const std::string& kind, double lambda0) {
    if (kind != "ab" && kind != "kmb")
        throw CLI::ValidationError("--kind", "certify needs ab or kmb");
    const DarbouxSeed seed = build_seed(
        kind == "ab" ? BreatherKind::Akhmediev : BreatherKind::KuznetsovMa, lambda0);
    json arr = json::array();
    bool ok = true;
    for (const Certificate& c : fredholm_certificates(seed)) {
        arr.push_back(to_json(c));
        const bool zero_target = std::abs(c.analytic) < 1e-15;
        const bool pass = zero_target ? std::abs(c.computed) < 1e-10
                                      : c.abs_err / std::abs(c.analytic) < 1e-8;
        ok = ok && pass;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.quantity << "  err " << c.abs_err
                  << '\n';
    }
    json j{{"tool_version", version},
           {"certificates", arr},
           {"config", config_echo(g, json{{"cmd", "certify"}, {"kind", kind}})}};
    write_json(fs::path(g.out_dir) / ("certificates_" + kind + ".json"), j);
    return ok ? 0 : 1;
}

int cmd_evolve(const GlobalOpts& g, const std::string& kind, double lambda0, double dt,
               double t_start, double t_end, std::size_t n_modes, double span, double perturb_k,
               double amplitude) {
    const BreatherSpec spec = spec_from(kind, lambda0);
    EvolutionConfig cfg;
    cfg.dt = dt;
    cfg.t_start = t_start;
    cfg.t_end = t_end;
    cfg.n_modes = n_modes;
    if (span > 0.0)
        cfg.span = span;
    else if (spec.kind == BreatherKind::Akhmediev)
        cfg.span = spec.spatial_period;
    else
        cfg.span = 16.0 * pi;
    if (spec.kind != BreatherKind::Akhmediev) cfg.x_min = -cfg.span / 2.0;
    cfg.monitor_every = std::max<std::size_t>(1, std::size_t((t_end - t_start) / dt) / 200);

    const fs::path base = fs::path(g.out_dir) / ("evolve_" + kind);
    if (perturb_k > 0.0) {
        const RateReport rep = instability_experiment(spec, perturb_k, amplitude, cfg);
        json j = to_json(rep);
        j["config"] = config_echo(g, json{{"cmd", "evolve"}, {"kind", kind}, {"k", perturb_k}});
        write_json(base.string() + "_rate.json", j);
        std::cout << "rate: predicted " << rep.predicted << " measured " << rep.measured
                  << " rel_err " << rep.rel_err << '\n';
        return rep.rel_err < 0.05 ? 0 : 1;
    }

    std::vector<cplx> u0(cfg.n_modes);
    for (std::size_t i = 0; i < cfg.n_modes; ++i)
        u0[i] = eval_breather(spec, cfg.x(i), cfg.t_start);
    const Trajectory tr = evolve_nls(std::move(u0), cfg);
    std::ofstream diag(base.string() + "_diagnostics.csv");
    diag << "t,mass,energy,max_amp\n";
    for (const auto& d : tr.diagnostics)
        diag << csv_format(d.t) << ',' << csv_format(d.mass) << ',' << csv_format(d.energy)
             << ',' << csv_format(d.max_amp) << '\n';
    {
        std::ofstream snap(base.string() + "_final.csv");
        snap << "x,t,re_u,im_u\n";
        for (std::size_t i = 0; i < cfg.n_modes; ++i)
            snap << csv_format(cfg.x(i)) << ',' << csv_format(tr.final_time) << ','
                 << csv_format(tr.final_state[i].real()) << ','
                 << csv_format(tr.final_state[i].imag()) << '\n';
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < cfg.n_modes; ++i)
        dev = std::max(dev,
                       std::abs(tr.final_state[i] - eval_breather(spec, cfg.x(i), tr.final_time)));
    json j{{"tool_version", version},
           {"final_time", tr.final_time},
           {"closed_form_deviation", dev},
           {"blew_up", tr.blew_up},
           {"config", config_echo(g, json{{"cmd", "evolve"}, {"kind", kind}})}};
    write_json(base.string() + ".json", j);
    std::cout << "final deviation from closed form: " << dev << '\n';
    return 0;
}

int cmd_report_all(const GlobalOpts& g, double l_ab, double l_km) {
    const CheckList list = run_acceptance(l_ab, l_km, g.seed);
    json j = to_json(list);
    j["config"] = config_echo(
        g, json{{"cmd", "report-all"}, {"lambda0_ab", l_ab}, {"lambda0_kmb", l_km}});
    write_json(fs::path(g.out_dir) / "report_all.json", j);
    std::ofstream md(fs::path(g.out_dir) / "report_all.md");
    md << "# Verification summary\n\n" << to_markdown(list);
    for (const auto& c : list.checks)
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << "  " << c.name << "  value "
                  << c.value << (c.greater_is_pass ? " >= " : " <= ") << c.threshold << '\n';
    std::cout << list.failures() << " failures / " << list.checks.size() << " checks\n";
    return list.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nlsb: exact NLS breathers, their Lax spectra, and the linearized dynamics"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    if (const char* env = std::getenv("NLSB_OUT")) g.out_dir = env;
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--seed", g.seed, "seed for randomized probe points");
    app.add_option("--config", g.config_file, "flat key=value config file");

    std::string kind = "ab", basis = "antiperiodic";
    double lambda0 = 0.6;
    double x0 = -5.0, x1 = 5.0, t0 = -3.0, t1 = 3.0;
    std::size_t nx = 128, nt = 128, n_basis = 0, n_modes = 256;
    double extent = 0.0, t_snap = 0.0;
    bool do_export = false, debug = false;
    double dt = 5e-4, te_start = 0.0, te_end = 2.0, span = 0.0, perturb_k = 0.0,
           amplitude = 1e-6;
    double l_ab = 0.6, l_km = 1.25;

    auto add_kind = [&](CLI::App* c) {
        c->add_option("--kind", kind, "constant | ab | kmb | prw");
        c->add_option("--lambda0", lambda0, "spectral parameter");
    };

    CLI::App* c_gen = app.add_subcommand("generate", "sample a breather onto a grid (CSV+JSON)");
    add_kind(c_gen);
    c_gen->add_option("--xmin", x0);
    c_gen->add_option("--xmax", x1);
    c_gen->add_option("--nx", nx);
    c_gen->add_option("--tmin", t0);
    c_gen->add_option("--tmax", t1);
    c_gen->add_option("--nt", nt);

    CLI::App* c_ver = app.add_subcommand("verify", "run the per-kind verification checks");
    add_kind(c_ver);

    CLI::App* c_spec = app.add_subcommand("spectrum", "numerical ZS spectrum (JSON+CSV+SVG)");
    add_kind(c_spec);
    c_spec->add_option("--basis", basis, "periodic | antiperiodic | line");
    c_spec->add_option("--n", n_basis, "modes / grid points");
    c_spec->add_option("--extent", extent, "period L or half-width X");
    c_spec->add_option("--t", t_snap, "snapshot time");

    CLI::App* c_fam = app.add_subcommand("family", "linearized-solution family catalog");
    add_kind(c_fam);
    c_fam->add_flag("--export", do_export, "write per-entry CSV fields");
    c_fam->add_flag("--debug", debug, "include unbounded internal intermediates");

    CLI::App* c_cert = app.add_subcommand("certify", "Fredholm multiplicity certificates");
    add_kind(c_cert);

    CLI::App* c_evo = app.add_subcommand("evolve", "split-step evolution experiments");
    add_kind(c_evo);
    c_evo->add_option("--dt", dt);
    c_evo->add_option("--t-start", te_start);
    c_evo->add_option("--t-end", te_end);
    c_evo->add_option("--n-modes", n_modes);
    c_evo->add_option("--span", span);
    c_evo->add_option("--perturb-k", perturb_k, "seed wavenumber (runs a rate experiment)");
    c_evo->add_option("--amplitude", amplitude);

    CLI::App* c_all = app.add_subcommand("report-all", "full acceptance suite (markdown+JSON)");
    c_all->add_option("--lambda0-ab", l_ab);
    c_all->add_option("--lambda0-kmb", l_km);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!g.config_file.empty()) {
            g.config = KeyValueConfig::load(g.config_file);
            // config file supplies defaults; explicit flags already overrode them
            lambda0 = g.config.get("lambda0", lambda0);
            kind = g.config.get("kind", kind);
            dt = g.config.get("dt", dt);
            l_ab = g.config.get("lambda0_ab", l_ab);
            l_km = g.config.get("lambda0_kmb", l_km);
            g.seed = (unsigned long)g.config.get("seed", (long)g.seed);
        }
        std::filesystem::create_directories(g.out_dir);
        std::string joined;
        for (int i = 0; i < argc; ++i) joined += std::string(argv[i]) + (i + 1 < argc ? " " : "");
        write_run_meta(g, joined);

        if (c_gen->parsed()) return cmd_generate(g, kind, lambda0, x0, x1, nx, t0, t1, nt);
        if (c_ver->parsed()) return cmd_verify(g, kind, lambda0);
        if (c_spec->parsed())
            return cmd_spectrum(g, kind, lambda0, basis, n_basis, extent, t_snap);
        if (c_fam->parsed()) return cmd_family(g, kind, lambda0, do_export, debug);
        if (c_cert->parsed()) return cmd_certify(g, kind, lambda0);
        if (c_evo->parsed())
            return cmd_evolve(g, kind, lambda0, dt, te_start, te_end, n_modes, span, perturb_k,
                              amplitude);
        if (c_all->parsed()) return cmd_report_all(g, l_ab, l_km);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
