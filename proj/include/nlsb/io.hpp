#pragma once

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "nlsb/breather.hpp"
#include "nlsb/darboux.hpp"
#include "nlsb/evolution.hpp"
#include "nlsb/linearized.hpp"
#include "nlsb/spectral.hpp"
#include "nlsb/version.hpp"

namespace nlsb {

using json = nlohmann::json;

// File artifacts: WaveField CSV (header x,t,re_u,im_u, row-major over t then x)
// with a JSON sidecar, and JSON forms of the report structures. All numeric
// output is round-trip exact and timestamp-free, so identical inputs produce
// identical bytes.

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const BreatherSpec& s) {
    json j{{"kind", to_string(s.kind)}, {"lambda0", s.lambda0}};
    if (s.kind == BreatherKind::Akhmediev) {
        j["k0"] = s.k0;
        j["sigma0"] = s.sigma0;
        j["spatial_period"] = s.spatial_period;
    } else if (s.kind == BreatherKind::KuznetsovMa) {
        j["beta0"] = s.beta0;
        j["alpha0"] = s.alpha0;
        j["temporal_period"] = s.temporal_period;
    }
    return j;
}

inline BreatherSpec breather_spec_from_json(const json& j) {
    const std::string kind = j.at("kind");
    if (kind == "constant") return BreatherSpec::constant();
    if (kind == "ab") return BreatherSpec::akhmediev(j.at("lambda0"));
    if (kind == "kmb") return BreatherSpec::kuznetsov_ma(j.at("lambda0"));
    if (kind == "prw") return BreatherSpec::peregrine();
    throw std::invalid_argument("unknown breather kind: " + kind);
}

inline json to_json(const SpaceTimeGrid& g) {
    return json{{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx},
                {"t_min", g.t_min}, {"t_max", g.t_max}, {"nt", g.nt},
                {"boundary", g.boundary == GridBoundary::Periodic ? "periodic" : "truncated_line"},
                {"period", g.period}};
}

inline std::string csv_format(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Sampled complex field as CSV; works for wave fields and linearized solutions.
template <class F>
void write_field_csv(const std::filesystem::path& path, const SpaceTimeGrid& g, F&& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "x,t,re_u,im_u\n";
    for (std::size_t j = 0; j < g.nt; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const cplx v = f(g.x(i), g.t(j));
            out << csv_format(g.x(i)) << ',' << csv_format(g.t(j)) << ','
                << csv_format(v.real()) << ',' << csv_format(v.imag()) << '\n';
        }
}

inline void write_wave_field(const std::filesystem::path& csv_path, const WaveField& f,
                             const json& config_echo = {}) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open " + csv_path.string());
    out << "x,t,re_u,im_u\n";
    for (std::size_t j = 0; j < f.grid.nt; ++j)
        for (std::size_t i = 0; i < f.grid.nx; ++i) {
            const cplx v = f.at(j, i);
            out << csv_format(f.grid.x(i)) << ',' << csv_format(f.grid.t(j)) << ','
                << csv_format(v.real()) << ',' << csv_format(v.imag()) << '\n';
        }
    json side{{"tool_version", version},
              {"spec", to_json(f.spec)},
              {"grid", to_json(f.grid)}};
    if (!config_echo.is_null() && !config_echo.empty()) side["config"] = config_echo;
    std::filesystem::path jp = csv_path;
    jp.replace_extension(".json");
    std::ofstream(jp) << side.dump(2) << '\n';
}

inline json to_json(const Certificate& c) {
    return json{{"quantity", c.quantity},
                {"analytic", to_json(c.analytic)},
                {"computed", to_json(c.computed)},
                {"abs_err", c.abs_err},
                {"conclusion", c.conclusion}};
}

inline json to_json(const MultiplicityRecord& m) {
    return json{{"lambda", to_json(m.lambda)}, {"geometric", m.geometric},
                {"algebraic", m.algebraic}};
}

inline json to_json(const SpectrumReport& r) {
    json ev = json::array(), tg = json::array(), ma = json::array(), mu = json::array(),
         ar = json::array();
    for (const cplx z : r.eigenvalues) ev.push_back(to_json(z));
    for (const cplx z : r.analytic_targets) tg.push_back(to_json(z));
    for (const auto& m : r.matches)
        ma.push_back(json{{"target", to_json(m.target)},
                          {"computed", to_json(m.computed)},
                          {"cluster_mean", to_json(m.cluster_mean)},
                          {"cluster_size", m.cluster_size},
                          {"distance", m.distance}});
    for (const auto& m : r.multiplicities) mu.push_back(to_json(m));
    for (const cplx z : r.artifacts) ar.push_back(to_json(z));
    return json{{"basis", {{"type", r.basis.name()}, {"n", r.basis.n}, {"extent", r.basis.extent}}},
                {"t", r.snapshot_time},
                {"eigenvalues", ev},
                {"analytic_targets", tg},
                {"matches", ma},
                {"multiplicities", mu},
                {"artifacts", ar},
                {"max_match_distance", r.max_match_distance},
                {"symmetry_defect", r.symmetry_defect}};
}

inline json to_json(const RateReport& r) {
    return json{{"predicted", r.predicted},
                {"measured", r.measured},
                {"rel_err", r.rel_err},
                {"window", {r.window_t0, r.window_t1}},
                {"seed_amplitude", r.seed_amplitude},
                {"retried", r.retried}};
}

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::PairI: return "pair_i";
        case Provenance::PairII: return "pair_ii";
        case Provenance::PairIII: return "pair_iii";
        case Provenance::Generalized: return "generalized";
        case Provenance::Combination: return "combination";
    }
    return "?";
}

inline json catalog_manifest(const FamilyCatalog& cat, bool include_internal = false) {
    json entries = json::array();
    auto emit = [&](const FamilyEntry& e, bool internal) {
        entries.push_back(json{{"label", e.label},
                               {"provenance", to_string(e.solution.provenance)},
                               {"growth_class", to_string(e.solution.growth_class)},
                               {"rate", e.solution.rate},
                               {"partner", e.asymptotic_partner},
                               {"internal", internal}});
    };
    for (const auto& e : cat.entries) emit(e, false);
    if (include_internal)
        for (const auto& e : cat.internal) emit(e, true);
    return json{{"tool_version", version}, {"about", to_json(cat.about)}, {"entries", entries}};
}

inline void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << j.dump(2) << '\n';
}

// ── flat key=value experiment configuration ───────────────────────────────────

struct KeyValueConfig {
    std::map<std::string, std::string> kv;

    static KeyValueConfig load(const std::filesystem::path& path) {
        KeyValueConfig c;
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config " + path.string());
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t\r");
                const auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
            };
            const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
            if (!key.empty()) c.kv[key] = val;
        }
        return c;
    }

    void save(const std::filesystem::path& path) const {
        std::ofstream out(path);
        for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
    }

    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }
    double get(const std::string& key, double fallback) const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : std::stod(it->second);
    }
    long get(const std::string& key, long fallback) const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : std::stol(it->second);
    }
};

}  // namespace nlsb
