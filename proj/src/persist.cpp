#include "ymlab/persist.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ymlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || !std::isfinite(d)) throw ConfigError(key + ": expected a number, got '" + v + "'");
    return d;
}

long long parse_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long long i = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0') throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return i;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::string start_name(StartKind s) {
    switch (s) {
    case StartKind::Cold: return "cold";
    case StartKind::Hot: return "hot";
    case StartKind::AbelianFlux: return "abelian_flux";
    }
    return "?";
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double d) {
    const auto bits = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class ByteReader {
public:
    explicit ByteReader(const std::vector<std::uint8_t>& b) : b_(b) {}
    void need(std::size_t n) const {
        if (pos_ + n > b_.size()) throw SnapshotError("truncated snapshot");
    }
    std::uint8_t u8() {
        need(1);
        return b_[pos_++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b_[pos_++]) << (8 * i);
        return v;
    }
    double f64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b_[pos_++]) << (8 * i);
        return std::bit_cast<double>(v);
    }
    bool done() const { return pos_ == b_.size(); }

private:
    const std::vector<std::uint8_t>& b_;
    std::size_t pos_ = 0;
};

}  // namespace

// ------------------------------------------------------------------ config

void RunConfig::validate() const {
    if (dims != 3 && dims != 4) throw ConfigError("dims must be 3 or 4");
    if (static_cast<int>(extents.size()) != dims) throw ConfigError("extents must list one value per dimension");
    for (int l : extents)
        if (l <= 0) throw ConfigError("extents must be positive");
    if (start == StartKind::AbelianFlux && (group != GroupKind::U1 || dims != 4))
        throw ConfigError("abelian_flux start requires group U1 and dims 4");
    if (amplitude < 0.0) throw ConfigError("amplitude must be non-negative");
    if (diagnostics.random_variations < 0) throw ConfigError("diagnostics.random_variations must be non-negative");
    if (!(diagnostics.h > 0.0)) throw ConfigError("diagnostics.h must be positive");
    try {
        flow.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("flow: ") + e.what());
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, std::function<void(const std::string&)>> setters;
    const auto reg = [&](const std::string& key, std::function<void(const std::string&)> f) { setters[key] = f; };
    bool have_schema = false;

    reg("schema", [&](const std::string& v) {
        if (parse_int("schema", v) != RunConfig::kSchemaVersion)
            throw ConfigError("unsupported schema version " + v);
        have_schema = true;
    });
    reg("group", [&](const std::string& v) {
        try {
            cfg.group = parse_group_kind(v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    });
    reg("dims", [&](const std::string& v) { cfg.dims = static_cast<int>(parse_int("dims", v)); });
    reg("extents", [&](const std::string& v) {
        cfg.extents.clear();
        for (const auto& s : split(v, ',')) cfg.extents.push_back(static_cast<int>(parse_int("extents", s)));
    });
    reg("start", [&](const std::string& v) {
        if (v == "cold") cfg.start = StartKind::Cold;
        else if (v == "hot") cfg.start = StartKind::Hot;
        else if (v == "abelian_flux") cfg.start = StartKind::AbelianFlux;
        else throw ConfigError("start: expected cold, hot or abelian_flux, got '" + v + "'");
    });
    reg("seed", [&](const std::string& v) { cfg.seed = static_cast<std::uint64_t>(parse_int("seed", v)); });
    reg("amplitude", [&](const std::string& v) { cfg.amplitude = parse_double("amplitude", v); });
    reg("flux", [&](const std::string& v) {
        const auto parts = split(v, ',');
        if (parts.size() != 6) throw ConfigError("flux: expected six integers n12,n13,n14,n23,n24,n34");
        for (int i = 0; i < 6; ++i) cfg.flux[i] = static_cast<long>(parse_int("flux", parts[i]));
    });
    reg("flow.step_init", [&](const std::string& v) { cfg.flow.step_init = parse_double("flow.step_init", v); });
    reg("flow.step_shrink", [&](const std::string& v) { cfg.flow.step_shrink = parse_double("flow.step_shrink", v); });
    reg("flow.step_grow", [&](const std::string& v) { cfg.flow.step_grow = parse_double("flow.step_grow", v); });
    reg("flow.tol_force", [&](const std::string& v) { cfg.flow.tol_force = parse_double("flow.tol_force", v); });
    reg("flow.max_iters", [&](const std::string& v) { cfg.flow.max_iters = static_cast<long>(parse_int("flow.max_iters", v)); });
    reg("flow.measure_every", [&](const std::string& v) {
        cfg.flow.measure_every = static_cast<long>(parse_int("flow.measure_every", v));
    });
    reg("flow.reunitarize_every", [&](const std::string& v) {
        cfg.flow.reunitarize_every = static_cast<long>(parse_int("flow.reunitarize_every", v));
    });
    reg("diagnostics.enabled", [&](const std::string& v) { cfg.diagnostics.enabled = parse_bool("diagnostics.enabled", v); });
    reg("diagnostics.random_variations", [&](const std::string& v) {
        cfg.diagnostics.random_variations = static_cast<int>(parse_int("diagnostics.random_variations", v));
    });
    reg("diagnostics.killing_variations", [&](const std::string& v) {
        cfg.diagnostics.killing_variations = parse_bool("diagnostics.killing_variations", v);
    });
    reg("diagnostics.h", [&](const std::string& v) { cfg.diagnostics.h = parse_double("diagnostics.h", v); });
    reg("diagnostics.psi_amplitude", [&](const std::string& v) {
        cfg.diagnostics.psi_amplitude = parse_double("diagnostics.psi_amplitude", v);
    });
    reg("output", [&](const std::string& v) { cfg.output = v; });
    reg("global_seed", [&](const std::string& v) { cfg.global_seed = static_cast<std::uint64_t>(parse_int("global_seed", v)); });

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::map<std::string, int> seen;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (seen.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        seen[key] = lineno;
        try {
            it->second(value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_schema) throw ConfigError("missing 'schema' key");
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string canonical_config(const RunConfig& cfg) {
    std::ostringstream os;
    auto join = [](const auto& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
        return s;
    };
    os << "schema = " << RunConfig::kSchemaVersion << "\n";
    os << "group = " << to_string(cfg.group) << "\n";
    os << "dims = " << cfg.dims << "\n";
    os << "extents = " << join(cfg.extents) << "\n";
    os << "start = " << start_name(cfg.start) << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "amplitude = " << format_double(cfg.amplitude) << "\n";
    os << "flux = " << join(cfg.flux) << "\n";
    os << "flow.step_init = " << format_double(cfg.flow.step_init) << "\n";
    os << "flow.step_shrink = " << format_double(cfg.flow.step_shrink) << "\n";
    os << "flow.step_grow = " << format_double(cfg.flow.step_grow) << "\n";
    os << "flow.tol_force = " << format_double(cfg.flow.tol_force) << "\n";
    os << "flow.max_iters = " << cfg.flow.max_iters << "\n";
    os << "flow.measure_every = " << cfg.flow.measure_every << "\n";
    os << "flow.reunitarize_every = " << cfg.flow.reunitarize_every << "\n";
    os << "diagnostics.enabled = " << (cfg.diagnostics.enabled ? "true" : "false") << "\n";
    os << "diagnostics.random_variations = " << cfg.diagnostics.random_variations << "\n";
    os << "diagnostics.killing_variations = " << (cfg.diagnostics.killing_variations ? "true" : "false") << "\n";
    os << "diagnostics.h = " << format_double(cfg.diagnostics.h) << "\n";
    os << "diagnostics.psi_amplitude = " << format_double(cfg.diagnostics.psi_amplitude) << "\n";
    os << "output = " << cfg.output << "\n";
    os << "global_seed = " << cfg.global_seed << "\n";
    return os.str();
}

std::string config_hash(const RunConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_config(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

LinkField initial_field(const RunConfig& cfg) {
    cfg.validate();
    const LatticeGeometry geom = cfg.geometry();
    switch (cfg.start) {
    case StartKind::Cold: return cold_start(geom, cfg.group);
    case StartKind::Hot: return hot_start(geom, cfg.group, cfg.seed, cfg.amplitude);
    case StartKind::AbelianFlux: {
        FluxMatrix n{};
        int p = 0;
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = mu + 1; nu < 4; ++nu) {
                n[mu][nu] = static_cast<double>(cfg.flux[p]);
                n[nu][mu] = -n[mu][nu];
                ++p;
            }
        }
        return abelian_flux_start(geom, n);
    }
    }
    throw ConfigError("unknown start");
}

// --------------------------------------------------------------- snapshot

std::vector<std::uint8_t> encode_snapshot(const LinkField& u) {
    const auto& geom = u.geometry();
    std::vector<std::uint8_t> out = {'Y', 'M', 'F', '1', kSnapshotVersion, static_cast<std::uint8_t>(u.kind()),
                                     static_cast<std::uint8_t>(geom.dim()), 0};
    for (int l : geom.extents()) put_u32(out, static_cast<std::uint32_t>(l));
    const int n = matrix_dim(u.kind());
    for (const auto& link : u.links()) {
        if (u.kind() == GroupKind::U1) {
            put_f64(out, link.phase());
            continue;
        }
        const CMatrix m = link.matrix();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                put_f64(out, m(i, j).real());
                put_f64(out, m(i, j).imag());
            }
        }
    }
    return out;
}

LinkField decode_snapshot(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    r.need(4);
    if (!(bytes[0] == 'Y' && bytes[1] == 'M' && bytes[2] == 'F' && bytes[3] == '1'))
        throw SnapshotError("bad magic: not a YMF1 snapshot");
    for (int i = 0; i < 4; ++i) r.u8();
    const std::uint8_t version = r.u8();
    if (version != kSnapshotVersion) throw SnapshotError("unsupported snapshot version " + std::to_string(version));
    const std::uint8_t group = r.u8();
    if (group > 2) throw SnapshotError("unknown group id " + std::to_string(group));
    const GroupKind kind = static_cast<GroupKind>(group);
    const int d = r.u8();
    if (d != 3 && d != 4) throw SnapshotError("unsupported lattice dimension " + std::to_string(d));
    r.u8();  // reserved
    std::vector<int> extents;
    for (int mu = 0; mu < d; ++mu) {
        const std::uint32_t l = r.u32();
        if (l == 0 || l > (1u << 20)) throw SnapshotError("invalid extent");
        extents.push_back(static_cast<int>(l));
    }
    LinkField u(LatticeGeometry(d, extents), kind);
    const int n = matrix_dim(kind);
    for (auto& link : u.links()) {
        if (kind == GroupKind::U1) {
            const double phase = r.f64();
            if (!std::isfinite(phase)) throw SnapshotError("non-finite U(1) phase");
            link = GroupElement::from_phase(phase);
            continue;
        }
        CMatrix m(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double re = r.f64();
                const double im = r.f64();
                m(i, j) = cplx(re, im);
            }
        }
        link = GroupElement::from_matrix(kind, m);
        const double det_err = std::abs(m.determinant() - 1.0);
        if (!(unitarity_defect(link) <= 1e-6) || !(det_err <= 1e-6))
            throw SnapshotError("link violates unitarity by more than 1e-6");
    }
    if (!r.done()) throw SnapshotError("trailing bytes after link data");
    return u;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void save_snapshot(const LinkField& u, const std::filesystem::path& path) {
    const auto bytes = encode_snapshot(u);
    write_file_atomic(path, std::string(bytes.begin(), bytes.end()));
}

LinkField load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open snapshot " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_snapshot(bytes);
}

// ---------------------------------------------------------------- reports

std::string history_csv(const std::vector<HistoryRow>& rows) {
    std::string s = "iter,energy,e_plus,e_minus,q,force_inf,step\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("nan"); };
    for (const auto& r : rows) {
        s += std::to_string(r.iter) + "," + format_double(r.energy) + "," + opt(r.e_plus) + "," + opt(r.e_minus) +
             "," + opt(r.q) + "," + format_double(r.force_inf) + "," + format_double(r.step) + "\n";
    }
    return s;
}

nlohmann::ordered_json to_json(const CommutatorLocation& loc) {
    // directions reported 1-based
    nlohmann::ordered_json j;
    j["site"] = std::vector<int>(loc.site.begin(), loc.site.end());
    j["plane_a"] = {loc.plane_a[0] + 1, loc.plane_a[1] + 1};
    j["plane_b"] = {loc.plane_b[0] + 1, loc.plane_b[1] + 1};
    return j;
}

nlohmann::ordered_json to_json(const DiagnosticsReport& d) {
    nlohmann::ordered_json j;
    j["dims"] = d.dims;
    j["commutator_max"] = d.commutator_max;
    j["commutator_argmax"] = d.commutator_max > 0.0 ? to_json(d.commutator_argmax) : nlohmann::ordered_json();
    j["estar_residual"] = d.estar_residual;
    j["nabla_f_norm"] = d.nabla_f_norm;
    j["nabla_f_relative"] = d.nabla_f_relative;
    if (!d.note.empty()) j["note"] = d.note;
    return j;
}

nlohmann::ordered_json to_json(const VariationReport& v) {
    nlohmann::ordered_json j;
    j["psi_label"] = v.psi_label;
    j["fd_first"] = v.fd_first;
    j["fd_second"] = v.fd_second;
    j["direct_second"] = v.direct_second;
    j["h"] = v.h;
    j["psi_norm2"] = v.psi_norm2;
    return j;
}

nlohmann::ordered_json run_report_json(const RunConfig& cfg, const MinimizeReport& rep,
                                       const std::optional<DiagnosticsReport>& diag,
                                       const std::vector<VariationReport>& variations) {
    nlohmann::ordered_json j;
    j["config_hash"] = config_hash(cfg);
    j["group"] = std::string(to_string(cfg.group));
    j["dims"] = cfg.dims;
    j["extents"] = cfg.extents;
    j["converged"] = rep.converged;
    j["stalled"] = rep.stalled;
    j["iters"] = rep.iters;
    j["energy"] = rep.energy;
    if (rep.split) {
        j["e_plus"] = rep.split->e_plus;
        j["e_minus"] = rep.split->e_minus;
        j["q"] = rep.split->q;
        j["topologically_ambiguous"] = topologically_ambiguous(rep.split->q);
    } else {
        j["e_plus"] = nullptr;
        j["e_minus"] = nullptr;
        j["q"] = nullptr;
    }
    j["force_inf"] = rep.force_inf;
    if (diag) {
        j["commutator_max"] = diag->commutator_max;
        j["commutator_argmax"] =
            diag->commutator_max > 0.0 ? to_json(diag->commutator_argmax) : nlohmann::ordered_json();
        j["estar_residual"] = diag->estar_residual;
        j["nabla_f_norm"] = diag->nabla_f_norm;
        j["nabla_f_relative"] = diag->nabla_f_relative;
        if (!diag->note.empty()) j["note"] = diag->note;
    } else {
        j["commutator_max"] = nullptr;
        j["commutator_argmax"] = nullptr;
        j["estar_residual"] = nullptr;
        j["nabla_f_relative"] = nullptr;
    }
    j["variations"] = nlohmann::ordered_json::array();
    for (const auto& v : variations) j["variations"].push_back(to_json(v));
    return j;
}

std::vector<VariationReport> standard_variations(const LinkField& u, const DiagnosticsOptions& opts,
                                                 std::uint64_t seed) {
    std::vector<VariationReport> out;
    for (int i = 0; i < opts.random_variations; ++i) {
        const OneFormField psi = random_variation(u.geometry(), u.kind(), seed + static_cast<std::uint64_t>(i),
                                                  opts.psi_amplitude);
        out.push_back(second_variation(u, psi, opts.h, "random:" + std::to_string(i)));
    }
    if (opts.killing_variations && u.geometry().dim() == 4) {
        const SiteTwoFormField f = clover(u);
        for (int mu = 0; mu < 4; ++mu) {
            for (Duality s : {Duality::SelfDual, Duality::AntiSelfDual}) {
                const OneFormField psi = build_killing_variation(f, mu, s);
                const std::string label =
                    "killing:" + std::to_string(mu + 1) + (s == Duality::SelfDual ? "+" : "-");
                out.push_back(second_variation(u, psi, opts.h, label));
            }
        }
    }
    return out;
}

RunArtifacts run_minimize(const RunConfig& cfg, const FlowObserver& observer) {
    cfg.validate();
    RunArtifacts art;
    art.directory = cfg.output;
    std::filesystem::create_directories(art.directory);
    write_file_atomic(art.directory / "config.txt", canonical_config(cfg));

    auto [field, rep] = minimize(initial_field(cfg), cfg.flow, observer);
    field.reunitarize();
    if (cfg.diagnostics.enabled) {
        art.diagnostics = run_diagnostics(field);
        art.variations = standard_variations(field, cfg.diagnostics, cfg.global_seed);
    }
    art.report = std::move(rep);

    write_file_atomic(art.directory / "history.csv", history_csv(art.report.history));
    write_file_atomic(art.directory / "report.json",
                      run_report_json(cfg, art.report, art.diagnostics, art.variations).dump(2) + "\n");
    save_snapshot(field, art.directory / "final.ymf");
    return art;
}

}  // namespace ymlab
