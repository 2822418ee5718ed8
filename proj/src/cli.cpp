#include "ymlab/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ymlab/persist.hpp"
#include "ymlab/reduce_verify.hpp"

namespace ymlab {

namespace {

using json = nlohmann::ordered_json;

const char* kSuspectNote =
    "verification FAILED: the d*F equations that are not encoded in the system are the first suspect";

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

json sample_json(const SampleOutcome& s) {
    json j;
    json u = json::array();
    for (const auto& c : s.u) u.push_back(to_string(c));
    j["u"] = u;
    j["rank"] = s.rank;
    j["kernel_dim"] = s.kernel_dim;
    j["rank_reversed"] = s.rank_reversed;
    j["pass"] = s.pass;
    if (!s.pass) {
        json off = json::object();
        for (int c = 0; c < 9; ++c)
            if (s.offending[c] != 0) off[column_label(c)] = to_string(s.offending[c]);
        j["offending"] = off;
    }
    return j;
}

json split_json(const LinkField& u) {
    json j;
    j["group"] = std::string(to_string(u.kind()));
    j["dims"] = u.geometry().dim();
    j["extents"] = u.geometry().extents();
    j["energy"] = wilson_energy(u);
    j["force_inf"] = force(u).sup_norm();
    return j;
}

struct Options {
    std::string config_path;
    std::string snapshot_path;
    int mu = 0;
    std::string sign = "+";
    int random_k = 0;
    double h = 1e-4;
    std::uint64_t seed = 1;
    double amplitude = 1.0;
    long n_max = 8;
    int samples = 5;
    std::string certificate;
    bool ablate = false;
    std::string alpha;
    int moment_dim = 4;
};

int cmd_minimize(const Options& o, std::ostream& out) {
    const RunConfig cfg = load_config(o.config_path);
    const RunArtifacts art = run_minimize(cfg);
    json summary = run_report_json(cfg, art.report, art.diagnostics, art.variations);
    summary["output"] = art.directory.string();
    out << summary.dump(2) << "\n";
    return art.report.converged ? kExitOk : kExitFailed;
}

int cmd_analyze(const Options& o, std::ostream& out) {
    const LinkField u = load_snapshot(o.snapshot_path);
    json j = split_json(u);
    if (u.geometry().dim() == 4) {
        const EnergySplit s = energy_split(u);
        j["e_plus"] = s.e_plus;
        j["e_minus"] = s.e_minus;
        j["q"] = s.q;
    }
    j["diagnostics"] = to_json(run_diagnostics(u));
    out << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_charge(const Options& o, std::ostream& out, std::ostream& err) {
    const LinkField u = load_snapshot(o.snapshot_path);
    if (u.geometry().dim() != 4) {
        err << "charge: topological charge needs a 4-dimensional lattice\n";
        return kExitInvalid;
    }
    const EnergySplit s = energy_split(u);
    json j;
    j["q"] = s.q;
    j["rounded"] = static_cast<long>(std::lround(s.q));
    j["ambiguous"] = topologically_ambiguous(s.q);
    j["e_plus"] = s.e_plus;
    j["e_minus"] = s.e_minus;
    j["clover_energy"] = s.total;
    j["wilson_energy"] = wilson_energy(u);
    out << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_variation(const Options& o, std::ostream& out, std::ostream& err) {
    const LinkField u = load_snapshot(o.snapshot_path);
    std::vector<VariationReport> reps;
    if (o.mu != 0) {
        if (u.geometry().dim() != 4) {
            err << "variation: --mu needs a 4-dimensional lattice\n";
            return kExitInvalid;
        }
        const Duality s = o.sign == "+" ? Duality::SelfDual : Duality::AntiSelfDual;
        const OneFormField psi = build_killing_variation(clover(u), o.mu - 1, s);
        reps.push_back(second_variation(u, psi, o.h, "killing:" + std::to_string(o.mu) + o.sign));
    }
    for (int i = 0; i < o.random_k; ++i) {
        const OneFormField psi =
            random_variation(u.geometry(), u.kind(), o.seed + static_cast<std::uint64_t>(i), o.amplitude);
        reps.push_back(second_variation(u, psi, o.h, "random:" + std::to_string(i)));
    }
    if (reps.empty()) {
        DiagnosticsOptions d;
        d.h = o.h;
        d.psi_amplitude = o.amplitude;
        reps = standard_variations(u, d, o.seed);
    }
    json j = json::array();
    for (const auto& r : reps) j.push_back(to_json(r));
    out << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const unsigned groups = o.ablate ? kWithoutRelations : kAllRows;
    std::ofstream cert;
    if (!o.certificate.empty()) {
        cert.open(o.certificate);
        if (!cert) throw std::runtime_error("cannot write certificate " + o.certificate);
    }
    json report;
    report["groups"] = o.ablate ? "without_relations" : "all";
    report["seed"] = o.seed;
    json levels = json::array();
    bool all_pass = true;
    for (long n = 1; n <= o.n_max; ++n) {
        const VerificationReport r = verify_forces_zero(n, o.samples, o.seed + static_cast<std::uint64_t>(n), groups);
        json level;
        level["N"] = n;
        level["pass"] = r.pass;
        level["rank_consistent"] = r.rank_consistent;
        level["kernel_dim"] = r.samples.empty() ? 0 : r.samples.front().kernel_dim;
        level["elapsed_ms"] = r.elapsed_ms;
        json samples = json::array();
        for (const auto& s : r.samples) samples.push_back(sample_json(s));
        level["samples"] = samples;
        levels.push_back(level);
        all_pass = all_pass && r.pass && r.rank_consistent;
        if (cert.is_open() && !r.samples.empty()) {
            const ReductionSystem sys = build_system(n, r.samples.front().u, groups);
            cert << format_certificate(sys, nullspace(sys).certificate) << "\n";
        }
    }
    report["levels"] = levels;
    report["pass"] = all_pass;
    if (!all_pass) report["note"] = kSuspectNote;
    out << report.dump(2) << "\n";
    return all_pass ? kExitOk : kExitFailed;
}

int cmd_moments(const Options& o, std::ostream& out) {
    out << to_string(sphere_moment(parse_int_list(o.alpha), o.moment_dim)) << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lattice Yang-Mills minimizer and structure diagnostics", "ymlab"};
    app.require_subcommand(1);
    Options o;

    auto* minimize_cmd = app.add_subcommand("minimize", "Run the gradient flow from a config file");
    minimize_cmd->add_option("config", o.config_path, "Config file")->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "Diagnostics of a snapshot");
    analyze_cmd->add_option("snapshot", o.snapshot_path, "Snapshot file")->required();

    auto* charge_cmd = app.add_subcommand("charge", "Topological charge of a snapshot");
    charge_cmd->add_option("snapshot", o.snapshot_path, "Snapshot file")->required();

    auto* variation_cmd = app.add_subcommand("variation", "Second variation along test directions");
    variation_cmd->set_help_flag("--help", "Print this help message and exit");
    variation_cmd->add_option("snapshot", o.snapshot_path, "Snapshot file")->required();
    auto* mu_opt = variation_cmd->add_option("--mu", o.mu, "Translation direction 1..4")->check(CLI::Range(1, 4));
    variation_cmd->add_option("--sign", o.sign, "+ for F+, - for F-")
        ->check(CLI::IsMember({"+", "-"}))
        ->needs(mu_opt);
    variation_cmd->add_option("--random", o.random_k, "Number of random directions")->check(CLI::NonNegativeNumber);
    variation_cmd->add_option("--h", o.h, "Finite-difference step")->check(CLI::PositiveNumber);
    variation_cmd->add_option("--seed", o.seed, "Seed for random directions");
    variation_cmd->add_option("--amplitude", o.amplitude, "Amplitude of random directions")
        ->check(CLI::NonNegativeNumber);

    auto* verify_cmd = app.add_subcommand("verify-reduction", "Exact check that the reduction forces p = 0");
    verify_cmd->add_option("--n-max", o.n_max, "Largest degree N")->check(CLI::Range(1L, 1000L));
    verify_cmd->add_option("--samples", o.samples, "Random u per degree")->check(CLI::Range(1, 100000));
    verify_cmd->add_option("--seed", o.seed, "Sampling seed");
    verify_cmd->add_option("--certificate", o.certificate, "Write echelon certificates to this file");
    verify_cmd->add_flag("--ablate", o.ablate, "Drop the two relation groups (control, expected to fail)");

    auto* moments_cmd = app.add_subcommand("moments", "Exact monomial average over the unit sphere");
    moments_cmd->add_option("--alpha", o.alpha, "Exponents, comma separated")->required();
    moments_cmd->add_option("--dim", o.moment_dim, "Ambient dimension n")->check(CLI::Range(2, 1000000));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitInvalid;
    }

    try {
        if (*minimize_cmd) return cmd_minimize(o, out);
        if (*analyze_cmd) return cmd_analyze(o, out);
        if (*charge_cmd) return cmd_charge(o, out, err);
        if (*variation_cmd) return cmd_variation(o, out, err);
        if (*verify_cmd) return cmd_verify(o, out);
        if (*moments_cmd) return cmd_moments(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    err << app.help();
    return kExitInvalid;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace ymlab
