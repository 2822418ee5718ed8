#pragma once

// Run configuration, field snapshots and report serialization.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ymlab/diagnostics.hpp"
#include "ymlab/flow.hpp"

namespace ymlab {

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class SnapshotError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class StartKind { Cold, Hot, AbelianFlux };

struct DiagnosticsOptions {
    bool enabled = true;
    int random_variations = 20;
    bool killing_variations = true;
    double h = 1e-4;
    double psi_amplitude = 1.0;
};

/// Config files are "key = value" lines; '#' starts a comment. The schema
/// version is mandatory and unknown keys are rejected.
struct RunConfig {
    static constexpr int kSchemaVersion = 1;

    GroupKind group = GroupKind::SU2;
    int dims = 4;
    std::vector<int> extents{4, 4, 4, 4};
    StartKind start = StartKind::Cold;
    std::uint64_t seed = 1;   ///< hot start stream
    double amplitude = 0.5;   ///< hot start amplitude
    /// n_12, n_13, n_14, n_23, n_24, n_34 for the abelian flux start.
    std::array<long, 6> flux{};
    FlowConfig flow;
    DiagnosticsOptions diagnostics;
    std::string output = "ymlab-out";
    std::uint64_t global_seed = 1;  ///< random test directions

    LatticeGeometry geometry() const { return LatticeGeometry(dims, extents); }
    void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
/// Fixed key order, every key present, doubles printed round-trip exact.
std::string canonical_config(const RunConfig& cfg);
/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

LinkField initial_field(const RunConfig& cfg);

// Snapshot layout (all little-endian):
//   "YMF1" | u8 version = 1 | u8 group (0 = U1, 1 = SU2, 2 = SU3) | u8 d | u8 reserved = 0
//   | u32 extents[d] | links, site-major (x_1 fastest), direction-minor.
// U(1) links are one f64 angle; SU(n) links are n^2 complex entries, row-major, each (re, im) f64.
inline constexpr std::uint8_t kSnapshotVersion = 1;

std::vector<std::uint8_t> encode_snapshot(const LinkField& u);
LinkField decode_snapshot(const std::vector<std::uint8_t>& bytes);
void save_snapshot(const LinkField& u, const std::filesystem::path& path);
LinkField load_snapshot(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string history_csv(const std::vector<HistoryRow>& rows);
std::string format_double(double v);

nlohmann::ordered_json to_json(const DiagnosticsReport& d);
nlohmann::ordered_json to_json(const VariationReport& v);
nlohmann::ordered_json to_json(const CommutatorLocation& loc);

nlohmann::ordered_json run_report_json(const RunConfig& cfg, const MinimizeReport& rep,
                                       const std::optional<DiagnosticsReport>& diag,
                                       const std::vector<VariationReport>& variations);

/// The default variation set: `random_variations` random directions and,
/// on 4d lattices, the eight translation variations i_mu F^+-.
std::vector<VariationReport> standard_variations(const LinkField& u, const DiagnosticsOptions& opts,
                                                 std::uint64_t seed);

struct RunArtifacts {
    MinimizeReport report;
    std::optional<DiagnosticsReport> diagnostics;
    std::vector<VariationReport> variations;
    std::filesystem::path directory;
};

/// Full minimize run: writes config.txt, history.csv, report.json and final.ymf
/// into cfg.output.
RunArtifacts run_minimize(const RunConfig& cfg, const FlowObserver& observer = {});

}  // namespace ymlab
