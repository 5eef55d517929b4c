#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "brownwind/montecarlo.hpp"
#include "brownwind/winding.hpp"

namespace brownwind {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Decimal form with 17 significant digits (binary64 round-trip).
std::string format_double(double v);

/// Plain PGM ("P2", maxval 255): gray = clamp(128 + theta * scale, 0, 255), first
/// row is the top of the grid (largest y). With `mark_on_curve` band cells are 255.
std::string field_pgm(const WindingField& field, int scale, bool mark_on_curve = false);
void export_field_pgm(const WindingField& field, const std::filesystem::path& path, int scale,
                      bool mark_on_curve = false);

std::string werner_csv(std::span<const WernerRow> rows);
std::string theorem_csv(std::span<const TheoremRow> rows);
std::string tail_csv(std::span<const TailRow> rows);
std::string pairmoment_csv(std::span<const PairMomentRow> rows);

/// Writes werner.csv, theorem.csv, tail.csv and pairmoment.csv into `dir`;
/// returns the file names written.
std::vector<std::string> export_tables(const McSummary& summary, std::span<const PairMomentRow> pairs,
                                       const std::filesystem::path& dir);

/// Throws std::runtime_error when the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Config echo. The thread budget is left out: it never changes results.
nlohmann::json config_to_json(const McConfig& cfg);
/// Overlays the keys present in `j` onto `base`; unknown keys are an error.
McConfig config_from_json(const nlohmann::json& j, McConfig base = {});

struct RunManifest {
    nlohmann::json config;
    std::string version = kArtifactVersion;
    std::uint64_t master_seed = 0;
    std::map<std::string, std::string> checksums;  // file name -> sha256

    nlohmann::json to_json() const;
};

RunManifest make_manifest(nlohmann::json config, std::uint64_t master_seed, const std::filesystem::path& dir,
                          const std::vector<std::string>& files);

nlohmann::json summary_json(const McSummary& summary, std::span<const PairMomentRow> pairs);

}  // namespace brownwind
