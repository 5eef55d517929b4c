#include "brownwind/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <openssl/evp.h>

namespace brownwind {

using nlohmann::json;

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string field_pgm(const WindingField& field, int scale, bool mark_on_curve) {
    if (scale < 1) throw std::invalid_argument("pgm: scale must be >= 1");
    const GridSpec& g = field.grid;
    std::string out = fmt::format("P2\n{} {}\n255\n", g.nx, g.ny);
    out.reserve(out.size() + g.cells() * 4);
    for (int j = g.ny - 1; j >= 0; --j) {
        for (int i = 0; i < g.nx; ++i) {
            long v = 128L + static_cast<long>(field.at(i, j)) * scale;
            if (mark_on_curve && field.curve_at(i, j)) v = 255;
            v = std::clamp(v, 0L, 255L);
            if (i) out += ' ';
            out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    os << text;
    if (!os.flush()) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void export_field_pgm(const WindingField& field, const std::filesystem::path& path, int scale, bool mark_on_curve) {
    write_text(path, field_pgm(field, scale, mark_on_curve));
}

std::string werner_csv(std::span<const WernerRow> rows) {
    std::string s = "N,replicate,stat_offcurve,stat_inclusive\n";
    for (const auto& r : rows)
        s += fmt::format("{},{},{},{}\n", r.N, r.replicate, format_double(r.stat_offcurve),
                         format_double(r.stat_inclusive));
    return s;
}

std::string theorem_csv(std::span<const TheoremRow> rows) {
    std::string s = "N,f_name,discrepancy,bound,ratio\n";
    for (const auto& r : rows)
        s += fmt::format("{},{},{},{},{}\n", r.N, r.f_name, format_double(r.discrepancy), format_double(r.bound),
                         format_double(r.ratio));
    return s;
}

std::string tail_csv(std::span<const TailRow> rows) {
    std::string s = "N,R,ccdf\n";
    for (const auto& r : rows) s += fmt::format("{},{},{}\n", r.N, format_double(r.R), format_double(r.ccdf));
    return s;
}

std::string pairmoment_csv(std::span<const PairMomentRow> rows) {
    std::string s = "T,M,estimate,stderr\n";
    for (const auto& r : rows)
        s += fmt::format("{},{},{},{}\n", r.T, r.M, format_double(r.estimate), format_double(r.stderr_));
    return s;
}

std::vector<std::string> export_tables(const McSummary& summary, std::span<const PairMomentRow> pairs,
                                       const std::filesystem::path& dir) {
    write_text(dir / "werner.csv", werner_csv(summary.werner));
    write_text(dir / "theorem.csv", theorem_csv(summary.theorem));
    write_text(dir / "tail.csv", tail_csv(summary.tail));
    write_text(dir / "pairmoment.csv", pairmoment_csv(pairs));
    return {"werner.csv", "theorem.csv", "tail.csv", "pairmoment.csv"};
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::string hex;
    for (unsigned int k = 0; k < len; ++k) hex += fmt::format("{:02x}", digest[k]);
    return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return sha256_hex(ss.str());
}

json config_to_json(const McConfig& c) {
    const ParamSet& p = c.params;
    return json{{"master_seed", c.master_seed},
                {"replicates", c.replicates},
                {"levels", c.levels},
                {"grid", c.grid},
                {"N_list", c.N_list},
                {"params",
                 {{"t", p.t}, {"alpha", p.alpha}, {"m", p.m}, {"zeta", p.zeta}, {"s", p.s}, {"delta", p.delta},
                  {"gamma", p.gamma}}},
                {"eta_variant", to_string(c.eta_variant)},
                {"bump_sigma", c.bump_sigma},
                {"include_band", c.include_band},
                {"tail_delta", c.tail_delta},
                {"tail_R", c.tail_R},
                {"pair_T", c.pair_T},
                {"pair_M", c.pair_M},
                {"scaling_T", c.scaling_T},
                {"scaling_N", c.scaling_N}};
}

McConfig config_from_json(const json& j, McConfig c) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "master_seed") c.master_seed = value.get<std::uint64_t>();
        else if (key == "replicates") c.replicates = value.get<int>();
        else if (key == "levels") c.levels = value.get<int>();
        else if (key == "grid") c.grid = value.get<int>();
        else if (key == "N_list") c.N_list = value.get<std::vector<int>>();
        else if (key == "threads") c.threads = value.get<int>();
        else if (key == "eta_variant") c.eta_variant = parse_eta_variant(value.get<std::string>());
        else if (key == "bump_sigma") c.bump_sigma = value.get<double>();
        else if (key == "include_band") c.include_band = value.get<bool>();
        else if (key == "tail_delta") c.tail_delta = value.get<double>();
        else if (key == "tail_R") c.tail_R = value.get<std::vector<double>>();
        else if (key == "pair_T") c.pair_T = value.get<std::vector<int>>();
        else if (key == "pair_M") c.pair_M = value.get<std::vector<int>>();
        else if (key == "scaling_T") c.scaling_T = value.get<int>();
        else if (key == "scaling_N") c.scaling_N = value.get<int>();
        else if (key == "params") {
            for (const auto& [pk, pv] : value.items()) {
                double& slot = pk == "t"       ? c.params.t
                               : pk == "alpha" ? c.params.alpha
                               : pk == "m"     ? c.params.m
                               : pk == "zeta"  ? c.params.zeta
                               : pk == "s"     ? c.params.s
                               : pk == "delta" ? c.params.delta
                               : pk == "gamma" ? c.params.gamma
                                               : throw std::invalid_argument("config: unknown param '" + pk + "'");
                slot = pv.get<double>();
            }
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    return c;
}

json RunManifest::to_json() const {
    return json{{"config", config}, {"version", version}, {"master_seed", master_seed}, {"checksums", checksums}};
}

RunManifest make_manifest(json config, std::uint64_t master_seed, const std::filesystem::path& dir,
                          const std::vector<std::string>& files) {
    RunManifest m;
    m.config = std::move(config);
    m.master_seed = master_seed;
    for (const auto& f : files) m.checksums[f] = sha256_file(dir / f);
    return m;
}

json summary_json(const McSummary& s, std::span<const PairMomentRow> pairs) {
    json j;
    j["valid"] = s.valid;
    j["error"] = s.error;
    j["completed_replicates"] = s.completed;
    j["per_N"] = json::array();
    for (const auto& p : s.per_n)
        j["per_N"].push_back({{"N", p.N},
                              {"mean", p.mean},
                              {"variance", p.variance},
                              {"l2_error", p.l2_error},
                              {"ci_half", p.ci_half},
                              {"median", p.median}});
    j["werner"] = json::array();
    for (const auto& r : s.werner)
        j["werner"].push_back({{"N", r.N},
                               {"replicate", r.replicate},
                               {"stat_offcurve", r.stat_offcurve},
                               {"stat_inclusive", r.stat_inclusive}});
    j["theorem"] = json::array();
    for (const auto& r : s.theorem)
        j["theorem"].push_back(
            {{"N", r.N}, {"f_name", r.f_name}, {"discrepancy", r.discrepancy}, {"bound", r.bound}, {"ratio", r.ratio}});
    j["tail"] = json::array();
    for (const auto& r : s.tail) j["tail"].push_back({{"N", r.N}, {"R", r.R}, {"ccdf", r.ccdf}});
    j["pairmoment"] = json::array();
    for (const auto& r : pairs)
        j["pairmoment"].push_back({{"T", r.T}, {"M", r.M}, {"estimate", r.estimate}, {"stderr", r.stderr_}});
    return j;
}

}  // namespace brownwind
