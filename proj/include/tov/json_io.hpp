#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "tov/coupling.hpp"
#include "tov/kernel.hpp"
#include "tov/measure.hpp"

namespace tov {

// On-disk formats:
//   poset    {"labels": [...], "covers": [[i, j], ...]}
//   measure  {"poset": <inline poset or path string>, "weights": [...]}
//   kernel   {"poset": <inline poset or path string>, "rows": [[...], ...]}
//   certificate {"m", "sigma_m", "rate", "stationary", "residual"}

nlohmann::json read_json_file(const std::filesystem::path& path);

// Writes atomically: temp file in the same directory, then rename.
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

PosetPtr poset_from_json(const nlohmann::json& j);
nlohmann::json poset_to_json(const Poset& p);

// `base_dir` resolves a relative "poset" path reference.
Measure measure_from_json(const nlohmann::json& j,
                          const std::filesystem::path& base_dir);
MarkovKernel kernel_from_json(const nlohmann::json& j,
                              const std::filesystem::path& base_dir);
nlohmann::json kernel_to_json(const MarkovKernel& k);

nlohmann::json certificate_to_json(const StabilityCertificate& cert);

// 17 significant digits, C locale; round-trips doubles exactly.
std::string fmt_real(double x);

// Deterministic CSV assembly ('.' decimal, '\n' rows, no trailing spaces).
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns);
    void add_row(const std::vector<double>& values);
    const std::string& text() const { return text_; }

  private:
    std::size_t width_;
    std::string text_;
};

}  // namespace tov
