#include "tov/json_io.hpp"

#include <cstdio>
#include <fstream>

#include "tov/errors.hpp"

namespace tov {

namespace fs = std::filesystem;
using nlohmann::json;

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

void write_text_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << text;
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

void write_json_file(const fs::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

PosetPtr poset_from_json(const json& j) {
    if (!j.is_object() || !j.contains("labels") || !j.contains("covers"))
        throw ConfigError("poset JSON needs 'labels' and 'covers'");
    std::vector<std::string> labels;
    for (const auto& l : j.at("labels")) {
        if (l.is_string())
            labels.push_back(l.get<std::string>());
        else
            labels.push_back(l.dump());
    }
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : j.at("covers")) {
        if (!c.is_array() || c.size() != 2)
            throw ConfigError("each cover must be an index pair");
        covers.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    }
    return make_poset(std::move(labels), std::move(covers));
}

json poset_to_json(const Poset& p) {
    json covers = json::array();
    for (auto [a, b] : p.cover_arcs()) covers.push_back({a, b});
    return {{"labels", p.labels()}, {"covers", covers}};
}

namespace {

PosetPtr resolve_poset_field(const json& j, const fs::path& base_dir) {
    if (!j.contains("poset")) throw ConfigError("missing 'poset' field");
    const auto& field = j.at("poset");
    if (field.is_string()) {
        fs::path p = field.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        return poset_from_json(read_json_file(p));
    }
    return poset_from_json(field);
}

}  // namespace

Measure measure_from_json(const json& j, const fs::path& base_dir) {
    if (!j.contains("weights")) throw ConfigError("measure JSON needs 'weights'");
    return Measure(resolve_poset_field(j, base_dir),
                   j.at("weights").get<std::vector<double>>());
}

MarkovKernel kernel_from_json(const json& j, const fs::path& base_dir) {
    if (!j.contains("rows")) throw ConfigError("kernel JSON needs 'rows'");
    return MarkovKernel(resolve_poset_field(j, base_dir),
                        j.at("rows").get<std::vector<std::vector<double>>>());
}

json kernel_to_json(const MarkovKernel& k) {
    return {{"poset", poset_to_json(*k.poset())}, {"rows", k.rows()}};
}

json certificate_to_json(const StabilityCertificate& cert) {
    return {{"m", cert.m},
            {"sigma_m", cert.sigma_m},
            {"rate", cert.rate},
            {"stationary", cert.stationary.weights()},
            {"residual", cert.residual}};
}

std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : width_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) text_ += ',';
        text_ += columns[i];
    }
    text_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& values) {
    if (values.size() != width_) throw BadParams("CSV row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) text_ += ',';
        text_ += fmt_real(values[i]);
    }
    text_ += '\n';
}

}  // namespace tov
