#include <ww/report.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace ww {

ReportSink::ReportSink(std::string out_dir, const RunConfig& cfg)
    : dir_(std::move(out_dir)), cfg_(cfg) {}

void ReportSink::add(const std::string& name, double value, double tolerance, bool pass) {
    verdicts_.push_back({name, value, tolerance, pass});
}

void ReportSink::add_abs(const std::string& name, double value, double tolerance) {
    add(name, value, tolerance, std::abs(value) <= tolerance);
}

void ReportSink::note(const std::string& text) { notes_.push_back(text); }

bool ReportSink::all_pass() const {
    for (const Verdict& v : verdicts_)
        if (!v.pass) return false;
    return true;
}

void ReportSink::write_json(const std::string& filename) const {
    nlohmann::json j;
    j["code_version"] = code_version;
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", cfg_.hash());
    j["config_hash"] = hash;
    j["config"] = cfg_.echo;
    j["defaulted_fields"] = cfg_.defaulted;
    j["notes"] = notes_;
    nlohmann::json arr = nlohmann::json::array();
    for (const Verdict& v : verdicts_) {
        arr.push_back({{"name", v.name}, {"value", v.value}, {"tolerance", v.tolerance}, {"pass", v.pass}});
    }
    j["verdicts"] = arr;
    ensure_dir(dir_);
    std::ofstream out(dir_ + "/" + filename);
    out << j.dump(2) << "\n";
}

void ReportSink::print_summary() const {
    for (const Verdict& v : verdicts_) {
        std::printf("%-52s value=%.6e tol=%.1e %s\n", v.name.c_str(), v.value, v.tolerance,
                    v.pass ? "PASS" : "FAIL");
    }
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void ensure_dir(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) ensure_dir(parent.string());
    std::ofstream out(path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_full(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
}

} // namespace ww
