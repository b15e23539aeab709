#include "ssdp/io.hpp"

#include "ssdp/error.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace ssdp::io {

std::string format_double(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x == 0.0 ? 0.0 : x);
    return std::string(buf, r.ptr);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    for (const auto& h : header)
        field(h);
    end_row();
    rows_ = 0;
}

void CsvWriter::push(const std::string& raw) {
    if (pending_ > 0)
        out_ += ',';
    out_ += raw;
    ++pending_;
}

CsvWriter& CsvWriter::field(const std::string& s) {
    push(csv_escape(s));
    return *this;
}

CsvWriter& CsvWriter::field(double x) {
    push(format_double(x));
    return *this;
}

CsvWriter& CsvWriter::field(long long x) {
    push(std::to_string(x));
    return *this;
}

CsvWriter& CsvWriter::empty() {
    push("");
    return *this;
}

void CsvWriter::end_row() {
    if (pending_ != width_)
        throw std::logic_error("csv row has " + std::to_string(pending_) + " fields, header has " +
                               std::to_string(width_));
    out_ += "\r\n";
    pending_ = 0;
    ++rows_;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw ConfigError("cannot open '" + path.string() + "' for writing");
    f << content;
    if (!f)
        throw ConfigError("write to '" + path.string() + "' failed");
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config_path"] = config_path;
    j["seed"] = seed;
    j["tool_version"] = tool_version;
    j["started"] = started;
    j["finished"] = finished;
    j["outputs"] = outputs;
    j["verifications"] = verifications;
    j["results"] = results;
    j["notes"] = notes;
    j["exit_code"] = exit_code;
    if (!error.empty())
        j["error"] = error;
    return j;
}

} // namespace ssdp::io
