#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ssdp::io {

/// Shortest text that reads back to the same double; nan/inf spelled out.
std::string format_double(double x);

/// RFC-4180 CSV: fields containing comma, quote, CR or LF are quoted and
/// embedded quotes doubled. Lines end with CRLF.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& field(const std::string& s);
    CsvWriter& field(double x);
    CsvWriter& field(long long x);
    CsvWriter& field(std::size_t x) { return field(static_cast<long long>(x)); }
    CsvWriter& field(int x) { return field(static_cast<long long>(x)); }
    CsvWriter& field(bool b) { return field(std::string(b ? "true" : "false")); }
    CsvWriter& empty();
    /// Ends the current row; throws if its width differs from the header.
    void end_row();

    const std::string& str() const noexcept { return out_; }
    std::size_t rows() const noexcept { return rows_; }

private:
    void push(const std::string& raw);

    std::size_t width_;
    std::size_t pending_ = 0;
    std::size_t rows_ = 0;
    std::string out_;
};

std::string csv_escape(const std::string& s);

void write_file(const std::filesystem::path& path, const std::string& content);

/// ISO-8601 UTC, second resolution.
std::string utc_timestamp();

struct RunManifest {
    std::string command;
    std::string config_path;
    std::uint64_t seed = 0;
    std::string tool_version;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
    nlohmann::ordered_json verifications = nlohmann::ordered_json::object();
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::vector<std::string> notes;
    int exit_code = 0;
    std::string error;

    nlohmann::ordered_json to_json() const;
};

} // namespace ssdp::io
