#pragma once

// Configuration files and result tables.
//
// Text format: first line "d n", then n lines of d coordinates printed with
// 17 significant digits. The JSON format holds the same data plus optional
// generator metadata.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "extsum/sphere.hpp"

namespace extsum::cli {

/// Rows further than this from unit norm are renormalized with a warning.
inline constexpr double kRenormalizeWarnTolerance = 1e-12;
/// Rows further than this from unit norm are rejected.
inline constexpr double kRenormalizeRejectTolerance = 1e-9;

struct ConfigMetadata {
    std::optional<std::string> generator;
    std::optional<std::uint64_t> seed;
};

struct ConfigFile {
    Configuration config;
    ConfigMetadata metadata;
};

enum class ConfigFormat { text, json };

/// json for a ".json" extension, text otherwise.
ConfigFormat format_for_path(const std::filesystem::path& path);

std::string format_config(const ConfigFile& file, ConfigFormat format);

/// Parses either format (JSON when the first non-blank character is '{').
/// Warnings about renormalized rows are appended to `warnings` when given.
/// Malformed content raises IoError; rows off the sphere by more than 1e-9
/// raise PreconditionError.
ConfigFile parse_config(std::string_view content, std::vector<std::string>* warnings = nullptr);

ConfigFile read_config_file(const std::filesystem::path& path,
                            std::vector<std::string>* warnings = nullptr);
void write_config_file(const std::filesystem::path& path, const ConfigFile& file,
                       std::optional<ConfigFormat> format = std::nullopt);

/// One solve or bound evaluation. A non-empty `error` marks a failed row.
struct ResultRow {
    int d = 0;
    int n = 0;
    int k = 0;
    std::string method;
    double value = 0.0;
    std::uint64_t seed = 0;
    int iterations = 0;
    double runtime_ms = 0.0;
    std::string certificate;
    std::string error;
};

inline constexpr std::string_view kCsvHeader =
    "d,n,k,method,value,seed,iterations,runtime_ms,certificate";

/// %.17g for doubles.
std::string format_double(double x);

/// One CSV line without the trailing newline. Failed rows leave value empty
/// and put "error: <message>" in the certificate column.
std::string format_csv_row(const ResultRow& row);

/// Appends rows to `path`, writing the header first if the file is new or empty.
void append_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

}  // namespace extsum::cli
