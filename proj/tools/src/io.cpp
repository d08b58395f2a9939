#include "extsum_cli/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "extsum/error.hpp"

namespace extsum::cli {

namespace {

using nlohmann::json;

Configuration checked_configuration(std::size_t d, const std::vector<double>& rows,
                                    std::vector<std::string>* warnings) {
    const std::size_t n = rows.size() / d;
    for (std::size_t i = 0; i < n; ++i) {
        const double len = norm(std::span<const double>(rows.data() + i * d, d));
        const double dev = std::abs(len - 1.0);
        if (!(dev <= kRenormalizeRejectTolerance)) {
            throw PreconditionError("row " + std::to_string(i + 1) + " has norm " + format_double(len) +
                                    ", more than 1e-9 from 1");
        }
        if (dev > kRenormalizeWarnTolerance && warnings != nullptr) {
            warnings->push_back("row " + std::to_string(i + 1) + " renormalized (norm " +
                                format_double(len) + ")");
        }
    }
    return Configuration::from_rows(d, rows);
}

class Tokenizer {
public:
    explicit Tokenizer(std::string_view text) : text_(text) {}

    std::optional<std::string_view> next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
        if (pos_ >= text_.size()) {
            return std::nullopt;
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    int line() const { return line_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

template <class T>
T parse_number(Tokenizer& tok, const char* what) {
    const auto t = tok.next();
    if (!t) {
        throw IoError(std::string("config: unexpected end of input while reading ") + what);
    }
    T value{};
    const auto [ptr, ec] = std::from_chars(t->data(), t->data() + t->size(), value);
    if (ec != std::errc() || ptr != t->data() + t->size()) {
        throw IoError("config line " + std::to_string(tok.line()) + ": cannot parse " + what + " '" +
                      std::string(*t) + "'");
    }
    return value;
}

ConfigFile parse_text(std::string_view content, std::vector<std::string>* warnings) {
    Tokenizer tok(content);
    const auto d = parse_number<long>(tok, "dimension d");
    const auto n = parse_number<long>(tok, "count n");
    if (d < 1 || n < 1) {
        throw IoError("config: header must have d >= 1 and n >= 1");
    }
    std::vector<double> rows;
    rows.reserve(static_cast<std::size_t>(d * n));
    for (long i = 0; i < d * n; ++i) {
        rows.push_back(parse_number<double>(tok, "coordinate"));
    }
    if (tok.next()) {
        throw IoError("config: trailing content after " + std::to_string(n) + " rows");
    }
    return {checked_configuration(static_cast<std::size_t>(d), rows, warnings), {}};
}

ConfigFile parse_json(std::string_view content, std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(content);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("config: invalid JSON: ") + e.what());
    }
    try {
        const auto d = doc.at("d").get<std::size_t>();
        const auto& vectors = doc.at("vectors");
        if (d < 1 || !vectors.is_array() || vectors.empty()) {
            throw IoError("config: need d >= 1 and a non-empty \"vectors\" array");
        }
        if (doc.contains("n") && doc["n"].get<std::size_t>() != vectors.size()) {
            throw IoError("config: \"n\" does not match the number of vectors");
        }
        std::vector<double> rows;
        for (const auto& v : vectors) {
            if (!v.is_array() || v.size() != d) {
                throw IoError("config: every vector must have d coordinates");
            }
            for (const auto& x : v) {
                rows.push_back(x.get<double>());
            }
        }
        ConfigFile out{checked_configuration(d, rows, warnings), {}};
        if (const auto it = doc.find("metadata"); it != doc.end() && it->is_object()) {
            if (it->contains("generator")) out.metadata.generator = (*it)["generator"].get<std::string>();
            if (it->contains("seed")) out.metadata.seed = (*it)["seed"].get<std::uint64_t>();
        }
        return out;
    } catch (const json::exception& e) {
        throw IoError(std::string("config: ") + e.what());
    }
}

}  // namespace

ConfigFormat format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".json" ? ConfigFormat::json : ConfigFormat::text;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_config(const ConfigFile& file, ConfigFormat format) {
    const Configuration& c = file.config;
    if (format == ConfigFormat::text) {
        std::string out = std::to_string(c.dim()) + " " + std::to_string(c.size()) + "\n";
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto r = c.row(i);
            for (std::size_t j = 0; j < r.size(); ++j) {
                if (j > 0) out += ' ';
                out += format_double(r[j]);
            }
            out += '\n';
        }
        return out;
    }
    json doc;
    doc["d"] = c.dim();
    doc["n"] = c.size();
    json vectors = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto r = c.row(i);
        vectors.push_back(std::vector<double>(r.begin(), r.end()));
    }
    doc["vectors"] = std::move(vectors);
    if (file.metadata.generator || file.metadata.seed) {
        json meta = json::object();
        if (file.metadata.generator) meta["generator"] = *file.metadata.generator;
        if (file.metadata.seed) meta["seed"] = *file.metadata.seed;
        doc["metadata"] = std::move(meta);
    }
    return doc.dump(2) + "\n";
}

ConfigFile parse_config(std::string_view content, std::vector<std::string>* warnings) {
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        throw IoError("config: empty input");
    }
    return content[first] == '{' ? parse_json(content, warnings) : parse_text(content, warnings);
}

ConfigFile read_config_file(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failed: " + path.string());
    }
    return parse_config(buf.str(), warnings);
}

void write_config_file(const std::filesystem::path& path, const ConfigFile& file,
                       std::optional<ConfigFormat> format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << format_config(file, format.value_or(format_for_path(path)));
    if (!out.flush()) {
        throw IoError("write failed: " + path.string());
    }
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch == '\n' ? ' ' : ch;
    }
    return out + "\"";
}

}  // namespace

std::string format_csv_row(const ResultRow& row) {
    char runtime[32];
    std::snprintf(runtime, sizeof runtime, "%.3f", row.runtime_ms);
    std::string out = std::to_string(row.d) + "," + std::to_string(row.n) + "," + std::to_string(row.k) +
                      "," + csv_field(row.method) + ",";
    if (row.error.empty()) {
        out += format_double(row.value);
    }
    out += "," + std::to_string(row.seed) + "," + std::to_string(row.iterations) + "," + runtime + ",";
    out += csv_field(row.error.empty() ? row.certificate : "error: " + row.error);
    return out;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_csv_row(r) << '\n';
    }
}

void append_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for appending");
    }
    if (fresh) {
        out << kCsvHeader << '\n';
    }
    for (const auto& r : rows) {
        out << format_csv_row(r) << '\n';
    }
    if (!out.flush()) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace extsum::cli
