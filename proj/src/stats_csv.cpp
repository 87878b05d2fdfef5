#include "bsr/errors.hpp"
#include "bsr/pipeline.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace bsr {

namespace {

constexpr std::size_t kColumns = 8;

void append_double(std::string& out, double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

void append_uint(std::string& out, std::uint64_t v)
{
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

template <typename T>
T parse_field(std::string_view text, std::string_view column)
{
    T value{};
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != end)
        throw SchemaError("column " + std::string(column) + ": cannot parse '" + std::string(text) + "'");
    return value;
}

bool parse_flag(std::string_view text, std::string_view column)
{
    if (text == "0")
        return false;
    if (text == "1")
        return true;
    throw SchemaError("column " + std::string(column) + ": expected 0 or 1, got '" + std::string(text) + "'");
}

} // namespace

double normalized_ratio(double R, std::uint64_t q)
{
    return R * std::pow(std::log(static_cast<double>(q)), 0.75);
}

StatsRow make_row(const PrimeField& field, const RatioRecord& record)
{
    StatsRow row;
    row.q = record.q;
    row.g = field.g;
    row.log_R = record.log_R;
    row.R = record.R;
    row.R_norm = normalized_ratio(record.R, record.q);
    row.err_est = record.err_est;
    row.flag_2qp1 = is_prime(2 * record.q + 1);
    row.flag_2qm1 = is_prime(2 * record.q - 1);
    return row;
}

std::string format_row(const StatsRow& row)
{
    std::string out;
    out.reserve(128);
    append_uint(out, row.q);
    out += ',';
    append_uint(out, row.g);
    for (double v : {row.log_R, row.R, row.R_norm, row.err_est}) {
        out += ',';
        append_double(out, v);
    }
    out += row.flag_2qp1 ? ",1" : ",0";
    out += row.flag_2qm1 ? ",1" : ",0";
    return out;
}

StatsRow parse_row(std::string_view line)
{
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    std::string_view fields[kColumns];
    std::size_t count = 0;
    while (true) {
        const auto comma = line.find(',');
        if (count == kColumns)
            throw SchemaError("expected 8 columns, found more");
        fields[count++] = line.substr(0, comma);
        if (comma == std::string_view::npos)
            break;
        line.remove_prefix(comma + 1);
    }
    if (count != kColumns)
        throw SchemaError("expected 8 columns, found " + std::to_string(count));

    StatsRow row;
    row.q = parse_field<std::uint64_t>(fields[0], "q");
    row.g = parse_field<std::uint64_t>(fields[1], "g");
    row.log_R = parse_field<double>(fields[2], "log_R");
    row.R = parse_field<double>(fields[3], "R");
    row.R_norm = parse_field<double>(fields[4], "R_norm");
    row.err_est = parse_field<double>(fields[5], "err_est");
    row.flag_2qp1 = parse_flag(fields[6], "flag_2qp1");
    row.flag_2qm1 = parse_flag(fields[7], "flag_2qm1");
    return row;
}

CsvContents read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    CsvContents out;
    std::string line;
    std::size_t number = 0;
    if (!std::getline(in, line)) {
        out.errors.push_back({1, "empty file, expected header"});
        return out;
    }
    ++number;
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kCsvHeader)
        out.errors.push_back({1, "header mismatch: '" + line + "'"});
    while (std::getline(in, line)) {
        ++number;
        try {
            const StatsRow row = parse_row(line);
            if (!is_prime(row.q) || row.q < 3)
                throw SchemaError("q=" + std::to_string(row.q) + " is not an odd prime");
            if (row.flag_2qp1 != is_prime(2 * row.q + 1) || row.flag_2qm1 != is_prime(2 * row.q - 1))
                throw SchemaError("flags inconsistent with primality of 2q+-1");
            out.rows.push_back(row);
        } catch (const SchemaError& e) {
            out.errors.push_back({number, e.what()});
        }
    }
    return out;
}

std::vector<StatsRow> load_csv(const std::filesystem::path& path)
{
    auto contents = read_csv(path);
    if (!contents.errors.empty()) {
        std::ostringstream msg;
        msg << path.string() << ": " << contents.errors.size() << " malformed line(s)";
        for (const auto& e : contents.errors)
            msg << "\n  line " << e.line << ": " << e.message;
        throw SchemaError(msg.str());
    }
    return std::move(contents.rows);
}

void write_csv(const std::filesystem::path& path, std::span<const StatsRow> rows)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << kCsvHeader << '\n';
    for (const auto& row : rows)
        out << format_row(row) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

std::filesystem::path manifest_path(const std::filesystem::path& csv)
{
    return std::filesystem::path(csv.string() + ".manifest.json");
}

std::string manifest_to_json(const BatchManifest& m)
{
    nlohmann::ordered_json j;
    j["schema_version"] = m.schema_version;
    j["range"] = {m.q_min, m.q_max};
    if (m.completed_through)
        j["completed_through"] = *m.completed_through;
    else
        j["completed_through"] = "none";
    j["output_path"] = m.output_path;
    j["thread_count"] = m.thread_count;
    return j.dump(2) + "\n";
}

BatchManifest manifest_from_json(std::string_view text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        BatchManifest m;
        m.schema_version = j.at("schema_version").get<int>();
        const auto& range = j.at("range");
        if (!range.is_array() || range.size() != 2)
            throw SchemaError("manifest: range must be [q_min, q_max]");
        m.q_min = range[0].get<std::uint64_t>();
        m.q_max = range[1].get<std::uint64_t>();
        const auto& done = j.at("completed_through");
        if (done.is_string()) {
            if (done.get<std::string>() != "none")
                throw SchemaError("manifest: completed_through must be a prime or \"none\"");
        } else {
            m.completed_through = done.get<std::uint64_t>();
        }
        m.output_path = j.at("output_path").get<std::string>();
        m.thread_count = j.at("thread_count").get<int>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("manifest: ") + e.what());
    }
}

} // namespace bsr
