#pragma once

#include "bsr/ntheory.hpp"
#include "bsr/ratio.hpp"

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bsr {

// ---------------------------------------------------------------- rows / CSV

struct StatsRow {
    std::uint64_t q = 0;
    std::uint64_t g = 0;
    double log_R = 0.0;
    double R = 0.0;
    double R_norm = 0.0; ///< R (log q)^{3/4}
    double err_est = 0.0;
    bool flag_2qp1 = false;
    bool flag_2qm1 = false;

    friend bool operator==(const StatsRow&, const StatsRow&) = default;
};

inline constexpr std::string_view kCsvHeader = "q,g,log_R,R,R_norm,err_est,flag_2qp1,flag_2qm1";
inline constexpr int kSchemaVersion = 1;

[[nodiscard]] double normalized_ratio(double R, std::uint64_t q);

/// Row for q from an already computed record.
[[nodiscard]] StatsRow make_row(const PrimeField& field, const RatioRecord& record);

/// One line, no trailing newline; floats in shortest round-trip form.
[[nodiscard]] std::string format_row(const StatsRow& row);

/// Inverse of format_row. Throws SchemaError on malformed input.
[[nodiscard]] StatsRow parse_row(std::string_view line);

struct RowError {
    std::size_t line = 0; ///< 1-based, header is line 1
    std::string message;
};

struct CsvContents {
    std::vector<StatsRow> rows;
    std::vector<RowError> errors;
};

/// Reads a stats CSV, collecting per-line errors instead of stopping.
/// A missing or wrong header is reported as an error on line 1.
[[nodiscard]] CsvContents read_csv(const std::filesystem::path& path);

/// read_csv, but any error raises SchemaError listing every bad line.
[[nodiscard]] std::vector<StatsRow> load_csv(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, std::span<const StatsRow> rows);

// ---------------------------------------------------------------- batch

struct BatchManifest {
    std::uint64_t q_min = 0;
    std::uint64_t q_max = 0;
    std::optional<std::uint64_t> completed_through; ///< nullopt = "none"
    std::string output_path;
    int schema_version = kSchemaVersion;
    int thread_count = 1;

    friend bool operator==(const BatchManifest&, const BatchManifest&) = default;
};

[[nodiscard]] std::filesystem::path manifest_path(const std::filesystem::path& csv);
[[nodiscard]] std::string manifest_to_json(const BatchManifest& manifest);
[[nodiscard]] BatchManifest manifest_from_json(std::string_view text);

struct ComputeOptions {
    bool paranoid = false;                 ///< also run the digamma path
    std::ostream* diagnostics = nullptr;   ///< paranoid warnings; stderr when null
    std::size_t max_new_rows = 0;          ///< stop after this many rows (0 = no limit)
    const std::atomic<bool>* stop = nullptr;
    std::size_t* rows_computed = nullptr;  ///< out: rows computed by this call
};

/// Computes one row; with `paranoid`, warns when the digamma path
/// disagrees with the transform path beyond 10 (err_fft + err_digamma).
[[nodiscard]] StatsRow compute_row(std::uint64_t q, bool paranoid = false, std::ostream* diagnostics = nullptr);

/// Writes one row per prime in [q_min, q_max] to `out` in ascending q,
/// plus a sidecar manifest. With `resume`, rows already on disk are kept
/// (a torn final line is dropped) and only the rest is computed; a file
/// that does not match the schema or the range is a SchemaError.
BatchManifest compute_range(std::uint64_t q_min, std::uint64_t q_max, int threads,
                            const std::filesystem::path& out, bool resume, const ComputeOptions& options = {});

// ---------------------------------------------------------------- summary

struct Extremum {
    double value = 0.0;
    std::uint64_t q = 0;
};

struct SubgroupStats {
    std::size_t count = 0;
    double mean_R = 0.0;
    double mean_R_norm = 0.0;
};

struct Summary {
    std::size_t count = 0;
    double mean_R = 0.0;
    double mean_R_norm = 0.0;
    Extremum min_R, max_R, min_R_norm, max_R_norm;
    SubgroupStats flag_2qp1; ///< q >= 5 with 2q+1 prime
    SubgroupStats flag_2qm1; ///< q >= 5 with 2q-1 prime
};

[[nodiscard]] Summary summarize(std::span<const StatsRow> rows);
[[nodiscard]] Summary summarize(const std::filesystem::path& in);
[[nodiscard]] std::string format_summary(const Summary& summary);

// ---------------------------------------------------------------- figures

inline constexpr int kSvgWidth = 960;
inline constexpr int kSvgHeight = 600;

/// Shared bins: Freedman-Diaconis width on `values`, left edge at min.
struct HistogramBins {
    double origin = 0.0;
    double width = 0.0;
    std::vector<std::size_t> total;
    std::vector<std::size_t> plus;  ///< q >= 5, 2q+1 prime
    std::vector<std::size_t> minus; ///< q >= 5, 2q-1 prime
};

[[nodiscard]] double freedman_diaconis_width(std::span<const double> values);
[[nodiscard]] std::size_t bin_index(double value, double origin, double width, std::size_t bins);
[[nodiscard]] HistogramBins histogram_bins(std::span<const StatsRow> rows, bool normalized);

[[nodiscard]] std::string scatter_svg(std::span<const StatsRow> rows, bool normalized);
[[nodiscard]] std::string histogram_svg(std::span<const StatsRow> rows, bool normalized);

void plot_scatter(const std::filesystem::path& in, bool normalized, const std::filesystem::path& out);
void plot_histogram(const std::filesystem::path& in, bool normalized, const std::filesystem::path& out);

} // namespace bsr
