#include "bsr/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bsr {

namespace {

constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr double kPlotW = kSvgWidth - kLeft - kRight;
constexpr double kPlotH = kSvgHeight - kTop - kBottom;
constexpr std::size_t kMaxBins = 2000;
constexpr int kTicks = 5;

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * kPlotW; }
    double py(double y) const { return kTop + (y1 - y) / (y1 - y0) * kPlotH; }
};

std::string exact(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt(const char* f, auto... args)
{
    char buf[256];
    const int n = std::snprintf(buf, sizeof buf, f, args...);
    return std::string(buf, static_cast<std::size_t>(std::max(n, 0)));
}

void widen(double& lo, double& hi, double pad_fraction)
{
    if (hi > lo) {
        const double pad = (hi - lo) * pad_fraction;
        lo -= pad;
        hi += pad;
    } else {
        const double pad = lo != 0.0 ? std::abs(lo) * 0.05 : 1.0;
        lo -= pad;
        hi += pad;
    }
}

std::string open_svg(const Frame& f, const char* kind)
{
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\"", kSvgWidth,
             kSvgHeight, kSvgWidth, kSvgHeight);
    s += std::string(" data-kind=\"") + kind + "\"";
    s += " data-x-min=\"" + exact(f.x0) + "\" data-x-max=\"" + exact(f.x1) + "\"";
    s += " data-y-min=\"" + exact(f.y0) + "\" data-y-max=\"" + exact(f.y1) + "\"";
    s += fmt(" data-plot-left=\"%g\" data-plot-top=\"%g\" data-plot-width=\"%g\" data-plot-height=\"%g\">\n", kLeft,
             kTop, kPlotW, kPlotH);
    s += fmt("<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n", kSvgWidth, kSvgHeight);
    return s;
}

std::string axes(const Frame& f, const char* x_label, const char* y_label, const char* title)
{
    std::string s;
    s += fmt("<path class=\"axis\" d=\"M%.3f %.3f V%.3f H%.3f\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
             kLeft, kTop, kTop + kPlotH, kLeft + kPlotW);
    std::string ticks;
    std::string labels;
    for (int i = 0; i <= kTicks; ++i) {
        const double t = static_cast<double>(i) / kTicks;
        const double xv = f.x0 + t * (f.x1 - f.x0);
        const double yv = f.y0 + t * (f.y1 - f.y0);
        const double px = f.px(xv);
        const double py = f.py(yv);
        ticks += fmt("M%.3f %.3f v5 M%.3f %.3f h-5 ", px, kTop + kPlotH, kLeft, py);
        labels += fmt("<text x=\"%.3f\" y=\"%.3f\" text-anchor=\"middle\">%.6g</text>\n", px, kTop + kPlotH + 20, xv);
        labels += fmt("<text x=\"%.3f\" y=\"%.3f\" text-anchor=\"end\">%.6g</text>\n", kLeft - 8, py + 4, yv);
    }
    ticks.pop_back();
    s += "<path class=\"ticks\" d=\"" + ticks + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    s += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">\n" + labels;
    s += fmt("<text x=\"%.3f\" y=\"%d\" text-anchor=\"middle\">%s</text>\n", kLeft + kPlotW / 2, kSvgHeight - 15, x_label);
    s += fmt("<text x=\"20\" y=\"%.3f\" text-anchor=\"middle\" transform=\"rotate(-90 20 %.3f)\">%s</text>\n",
             kTop + kPlotH / 2, kTop + kPlotH / 2, y_label);
    s += fmt("<text x=\"%.3f\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">%s</text>\n", kLeft + kPlotW / 2, title);
    s += "</g>\n";
    return s;
}

double value_of(const StatsRow& row, bool normalized)
{
    return normalized ? row.R_norm : row.R;
}

double quantile(const std::vector<double>& sorted, double p)
{
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

void write_text(const std::filesystem::path& out, const std::string& text)
{
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot write " + out.string());
    f << text;
    if (!f.flush())
        throw std::runtime_error("write failed: " + out.string());
}

} // namespace

double freedman_diaconis_width(std::span<const double> values)
{
    if (values.size() < 2)
        throw std::invalid_argument("freedman_diaconis_width: need at least 2 values");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
    const double n = static_cast<double>(sorted.size());
    double width = 2.0 * iqr / std::cbrt(n);
    const double range = sorted.back() - sorted.front();
    if (!(width > 0.0))
        width = range > 0.0 ? range / std::ceil(std::sqrt(n)) : 1.0;
    return width;
}

std::size_t bin_index(double value, double origin, double width, std::size_t bins)
{
    const double pos = std::floor((value - origin) / width);
    if (!(pos > 0.0))
        return 0;
    return std::min(static_cast<std::size_t>(pos), bins - 1);
}

HistogramBins histogram_bins(std::span<const StatsRow> rows, bool normalized)
{
    if (rows.size() < 2)
        throw std::invalid_argument("histogram: need at least 2 rows");
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& row : rows)
        values.push_back(value_of(row, normalized));
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());

    HistogramBins bins;
    bins.origin = *lo;
    bins.width = freedman_diaconis_width(values);
    std::size_t count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((*hi - *lo) / bins.width)));
    if (count > kMaxBins) {
        count = kMaxBins;
        bins.width = (*hi - *lo) / static_cast<double>(kMaxBins);
    }
    bins.total.assign(count, 0);
    bins.plus.assign(count, 0);
    bins.minus.assign(count, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t b = bin_index(values[i], bins.origin, bins.width, count);
        ++bins.total[b];
        if (rows[i].q >= 5 && rows[i].flag_2qp1)
            ++bins.plus[b];
        if (rows[i].q >= 5 && rows[i].flag_2qm1)
            ++bins.minus[b];
    }
    return bins;
}

std::string scatter_svg(std::span<const StatsRow> rows, bool normalized)
{
    if (rows.empty())
        throw std::invalid_argument("scatter: no rows");
    const Summary summary = summarize(rows);
    const double mean = normalized ? summary.mean_R_norm : summary.mean_R;

    Frame f{static_cast<double>(rows.front().q), static_cast<double>(rows.back().q),
            normalized ? summary.min_R_norm.value : summary.min_R.value,
            normalized ? summary.max_R_norm.value : summary.max_R.value};
    for (const auto& row : rows) {
        f.x0 = std::min(f.x0, static_cast<double>(row.q));
        f.x1 = std::max(f.x1, static_cast<double>(row.q));
    }
    widen(f.x0, f.x1, 0.0);
    widen(f.y0, f.y1, 0.05);

    std::string s = open_svg(f, normalized ? "scatter-normalized" : "scatter");
    s += axes(f, "q", normalized ? "R(q) (log q)^(3/4)" : "R(q)",
              normalized ? "Normalized Brauer-Siegel ratio" : "Brauer-Siegel ratio");
    s += "<g class=\"points\" fill=\"#1f77b4\">\n";
    std::string highlight;
    for (const auto& row : rows) {
        const double cx = f.px(static_cast<double>(row.q));
        const double cy = f.py(value_of(row, normalized));
        if (row.q == 3)
            highlight = fmt("<circle class=\"highlight\" cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"#d62728\"/>\n", cx, cy);
        else
            s += fmt("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.2\"/>\n", cx, cy);
    }
    s += highlight;
    s += "</g>\n";
    const double my = f.py(mean);
    s += "<line class=\"mean\" x1=\"" + fmt("%.3f", kLeft) + "\" y1=\"" + fmt("%.3f", my) + "\" x2=\"" +
         fmt("%.3f", kLeft + kPlotW) + "\" y2=\"" + fmt("%.3f", my) +
         "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" data-mean=\"" + exact(mean) + "\"/>\n";
    s += "</svg>\n";
    return s;
}

std::string histogram_svg(std::span<const StatsRow> rows, bool normalized)
{
    const HistogramBins bins = histogram_bins(rows, normalized);
    const Summary summary = summarize(rows);
    const double mean = normalized ? summary.mean_R_norm : summary.mean_R;
    const std::size_t tallest = *std::max_element(bins.total.begin(), bins.total.end());

    Frame f{bins.origin, bins.origin + bins.width * static_cast<double>(bins.total.size()), 0.0,
            static_cast<double>(tallest) * 1.05};
    std::string s = open_svg(f, normalized ? "histogram-normalized" : "histogram");
    s += fmt("<desc>bins=%zu width=%s origin=%s</desc>\n", bins.total.size(), exact(bins.width).c_str(),
             exact(bins.origin).c_str());
    s += axes(f, normalized ? "R(q) (log q)^(3/4)" : "R(q)", "count",
              normalized ? "Histogram of the normalized ratio" : "Histogram of the ratio");

    const auto bars = [&](const std::vector<std::size_t>& counts, const char* cls, const char* fill) {
        std::string g = fmt("<g class=\"%s\" fill=\"%s\" fill-opacity=\"0.85\">\n", cls, fill);
        for (std::size_t b = 0; b < counts.size(); ++b) {
            if (counts[b] == 0)
                continue;
            const double x0 = f.px(bins.origin + bins.width * static_cast<double>(b));
            const double x1 = f.px(bins.origin + bins.width * static_cast<double>(b + 1));
            const double y = f.py(static_cast<double>(counts[b]));
            g += fmt("<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" data-bin=\"%zu\" data-count=\"%zu\"/>\n",
                     x0, y, x1 - x0, kTop + kPlotH - y, b, counts[b]);
        }
        return g + "</g>\n";
    };
    s += bars(bins.total, "total", "#9e9e9e");
    s += bars(bins.plus, "plus", "#2ca02c");
    s += bars(bins.minus, "minus", "#f2c218");

    const double mx = f.px(mean);
    s += "<line class=\"mean\" x1=\"" + fmt("%.3f", mx) + "\" y1=\"" + fmt("%.3f", kTop) + "\" x2=\"" +
         fmt("%.3f", mx) + "\" y2=\"" + fmt("%.3f", kTop + kPlotH) +
         "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" data-mean=\"" + exact(mean) + "\"/>\n";
    s += "</svg>\n";
    return s;
}

void plot_scatter(const std::filesystem::path& in, bool normalized, const std::filesystem::path& out)
{
    const auto rows = load_csv(in);
    write_text(out, scatter_svg(rows, normalized));
}

void plot_histogram(const std::filesystem::path& in, bool normalized, const std::filesystem::path& out)
{
    const auto rows = load_csv(in);
    write_text(out, histogram_svg(rows, normalized));
}

} // namespace bsr
