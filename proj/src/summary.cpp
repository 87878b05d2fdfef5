#include "bsr/pipeline.hpp"
#include "bsr/summation.hpp"

#include <cstdio>
#include <stdexcept>

namespace bsr {

namespace {

struct Accumulator {
    std::size_t count = 0;
    CompensatedSum R;
    CompensatedSum R_norm;

    void add(const StatsRow& row)
    {
        ++count;
        R += row.R;
        R_norm += row.R_norm;
    }

    SubgroupStats stats() const
    {
        if (count == 0)
            return {};
        const double n = static_cast<double>(count);
        return {count, R.value() / n, R_norm.value() / n};
    }
};

void track(Extremum& lo, Extremum& hi, double v, std::uint64_t q, bool first)
{
    // Ties keep the smaller q: rows arrive in ascending q.
    if (first || v < lo.value)
        lo = {v, q};
    if (first || v > hi.value)
        hi = {v, q};
}

} // namespace

Summary summarize(std::span<const StatsRow> rows)
{
    if (rows.empty())
        throw std::invalid_argument("summarize: no rows");
    Summary s;
    Accumulator all, plus, minus;
    bool first = true;
    for (const auto& row : rows) {
        all.add(row);
        track(s.min_R, s.max_R, row.R, row.q, first);
        track(s.min_R_norm, s.max_R_norm, row.R_norm, row.q, first);
        first = false;
        if (row.q >= 5 && row.flag_2qp1)
            plus.add(row);
        if (row.q >= 5 && row.flag_2qm1)
            minus.add(row);
    }
    const auto totals = all.stats();
    s.count = totals.count;
    s.mean_R = totals.mean_R;
    s.mean_R_norm = totals.mean_R_norm;
    s.flag_2qp1 = plus.stats();
    s.flag_2qm1 = minus.stats();
    return s;
}

Summary summarize(const std::filesystem::path& in)
{
    const auto rows = load_csv(in);
    return summarize(rows);
}

std::string format_summary(const Summary& s)
{
    std::string out;
    char buf[160];
    auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out += buf;
    };
    line("%-22s %zu\n", "count", s.count);
    line("%-22s %.12f\n", "mean R", s.mean_R);
    line("%-22s %.12f\n", "mean R_norm", s.mean_R_norm);
    line("%-22s %.12f  (q=%llu)\n", "min R", s.min_R.value, static_cast<unsigned long long>(s.min_R.q));
    line("%-22s %.12f  (q=%llu)\n", "max R", s.max_R.value, static_cast<unsigned long long>(s.max_R.q));
    line("%-22s %.12f  (q=%llu)\n", "min R_norm", s.min_R_norm.value, static_cast<unsigned long long>(s.min_R_norm.q));
    line("%-22s %.12f  (q=%llu)\n", "max R_norm", s.max_R_norm.value, static_cast<unsigned long long>(s.max_R_norm.q));
    line("%-22s %zu  mean R %.12f  mean R_norm %.12f\n", "2q+1 prime (q>=5)", s.flag_2qp1.count, s.flag_2qp1.mean_R,
         s.flag_2qp1.mean_R_norm);
    line("%-22s %zu  mean R %.12f  mean R_norm %.12f\n", "2q-1 prime (q>=5)", s.flag_2qm1.count, s.flag_2qm1.mean_R,
         s.flag_2qm1.mean_R_norm);
    return out;
}

} // namespace bsr
