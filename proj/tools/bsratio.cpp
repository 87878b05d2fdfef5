#include "bsr/bounds.hpp"
#include "bsr/constants.hpp"
#include "bsr/errors.hpp"
#include "bsr/pipeline.hpp"
#include "bsr/primesum.hpp"
#include "bsr/ratio.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int)
{
    g_stop.store(true);
}

void print_kv(const char* key, double value)
{
    std::printf("%-26s % .15e\n", key, value);
}

bsr::RatioRecord record_from_row(const bsr::StatsRow& row)
{
    bsr::RatioRecord r;
    r.q = row.q;
    r.log_R = row.log_R;
    r.R = row.R;
    r.err_est = row.err_est;
    return r;
}

int run_compute(std::uint64_t from, std::uint64_t to, const std::string& out, int threads, bool resume, bool paranoid)
{
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    bsr::ComputeOptions options;
    options.paranoid = paranoid;
    options.stop = &g_stop;
    std::size_t computed = 0;
    options.rows_computed = &computed;
    const auto manifest = bsr::compute_range(from, to, threads, out, resume, options);
    std::printf("computed %zu row(s); complete through q=%s; output %s\n", computed,
                manifest.completed_through ? std::to_string(*manifest.completed_through).c_str() : "none",
                out.c_str());
    if (g_stop.load()) {
        std::fprintf(stderr, "interrupted; rerun with --resume to continue\n");
        return 130;
    }
    return 0;
}

int run_verify(std::uint64_t q, int delta, std::uint64_t A)
{
    const auto field = bsr::build_field(q);
    const auto fft = bsr::log_ratio_fft(field);
    const auto split = bsr::verify_ratio(q, A, delta);
    const double diff = split.log_R_check - fft.log_R;
    const double tolerance = std::pow(10.0, -delta) + fft.err_est;
    std::printf("q = %llu   P = %llu   M = %d   K = %d\n", static_cast<unsigned long long>(q),
                static_cast<unsigned long long>(split.plan.P), split.plan.M, split.plan.K);
    print_kv("log R (FFT)", fft.log_R);
    print_kv("log R (prime sum)", split.log_R_check);
    print_kv("difference", diff);
    print_kv("certified |E1| + |E2|", split.plan.e1_bound + split.plan.e2_bound);
    print_kv("FFT err_est", fft.err_est);
    print_kv("tolerance", tolerance);
    const bool ok = std::abs(diff) <= tolerance;
    std::printf("%s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

int run_sigma(std::uint64_t q, int delta)
{
    const auto field = bsr::build_field(q);
    const auto fft = bsr::log_ratio_fft(field);
    const auto split = bsr::sigma1(q, fft.log_R, bsr::kDefaultA, delta, fft.err_est);
    const double bound = bsr::lemma1_bound(q);
    print_kv("Sigma_1", split.sigma1);
    print_kv("Sigma_2", split.sigma2);
    print_kv("Sigma_1 + Sigma_2", split.sigma1 + split.sigma2);
    print_kv("log R (FFT)", fft.log_R);
    print_kv("|Sigma_2| bound", bound);
    const bool ok = std::abs(split.sigma2) <= bound;
    std::printf("%s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

int run_constants(const std::string& format)
{
    const auto& c = bsr::constants();
    if (format != "csv") {
        std::printf("%-18s %.15f\n", "gamma", c.gamma_euler);
        std::printf("%-18s %.15f\n", "meissel_mertens", c.meissel_mertens);
        std::printf("%-18s %.15f\n", "A", c.A_const);
        std::printf("%-18s %.15f\n", "C1", c.C1_const);
        std::printf("%-18s %d\n", "k_opt", c.k_opt);
    }
    if (format == "both")
        std::printf("\n");
    if (format != "text") {
        std::printf("gamma,meissel_mertens,A,C1,k_opt\n");
        std::printf("%.17g,%.17g,%.17g,%.17g,%d\n", c.gamma_euler, c.meissel_mertens, c.A_const, c.C1_const, c.k_opt);
    }
    return 0;
}

int run_hreg(std::uint64_t q)
{
    const auto record = bsr::log_ratio_fft(bsr::build_field(q));
    print_kv("log H(q)", bsr::log_H(q));
    print_kv("log R(q)", record.log_R);
    print_kv("log(h Reg)", bsr::log_hreg(record));
    return 0;
}

int run_stats(const std::string& in, const std::string& out_dir)
{
    const auto rows = bsr::load_csv(in);
    std::cout << bsr::format_summary(bsr::summarize(rows));
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const auto write = [&](const char* name, const std::string& svg) {
        std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
        if (!(f << svg))
            throw std::runtime_error("cannot write " + (dir / name).string());
        std::printf("wrote %s\n", (dir / name).string().c_str());
    };
    write("fig1_ratio.svg", bsr::scatter_svg(rows, false));
    write("fig2_ratio_normalized.svg", bsr::scatter_svg(rows, true));
    if (rows.size() >= 2) {
        write("fig3_histogram_ratio.svg", bsr::histogram_svg(rows, false));
        write("fig3_histogram_normalized.svg", bsr::histogram_svg(rows, true));
    } else {
        std::fprintf(stderr, "histograms skipped: need at least 2 rows\n");
    }
    return 0;
}

int run_bounds(const std::string& in, const std::vector<double>& dusart_x, const std::string& out,
               std::uint64_t sigma2_upto)
{
    const auto rows = bsr::load_csv(in);
    std::size_t envelope_checked = 0, envelope_pass = 0, band_pass = 0, band_checked = 0;
    std::size_t sigma_checked = 0, sigma_pass = 0;
    std::ofstream csv;
    if (!out.empty()) {
        csv.open(out, std::ios::binary | std::ios::trunc);
        if (!csv)
            throw std::runtime_error("cannot write " + out);
        csv << "q,lemma1_bound,refined_bound,sigma2_ok,envelope_ok,normalized_in_band\n";
    }
    for (const auto& row : rows) {
        const auto record = record_from_row(row);
        std::optional<double> s2;
        if (row.q <= sigma2_upto)
            s2 = bsr::sigma2(row.q, bsr::kDefaultA, 8);
        const auto report = bsr::bound_report(record, s2);
        const bool in_band = bsr::normalized_in_band(record);
        if (row.q >= bsr::kEnvelopeReportFrom) {
            ++envelope_checked;
            envelope_pass += report.envelope_ok;
        }
        if (row.q >= 5) {
            ++band_checked;
            band_pass += in_band;
        }
        if (report.sigma2_ok) {
            ++sigma_checked;
            sigma_pass += *report.sigma2_ok;
        }
        if (csv.is_open()) {
            char buf[200];
            std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%s,%d,%d\n", static_cast<unsigned long long>(row.q),
                          report.lemma1_bound, report.refined_bound,
                          report.sigma2_ok ? (*report.sigma2_ok ? "1" : "0") : "", report.envelope_ok ? 1 : 0,
                          in_band ? 1 : 0);
            csv << buf;
        }
    }
    bool all_ok = true;
    const auto line = [&](const char* what, std::size_t pass, std::size_t total, bool asserted) {
        const bool ok = pass == total;
        if (asserted)
            all_ok = all_ok && ok;
        std::printf("%-40s %7zu / %-7zu %s\n", what, pass, total,
                    total == 0 ? "n/a" : (ok ? "PASS" : (asserted ? "FAIL" : "REPORT")));
    };
    line("envelope e^-1.87/log q < R < e^0.51 log q", envelope_pass, envelope_checked, false);
    line("R (log q)^(3/4) in (0.19, 0.68), q>=5", band_pass, band_checked, false);
    line("|Sigma_2| <= A + (pi^2/6 - A)/q", sigma_pass, sigma_checked, true);
    for (double x : dusart_x) {
        const bool ok = bsr::check_dusart(x);
        all_ok = all_ok && ok;
        const double L = std::log(x);
        std::printf("dusart x=%-14.0f deviation %.3e  bound %.3e  %s\n", x, bsr::dusart_deviation(x),
                    0.2 / (L * L * L), ok ? "PASS" : "FAIL");
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Brauer-Siegel ratios of prime cyclotomic fields"};
    app.require_subcommand(1);

    std::uint64_t from = 3, to = 3, q = 3, A = bsr::kDefaultA, sigma2_upto = 0;
    int threads = 1, delta = 8;
    bool resume = false, paranoid = false;
    std::string out, in, out_dir = ".", format = "both";
    std::vector<double> dusart_x;

    auto* compute = app.add_subcommand("compute", "compute R(q) for every prime in a range into a CSV");
    compute->add_option("--from", from, "smallest q")->required();
    compute->add_option("--to", to, "largest q")->required();
    compute->add_option("--out", out, "output CSV")->required();
    compute->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    compute->add_flag("--resume", resume, "keep rows already in the output and continue");
    compute->add_flag("--paranoid", paranoid, "cross-check every row with the digamma formula");

    auto* verify = app.add_subcommand("verify", "check log R(q) against the Euler-product verifier");
    verify->add_option("--q", q, "odd prime")->required();
    verify->add_option("--delta", delta, "target decimals")->check(CLI::Range(1, 14));
    verify->add_option("--A", A, "prime cutoff P = A q")->check(CLI::Range(2, 1000));

    auto* sigma = app.add_subcommand("sigma", "prime and prime-power parts of log R(q)");
    sigma->add_option("--q", q, "odd prime")->required();
    sigma->add_option("--delta", delta, "target decimals")->check(CLI::Range(1, 14));

    auto* consts = app.add_subcommand("constants", "print the numerical constants");
    consts->add_option("--format", format, "text, csv or both")->check(CLI::IsMember({"text", "csv", "both"}));

    auto* hreg = app.add_subcommand("hreg", "log H(q), log R(q) and log(h Reg)");
    hreg->add_option("--q", q, "odd prime")->required();

    auto* stats = app.add_subcommand("stats", "summary statistics and SVG figures");
    stats->add_option("--in", in, "stats CSV")->required();
    stats->add_option("--out-dir", out_dir, "directory for the SVG files");

    auto* bounds = app.add_subcommand("bounds", "bound checks over a stats CSV");
    bounds->add_option("--in", in, "stats CSV")->required();
    bounds->add_option("--dusart-x", dusart_x, "x values (>= 2278383) for the reciprocal prime sum check");
    bounds->add_option("--out", out, "per-row report CSV");
    bounds->add_option("--sigma2-upto", sigma2_upto, "also compute Sigma_2 for q up to this value");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute)
            return run_compute(from, to, out, threads, resume, paranoid);
        if (*verify)
            return run_verify(q, delta, A);
        if (*sigma)
            return run_sigma(q, delta);
        if (*consts)
            return run_constants(format);
        if (*hreg)
            return run_hreg(q);
        if (*stats)
            return run_stats(in, out_dir);
        if (*bounds)
            return run_bounds(in, dusart_x, out, sigma2_upto);
    } catch (const bsr::VerificationFailure& e) {
        std::fprintf(stderr, "verification failed: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
