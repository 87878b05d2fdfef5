#include "bsr/errors.hpp"
#include "bsr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace bsr {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kManifestEvery = 1024;

void write_manifest(const fs::path& csv, const BatchManifest& manifest)
{
    const fs::path target = manifest_path(csv);
    const fs::path tmp = fs::path(target.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << manifest_to_json(manifest);
        if (!out.flush())
            throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Validates an existing output against the expected prime sequence, drops a
// torn final line, and returns how many rows are already complete.
std::size_t adopt_existing(const fs::path& out, const std::vector<std::uint64_t>& primes, std::uint64_t q_min,
                           std::uint64_t q_max)
{
    const std::string text = slurp(out);
    const std::size_t last_nl = text.rfind('\n');
    if (last_nl == std::string::npos) {
        // Nothing complete, not even the header; only a torn header prefix is acceptable.
        if (!std::string_view(kCsvHeader).starts_with(text))
            throw SchemaError(out.string() + ": line 1: not a stats CSV header");
        return static_cast<std::size_t>(-1);
    }
    std::string_view body(text.data(), last_nl + 1);
    std::size_t line_no = 0;
    std::size_t rows = 0;
    while (!body.empty()) {
        const std::size_t nl = body.find('\n');
        std::string_view line = body.substr(0, nl);
        body.remove_prefix(nl + 1);
        ++line_no;
        if (line_no == 1) {
            if (line != kCsvHeader)
                throw SchemaError(out.string() + ": line 1: header mismatch, refusing to resume");
            continue;
        }
        StatsRow row;
        try {
            row = parse_row(line);
        } catch (const SchemaError& e) {
            throw SchemaError(out.string() + ": line " + std::to_string(line_no) + ": " + e.what());
        }
        if (rows >= primes.size() || row.q != primes[rows])
            throw SchemaError(out.string() + ": line " + std::to_string(line_no) + ": q=" + std::to_string(row.q) +
                              " does not continue the primes of [" + std::to_string(q_min) + ", " +
                              std::to_string(q_max) + "]");
        ++rows;
    }
    if (last_nl + 1 != text.size())
        fs::resize_file(out, last_nl + 1);
    return rows;
}

} // namespace

StatsRow compute_row(std::uint64_t q, bool paranoid, std::ostream* diagnostics)
{
    const PrimeField field = build_field(q);
    const RatioRecord record = log_ratio_fft(field);
    if (paranoid) {
        const RatioRecord check = log_ratio_digamma(field);
        const double diff = std::abs(check.log_R - record.log_R);
        const double limit = 10.0 * (record.err_est + check.err_est);
        if (!(diff <= limit)) {
            std::ostringstream msg;
            msg.precision(3);
            msg << "warning: q=" << q << ": digamma path differs by " << diff << " (limit " << limit << ")\n";
            (diagnostics ? *diagnostics : std::cerr) << msg.str();
        }
    }
    return make_row(field, record);
}

BatchManifest compute_range(std::uint64_t q_min, std::uint64_t q_max, int threads, const fs::path& out, bool resume,
                            const ComputeOptions& options)
{
    if (q_min < 3 || q_min > q_max)
        throw std::invalid_argument("compute_range: need 3 <= q_min <= q_max");
    if (threads < 1)
        throw std::invalid_argument("compute_range: threads must be >= 1");

    std::vector<std::uint64_t> primes = sieve_primes(q_max);
    std::erase_if(primes, [q_min](std::uint64_t p) { return p < q_min; });

    BatchManifest manifest;
    manifest.q_min = q_min;
    manifest.q_max = q_max;
    manifest.output_path = out.string();
    manifest.thread_count = threads;

    std::size_t done = 0;
    bool fresh = true;
    if (resume && fs::exists(out)) {
        const fs::path mpath = manifest_path(out);
        std::optional<BatchManifest> previous;
        if (fs::exists(mpath)) {
            previous = manifest_from_json(slurp(mpath));
            if (previous->schema_version != kSchemaVersion)
                throw SchemaError(mpath.string() + ": schema_version " + std::to_string(previous->schema_version) +
                                  " is not " + std::to_string(kSchemaVersion));
            if (previous->q_min != q_min || previous->q_max != q_max)
                throw SchemaError(mpath.string() + ": manifest range [" + std::to_string(previous->q_min) + ", " +
                                  std::to_string(previous->q_max) + "] differs from the requested range");
        }
        const std::size_t adopted = adopt_existing(out, primes, q_min, q_max);
        if (adopted != static_cast<std::size_t>(-1)) {
            fresh = false;
            done = adopted;
            if (previous && previous->completed_through) {
                const auto it = std::lower_bound(primes.begin(), primes.end(), *previous->completed_through);
                if (it == primes.end() || *it != *previous->completed_through ||
                    static_cast<std::size_t>(it - primes.begin()) >= done)
                    throw SchemaError(out.string() + ": manifest records rows through q=" +
                                      std::to_string(*previous->completed_through) + " that are not on disk");
            }
        }
    }

    std::ofstream sink(out, std::ios::binary | (fresh ? std::ios::trunc : std::ios::app));
    if (!sink)
        throw std::runtime_error("cannot write " + out.string());
    if (fresh)
        sink << kCsvHeader << '\n' << std::flush;
    if (done > 0)
        manifest.completed_through = primes[done - 1];
    write_manifest(out, manifest);

    std::size_t todo = primes.size() - done;
    if (options.max_new_rows > 0)
        todo = std::min(todo, options.max_new_rows);

    const auto stopping = [&] { return options.stop && options.stop->load(std::memory_order_relaxed); };

    std::mutex mutex;
    std::condition_variable cv;
    std::map<std::size_t, StatsRow> pending;
    std::size_t next_job = 0;
    std::size_t written = 0;
    int finished_workers = 0;
    std::exception_ptr failure;
    bool abort = false;

    const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(todo, 1)));
    const std::size_t window = 64 * static_cast<std::size_t>(workers);

    auto worker = [&] {
        while (true) {
            std::size_t job;
            {
                std::unique_lock lock(mutex);
                cv.wait(lock, [&] { return abort || next_job >= todo || next_job < written + window; });
                if (abort || next_job >= todo || stopping())
                    break;
                job = next_job++;
            }
            try {
                StatsRow row = compute_row(primes[done + job], options.paranoid, options.diagnostics);
                std::lock_guard lock(mutex);
                pending.emplace(job, row);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure)
                    failure = std::current_exception();
                abort = true;
            }
            cv.notify_all();
        }
        {
            std::lock_guard lock(mutex);
            ++finished_workers;
        }
        cv.notify_all();
    };

    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i)
        pool.emplace_back(worker);

    // Single ordered writer: rows go out strictly in q order.
    while (written < todo) {
        StatsRow row;
        {
            std::unique_lock lock(mutex);
            cv.wait(lock, [&] { return pending.contains(written) || abort || finished_workers == workers; });
            auto it = pending.find(written);
            if (it == pending.end())
                break;
            row = it->second;
            pending.erase(it);
        }
        sink << format_row(row) << '\n';
        sink.flush();
        if (!sink) {
            std::lock_guard lock(mutex);
            abort = true;
            cv.notify_all();
            throw std::runtime_error("write failed: " + out.string());
        }
        {
            std::lock_guard lock(mutex);
            ++written;
        }
        cv.notify_all();
        manifest.completed_through = row.q;
        if (written % kManifestEvery == 0)
            write_manifest(out, manifest);
    }
    {
        std::lock_guard lock(mutex);
        abort = true;
    }
    cv.notify_all();
    pool.clear();

    write_manifest(out, manifest);
    if (options.rows_computed)
        *options.rows_computed = written;
    if (failure)
        std::rethrow_exception(failure);
    return manifest;
}

} // namespace bsr
