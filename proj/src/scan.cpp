#include "waring/scan.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "waring/gamma.hpp"
#include "waring/numbers.hpp"

namespace waring {

namespace {

constexpr u64 kScanQCap = u64(1) << 24;
constexpr u64 kScanKSpan = 64;

struct Task {
    u64 k = 0;
    u64 q = 0;
};

// One rendered row without separators, or the empty string when the gamma
// filter drops it.  The writer owns newline/comma placement so that the
// bytes depend only on task order, never on worker scheduling.
std::string render_row(const ScanJob& job, const Task& t) {
    GammaResult g = gamma_of(t.k, t.q);
    if (job.gamma_filter) {
        if (!g.coverable) return {};
        if (g.gamma < job.gamma_filter->first || g.gamma > job.gamma_filter->second)
            return {};
    }
    std::ostringstream os;
    if (job.csv) {
        os << t.k << ',' << t.q << ',' << (g.coverable ? "true" : "false") << ',';
        if (g.coverable) os << g.gamma;
        os << '\n';
    } else {
        os << "  {\"k\":" << t.k << ",\"q\":" << t.q << ",\"coverable\":"
           << (g.coverable ? "true" : "false");
        if (g.coverable) os << ",\"gamma\":" << g.gamma;
        os << ",\"closure_sizes\":[";
        for (std::size_t i = 0; i < g.closure_sizes.size(); ++i) {
            if (i) os << ',';
            os << g.closure_sizes[i];
        }
        os << "]}";
    }
    return os.str();
}

struct Checkpoint {
    u64 k = 0;
    u64 last_q = 0;
    u64 offset = 0;
    u64 rows = 0;
    u64 rows_hash = 0;
};

// Minimal scanner for the checkpoint file; the format is fixed and written
// only by save_checkpoint below.
bool read_u64_field(const std::string& text, const std::string& key, u64& out) {
    std::string pat = "\"" + key + "\":";
    auto pos = text.find(pat);
    if (pos == std::string::npos) return false;
    pos += pat.size();
    if (pos < text.size() && text[pos] == '"') ++pos;
    u64 v = 0;
    bool any = false;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        v = v * 10 + u64(text[pos] - '0');
        ++pos;
        any = true;
    }
    if (!any) return false;
    out = v;
    return true;
}

bool load_checkpoint(const std::string& path, Checkpoint& c) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    return read_u64_field(text, "k", c.k) && read_u64_field(text, "last_q", c.last_q) &&
           read_u64_field(text, "offset", c.offset) && read_u64_field(text, "rows", c.rows) &&
           read_u64_field(text, "rows_hash", c.rows_hash);
}

// Atomic replace: a crash mid-save leaves the previous checkpoint intact.
void save_checkpoint(const std::string& path, const Checkpoint& c) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail("IoError", "cannot write checkpoint file " + tmp);
        out << "{\"k\":" << c.k << ",\"last_q\":" << c.last_q << ",\"offset\":" << c.offset
            << ",\"rows\":" << c.rows << ",\"rows_hash\":\"" << c.rows_hash << "\"}\n";
        out.flush();
        if (!out) fail("IoError", "checkpoint write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        fail("IoError", "cannot replace checkpoint file " + path);
}

u64 abort_after_env() {
    const char* s = std::getenv("WARING_SCAN_ABORT_AFTER");
    if (!s || !*s) return 0;
    u64 v = 0;
    for (const char* p = s; *p; ++p) {
        if (*p < '0' || *p > '9') return 0;
        v = v * 10 + u64(*p - '0');
    }
    return v;
}

// Sink for output bytes: a file stream when out_path is set, otherwise the
// in-memory content string.  bytes/hash always track the full content.
struct Writer {
    std::ofstream file;
    bool to_file = false;
    std::string content;
    u64 bytes = 0;
    u64 hash = 0xcbf29ce484222325ull;
    u64 rows = 0;

    void append(const std::string& s) {
        if (s.empty()) return;
        if (to_file) {
            file.write(s.data(), std::streamsize(s.size()));
            if (!file) fail("IoError", "output write failed");
        } else {
            content += s;
        }
        hash = fnv1a(s.data(), s.size(), hash);
        bytes += s.size();
    }

    void flush() {
        if (to_file) {
            file.flush();
            if (!file) fail("IoError", "output flush failed");
        }
    }
};

}  // namespace

ScanResult run_scan(const ScanJob& job) {
    if (job.k_min < 1 || job.k_max < job.k_min) fail("CapExceeded", "bad k range");
    if (job.k_max - job.k_min + 1 > kScanKSpan) fail("CapExceeded", "k range too wide");
    if (job.q_max < 2 || job.q_max > kScanQCap) fail("CapExceeded", "q bound out of range");
    if (!job.checkpoint_path.empty() && job.out_path.empty())
        fail("CapExceeded", "checkpointing requires an output file");

    std::vector<u64> qs = prime_powers_upto(job.q_max);
    std::vector<Task> tasks;
    tasks.reserve((job.k_max - job.k_min + 1) * qs.size());
    for (u64 k = job.k_min; k <= job.k_max; ++k)
        for (u64 q : qs) tasks.push_back({k, q});

    const std::string header = job.csv ? std::string("k,q,coverable,gamma\n") : std::string("[\n");

    // Resume: accept the checkpoint only if the existing output prefix
    // re-hashes to the recorded value; otherwise restart cleanly.
    std::size_t start = 0;
    std::string prefix;
    u64 resumed_rows = 0;
    bool resumed = false;
    if (!job.checkpoint_path.empty()) {
        Checkpoint c;
        if (load_checkpoint(job.checkpoint_path, c)) {
            std::ifstream in(job.out_path, std::ios::binary);
            if (in) {
                std::string data(c.offset, '\0');
                in.read(data.data(), std::streamsize(c.offset));
                if (in.gcount() == std::streamsize(c.offset) &&
                    fnv1a(data.data(), data.size(), 0xcbf29ce484222325ull) == c.rows_hash) {
                    for (std::size_t i = 0; i < tasks.size(); ++i) {
                        if (tasks[i].k == c.k && tasks[i].q == c.last_q) {
                            start = i + 1;
                            prefix = std::move(data);
                            resumed_rows = c.rows;
                            resumed = true;
                            break;
                        }
                    }
                }
            }
        }
    }

    Writer w;
    w.to_file = !job.out_path.empty();
    if (w.to_file) {
        // Truncate-and-rewrite drops any bytes past the last checkpoint
        // (a kill can land between a row flush and its checkpoint).
        w.file.open(job.out_path, std::ios::binary | std::ios::trunc);
        if (!w.file) fail("IoError", "cannot open output file " + job.out_path);
    }
    if (resumed) {
        w.append(prefix);
        w.rows = resumed_rows;
    } else {
        w.append(header);
    }

    const u64 abort_after = abort_after_env();
    u64 committed_this_run = 0;

    auto commit = [&](std::size_t i, const std::string& row) {
        if (!row.empty()) {
            if (!job.csv && w.rows > 0) w.append(",\n");
            w.append(row);
            ++w.rows;
        }
        ++committed_this_run;
        if (!job.checkpoint_path.empty()) {
            w.flush();
            save_checkpoint(job.checkpoint_path,
                            {tasks[i].k, tasks[i].q, w.bytes, w.rows, w.hash});
        }
        if (abort_after && committed_this_run >= abort_after) {
            w.flush();
            std::_Exit(3);
        }
    };

    u32 jobs = job.jobs ? job.jobs : 1;
    if (jobs <= 1 || tasks.size() - start <= 1) {
        for (std::size_t i = start; i < tasks.size(); ++i) commit(i, render_row(job, tasks[i]));
    } else {
        struct Slot {
            std::string row;
            std::exception_ptr err;
            bool done = false;
        };
        std::vector<Slot> slots(tasks.size());
        std::mutex mu;
        std::condition_variable cv;
        std::atomic<std::size_t> next{start};
        auto work = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                std::string row;
                std::exception_ptr err;
                try {
                    row = render_row(job, tasks[i]);
                } catch (...) {
                    err = std::current_exception();
                }
                {
                    std::lock_guard<std::mutex> lk(mu);
                    slots[i].row = std::move(row);
                    slots[i].err = err;
                    slots[i].done = true;
                }
                cv.notify_all();
            }
        };
        std::vector<std::thread> pool;
        for (u32 t = 0; t < jobs; ++t) pool.emplace_back(work);
        std::exception_ptr first_err;
        for (std::size_t i = start; i < tasks.size(); ++i) {
            std::unique_lock<std::mutex> lk(mu);
            cv.wait(lk, [&] { return slots[i].done; });
            lk.unlock();
            if (slots[i].err) {
                first_err = slots[i].err;
                next.store(tasks.size());  // drain remaining workers
                break;
            }
            commit(i, slots[i].row);
            slots[i].row.clear();
        }
        for (auto& t : pool) t.join();
        if (first_err) std::rethrow_exception(first_err);
    }

    if (!job.csv) w.append(w.rows ? std::string("\n]\n") : std::string("]\n"));
    w.flush();

    ScanResult res;
    res.tasks = tasks.size();
    res.tasks_computed = tasks.size() - start;
    res.rows = w.rows;
    res.bytes = w.bytes;
    res.content_hash = w.hash;
    if (!w.to_file) res.content = std::move(w.content);
    return res;
}

}  // namespace waring
