#pragma once

#include <optional>
#include <string>
#include <utility>

#include "waring/util.hpp"

namespace waring {

// Bulk gamma tabulation over a (k, q) grid with deterministic output.
//
// Tasks are the pairs (k, q) with k_min <= k <= k_max and q ranging over
// prime powers <= q_max, ordered by ascending k then ascending q.  Workers
// compute rows independently; a single writer emits them in task order, so
// the output bytes are identical for any job count.
//
// CSV rows follow "k,q,coverable,gamma" with an empty gamma cell on
// uncoverable rows.  JSON output is an array of row objects carrying
// closure_sizes as well.  A gamma filter keeps only coverable rows whose
// gamma lies in the inclusive range.
//
// When checkpoint_path is set the writer records, after every task, the
// output byte offset and a running FNV-1a hash of everything written so
// far.  Restarting with the same job resumes from the first unfinished
// task after validating that the existing output prefix still matches the
// recorded hash; any mismatch falls back to a clean restart.  Checkpoint
// files are replaced atomically (temp file + rename), so a kill at any
// point leaves a resumable state.
//
// WARING_SCAN_ABORT_AFTER=<n> (test hook) stops the process with exit
// code 3 after the writer has committed n tasks in this run.
struct ScanJob {
    u64 k_min = 0;
    u64 k_max = 0;
    u64 q_max = 0;
    std::optional<std::pair<u32, u32>> gamma_filter;
    bool csv = true;
    u32 jobs = 1;
    std::string out_path;         // empty: return content in ScanResult only
    std::string checkpoint_path;  // empty: no checkpointing (requires out_path)
};

struct ScanResult {
    u64 tasks = 0;          // tasks in the grid
    u64 tasks_computed = 0; // tasks computed in this run (0 when fully resumed)
    u64 rows = 0;           // data rows in the final output
    u64 bytes = 0;          // total output size
    u64 content_hash = 0;   // FNV-1a of the full output
    std::string content;    // populated only when out_path is empty
};

ScanResult run_scan(const ScanJob& job);

}  // namespace waring
