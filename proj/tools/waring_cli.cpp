// waring: command-line front end for the finite-field Waring toolkit.
//
// Subcommands: gamma, table, uncoverable, gamma-max, spectral, sarkozy,
// lemmas, decompose-field, decompose-matrix, decompose-ring, verify.
// JSON goes to stdout by default; --csv switches tables to CSV; --out
// redirects to a file.  Exit codes: 0 success, 1 usage error, 2 domain
// error (the error name is printed), 4 verification mismatches.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "waring/field.hpp"
#include "waring/gamma.hpp"
#include "waring/matrix.hpp"
#include "waring/numbers.hpp"
#include "waring/poly.hpp"
#include "waring/reference_tables.hpp"
#include "waring/ring.hpp"
#include "waring/scan.hpp"
#include "waring/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace waring;

namespace {

// stdout unless --out was given.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) fail("IoError", "cannot open output file " + out_path);
    f.write(text.data(), std::streamsize(text.size()));
    f.flush();
    if (!f) fail("IoError", "write failed for " + out_path);
}

void emit_json(const std::string& out_path, const json& j) {
    emit(out_path, j.dump(2) + "\n");
}

std::optional<std::pair<u32, u32>> parse_gamma_filter(const std::string& s) {
    if (s.empty()) return {};
    // accepted shape: gamma=A..B
    const std::string pre = "gamma=";
    auto bad = [&] {
        throw CLI::ValidationError("--filter", "expected gamma=A..B, got '" + s + "'");
    };
    if (s.rfind(pre, 0) != 0) bad();
    std::string body = s.substr(pre.size());
    auto dots = body.find("..");
    if (dots == std::string::npos) bad();
    try {
        std::size_t used = 0;
        unsigned long a = std::stoul(body.substr(0, dots), &used);
        if (used != dots) bad();
        std::string hi = body.substr(dots + 2);
        unsigned long b = std::stoul(hi, &used);
        if (used != hi.size()) bad();
        if (a > b) bad();
        return std::make_pair(u32(a), u32(b));
    } catch (const CLI::ValidationError&) {
        throw;
    } catch (...) {
        bad();
    }
    return {};
}

u64 resolve_bound(const std::string& bound, u64 kmax, const char* flag) {
    if (bound == "auto") return 8 * kmax * kmax * kmax * kmax;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(bound, &used);
        if (used != bound.size() || v < 2) throw std::invalid_argument("range");
        return v;
    } catch (...) {
        throw CLI::ValidationError(flag, "expected auto or an integer >= 2, got '" + bound + "'");
    }
}

// ---- gamma -----------------------------------------------------------

int cmd_gamma(u64 k, u64 q, bool csv, const std::string& out) {
    GammaResult g = gamma_of(k, q);
    if (csv) {
        std::ostringstream os;
        os << "k,q,coverable,gamma\n" << g.k << ',' << g.q << ','
           << (g.coverable ? "true" : "false") << ',';
        if (g.coverable) os << g.gamma;
        os << '\n';
        emit(out, os.str());
        return 0;
    }
    json j;
    j["k"] = g.k;
    j["q"] = g.q;
    j["coverable"] = g.coverable;
    if (g.coverable) j["gamma"] = g.gamma;
    emit_json(out, j);
    return 0;
}

// ---- table (scan orchestrator) --------------------------------------

int cmd_table(u64 k, u64 kmax, const std::string& bound, u64 qmax, bool csv,
              const std::string& out, const std::string& resume, u32 jobs,
              const std::string& filter) {
    if (kmax == 0) kmax = k;
    if (kmax < k) throw CLI::ValidationError("--kmax", "must be >= --k");
    if (!resume.empty() && out.empty())
        throw CLI::ValidationError("--resume", "requires --out");
    ScanJob job;
    job.k_min = k;
    job.k_max = kmax;
    job.q_max = qmax ? qmax : resolve_bound(bound, kmax, "--bound");
    job.gamma_filter = parse_gamma_filter(filter);
    job.csv = csv;
    job.jobs = jobs;
    job.out_path = out;
    job.checkpoint_path = resume;
    ScanResult r = run_scan(job);
    if (out.empty()) std::fwrite(r.content.data(), 1, r.content.size(), stdout);
    return 0;
}

// ---- uncoverable ----------------------------------------------------

int cmd_uncoverable(u64 k, const std::string& bound, bool csv, const std::string& out) {
    u64 b = resolve_bound(bound, k, "--bound");
    std::vector<u64> fields = uncoverable_fields(k, b);
    if (csv) {
        std::ostringstream os;
        os << "k,q\n";
        for (u64 q : fields) os << k << ',' << q << '\n';
        emit(out, os.str());
        return 0;
    }
    json j;
    j["k"] = k;
    j["fields"] = fields;
    emit_json(out, j);
    return 0;
}

// ---- gamma-max ------------------------------------------------------

int cmd_gamma_max(u64 k, u64 kcap, bool csv, const std::string& out) {
    u32 g = gamma_max(k, kcap);
    if (csv) {
        std::ostringstream os;
        os << "k,gamma_max\n" << k << ',' << g << '\n';
        emit(out, os.str());
        return 0;
    }
    json j;
    j["k"] = k;
    j["gamma_max"] = g;
    emit_json(out, j);
    return 0;
}

// ---- spectral -------------------------------------------------------

int cmd_spectral(u64 k, u64 q, bool csv, const std::string& out) {
    FieldCtx F = build_field_q(q);
    SpectrumReport r = spectrum(F, k);
    double max_mod = 0;
    for (auto& l : r.lambdas) max_mod = std::max(max_mod, std::abs(l));
    double expected_sq = double(r.q) - double(r.size_star);
    bool identity_ok = std::abs(r.sum_sq - expected_sq) <= 1e-6 * std::max(1.0, expected_sq);
    bool modulus_ok = max_mod <= std::sqrt(expected_sq) + 1e-9;
    if (csv) {
        std::ostringstream os;
        os << "k,q,d,size_star,max_modulus,sum_sq,n_star,sg_bound\n"
           << r.k << ',' << r.q << ',' << r.d << ',' << r.size_star << ',' << max_mod << ','
           << r.sum_sq << ',' << r.n_star << ',' << r.sg_bound << '\n';
        emit(out, os.str());
        return 0;
    }
    json j;
    j["k"] = r.k;
    j["q"] = r.q;
    j["d"] = r.d;
    j["size_star"] = r.size_star;
    j["trivial"] = r.trivial;
    json ls = json::array();
    for (auto& l : r.lambdas) {
        json lj = json::array();
        lj.push_back(l.real());
        lj.push_back(l.imag());
        ls.push_back(std::move(lj));
    }
    j["lambdas"] = ls;
    j["max_modulus"] = max_mod;
    j["sum_sq"] = r.sum_sq;
    j["identity_ok"] = identity_ok;
    j["modulus_bound_ok"] = modulus_ok;
    j["n_star"] = r.n_star;
    j["sg_bound"] = r.sg_bound;
    emit_json(out, j);
    return 0;
}

// ---- sarkozy --------------------------------------------------------

int cmd_sarkozy(u64 k, u64 q, u64 size, u64 seed, const std::string& out) {
    FieldCtx F = build_field_q(q);
    double thr = sarkozy_threshold(k, q);
    // Default set size: one past the threshold, where a pair is guaranteed.
    if (size == 0) size = u64(thr) + 1;
    if (size > q) size = q;
    std::mt19937_64 rng(seed);
    std::set<u32> pick;
    std::uniform_int_distribution<u64> dist(0, q - 1);
    while (pick.size() < size) pick.insert(u32(dist(rng)));
    std::vector<u32> set(pick.begin(), pick.end());
    auto pair = sarkozy_find_pair(F, k, set);
    json j;
    j["k"] = k;
    j["q"] = q;
    j["threshold"] = thr;
    j["size"] = size;
    j["seed"] = seed;
    j["found"] = pair.has_value();
    if (pair) {
        json pr = json::array();
        pr.push_back(format_element(pair->first));
        pr.push_back(format_element(pair->second));
        j["pair"] = std::move(pr);
    } else {
        j["pair"] = nullptr;
    }
    emit_json(out, j);
    return 0;
}

// ---- lemmas ---------------------------------------------------------

int cmd_lemmas(u64 xmax, u64 yspan, const std::string& out) {
    LemmaReport r = verify_appendix_lemmas(xmax, yspan);
    json j;
    j["x_max"] = xmax;
    j["y_span"] = yspan;
    j["checked_quartic"] = r.checked_quartic;
    j["checked_cubic"] = r.checked_cubic;
    j["violations"] = r.violations;
    json probes = json::array();
    for (auto& p : r.probes) {
        json pj;
        pj["m"] = p.m;
        pj["checked"] = p.checked;
        pj["violations"] = p.violations;
        pj["min_margin"] = p.min_margin;
        probes.push_back(pj);
    }
    j["float_probes"] = probes;
    j["pass"] = r.violations == 0;
    emit_json(out, j);
    return r.violations == 0 ? 0 : 4;
}

// ---- decompose-field ------------------------------------------------

int cmd_decompose_field(u64 k, u64 q, const std::string& target, const std::string& out) {
    FieldCtx F = build_field_q(q);
    u32 t = parse_element(F, target);
    std::vector<u32> wit = decompose_in_field(F, k, t);
    // recheck before printing
    u32 sum = 0;
    for (u32 b : wit) sum = F.add(sum, F.pow(b, k));
    if (sum != t) fail("VerificationFailed", "witness sum does not match the target");
    json j;
    j["k"] = k;
    j["q"] = q;
    j["target"] = format_element(t);
    json ws = json::array();
    for (u32 b : wit) ws.push_back(format_element(b));
    j["witnesses"] = ws;
    j["count"] = wit.size();
    j["verified"] = true;
    emit_json(out, j);
    return 0;
}

// ---- decompose-matrix -----------------------------------------------

int cmd_decompose_matrix(u64 k, u64 q, const std::string& target, const std::string& out) {
    FieldCtx F = build_field_q(q);
    FqMatrix A = parse_matrix(F, target);
    MatrixDecomposition d = decompose_matrix(F, A, k);
    std::string diff;
    if (!verify_matrix_decomposition(F, d, &diff))
        fail("VerificationFailed", diff.empty() ? "matrix recheck failed" : diff);
    json j;
    j["k"] = k;
    j["q"] = q;
    j["n"] = A.n;
    j["target"] = format_matrix(A);
    json ws = json::array();
    for (auto& B : d.witnesses) ws.push_back(format_matrix(B));
    j["witnesses"] = ws;
    if (!d.witness_polys.empty()) {
        json ps = json::array();
        for (auto& p : d.witness_polys) ps.push_back(p_format(p));
        j["witness_polys"] = ps;
    }
    j["count"] = d.witnesses.size();
    j["verified"] = true;
    emit_json(out, j);
    return 0;
}

// ---- decompose-ring -------------------------------------------------

int cmd_decompose_ring(u64 k, const std::string& ring, const std::string& target,
                       const std::string& out) {
    RingSpec R = parse_ring_spec(ring);
    u64 alpha = parse_ring_element(R, target);
    RingDecomposition d = decompose_ring_element(R, alpha, k);
    std::string diff;
    if (!verify_ring_decomposition(R, d, &diff))
        fail("VerificationFailed", diff.empty() ? "ring recheck failed" : diff);
    json j;
    j["k"] = k;
    j["ring"] = format_ring_spec(R);
    j["order"] = r_order(R);
    j["target"] = format_ring_element(R, alpha);
    json ws = json::array();
    for (u64 w : d.witnesses) ws.push_back(format_ring_element(R, w));
    j["witnesses"] = ws;
    j["count"] = d.witnesses.size();
    j["verified"] = true;
    emit_json(out, j);
    return 0;
}

// ---- verify ---------------------------------------------------------

json diff_lists(const std::vector<u64>& expected, const std::vector<u64>& got) {
    std::vector<u64> missing, extra;
    std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(),
                        std::back_inserter(missing));
    std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                        std::back_inserter(extra));
    json d;
    if (!missing.empty()) d["missing"] = missing;
    if (!extra.empty()) d["extra"] = extra;
    return d;
}

// Engine recomputation vs the embedded expectations, one result row per k.
int cmd_verify(const std::string& suite, u64 kmax, u64 qcap, const std::string& out) {
    json results = json::array();
    bool all_pass = true;
    auto push = [&](u64 k, bool pass, json detail) {
        json r;
        r["k"] = k;
        r["pass"] = pass;
        if (!pass) r["diff"] = std::move(detail);
        results.push_back(std::move(r));
        all_pass = all_pass && pass;
    };

    if (suite == "table1") {
        for (u64 k = 3; k <= std::min<u64>(kmax, 37); ++k) {
            std::vector<u64> got = uncoverable_fields(k);
            json d = diff_lists(tables::uncoverable_expected(k), got);
            push(k, d.empty(), std::move(d));
        }
    } else if (suite == "table2" || suite == "table3") {
        u64 lo = suite == "table2" ? 4 : 9;
        u64 hi = std::min<u64>(kmax, suite == "table2" ? 8 : 37);
        u64 scan_cap = qcap ? qcap : 5000;
        for (u64 k = lo; k <= hi; ++k) {
            std::vector<std::vector<u64>> got(7);
            for (auto& r : gamma_table(k, scan_cap))
                if (r.coverable && r.gamma >= 3 && r.gamma <= 6) got[r.gamma].push_back(r.q);
            json d;
            for (u32 g = 3; g <= 6; ++g) {
                u64 cap = scan_cap;
                if (g == 3) cap = std::min(cap, tables::gamma3_complete_bound(k));
                std::vector<u64> expected, computed;
                for (u64 q : tables::gamma_class_expected(k, g))
                    if (q <= cap) expected.push_back(q);
                for (u64 q : got[g])
                    if (q <= cap) computed.push_back(q);
                json gd = diff_lists(expected, computed);
                if (!gd.empty()) d["gamma" + std::to_string(g)] = std::move(gd);
            }
            push(k, d.empty(), std::move(d));
        }
    } else if (suite == "gamma7") {
        // group the high-gamma entries by k
        std::set<u64> ks;
        for (auto& e : tables::high_gamma_entries())
            if (e.k <= kmax) ks.insert(e.k);
        for (u64 k : ks) {
            json d = json::array();
            for (auto& e : tables::high_gamma_entries()) {
                if (e.k != k) continue;
                GammaResult g = gamma_of(e.k, e.q);
                if (!g.coverable || g.gamma != e.gamma) {
                    json m;
                    m["q"] = e.q;
                    m["expected"] = e.gamma;
                    if (g.coverable)
                        m["got"] = g.gamma;
                    else
                        m["got"] = "uncoverable";
                    d.push_back(std::move(m));
                }
            }
            push(k, d.empty(), std::move(d));
        }
    } else if (suite == "table5") {
        for (u64 k = 1; k <= std::min<u64>(kmax, 37); ++k) {
            u32 got = gamma_max(k, /*k_cap=*/37);
            u32 expected = tables::gamma_max_expected(k);
            json d;
            if (got != expected) {
                d["expected"] = expected;
                d["got"] = got;
            }
            push(k, d.empty(), std::move(d));
        }
    } else if (suite == "corrections") {
        for (auto& e : tables::corrected_values()) {
            if (e.k > kmax) continue;
            GammaResult g = gamma_of(e.k, e.q);
            json d;
            if (!g.coverable || g.gamma != e.gamma) {
                d["q"] = e.q;
                d["expected"] = e.gamma;
                if (g.coverable)
                    d["got"] = g.gamma;
                else
                    d["got"] = "uncoverable";
            }
            push(e.k, d.empty(), std::move(d));
        }
    } else {
        throw CLI::ValidationError(
            "--suite", "unknown suite '" + suite +
                           "' (table1, table2, table3, gamma7, table5, corrections)");
    }

    json j;
    j["suite"] = suite;
    j["kmax"] = kmax;
    j["results"] = std::move(results);
    j["pass"] = all_pass;
    emit_json(out, j);
    return all_pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Waring numbers over finite fields: gamma tables, Cayley spectra, and "
                 "explicit power-sum decompositions"};
    app.require_subcommand(1);

    u64 k = 0, kmax = 0, q = 0, qmax = 0, kcap = 20, seed = 0, size = 0;
    u64 xmax = 10, yspan = 200, vq = 0;
    u32 jobs = 1;
    bool csv = false;
    std::string bound = "auto", out, resume, filter, target, ring, suite;

    auto* c_gamma = app.add_subcommand("gamma", "gamma(k, q) for one field");
    c_gamma->add_option("--k", k, "exponent")->required();
    c_gamma->add_option("--q", q, "field size (prime power)")->required();
    c_gamma->add_flag("--csv", csv, "CSV output");
    c_gamma->add_option("--out", out, "write to file instead of stdout");

    auto* c_table = app.add_subcommand("table", "scan gamma over a (k, q) grid");
    c_table->add_option("--k", k, "first exponent")->required();
    c_table->add_option("--kmax", kmax, "last exponent (default: --k)");
    c_table->add_option("--bound", bound, "q bound: auto (= 8*kmax^4) or an integer");
    c_table->add_option("--qmax", qmax, "q bound as a plain integer (overrides --bound)");
    c_table->add_option("--filter", filter, "keep only coverable rows, gamma=A..B");
    c_table->add_flag("--csv", csv, "CSV output");
    c_table->add_option("--out", out, "write to file instead of stdout");
    c_table->add_option("--jobs", jobs, "worker threads (output is identical for any count)");
    c_table->add_option("--resume", resume, "checkpoint file; reuse to resume (needs --out)");

    auto* c_unc = app.add_subcommand("uncoverable", "fields whose k-th powers never cover");
    c_unc->add_option("--k", k, "exponent")->required();
    c_unc->add_option("--bound", bound, "q bound: auto (= 8k^4) or an integer");
    c_unc->add_flag("--csv", csv, "CSV output");
    c_unc->add_option("--out", out, "write to file instead of stdout");

    auto* c_gm = app.add_subcommand("gamma-max", "worst gamma(k, q) over coverable fields");
    c_gm->add_option("--k", k, "exponent")->required();
    c_gm->add_option("--kcap", kcap, "refuse k above this cap (runtime guard)");
    c_gm->add_flag("--csv", csv, "CSV output");
    c_gm->add_option("--out", out, "write to file instead of stdout");

    auto* c_sp = app.add_subcommand("spectral", "Cayley power-residue digraph spectrum");
    c_sp->add_option("--k", k, "exponent")->required();
    c_sp->add_option("--q", q, "field size (prime power)")->required();
    c_sp->add_flag("--csv", csv, "CSV output");
    c_sp->add_option("--out", out, "write to file instead of stdout");

    auto* c_sk = app.add_subcommand("sarkozy", "difference pair in a random dense set");
    c_sk->add_option("--k", k, "exponent")->required();
    c_sk->add_option("--q", q, "field size (prime power)")->required();
    c_sk->add_option("--size", size, "set size (default: threshold + 1)");
    c_sk->add_option("--seed", seed, "RNG seed for the sampled set");
    c_sk->add_option("--out", out, "write to file instead of stdout");

    auto* c_lm = app.add_subcommand("lemmas", "exact closure-inequality checks");
    c_lm->add_option("--xmax", xmax, "largest x (default 10)");
    c_lm->add_option("--yspan", yspan, "y steps above each boundary (default 200)");
    c_lm->add_option("--out", out, "write to file instead of stdout");

    auto* c_df = app.add_subcommand("decompose-field", "write a field element as a power sum");
    c_df->add_option("--k", k, "exponent")->required();
    c_df->add_option("--q", q, "field size (prime power)")->required();
    c_df->add_option("--target", target, "element code or g-polynomial")->required();
    c_df->add_option("--out", out, "write to file instead of stdout");

    auto* c_dm = app.add_subcommand("decompose-matrix", "write a matrix as a power sum");
    c_dm->add_option("--k", k, "exponent")->required();
    c_dm->add_option("--q", q, "field size (prime power)")->required();
    c_dm->add_option("--target", target, "rows 'a,b;c,d', entries as codes")->required();
    c_dm->add_option("--out", out, "write to file instead of stdout");

    auto* c_dr = app.add_subcommand("decompose-ring", "write a ring element as a power sum");
    c_dr->add_option("--k", k, "exponent")->required();
    c_dr->add_option("--ring", ring, "ring spec: zn:N | polyq:p=..,s=..,f=..,e=.. | prod:A|B")
        ->required();
    c_dr->add_option("--target", target, "element in the ring's text form")->required();
    c_dr->add_option("--out", out, "write to file instead of stdout");

    auto* c_vf = app.add_subcommand("verify", "recompute tables and diff embedded fixtures");
    c_vf->add_option("--suite", suite,
                     "table1 | table2 | table3 | gamma7 | table5 | corrections")
        ->required();
    c_vf->add_option("--kmax", kmax, "largest exponent to check (default 10)");
    c_vf->add_option("--qmax", vq, "override the q scan bound (table2/table3)");
    c_vf->add_option("--out", out, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_gamma->parsed()) return cmd_gamma(k, q, csv, out);
        if (c_table->parsed())
            return cmd_table(k, kmax, bound, qmax, csv, out, resume, jobs, filter);
        if (c_unc->parsed()) return cmd_uncoverable(k, bound, csv, out);
        if (c_gm->parsed()) return cmd_gamma_max(k, kcap, csv, out);
        if (c_sp->parsed()) return cmd_spectral(k, q, csv, out);
        if (c_sk->parsed()) return cmd_sarkozy(k, q, size, seed, out);
        if (c_lm->parsed()) return cmd_lemmas(xmax, yspan, out);
        if (c_df->parsed()) return cmd_decompose_field(k, q, target, out);
        if (c_dm->parsed()) return cmd_decompose_matrix(k, q, target, out);
        if (c_dr->parsed()) return cmd_decompose_ring(k, ring, target, out);
        if (c_vf->parsed()) return cmd_verify(suite, kmax ? kmax : 10, vq, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error[" << e.name() << "]: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
