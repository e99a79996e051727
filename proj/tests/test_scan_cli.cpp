#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd;
    if (!env.empty()) cmd += env + " ";
    cmd += std::string(WARING_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return {};
    CliResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path tmpdir() {
    static fs::path d = [] {
        fs::path base = fs::temp_directory_path() / ("waring_cli_" + std::to_string(::getpid()));
        fs::create_directories(base);
        return base;
    }();
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gamma emits the documented JSON shape") {
    CliResult r = run_cli("gamma --k 3 --q 7");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "{\n"
          "  \"k\": 3,\n"
          "  \"q\": 7,\n"
          "  \"coverable\": true,\n"
          "  \"gamma\": 3\n"
          "}\n");

    CliResult u = run_cli("gamma --k 12 --q 25");
    CHECK(u.code == 0);
    CHECK(u.out ==
          "{\n"
          "  \"k\": 12,\n"
          "  \"q\": 25,\n"
          "  \"coverable\": false\n"
          "}\n");
}

TEST_CASE("uncoverable lists the full exceptional set") {
    CliResult r = run_cli("uncoverable --k 12");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "{\n"
          "  \"k\": 12,\n"
          "  \"fields\": [\n"
          "    4,\n"
          "    9,\n"
          "    25,\n"
          "    121\n"
          "  ]\n"
          "}\n");
}

TEST_CASE("exit codes separate usage, domain, and success") {
    CHECK(run_cli("gamma --k 3 --q 8").code == 0);
    // usage errors: missing flag, unknown subcommand, malformed filter
    CliResult miss = run_cli("gamma --k 3");
    CHECK(miss.code == 1);
    CHECK(miss.out.find("--q is required") != std::string::npos);
    CHECK(run_cli("nope").code == 1);
    CHECK(run_cli("table --k 3 --filter gamma=x").code == 1);
    CHECK(run_cli("table --k 3 --resume ck.json").code == 1);  // --resume needs --out
    // domain errors carry the error[Name] prefix
    CliResult dom = run_cli("gamma --k 3 --q 6");
    CHECK(dom.code == 2);
    CHECK(dom.out.find("error[NonPrimePowerQ]") != std::string::npos);
    CliResult gcd = run_cli("decompose-ring --ring zn:12 --target 5 --k 3");
    CHECK(gcd.code == 2);
    CHECK(gcd.out.find("error[GcdViolation]") != std::string::npos);
}

TEST_CASE("table prints pinned CSV and JSON grids") {
    CliResult csv = run_cli("table --k 3 --kmax 3 --qmax 20 --csv");
    CHECK(csv.code == 0);
    CHECK(csv.out ==
          "k,q,coverable,gamma\n"
          "3,2,true,1\n"
          "3,3,true,1\n"
          "3,4,false,\n"
          "3,5,true,1\n"
          "3,7,true,3\n"
          "3,8,true,1\n"
          "3,9,true,1\n"
          "3,11,true,1\n"
          "3,13,true,2\n"
          "3,16,true,2\n"
          "3,17,true,1\n"
          "3,19,true,2\n");

    CliResult js = run_cli("table --k 12 --kmax 12 --qmax 10");
    CHECK(js.code == 0);
    CHECK(js.out ==
          "[\n"
          "  {\"k\":12,\"q\":2,\"coverable\":true,\"gamma\":1,\"closure_sizes\":[2]},\n"
          "  {\"k\":12,\"q\":3,\"coverable\":true,\"gamma\":2,\"closure_sizes\":[2,3]},\n"
          "  {\"k\":12,\"q\":4,\"coverable\":false,\"closure_sizes\":[2,2]},\n"
          "  {\"k\":12,\"q\":5,\"coverable\":true,\"gamma\":4,\"closure_sizes\":[2,3,4,5]},\n"
          "  {\"k\":12,\"q\":7,\"coverable\":true,\"gamma\":6,\"closure_sizes\":[2,3,4,5,6,7]},\n"
          "  {\"k\":12,\"q\":8,\"coverable\":true,\"gamma\":1,\"closure_sizes\":[8]},\n"
          "  {\"k\":12,\"q\":9,\"coverable\":false,\"closure_sizes\":[3,3]}\n"
          "]\n");
}

TEST_CASE("file output matches stdout output byte for byte") {
    fs::path f = tmpdir() / "stdout_vs_file.csv";
    CliResult direct = run_cli("table --k 4 --kmax 4 --qmax 60 --csv");
    CliResult filed = run_cli("table --k 4 --kmax 4 --qmax 60 --csv --out " + f.string());
    CHECK(direct.code == 0);
    CHECK(filed.code == 0);
    CHECK(slurp(f) == direct.out);
}

TEST_CASE("worker count never changes the bytes") {
    fs::path a = tmpdir() / "jobs1.csv";
    fs::path b = tmpdir() / "jobs4.csv";
    fs::path c = tmpdir() / "jobs8.csv";
    std::string base = "table --k 3 --kmax 5 --qmax 200 --csv --out ";
    CHECK(run_cli(base + a.string() + " --jobs 1").code == 0);
    CHECK(run_cli(base + b.string() + " --jobs 4").code == 0);
    CHECK(run_cli(base + c.string() + " --jobs 8").code == 0);
    std::string ref = slurp(a);
    CHECK(!ref.empty());
    CHECK(slurp(b) == ref);
    CHECK(slurp(c) == ref);

    fs::path ja = tmpdir() / "jobs1.json";
    fs::path jb = tmpdir() / "jobs4.json";
    std::string jbase = "table --k 3 --kmax 5 --qmax 200 --out ";
    CHECK(run_cli(jbase + ja.string() + " --jobs 1").code == 0);
    CHECK(run_cli(jbase + jb.string() + " --jobs 4").code == 0);
    CHECK(slurp(jb) == slurp(ja));
}

TEST_CASE("a killed scan resumes to identical bytes") {
    fs::path ref = tmpdir() / "resume_ref.csv";
    fs::path out = tmpdir() / "resume_out.csv";
    fs::path ck = tmpdir() / "resume_ck.json";
    std::string grid = "table --k 3 --kmax 5 --qmax 200 --csv ";
    CHECK(run_cli(grid + "--out " + ref.string()).code == 0);

    // first attempt dies mid-scan after 30 committed rows
    CliResult killed = run_cli(grid + "--out " + out.string() + " --resume " + ck.string(),
                               "WARING_SCAN_ABORT_AFTER=30");
    CHECK(killed.code == 3);
    CHECK(fs::exists(ck));
    CHECK(slurp(out).size() < slurp(ref).size());

    // second attempt picks the checkpoint up and completes
    CliResult done = run_cli(grid + "--out " + out.string() + " --resume " + ck.string());
    CHECK(done.code == 0);
    CHECK(slurp(out) == slurp(ref));

    // resuming over a finished scan recomputes nothing and keeps the bytes
    CliResult again = run_cli(grid + "--out " + out.string() + " --resume " + ck.string());
    CHECK(again.code == 0);
    CHECK(slurp(out) == slurp(ref));
}

TEST_CASE("a corrupted partial output restarts cleanly") {
    fs::path ref = tmpdir() / "corrupt_ref.csv";
    fs::path out = tmpdir() / "corrupt_out.csv";
    fs::path ck = tmpdir() / "corrupt_ck.json";
    std::string grid = "table --k 4 --kmax 4 --qmax 300 --csv ";
    CHECK(run_cli(grid + "--out " + ref.string()).code == 0);
    CliResult killed = run_cli(grid + "--out " + out.string() + " --resume " + ck.string(),
                               "WARING_SCAN_ABORT_AFTER=20");
    CHECK(killed.code == 3);
    {
        // flip one byte inside the committed prefix
        std::string bytes = slurp(out);
        REQUIRE(bytes.size() > 10);
        bytes[bytes.size() / 2] = '#';
        std::ofstream f(out, std::ios::binary | std::ios::trunc);
        f << bytes;
    }
    CliResult done = run_cli(grid + "--out " + out.string() + " --resume " + ck.string());
    CHECK(done.code == 0);
    CHECK(slurp(out) == slurp(ref));
}

TEST_CASE("gamma filter keeps only matching coverable rows") {
    CliResult r = run_cli("table --k 4 --kmax 4 --qmax 100 --filter gamma=2..2 --csv");
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "k,q,coverable,gamma");
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.rfind("4,", 0) == 0);
        CHECK(line.find(",true,2") != std::string::npos);
        ++rows;
    }
    CHECK(rows > 0);
}
