// End-to-end checks of the command line tool: each test shells out to the
// built binary (path injected by the build) and inspects output and exit
// codes.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "infodist/ncd.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(INFODIST_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        res.output.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

// Scratch directory that cleans up after itself.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("infodist_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int n = 0;
        return n;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("version flag reports tool and table versions", "[cli]") {
    auto res = run_cli("--version");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "machine table v1"));
}

TEST_CASE("missing subcommand fails", "[cli]") {
    auto res = run_cli("");
    CHECK(res.exit_code != 0);
    auto bogus = run_cli("no-such-subcommand");
    CHECK(bogus.exit_code != 0);
}

TEST_CASE("ktime reports the least program", "[cli]") {
    auto res = run_cli("ktime 10");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "k = 9"));
    CHECK(contains(res.output, "witness = 010001000"));
    CHECK(contains(res.output, "steps = 3"));

    auto cond = run_cli("ktime 0000 --cond 0000");
    CHECK(cond.exit_code == 0);
    CHECK(contains(cond.output, "k = 6"));
    CHECK(contains(cond.output, "witness = 011000"));

    auto eps = run_cli("ktime eps");
    CHECK(eps.exit_code == 0);
    CHECK(contains(eps.output, "k = 3"));
    CHECK(contains(eps.output, "witness = 000"));
}

TEST_CASE("ktime exits nonzero when the cap is too small", "[cli]") {
    auto res = run_cli("ktime 0110 --cap 9");
    CHECK(res.exit_code == 1);
    CHECK(contains(res.output, "error:"));
}

TEST_CASE("diagonal prints the least missed string", "[cli]") {
    auto res = run_cli("diagonal --n 7");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "u = 0000001"));
    CHECK(contains(res.output, "accepted programs below n = 5"));
    CHECK(contains(res.output, "distinct n-bit outputs = 1"));
}

TEST_CASE("trace prints exact values and a shape verdict", "[cli]") {
    auto res = run_cli("trace 00000000 --schedule \"0,1,4,21;8,1,16,21\"");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "value = 1/21"));
    CHECK(contains(res.output, "value = 1/19"));
    CHECK(contains(res.output, "fluctuations = 0"));
    CHECK(contains(res.output, "shape = lower"));
}

TEST_CASE("trace rejects a malformed schedule", "[cli]") {
    auto res = run_cli("trace 0 --schedule \"1,2,3\"");
    CHECK(res.exit_code == 1);
    CHECK(contains(res.output, "error:"));
}

TEST_CASE("threshold scans every pair of n-bit strings", "[cli]") {
    auto res = run_cli(
        "threshold --n 1 --c 8 "
        "--schedule \"0,1,4,12;8,1,16,12;16,1,32,13\" --jobs 4");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "n=1 c=8 pairs_scanned=4 s=0"));
}

TEST_CASE("trace modes write trace files", "[cli]") {
    TempDir tmp;
    auto upper = (tmp.path / "upper.txt").string();
    auto res = run_cli("trace 00000000 --schedule \"0,1,4,21;8,1,16,21\""
                       " --mode upper --out " + upper);
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "shape = upper"));
    auto text = slurp(upper);
    CHECK(contains(text, "along the schedule\n21/1\n19/1\n"));

    auto diag = (tmp.path / "diag.txt").string();
    auto res2 = run_cli("trace 00000000 --schedule \"0,1,4,21;8,1,16,21\""
                        " --out " + diag);
    CHECK(res2.exit_code == 0);
    CHECK(contains(slurp(diag), "\n1/21\n1/19\n"));
}

TEST_CASE("gap sweep reports per-length rows", "[cli]") {
    auto res = run_cli("gap --n-min 4 --n-max 5 --cap 15 --jobs 4");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output,
                   "n=4 u=0000 v=0000 w=0000 witness_len=10 e_t=6"));
    CHECK(contains(res.output, "witness_ok=yes"));
    CHECK(contains(res.output, "first_equal_n = none"));
}

TEST_CASE("machine-spec documents every opcode", "[cli]") {
    auto res = run_cli("machine-spec");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "table version v1"));
    for (const char* op : {"HALT", "WRITE0", "WRITE1", "COPYCOND", "LITERAL",
                           "REPEAT", "XORCOND", "NZEROS"})
        CHECK(contains(res.output, op));
}

TEST_CASE("corpus, matrix, and cluster commands chain together", "[cli]") {
    TempDir tmp;
    auto corp = (tmp.path / "corp").string();
    auto matrix = (tmp.path / "m.tsv").string();
    auto report = (tmp.path / "r.tsv").string();
    auto tree = (tmp.path / "t.nwk").string();

    auto gen = run_cli("gen-corpus --out-dir " + corp +
                       " --families 2 --items 2 --bytes 512");
    CHECK(gen.exit_code == 0);
    CHECK(contains(gen.output, "wrote 4 items"));
    CHECK(fs::exists(fs::path(corp) / "A0.txt"));
    CHECK(fs::exists(fs::path(corp) / "manifest.tsv"));

    auto mat = run_cli("ncd-matrix --dir " + corp + " --out " + matrix +
                       " --report " + report + " --jobs 4");
    CHECK(mat.exit_code == 0);
    CHECK(contains(mat.output, "items = 4"));
    CHECK(contains(mat.output, "in range [0, 1.1] = yes"));

    // The gen-corpus manifest names the same items, so feeding it back in
    // must reproduce the directory matrix exactly.
    auto via_manifest = (tmp.path / "m_manifest.tsv").string();
    auto mat2 = run_cli("ncd-matrix --manifest " +
                        (fs::path(corp) / "manifest.tsv").string() +
                        " --out " + via_manifest);
    CHECK(mat2.exit_code == 0);
    CHECK(fs::exists(via_manifest + ".rationals"));  // report auto-written
    auto a = infodist::parse_tsv(slurp(matrix));
    auto b = infodist::parse_tsv(slurp(via_manifest));
    REQUIRE(a.labels == b.labels);
    CHECK(a.values == b.values);

    // The written matrix carries a comment header and parses back cleanly.
    auto text = slurp(matrix);
    CHECK(text.rfind("# infodist", 0) == 0);
    auto parsed = infodist::parse_tsv(text);
    REQUIRE(parsed.size() == 4);
    CHECK(parsed.labels == std::vector<std::string>{"A0", "A1", "B0", "B1"});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(parsed.values[i][j] == parsed.values[j][i]);
    CHECK(contains(slurp(report), "A0\tA1\t"));

    auto clu = run_cli("ncd-cluster --matrix " + matrix + " --out " + tree +
                       " --cut 2");
    CHECK(clu.exit_code == 0);
    CHECK(contains(clu.output, "cluster 1: A0 A1"));
    CHECK(contains(clu.output, "cluster 2: B0 B1"));
    auto newick = slurp(tree);
    CHECK(newick.find("A0:") != std::string::npos);
    CHECK(newick.back() == '\n');
}

TEST_CASE("synthetic matrix needs no directory", "[cli]") {
    auto res = run_cli(
        "ncd-matrix --families 2 --items 2 --bytes 512 --jobs 4");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "items = 4"));
    CHECK(contains(res.output, "label\tA0\tA1\tB0\tB1"));
}

TEST_CASE("external compressor command is honoured", "[cli]") {
    // cat compresses nothing, so distinct items sit at distance exactly 1.
    auto res = run_cli(
        "ncd-matrix --families 2 --items 1 --bytes 256 --command cat");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.output, "compressor = external: cat"));
    CHECK(contains(res.output, "1.000000"));
}
