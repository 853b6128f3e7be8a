// infodist command line tool: program-length complexity probes on the v1
// toy machine and compression-distance clustering for byte corpora.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "infodist/approx.hpp"
#include "infodist/complexity.hpp"
#include "infodist/constructions.hpp"
#include "infodist/corpus.hpp"
#include "infodist/machine.hpp"
#include "infodist/ncd.hpp"
#include "infodist/upgma.hpp"

namespace fs = std::filesystem;
using infodist::BitString;
using infodist::Rational;
using infodist::StepBound;

namespace {

std::string g_invocation;  // full command line, echoed into output headers

BitString parse_bits(const std::string& text) {
    if (text == "eps" || text == "-") return BitString();
    return BitString::parse(text);
}

std::string show_bits(const BitString& s) {
    return s.empty() ? std::string("eps") : s.text();
}

std::string describe_bound(const StepBound& b) {
    std::ostringstream out;
    out << b.a << "*n^" << b.b << " + " << b.c;
    return out.str();
}

// "a,b,c,cap;a,b,c,cap;..." -> widening schedule
infodist::Schedule parse_schedule(const std::string& text) {
    infodist::Schedule schedule;
    std::istringstream points(text);
    std::string point;
    while (std::getline(points, point, ';')) {
        if (point.empty()) continue;
        std::istringstream fields(point);
        std::string field;
        std::vector<std::uint64_t> nums;
        while (std::getline(fields, field, ','))
            nums.push_back(std::stoull(field));
        if (nums.size() != 4)
            throw std::invalid_argument(
                "schedule point needs a,b,c,cap: '" + point + "'");
        schedule.push_back({StepBound{nums[0], nums[1], nums[2]},
                            std::size_t(nums[3])});
    }
    infodist::validate_schedule(schedule);
    return schedule;
}

std::string file_header() {
    std::ostringstream out;
    out << "# infodist " << INFODIST_VERSION << ", machine table "
        << infodist::kMachineTableVersion << "\n"
        << "# command: " << g_invocation << "\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content,
                     bool with_header = true) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (with_header) out << file_header();
    out << content;
}

infodist::LabeledCorpus corpus_from_dir(const std::string& dir) {
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().filename() == "manifest.tsv") continue;  // gen-corpus
        paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    infodist::LabeledCorpus corpus;
    for (const auto& p : paths) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + p.string());
        infodist::Bytes data((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
        corpus.items.push_back({p.stem().string(), std::move(data)});
    }
    corpus.validate();
    return corpus;
}

// Manifest rows are label<TAB>path (or label,path); later columns, '#'
// comments, and a leading "label" header row are ignored. Paths are
// resolved relative to the manifest's own directory, so a gen-corpus
// manifest.tsv can be used as-is.
infodist::LabeledCorpus corpus_from_manifest(const std::string& manifest) {
    std::ifstream in(manifest, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + manifest);
    const fs::path base = fs::path(manifest).parent_path();
    infodist::LabeledCorpus corpus;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        char sep = line.find('\t') != std::string::npos ? '\t' : ',';
        std::istringstream fields(line);
        std::string label, path;
        if (!std::getline(fields, label, sep) ||
            !std::getline(fields, path, sep))
            throw std::runtime_error("manifest line needs label and path: '" +
                                     line + "'");
        if (label == "label") continue;  // header row
        std::ifstream item(base / path, std::ios::binary);
        if (!item)
            throw std::runtime_error("cannot read " + (base / path).string());
        infodist::Bytes data((std::istreambuf_iterator<char>(item)),
                             std::istreambuf_iterator<char>());
        corpus.items.push_back({label, std::move(data)});
    }
    corpus.validate();
    return corpus;
}

struct MatrixArgs {
    std::string dir;
    std::string manifest;
    std::string command;  // empty = builtin compressor
    std::size_t families = 3, items = 4, bytes = 4096;
    std::uint64_t seed = infodist::kDefaultCorpusSeed;
    unsigned jobs = 1;
    std::string out, report;
};

int run_ncd_matrix(const MatrixArgs& args) {
    auto corpus = !args.manifest.empty() ? corpus_from_manifest(args.manifest)
                  : !args.dir.empty()
                      ? corpus_from_dir(args.dir)
                      : infodist::synthetic_corpus({args.families, args.items,
                                                    args.bytes, args.seed});
    std::unique_ptr<infodist::Compressor> comp;
    if (args.command.empty())
        comp = std::make_unique<infodist::BuiltinCompressor>();
    else
        comp = std::make_unique<infodist::ExternalCompressor>(args.command);

    auto matrix = infodist::ncd_matrix(*comp, corpus, args.jobs);

    bool in_range =
        infodist::matrix_in_range(matrix, Rational(0), Rational(11, 10));
    std::cout << "items = " << matrix.size() << "\n"
              << "compressor = " << comp->name() << "\n"
              << "clamped cells = " << matrix.clamped_cells << "\n"
              << "in range [0, 1.1] = " << (in_range ? "yes" : "no") << "\n"
              << "max triangle excess = "
              << infodist::format_decimal(infodist::max_triangle_excess(matrix))
              << "\n";
    if (!args.out.empty()) {
        write_text_file(args.out, infodist::render_tsv(matrix));
        std::cout << "matrix written to " << args.out << "\n";
    } else {
        std::cout << infodist::render_tsv(matrix);
    }
    // A written matrix always gets its exact companion report.
    std::string report = args.report;
    if (report.empty() && !args.out.empty()) report = args.out + ".rationals";
    if (!report.empty()) {
        write_text_file(report, infodist::render_rational_report(matrix));
        std::cout << "report written to " << report << "\n";
    }
    return in_range ? 0 : 1;
}

int run_ncd_cluster(const std::string& matrix_path, const std::string& out,
                    std::size_t cut) {
    std::ifstream in(matrix_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + matrix_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto matrix = infodist::parse_tsv(buffer.str());
    auto tree = infodist::upgma(matrix);
    auto newick = tree.newick() + "\n";
    if (!out.empty()) {
        write_text_file(out, newick, /*with_header=*/false);
        std::cout << "tree written to " << out << "\n";
    } else {
        std::cout << newick;
    }
    if (cut > 0) {
        auto parts = tree.cut(cut);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            std::cout << "cluster " << (i + 1) << ":";
            for (const auto& label : parts[i]) std::cout << ' ' << label;
            std::cout << "\n";
        }
    }
    return 0;
}

int run_ktime(const std::string& x_text, const std::string& cond_text,
              const StepBound& bound, std::size_t cap, unsigned jobs) {
    BitString x = parse_bits(x_text);
    BitString cond = parse_bits(cond_text);
    if (cap == 0) cap = infodist::completeness_cap(x.size());
    auto res = infodist::k_time(x, cond, bound, cap, jobs);
    auto replay = infodist::run_program(res.program, cond);
    std::cout << "x = " << show_bits(x) << "\n"
              << "cond = " << show_bits(cond) << "\n"
              << "bound = " << describe_bound(bound) << "\n"
              << "cap = " << cap << "\n"
              << "k = " << res.value << "\n"
              << "witness = " << show_bits(res.program) << "\n"
              << "steps = " << replay.steps << "\n";
    bool verified = infodist::accepted(replay, res.program.size()) &&
                    replay.output == x &&
                    replay.steps <= bound.t(x.size());
    if (!verified) {
        std::cerr << "error: witness failed to replay\n";
        return 1;
    }
    return 0;
}

int run_gap(std::size_t n_min, std::size_t n_max, const StepBound& bound,
            const std::optional<StepBound>& prime, std::size_t cap,
            unsigned jobs, const std::string& out) {
    auto sweep = infodist::gap_sweep(n_min, n_max, bound, cap, jobs, prime);
    std::ostringstream body;
    bool all_ok = true;
    for (const auto& rep : sweep.reports) {
        body << "n=" << rep.n << " u=" << show_bits(rep.u)
             << " v=" << show_bits(rep.v) << " w=" << show_bits(rep.w)
             << " witness_len=" << rep.e_upper_witness_len
             << " e_t=" << rep.e_t_value
             << " witness_ok=" << (rep.witness_ok_both_ways ? "yes" : "no")
             << "\n";
        all_ok = all_ok && rep.witness_ok_both_ways;
    }
    if (sweep.first_equal_n)
        body << "first_equal_n = " << *sweep.first_equal_n << "\n";
    else
        body << "first_equal_n = none\n";
    std::cout << body.str();
    if (!out.empty()) {
        write_text_file(out, body.str());
        std::cout << "report written to " << out << "\n";
    }
    if (!all_ok) {
        std::cerr << "error: a witness failed to replay within the budget\n";
        return 1;
    }
    return 0;
}

int run_diagonal(std::size_t n, const StepBound& prime) {
    auto res = infodist::diagonal_u(n, prime);
    std::cout << "n = " << n << "\n"
              << "flat budget = " << prime.t(n) << " steps\n"
              << "u = " << show_bits(res.u) << "\n"
              << "accepted programs below n = " << res.accepted_programs << "\n"
              << "distinct n-bit outputs = " << res.outputs_of_length_n << "\n";
    return 0;
}

int run_trace(const std::string& x_text, const std::string& schedule_text,
              const std::string& mode, const std::string& out) {
    BitString x = parse_bits(x_text);
    auto schedule = parse_schedule(schedule_text);
    infodist::ApproximationTrace trace;
    if (mode == "diagonal") {
        trace = infodist::diagonal_nid(x, schedule);
    } else if (mode == "upper") {
        auto ks = infodist::k_upper_trace(x, BitString(), schedule);
        trace.label =
            "k_time(" + show_bits(x) + " | eps) along the schedule";
        for (std::size_t k : ks) trace.values.emplace_back(k);
    } else {
        throw std::invalid_argument("mode must be 'upper' or 'diagonal'");
    }

    std::ostringstream body;
    body << trace.label << "\n";
    for (const auto& v : trace.values)
        body << boost::multiprecision::numerator(v) << "/"
             << boost::multiprecision::denominator(v) << "\n";

    std::cout << "label = " << trace.label << "\n";
    for (const auto& v : trace.values)
        std::cout << "value = " << boost::multiprecision::numerator(v) << "/"
                  << boost::multiprecision::denominator(v) << " ("
                  << infodist::format_decimal(v) << ")\n";
    auto cls = infodist::classify_trace(trace);
    std::cout << "fluctuations = " << infodist::fluctuation_count(trace)
              << "\n"
              << "shape = "
              << (cls.shape == infodist::TraceShape::Upper    ? "upper"
                  : cls.shape == infodist::TraceShape::Lower ? "lower"
                                                             : "mixed")
              << "\n";
    if (!out.empty()) {
        write_text_file(out, body.str());
        std::cout << "trace written to " << out << "\n";
    }
    return 0;
}

int run_threshold(std::size_t n, std::size_t c,
                  const std::string& schedule_text, std::size_t step_cap,
                  unsigned jobs, const std::string& out) {
    auto schedule = parse_schedule(schedule_text);
    auto supplier = infodist::demo_trace_supplier(schedule, jobs);
    auto res = infodist::s_of_n(n, c, supplier, step_cap);
    std::ostringstream record;
    record << "n=" << n << " c=" << c
           << " pairs_scanned=" << res.pairs_scanned << " s=";
    if (res.value)
        record << *res.value;
    else
        record << "exhausted";
    record << "\n";
    std::cout << record.str();
    if (!out.empty()) {
        write_text_file(out, record.str());
        std::cout << "record written to " << out << "\n";
    }
    return res.value ? 0 : 1;
}

int run_gen_corpus(const std::string& out_dir, std::size_t families,
                   std::size_t items, std::size_t bytes, std::uint64_t seed) {
    auto corpus =
        infodist::synthetic_corpus({families, items, bytes, seed});
    fs::create_directories(out_dir);
    std::ostringstream manifest;
    manifest << "label\tfile\tbytes\n";
    for (const auto& item : corpus.items) {
        auto path = fs::path(out_dir) / (item.label + ".txt");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out.write(reinterpret_cast<const char*>(item.data.data()),
                  std::streamsize(item.data.size()));
        manifest << item.label << '\t' << path.filename().string() << '\t'
                 << item.data.size() << '\n';
    }
    write_text_file((fs::path(out_dir) / "manifest.tsv").string(),
                    manifest.str());
    std::cout << "wrote " << corpus.items.size() << " items to " << out_dir
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ostringstream invocation;
    for (int i = 0; i < argc; ++i) invocation << (i ? " " : "") << argv[i];
    g_invocation = invocation.str();

    CLI::App app{"program-length complexity probes and compression distances"};
    app.require_subcommand(1);
    std::string version = std::string(INFODIST_VERSION) + " (machine table " +
                          infodist::kMachineTableVersion + ")";
    app.set_version_flag("--version", version);

    StepBound bound;  // shared defaults 8*n + 16
    auto add_bound = [&bound](CLI::App* sub) {
        sub->add_option("--bound-a", bound.a, "step bound scale a");
        sub->add_option("--bound-b", bound.b, "step bound exponent b");
        sub->add_option("--bound-c", bound.c, "step bound offset c");
    };

    // ncd-matrix
    MatrixArgs margs;
    auto* matrix_cmd = app.add_subcommand(
        "ncd-matrix", "normalized compression distances for a corpus");
    auto* dir_opt = matrix_cmd->add_option(
        "--dir", margs.dir, "read corpus items from this directory");
    matrix_cmd
        ->add_option("--manifest", margs.manifest,
                     "read corpus items from a label/path manifest")
        ->excludes(dir_opt);
    matrix_cmd->add_option("--command", margs.command,
                           "external compressor command (stdin to stdout)");
    matrix_cmd->add_option("--families", margs.families, "synthetic families");
    matrix_cmd->add_option("--items", margs.items, "items per family");
    matrix_cmd->add_option("--bytes", margs.bytes, "bytes per item");
    matrix_cmd->add_option("--seed", margs.seed, "synthetic corpus seed");
    matrix_cmd->add_option("--jobs", margs.jobs, "worker threads");
    matrix_cmd->add_option("--out", margs.out, "write the TSV matrix here");
    matrix_cmd->add_option("--report", margs.report,
                           "write exact rationals here");

    // ncd-cluster
    std::string cluster_matrix, cluster_out;
    std::size_t cluster_cut = 0;
    auto* cluster_cmd =
        app.add_subcommand("ncd-cluster", "UPGMA tree from a TSV matrix");
    cluster_cmd->add_option("--matrix", cluster_matrix, "TSV matrix path")
        ->required();
    cluster_cmd->add_option("--out", cluster_out, "write Newick here");
    cluster_cmd->add_option("--cut", cluster_cut,
                            "also print this many clusters");

    // ktime
    std::string kt_x, kt_cond = "eps";
    std::size_t kt_cap = 0;
    unsigned kt_jobs = 1;
    auto* ktime_cmd = app.add_subcommand(
        "ktime", "least accepted program for x under a step bound");
    ktime_cmd->add_option("x", kt_x, "target bits, or 'eps'")->required();
    ktime_cmd->add_option("--cond", kt_cond, "conditional bits, or 'eps'");
    add_bound(ktime_cmd);
    ktime_cmd->add_option("--cap", kt_cap, "search cap (0 = automatic)");
    ktime_cmd->add_option("--jobs", kt_jobs, "worker threads");

    // gap
    std::size_t gap_min = 4, gap_max = 8, gap_cap = 0;
    unsigned gap_jobs = 1;
    std::string gap_out;
    StepBound gap_prime;
    auto* gap_cmd = app.add_subcommand(
        "gap", "xor-witness pairs and their distance optimum over a range");
    gap_cmd->add_option("--n-min", gap_min, "first n");
    gap_cmd->add_option("--n-max", gap_max, "last n");
    add_bound(gap_cmd);
    gap_cmd->add_option("--prime-a", gap_prime.a,
                        "diagonal budget scale (default: doubled bound)");
    gap_cmd->add_option("--prime-b", gap_prime.b, "diagonal budget exponent");
    gap_cmd->add_option("--prime-c", gap_prime.c, "diagonal budget offset");
    gap_cmd->add_option("--cap", gap_cap, "search cap (0 = automatic)");
    gap_cmd->add_option("--jobs", gap_jobs, "worker threads");
    gap_cmd->add_option("--out", gap_out, "write the report here");

    // diagonal
    std::size_t diag_n = 8;
    StepBound prime = infodist::kDefaultBoundPrime;
    auto* diag_cmd = app.add_subcommand(
        "diagonal", "least n-bit string missed by all shorter programs");
    diag_cmd->add_option("--n", diag_n, "output length n")->required();
    diag_cmd->add_option("--prime-a", prime.a, "flat budget scale");
    diag_cmd->add_option("--prime-b", prime.b, "flat budget exponent");
    diag_cmd->add_option("--prime-c", prime.c, "flat budget offset");

    // trace
    std::string trace_x, trace_schedule, trace_mode = "diagonal", trace_out;
    auto* trace_cmd = app.add_subcommand(
        "trace", "approximation trace for one string along a schedule");
    trace_cmd->add_option("x", trace_x, "target bits, or 'eps'")->required();
    trace_cmd
        ->add_option("--schedule", trace_schedule,
                     "points 'a,b,c,cap' joined with ';'")
        ->required();
    trace_cmd->add_option("--mode", trace_mode,
                          "'diagonal' (1/k, from below) or 'upper' (k)");
    trace_cmd->add_option("--out", trace_out, "write the trace file here");

    // threshold
    std::size_t th_n = 1, th_c = 8, th_step_cap = ~std::size_t(0);
    unsigned th_jobs = 1;
    std::string th_schedule;
    auto* threshold_cmd = app.add_subcommand(
        "threshold", "max crossing index s(n) over all n-bit pairs");
    threshold_cmd->add_option("--n", th_n, "string length n")->required();
    threshold_cmd->add_option("--c", th_c, "denominator constant c");
    threshold_cmd
        ->add_option("--schedule", th_schedule,
                     "points 'a,b,c,cap' joined with ';'")
        ->required();
    threshold_cmd->add_option("--step-cap", th_step_cap,
                              "largest trace index to scan");
    threshold_cmd->add_option("--jobs", th_jobs, "worker threads");
    std::string th_out;
    threshold_cmd->add_option("--out", th_out, "write the record here");

    // machine-spec
    std::string spec_out;
    auto* spec_cmd =
        app.add_subcommand("machine-spec", "print the frozen machine table");
    spec_cmd->add_option("--out", spec_out, "write the description here");

    // gen-corpus
    std::string gen_dir;
    std::size_t gen_families = 3, gen_items = 4, gen_bytes = 4096;
    std::uint64_t gen_seed = infodist::kDefaultCorpusSeed;
    auto* gen_cmd =
        app.add_subcommand("gen-corpus", "write the synthetic corpus to disk");
    gen_cmd->add_option("--out-dir", gen_dir, "target directory")->required();
    gen_cmd->add_option("--families", gen_families, "family count");
    gen_cmd->add_option("--items", gen_items, "items per family");
    gen_cmd->add_option("--bytes", gen_bytes, "bytes per item");
    gen_cmd->add_option("--seed", gen_seed, "corpus seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (matrix_cmd->parsed()) return run_ncd_matrix(margs);
        if (cluster_cmd->parsed())
            return run_ncd_cluster(cluster_matrix, cluster_out, cluster_cut);
        if (ktime_cmd->parsed())
            return run_ktime(kt_x, kt_cond, bound, kt_cap, kt_jobs);
        if (gap_cmd->parsed()) {
            std::optional<StepBound> gp;
            if (gap_cmd->count("--prime-a") || gap_cmd->count("--prime-b") ||
                gap_cmd->count("--prime-c")) {
                StepBound p = infodist::doubled(bound);
                if (gap_cmd->count("--prime-a")) p.a = gap_prime.a;
                if (gap_cmd->count("--prime-b")) p.b = gap_prime.b;
                if (gap_cmd->count("--prime-c")) p.c = gap_prime.c;
                gp = p;
            }
            return run_gap(gap_min, gap_max, bound, gp, gap_cap, gap_jobs,
                           gap_out);
        }
        if (diag_cmd->parsed()) return run_diagonal(diag_n, prime);
        if (trace_cmd->parsed())
            return run_trace(trace_x, trace_schedule, trace_mode, trace_out);
        if (threshold_cmd->parsed())
            return run_threshold(th_n, th_c, th_schedule, th_step_cap,
                                 th_jobs, th_out);
        if (spec_cmd->parsed()) {
            if (!spec_out.empty()) {
                write_text_file(spec_out, infodist::machine_spec_text());
                std::cout << "written to " << spec_out << "\n";
            } else {
                std::cout << infodist::machine_spec_text();
            }
            return 0;
        }
        if (gen_cmd->parsed())
            return run_gen_corpus(gen_dir, gen_families, gen_items, gen_bytes,
                                  gen_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
