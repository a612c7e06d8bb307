// hsframe_cli: generate frames, sweep identity checks over a frame, and run
// seeded multi-trial suites.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 malformed input or
// configuration. Reports go to stdout (or --out), diagnostics to stderr.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hsframe/hsframe.hpp"

namespace {

using namespace hsframe;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("HSFRAME_SEED");
    if (!s || !*s) {
        return std::nullopt;
    }
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos == std::string(s).size()) {
            return static_cast<std::uint64_t>(v);
        }
    } catch (const std::exception&) {
    }
    throw FormatError("HSFRAME_SEED is not a nonnegative integer");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

/// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw FormatError("cannot open '" + path + "' for writing");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    bool to_file() const { return file_.is_open(); }

private:
    std::ofstream file_;
};

struct CommonFlags {
    std::string lambda_grid;
    std::optional<double> lambda;
    std::string subset_mode = "all";
    std::optional<double> tol_eq;
    std::optional<double> tol_ineq;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string out;
    std::size_t test_vectors = 8;
    double dual_scale = 1.0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--lambda-grid", f.lambda_grid, "Comma-separated lambda values in [0,1]");
    cmd->add_option("--lambda", f.lambda, "Single lambda value (overrides --lambda-grid)");
    cmd->add_option("--subset-mode", f.subset_mode, "all | random:<k>");
    cmd->add_option("--tol-eq", f.tol_eq, "Relative equality tolerance");
    cmd->add_option("--tol-ineq", f.tol_ineq, "Relative inequality slack");
    cmd->add_option("--seed", f.seed, "Seed (fallback: HSFRAME_SEED, then 0)");
    cmd->add_option("--format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", f.out, "Output file (default stdout)");
    cmd->add_option("--test-vectors", f.test_vectors, "Test vectors per frame")->check(CLI::PositiveNumber);
    cmd->add_option("--dual-scale", f.dual_scale, "Perturbation scale for generated alternate duals")
        ->check(CLI::NonNegativeNumber);
}

std::vector<double> lambda_grid_of(const CommonFlags& f, std::vector<double> fallback) {
    if (f.lambda) {
        if (!(*f.lambda >= 0.0 && *f.lambda <= 1.0)) {
            throw FormatError("--lambda must lie in [0, 1]");
        }
        return {*f.lambda};
    }
    if (!f.lambda_grid.empty()) {
        return parse_lambda_grid(f.lambda_grid);
    }
    return fallback;
}

void write_summary_stderr(const std::map<std::string, TheoremSummary>& summary) {
    for (const auto& [name, s] : summary) {
        std::cerr << name << ": checks=" << s.checks_run << " worst_residual=" << format_double(s.worst_residual)
                  << " worst_margin=" << (s.worst_margin ? format_double(*s.worst_margin) : std::string("n/a"))
                  << (s.pass ? " PASS" : " FAIL") << '\n';
    }
}

// ---------------------------------------------------------------------------

int cmd_gen(const std::string& spec_path, const std::string& out_path, std::optional<std::uint64_t> seed) {
    const Json j = read_json_file(spec_path);
    GenSpec spec = gen_spec_from_json(j, seed ? seed : env_seed());
    if (seed) {
        spec = spec.with_seed(*seed);
    }
    const GeneratedFrame frame = generate(spec);
    const FrameBounds b = bounds_of(frame);
    Sink sink(out_path);
    sink.stream() << to_json(frame).dump() << '\n';
    std::ostream& info = sink.to_file() ? std::cout : std::cerr;
    info << "bounds A=" << format_double(b.lower) << " B=" << format_double(b.upper) << '\n';
    return kExitPass;
}

struct CheckArgs {
    std::string frame;
    std::string dual;
    std::string theorem;
    bool parsevalize = false;
    CommonFlags common;
};

int cmd_check(const CheckArgs& a) {
    const Theorem theorem = parse_theorem(a.theorem);
    const std::uint64_t seed = a.common.seed ? *a.common.seed : env_seed().value_or(0);
    HSFrame frame = as_hs_frame(frame_from_json(read_json_file(a.frame)));

    std::optional<HSFrame> dual;
    if (!a.dual.empty()) {
        dual = as_hs_frame(frame_from_json(read_json_file(a.dual)));
        require_same_layout(frame, *dual, "check");
        const DualityCheck d = is_alternate_dual_hs(frame, *dual);
        if (!d.ok) {
            throw InvalidDualError("'" + a.dual + "' is not an alternate dual of '" + a.frame +
                                   "': duality residual " + format_double(std::max(d.residual, d.adjoint_residual)) +
                                   " exceeds " + format_double(duality_tolerance(frame.dim())));
        }
    } else if (needs_dual(theorem)) {
        dual = make_alternate_dual(frame, derive_seed(seed, 3), a.common.dual_scale).dual;
    }

    SweepOptions opts;
    opts.lambda_grid = lambda_grid_of(a.common, default_lambda_grid());
    opts.subset_mode = SubsetMode::parse(a.common.subset_mode);
    if (a.common.tol_eq) {
        opts.tolerances.tol_eq = *a.common.tol_eq;
    }
    if (a.common.tol_ineq) {
        opts.tolerances.tol_ineq = *a.common.tol_ineq;
    }
    opts.test_vectors = a.common.test_vectors;
    opts.seed = seed;
    opts.parsevalize_for_parseval = a.parsevalize;

    const FrameSweep sweep(std::move(frame), std::move(dual), opts);
    const std::vector<SweepRecord> records = sweep.run(theorem);

    std::map<std::string, TheoremSummary> summary;
    summary[to_string(theorem)];
    bool pass = true;
    for (const auto& r : records) {
        accumulate(summary[r.report.theorem], r.report);
        pass = pass && r.report.pass;
    }

    Sink sink(a.common.out);
    std::ostream& os = sink.stream();
    if (parse_format(a.common.format) == OutputFormat::csv) {
        os << kCsvHeader << '\n';
        for (const auto& r : records) {
            os << csv_row(r) << '\n';
        }
    } else {
        for (const auto& r : records) {
            os << to_json(r).dump() << '\n';
        }
        os << Json{{"summary", summary_to_json(summary)}, {"pass", pass}}.dump() << '\n';
    }
    write_summary_stderr(summary);
    return pass ? kExitPass : kExitFail;
}

struct SuiteArgs {
    std::string config;
    std::optional<std::size_t> trials;
    std::string theorems;
    unsigned threads = 1;
    CommonFlags common;
};

int cmd_suite(const SuiteArgs& a, const CLI::App& cmd) {
    const std::optional<std::uint64_t> fallback_seed = a.common.seed ? a.common.seed : env_seed();
    SuiteConfig config;
    if (fallback_seed) {
        config.seed = *fallback_seed;
    }
    if (!a.config.empty()) {
        config = suite_config_from_json(read_json_file(a.config), fallback_seed);
    }
    if (a.common.seed) {
        config.seed = *a.common.seed;
    }
    if (a.trials) {
        config.trials = *a.trials;
    }
    if (!a.theorems.empty()) {
        config.theorems.clear();
        for (const auto& t : split_list(a.theorems)) {
            config.theorems.push_back(parse_theorem(t));
        }
    }
    config.lambda_grid = lambda_grid_of(a.common, config.lambda_grid);
    if (cmd.count("--subset-mode")) {
        config.subset_mode = SubsetMode::parse(a.common.subset_mode);
    }
    if (a.common.tol_eq) {
        config.tolerances.tol_eq = *a.common.tol_eq;
    }
    if (a.common.tol_ineq) {
        config.tolerances.tol_ineq = *a.common.tol_ineq;
    }
    if (cmd.count("--format")) {
        config.format = parse_format(a.common.format);
    }
    if (cmd.count("--test-vectors")) {
        config.test_vectors = a.common.test_vectors;
    }
    if (cmd.count("--dual-scale")) {
        config.dual_scale = a.common.dual_scale;
    }
    try {
        config.validate();
    } catch (const Error& e) {
        throw FormatError(e.what());
    }

    const bool csv = config.format == OutputFormat::csv;
    const SuiteResult result = run_suite(config, a.threads, csv);
    Sink sink(a.common.out);
    std::ostream& os = sink.stream();
    if (csv) {
        os << kCsvHeader << '\n';
        for (const auto& r : result.records) {
            os << csv_row(r) << '\n';
        }
    } else {
        os << summary_to_json(result.summary).dump(2) << '\n';
    }
    write_summary_stderr(result.summary);
    return result.pass ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hilbert-Schmidt frame toolkit: generate frames and verify frame identities"};
    app.require_subcommand(1);

    std::string gen_spec;
    std::string gen_out;
    std::optional<std::uint64_t> gen_seed;
    CLI::App* gen = app.add_subcommand("gen", "Generate a frame from a GenSpec JSON file");
    gen->add_option("spec", gen_spec, "GenSpec JSON file")->required();
    gen->add_option("--out", gen_out, "Output frame file (default stdout)");
    gen->add_option("--seed", gen_seed, "Override the spec seed");

    CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "Sweep one theorem over a frame");
    check->add_option("--frame", check_args.frame, "Frame JSON file")->required();
    check->add_option("--dual", check_args.dual, "Alternate dual frame JSON file");
    check->add_option("--theorem", check_args.theorem, "Theorem name")->required();
    check->add_flag("--parsevalize", check_args.parsevalize, "Run Parseval theorems on the parsevalized frame");
    add_common(check, check_args.common);

    SuiteArgs suite_args;
    CLI::App* suite = app.add_subcommand("suite", "Run seeded multi-trial sweeps");
    suite->add_option("config", suite_args.config, "SuiteConfig JSON file (optional)");
    suite->add_option("--trials", suite_args.trials, "Number of trials")->check(CLI::PositiveNumber);
    suite->add_option("--theorem,--theorems", suite_args.theorems, "Comma-separated theorem names");
    suite->add_option("--threads", suite_args.threads, "Worker threads")->check(CLI::PositiveNumber);
    add_common(suite, suite_args.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*gen) {
            return cmd_gen(gen_spec, gen_out, gen_seed);
        }
        if (*check) {
            return cmd_check(check_args);
        }
        return cmd_suite(suite_args, *suite);
    } catch (const hsframe::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
