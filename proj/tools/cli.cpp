#include "cli.hpp"

#include "csv.hpp"
#include "reference.hpp"
#include "tables.hpp"

#include "orthoqmc/error.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

namespace orthoqmc::cli {

namespace {

using nlohmann::json;

struct CliError : std::runtime_error {
    CliError(std::string code, const std::string& message, int exit_code)
        : std::runtime_error(message), code(std::move(code)), exit_code(exit_code)
    {
    }
    std::string code;
    int exit_code;
};

json to_json_value(const RunConfig& c)
{
    json j;
    j["command"] = c.command;
    j["kind"] = c.kind;
    j["polytope"] = c.polytope;
    j["polytope_file"] = c.polytope_file;
    j["n"] = c.n;
    j["k"] = c.k;
    j["samples"] = c.samples;
    j["mode"] = c.mode;
    j["sequence"] = c.sequence;
    j["seed"] = c.seed;
    j["permutation_seed"] = c.permutation_seed;
    j["polytope_seed"] = c.polytope_seed;
    j["trace_points"] = c.trace_points;
    j["count"] = c.count;
    j["target_digit"] = c.target_digit;
    j["digit_base"] = c.digit_base;
    j["reference"] = c.reference ? json(*c.reference) : json(nullptr);
    j["reference_samples"] = c.reference_samples;
    j["fresh_seed"] = c.fresh_seed;
    j["jobs"] = c.jobs;
    j["output"] = c.output;
    return j;
}

// Registers flags that write into a scratch RunConfig and remembers how to copy
// each one into the effective config when it was given on the command line.
class Flags {
public:
    template <class T>
    CLI::Option* add(CLI::App& app, const std::string& name, T RunConfig::*field, const std::string& help)
    {
        auto* opt = app.add_option(name, scratch_.*field, help);
        appliers_.emplace_back(opt, [this, field](RunConfig& c) { c.*field = scratch_.*field; });
        return opt;
    }

    CLI::Option* flag(CLI::App& app, const std::string& name, bool RunConfig::*field, const std::string& help)
    {
        auto* opt = app.add_flag(name, scratch_.*field, help);
        appliers_.emplace_back(opt, [this, field](RunConfig& c) { c.*field = scratch_.*field; });
        return opt;
    }

    CLI::Option* reference(CLI::App& app)
    {
        auto* opt = app.add_option("--reference", reference_, "reference value of I for the abs_err column");
        appliers_.emplace_back(opt, [this](RunConfig& c) { c.reference = reference_; });
        return opt;
    }

    void apply(RunConfig& c) const
    {
        for (const auto& [opt, fn] : appliers_)
            if (opt->count() > 0) fn(c);
    }

private:
    RunConfig scratch_;
    double reference_ = 0.0;
    std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> appliers_;
};

Polytope resolve_polytope(const RunConfig& c)
{
    if (!c.polytope_file.empty()) {
        try {
            return load_polytope(c.polytope_file);
        } catch (const std::exception& e) {
            throw CliError("invalid_polytope_file", e.what(), kExitInvalid);
        }
    }
    try {
        return named_polytope(c.polytope, c.polytope_seed);
    } catch (const DomainError& e) {
        throw CliError("unknown_polytope", e.what(), kExitInvalid);
    }
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out)
{
    if (c.output.empty())
        out << text;
    else
        write_atomically(c.output, text);
}

std::vector<std::uint64_t> default_trace(std::uint64_t samples)
{
    std::vector<std::uint64_t> t;
    for (std::uint64_t m = 10; m < samples; m *= 10) t.push_back(m);
    t.push_back(samples);
    return t;
}

void cmd_estimate(const RunConfig& c, std::ostream& out)
{
    ExperimentSpec spec;
    spec.polytope = resolve_polytope(c);
    spec.n = c.n > 0 ? c.n : static_cast<int>(spec.polytope.n());
    spec.k = c.k;
    spec.samples = c.samples;
    spec.mode = mode_from_string(c.mode);
    spec.seed = c.seed;
    spec.trace_points = c.trace_points.empty() ? default_trace(c.samples) : c.trace_points;
    if (spec.mode != Mode::Random)
        spec.sequence = OrthoSequenceSpec::defaults(static_cast<std::size_t>(spec.n), spec.mode == Mode::Qmc,
                                                    SequenceKind::ScrambledHalton, c.permutation_seed);
    spec.validate();

    const auto reference = c.reference ? c.reference : analytic_reference(spec.polytope.label, spec.n, spec.k);
    const auto report = compare_traces({run(spec)}, reference);
    CsvWriter csv({"mode", "m", "I", "cI", "abs_err"});
    for (const auto& row : report.rows) csv.row(to_string(row.mode), row.m, row.value, row.intrinsic, row.abs_error);
    emit(c, csv.str(), out);
}

std::vector<std::string> matrix_header(const std::string& first, const std::string& prefix, int rows, int cols)
{
    std::vector<std::string> h{first};
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j) h.push_back(prefix + std::to_string(i) + std::to_string(j));
    return h;
}

std::vector<double> row_major(const Matrix& m)
{
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

std::function<OrthoMatrix()> ortho_source(const RunConfig& c, std::size_t n)
{
    const Mode mode = mode_from_string(c.mode);
    if (mode == Mode::Random) {
        auto seq = std::make_shared<RandomOrthoSequence>(n, c.seed);
        return [seq] { return seq->next(); };
    }
    auto seq = std::make_shared<OrthoSequence>(
        OrthoSequenceSpec::defaults(n, mode == Mode::Qmc, SequenceKind::ScrambledHalton, c.permutation_seed));
    return [seq] { return seq->next(); };
}

void cmd_gen(const RunConfig& c, std::ostream& out)
{
    const int n = c.n > 0 ? c.n : 3;
    if (c.kind == "udsg") {
        VeechGenerator gen(GeneratorSpec{c.target_digit, c.digit_base});
        CsvWriter csv({"m", "q_m", "r_m"});
        for (std::uint64_t i = 0; i < c.count; ++i) {
            const auto s = gen.next();
            csv.row(s.m, s.q, s.r);
        }
        emit(c, csv.str(), out);
    } else if (c.kind == "sphere") {
        if (n < 2) throw DomainError("sphere needs n >= 2");
        SequenceSpec spec;
        spec.kind = sequence_kind_from_string(c.sequence);
        spec.dims = sphere_input_dims(static_cast<std::size_t>(n));
        spec.permutation_seed = c.permutation_seed;
        SphereSequence seq(static_cast<std::size_t>(n), spec);
        std::vector<std::string> header{"index"};
        for (int i = 1; i <= n; ++i) header.push_back("x" + std::to_string(i));
        CsvWriter csv(header);
        for (std::uint64_t m = 1; m <= c.count; ++m) {
            const auto p = seq.point(m);
            csv.values(std::vector<double>(p.coords.begin(), p.coords.end()), m);
        }
        emit(c, csv.str(), out);
    } else if (c.kind == "ortho" || c.kind == "grassmann") {
        if (n < 2) throw DomainError("orthogonal group needs n >= 2");
        const bool grassmann = c.kind == "grassmann";
        if (grassmann && (c.k < 1 || c.k > n - 1)) throw DomainError("grassmann needs 1 <= k <= n-1");
        auto next = ortho_source(c, static_cast<std::size_t>(n));
        CsvWriter csv(grassmann ? matrix_header("index", "b", n, c.k) : matrix_header("index", "g", n, n));
        for (std::uint64_t m = 1; m <= c.count; ++m) {
            const auto g = next();
            csv.values(row_major(grassmann ? beta_k(g, c.k).basis() : g.matrix()), m);
        }
        emit(c, csv.str(), out);
    } else {
        throw CliError("usage", "unknown gen kind '" + c.kind + "'", kExitInvalid);
    }
}

void cmd_reproduce(const RunConfig& c)
{
    TablesOptions o;
    o.out_dir = c.output.empty() ? "tables" : c.output;
    o.seed = c.seed;
    o.permutation_seed = c.permutation_seed;
    o.polytope_seed = c.polytope_seed;
    o.reference_samples = c.reference_samples;
    o.jobs = std::max(1u, c.jobs);
    reproduce_tables(o);
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw CliError("config", "cannot open config " + path, kExitInvalid);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return config_from_json(ss.str());
    } catch (const DomainError& e) {
        throw CliError("config", e.what(), kExitInvalid);
    }
}

void report(std::ostream& err, const std::string& code, const std::string& message)
{
    err << json{{"error", code}, {"message", message}}.dump() << '\n';
}

} // namespace

std::string config_to_json(const RunConfig& config)
{
    return to_json_value(config).dump(2);
}

RunConfig config_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("config must be a JSON object");
    RunConfig c;
    const json known = to_json_value(c);
    for (const auto& [key, value] : j.items())
        if (!known.contains(key)) throw DomainError("unknown config key '" + key + "'");
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) j.at(key).get_to(field);
        };
        get("command", c.command);
        get("kind", c.kind);
        get("polytope", c.polytope);
        get("polytope_file", c.polytope_file);
        get("n", c.n);
        get("k", c.k);
        get("samples", c.samples);
        get("mode", c.mode);
        get("sequence", c.sequence);
        get("seed", c.seed);
        get("permutation_seed", c.permutation_seed);
        get("polytope_seed", c.polytope_seed);
        get("trace_points", c.trace_points);
        get("count", c.count);
        get("target_digit", c.target_digit);
        get("digit_base", c.digit_base);
        if (j.contains("reference") && !j.at("reference").is_null()) c.reference = j.at("reference").get<double>();
        get("reference_samples", c.reference_samples);
        get("fresh_seed", c.fresh_seed);
        get("jobs", c.jobs);
        get("output", c.output);
    } catch (const json::exception& e) {
        throw DomainError(std::string("bad config value: ") + e.what());
    }
    return c;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    // gen-sphere, gen-ortho, ... are spelled as gen subcommands.
    if (!args.empty() && args[0].rfind("gen-", 0) == 0) {
        std::string kind = args[0].substr(4);
        args[0] = "gen";
        args.insert(args.begin() + 1, kind);
    }

    CLI::App app("Quasi-random sequences on O(n) and G(n,k), and Crofton estimates of intrinsic volumes", "orthoqmc");
    app.require_subcommand(1);
    Flags flags;
    std::string config_path;
    bool dump_config = false;

    auto common = [&](CLI::App& sub) {
        sub.add_option("--config", config_path, "JSON run config; flags override its values");
        sub.add_flag("--dump-config", dump_config, "print the effective config as JSON and exit");
        flags.add(sub, "-o,--output", &RunConfig::output, "output file (default: stdout)");
    };
    auto ortho_opts = [&](CLI::App& sub) {
        flags.add(sub, "--mode", &RunConfig::mode, "random | qmc (qr) | qmc-noveech (qr-noveech)");
        flags.add(sub, "--seed", &RunConfig::seed, "random-mode seed");
        flags.add(sub, "--perm-seed", &RunConfig::permutation_seed, "scrambled Halton permutation seed");
        flags.flag(sub, "--fresh-seed", &RunConfig::fresh_seed, "draw the random-mode seed from the OS");
    };

    auto* estimate = app.add_subcommand("estimate", "run one Crofton estimate and print its trace");
    common(*estimate);
    ortho_opts(*estimate);
    flags.add(*estimate, "--polytope", &RunConfig::polytope, "builtin label or r-polytope-<n>-<count>[-s<seed>]");
    flags.add(*estimate, "--polytope-file", &RunConfig::polytope_file, "polytope JSON file");
    flags.add(*estimate, "--polytope-seed", &RunConfig::polytope_seed, "seed for unseeded random polytope names");
    flags.add(*estimate, "--n", &RunConfig::n, "ambient dimension (default: the polytope's)");
    flags.add(*estimate, "--k", &RunConfig::k, "subspace dimension, 1 <= k <= n-1");
    flags.add(*estimate, "-N,--N,--samples", &RunConfig::samples, "number of samples");
    flags.add(*estimate, "--trace", &RunConfig::trace_points, "trace points, comma separated")->delimiter(',');
    flags.reference(*estimate);

    auto* gen = app.add_subcommand("gen", "emit a prefix of one of the sequences as CSV");
    gen->require_subcommand(1);
    for (const char* kind : {"sphere", "ortho", "grassmann", "udsg"}) {
        auto* sub = gen->add_subcommand(kind);
        common(*sub);
        flags.add(*sub, "--count", &RunConfig::count, "number of records");
        if (std::string(kind) == "udsg") {
            flags.add(*sub, "--digit", &RunConfig::target_digit, "target digit t of J = [t/b, (t+1)/b)");
            flags.add(*sub, "--base", &RunConfig::digit_base, "digit base b");
            continue;
        }
        flags.add(*sub, "--n", &RunConfig::n, "dimension (default 3)");
        if (std::string(kind) == "sphere") {
            flags.add(*sub, "--sequence", &RunConfig::sequence, "halton | scrambled-halton");
            flags.add(*sub, "--perm-seed", &RunConfig::permutation_seed, "scrambled Halton permutation seed");
        } else {
            ortho_opts(*sub);
            if (std::string(kind) == "grassmann") flags.add(*sub, "--k", &RunConfig::k, "subspace dimension");
        }
    }

    auto* tables = app.add_subcommand("reproduce-tables", "run every table cell and write CSVs and a JSON summary");
    common(*tables);
    flags.add(*tables, "--seed", &RunConfig::seed, "base seed of the random-mode cells");
    flags.add(*tables, "--perm-seed", &RunConfig::permutation_seed, "scrambled Halton permutation seed");
    flags.add(*tables, "--polytope-seed", &RunConfig::polytope_seed, "seed of the random polytopes");
    flags.add(*tables, "--reference-samples", &RunConfig::reference_samples, "N of the random-baseline oracle");
    flags.add(*tables, "--jobs", &RunConfig::jobs, "worker threads");
    flags.flag(*tables, "--fresh-seed", &RunConfig::fresh_seed, "draw the random-mode seed from the OS");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report(err, "usage", e.what());
        return kExitInvalid;
    }

    try {
        RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
        flags.apply(config);
        if (estimate->parsed()) {
            config.command = "estimate";
        } else if (tables->parsed()) {
            config.command = "reproduce-tables";
        } else {
            config.command = "gen";
            for (auto* sub : gen->get_subcommands()) config.kind = sub->get_name();
        }
        if (config.fresh_seed) {
            std::random_device rd;
            config.seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
            config.fresh_seed = false;
            err << json{{"info", "fresh_seed"}, {"seed", config.seed}}.dump() << '\n';
        }
        if (dump_config) {
            out << config_to_json(config) << '\n';
            return kExitOk;
        }
        if (config.command == "estimate")
            cmd_estimate(config, out);
        else if (config.command == "gen")
            cmd_gen(config, out);
        else
            cmd_reproduce(config);
        return kExitOk;
    } catch (const CliError& e) {
        report(err, e.code, e.what());
        return e.exit_code;
    } catch (const DimensionMismatch& e) {
        report(err, "dimension_mismatch", e.what());
        return kExitInvalid;
    } catch (const DomainError& e) {
        report(err, "invalid_argument", e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        report(err, "failure", e.what());
        return kExitFailure;
    }
}

} // namespace orthoqmc::cli
