#include "betakit/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "betakit/report.hpp"

namespace betakit {

namespace {

bool looks_like_float(const std::string& token) {
    return token.find('.') != std::string::npos || token.find('e') != std::string::npos ||
           token.find('E') != std::string::npos;
}

Param parse_param_token(const std::string& token) {
    if (token.find('/') != std::string::npos) return Rational::parse(token);
    if (looks_like_float(token)) {
        std::size_t used = 0;
        double v = std::stod(token, &used);
        if (used != token.size())
            throw std::invalid_argument("cannot parse parameter '" + token + "'");
        return v;
    }
    return Rational::parse(token);
}

std::vector<std::string> split(const std::string& text, const std::string& sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    for (;;) {
        std::size_t next = text.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(text.substr(pos));
            return parts;
        }
        parts.push_back(text.substr(pos, next - pos));
        pos = next + sep.size();
    }
}

// A slot is either a single value or an inclusive rational range
// "start..stop..step" (step optional, default 1).
ParamSlot parse_slot(const std::string& token) {
    ParamSlot slot;
    if (token.find("..") == std::string::npos) {
        slot.values.push_back(parse_param_token(token));
        return slot;
    }
    auto parts = split(token, "..");
    if (parts.size() != 2 && parts.size() != 3)
        throw std::invalid_argument("bad range '" + token + "', expected start..stop[..step]");
    Rational start = Rational::parse(parts[0]);
    Rational stop = Rational::parse(parts[1]);
    Rational step = parts.size() == 3 ? Rational::parse(parts[2]) : Rational(1);
    if (!step.is_positive() || stop < start)
        throw std::invalid_argument("bad range '" + token + "'");
    for (Rational v = start; v <= stop; v += step) slot.values.push_back(v);
    return slot;
}

std::vector<ParamSlot> parse_param_slots(const std::string& list) {
    std::vector<ParamSlot> slots;
    if (list.empty()) return slots;
    for (const auto& token : split(list, ",")) slots.push_back(parse_slot(token));
    return slots;
}

std::pair<unsigned, unsigned> parse_n_range(const std::string& text) {
    auto to_unsigned = [](const std::string& s) {
        std::size_t used = 0;
        unsigned long v = std::stoul(s, &used);
        if (used != s.size()) throw std::invalid_argument("bad n value '" + s + "'");
        return static_cast<unsigned>(v);
    };
    if (text.find("..") == std::string::npos) {
        unsigned n = to_unsigned(text);
        return {n, n};
    }
    auto parts = split(text, "..");
    if (parts.size() != 2) throw std::invalid_argument("bad n range '" + text + "'");
    unsigned lo = to_unsigned(parts[0]);
    unsigned hi = to_unsigned(parts[1]);
    if (hi < lo) throw std::invalid_argument("bad n range '" + text + "'");
    return {lo, hi};
}

unsigned default_workers() {
    if (const char* env = std::getenv("BETAKIT_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

void write_output(const std::string& body, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << body;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
    file << body;
}

std::string render_report(const Report& report, const std::string& format, bool table) {
    if (format == "json") return render_json(report);
    if (format == "csv") return table ? render_table_csv(report) : render_csv(report);
    return table ? render_table_text(report) : render_text(report);
}

// --- sample configuration -------------------------------------------------

using KeyValues = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Flat key-value text with repeatable `case` blocks; keys before the first
// `case` line are defaults for every block.
std::vector<KeyValues> parse_sample_file(std::istream& in) {
    KeyValues defaults;
    std::vector<KeyValues> blocks;
    bool in_block = false;
    std::string line;
    while (std::getline(in, line)) {
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        if (text == "case") {
            blocks.emplace_back();
            in_block = true;
            continue;
        }
        auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value, got '" + text + "'");
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: expected key = value, got '" + text + "'");
        (in_block ? blocks.back() : defaults)[key] = value;
    }
    if (blocks.empty()) blocks.push_back({});
    for (auto& block : blocks)
        for (const auto& [k, v] : defaults) block.emplace(k, v);  // keeps block overrides
    return blocks;
}

ExperimentConfig config_from_keys(const KeyValues& keys) {
    ExperimentConfig config;
    auto need = [&](const char* key) -> const std::string& {
        auto it = keys.find(key);
        if (it == keys.end())
            throw std::invalid_argument(std::string("config: missing required key '") + key + "'");
        return it->second;
    };
    const std::string& comb = need("combination");
    if (comb == "sum")
        config.combination = Combination::sum;
    else if (comb == "difference")
        config.combination = Combination::difference;
    else
        throw std::invalid_argument("config: combination must be sum or difference");

    for (const auto& token : split(need("shapes"), ","))
        config.shapes.push_back(GammaSpec{[&] {
            Param p = parse_param_token(token);
            if (const auto* r = std::get_if<Rational>(&p)) return r->to_double();
            return std::get<double>(p);
        }()});
    // A single shape for a difference means two iid copies.
    if (config.combination == Combination::difference && config.shapes.size() == 1)
        config.shapes.push_back(config.shapes[0]);

    config.moment_order = static_cast<unsigned>(std::stoul(need("n")));
    config.sample_count = std::stoull(need("samples"));
    config.seed = std::stoull(need("seed"));  // explicit seed is mandatory
    if (auto it = keys.find("z_max"); it != keys.end()) config.z_threshold = std::stod(it->second);
    if (auto it = keys.find("workers"); it != keys.end())
        config.workers = static_cast<unsigned>(std::stoul(it->second));
    return config;
}

// --- subcommands ------------------------------------------------------------

struct VerifyOptions {
    std::string identity;
    std::string params;
    std::string n_range = "0";
    std::string mode = "exact";
    double tol = -1.0;  // <0: identity default
    std::string format = "text";
    std::string output;
    unsigned workers = 0;
};

int run_grid_command(const VerifyOptions& opt, bool table, std::ostream& out) {
    auto id = identity_from_string(opt.identity);
    if (!id) throw std::invalid_argument("unknown identity '" + opt.identity + "'");
    GridSpec grid;
    grid.id = *id;
    grid.param_slots = parse_param_slots(opt.params);
    std::tie(grid.n_begin, grid.n_end) = parse_n_range(opt.n_range);
    if (opt.mode == "exact")
        grid.mode = EvalMode::exact;
    else if (opt.mode == "float")
        grid.mode = EvalMode::floating;
    else
        throw std::invalid_argument("mode must be exact or float");
    if (opt.tol >= 0.0) grid.tol = opt.tol;
    grid.workers = opt.workers ? opt.workers : default_workers();

    Report report = run_verification_grid(grid);
    write_output(render_report(report, opt.format, table), opt.output, out);
    return report.all_passed() ? 0 : 1;
}

struct SampleOptions {
    std::string config_file;
    std::string combination;
    std::string shapes;
    std::string n;
    std::string samples;
    std::string seed;
    std::string z_max;
    std::string workers;
    std::string format = "text";
    std::string output;
};

int run_sample_command(const SampleOptions& opt, std::ostream& out) {
    std::vector<KeyValues> blocks;
    if (!opt.config_file.empty()) {
        std::ifstream file(opt.config_file);
        if (!file) throw std::invalid_argument("cannot open config '" + opt.config_file + "'");
        blocks = parse_sample_file(file);
    } else {
        blocks.push_back({});
    }
    // Explicit flags override file values in every block.
    auto overlay = [&](const char* key, const std::string& value) {
        if (value.empty()) return;
        for (auto& block : blocks) block[key] = value;
    };
    overlay("combination", opt.combination);
    overlay("shapes", opt.shapes);
    overlay("n", opt.n);
    overlay("samples", opt.samples);
    overlay("seed", opt.seed);
    overlay("z_max", opt.z_max);
    overlay("workers", opt.workers);
    if (opt.workers.empty()) {
        unsigned env_workers = default_workers();
        for (auto& block : blocks)
            if (!block.count("workers")) block["workers"] = std::to_string(env_workers);
    }

    Report report;
    report.timestamp = current_timestamp();
    for (const auto& block : blocks) {
        ExperimentConfig config = config_from_keys(block);
        MomentEstimate estimate = estimate_moment(config);
        report.samples.push_back(
            {config, estimate, estimate.within_threshold(config.z_threshold)});
    }
    write_output(render_report(report, opt.format, false), opt.output, out);
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"beta/gamma-function identity verification toolkit"};
    app.name("betakit");
    app.require_subcommand(1);

    VerifyOptions verify_opt;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification grid");
    verify_cmd->add_option("--identity", verify_opt.identity, "identity id")->required();
    verify_cmd->add_option("--params", verify_opt.params,
                           "comma list of values or start..stop..step ranges");
    verify_cmd->add_option("--n", verify_opt.n_range, "n or n range a..b");
    verify_cmd->add_option("--mode", verify_opt.mode, "exact|float");
    verify_cmd->add_option("--tol", verify_opt.tol, "float-mode relative tolerance");
    verify_cmd->add_option("--format", verify_opt.format, "text|csv|json");
    verify_cmd->add_option("--workers", verify_opt.workers, "parallel case workers");
    verify_cmd->add_option("--output", verify_opt.output, "write report to file");

    VerifyOptions table_opt;
    CLI::App* table_cmd = app.add_subcommand("table", "per-n table for one parameter set");
    table_cmd->add_option("--identity", table_opt.identity, "identity id")->required();
    table_cmd->add_option("--params", table_opt.params, "comma list of parameter values");
    table_cmd->add_option("--n", table_opt.n_range, "n or n range a..b");
    table_cmd->add_option("--mode", table_opt.mode, "exact|float");
    table_cmd->add_option("--tol", table_opt.tol, "float-mode relative tolerance");
    table_cmd->add_option("--format", table_opt.format, "text|csv|json");
    table_cmd->add_option("--workers", table_opt.workers, "parallel case workers");
    table_cmd->add_option("--output", table_opt.output, "write table to file");

    SampleOptions sample_opt;
    CLI::App* sample_cmd = app.add_subcommand("sample", "Monte Carlo moment gates");
    sample_cmd->add_option("--config", sample_opt.config_file, "config file with case blocks");
    sample_cmd->add_option("--combination", sample_opt.combination, "sum|difference");
    sample_cmd->add_option("--shapes", sample_opt.shapes, "comma list of gamma shapes");
    sample_cmd->add_option("--n", sample_opt.n, "moment order");
    sample_cmd->add_option("--samples", sample_opt.samples, "sample count");
    sample_cmd->add_option("--seed", sample_opt.seed, "rng seed (required, no default)");
    sample_cmd->add_option("--z-max", sample_opt.z_max, "z-score gate threshold");
    sample_cmd->add_option("--workers", sample_opt.workers, "sampling workers");
    sample_cmd->add_option("--format", sample_opt.format, "text|csv|json");
    sample_cmd->add_option("--output", sample_opt.output, "write report to file");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "betakit: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify_cmd->parsed()) return run_grid_command(verify_opt, false, out);
        if (table_cmd->parsed()) return run_grid_command(table_opt, true, out);
        return run_sample_command(sample_opt, out);
    } catch (const std::exception& e) {
        err << "betakit: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace betakit
