#include "betakit/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <mutex>
#include <sstream>
#include <thread>

namespace betakit {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join_params(const std::vector<Param>& params) {
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ";";
        out += param_to_string(params[i]);
    }
    return out;
}

std::string shapes_string(const ExperimentConfig& config) {
    std::string out;
    for (std::size_t i = 0; i < config.shapes.size(); ++i) {
        if (i) out += ";";
        out += format_double(config.shapes[i].shape);
    }
    return out;
}

}  // namespace

std::string param_to_string(const Param& p) {
    if (const auto* r = std::get_if<Rational>(&p)) return r->to_string();
    return format_double(std::get<double>(p));
}

std::vector<IdentityCase> expand_grid(const GridSpec& grid) {
    if (grid.n_end < grid.n_begin)
        throw std::invalid_argument("grid: empty n range");
    for (const auto& slot : grid.param_slots)
        if (slot.values.empty()) throw std::invalid_argument("grid: empty parameter slot");

    std::vector<IdentityCase> cases;
    std::vector<std::size_t> index(grid.param_slots.size(), 0);
    for (;;) {
        std::vector<Param> params;
        params.reserve(index.size());
        for (std::size_t i = 0; i < index.size(); ++i)
            params.push_back(grid.param_slots[i].values[index[i]]);
        for (unsigned n = grid.n_begin; n <= grid.n_end; ++n)
            cases.push_back(IdentityCase{grid.id, params, n, grid.mode});
        // odometer over the slots, last slot fastest
        std::size_t i = index.size();
        while (i > 0) {
            --i;
            if (++index[i] < grid.param_slots[i].values.size()) break;
            index[i] = 0;
            if (i == 0) return cases;
        }
        if (index.empty()) return cases;
    }
}

std::size_t Report::passed_count() const {
    std::size_t n = 0;
    for (const auto& c : cases) n += c.r.passed;
    for (const auto& s : samples) n += s.passed;
    return n;
}

double Report::worst_discrepancy() const {
    double worst = 0.0;
    for (const auto& c : cases) worst = std::max(worst, c.r.discrepancy);
    for (const auto& s : samples) worst = std::max(worst, std::fabs(s.estimate.z_score));
    return worst;
}

Report run_verification_grid(const GridSpec& grid, const FloatEvalConfig& cfg) {
    std::vector<IdentityCase> cases = expand_grid(grid);
    std::vector<VerificationResult> results(cases.size());
    unsigned workers = std::max(1u, grid.workers);

    if (workers == 1 || cases.size() < 2) {
        for (std::size_t i = 0; i < cases.size(); ++i) results[i] = verify(cases[i], grid.tol, cfg);
    } else {
        std::vector<std::thread> threads;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < cases.size(); i += workers)
                        results[i] = verify(cases[i], grid.tol, cfg);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    Report report;
    report.timestamp = current_timestamp();
    report.cases.reserve(cases.size());
    for (std::size_t i = 0; i < cases.size(); ++i)
        report.cases.push_back({std::move(cases[i]), std::move(results[i])});
    return report;
}

std::string current_timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string render_text(const Report& report) {
    std::ostringstream out;
    out << "betakit " << report.version << "  " << report.timestamp << "\n";
    for (const auto& [c, r] : report.cases) {
        out << (r.passed ? "PASS" : "FAIL") << "  " << to_string(c.id) << "("
            << join_params(c.params) << ") n=" << c.n << " [" << to_string(c.mode) << "]"
            << "  lhs=" << r.lhs_string() << "  rhs=" << r.rhs_string()
            << "  discrepancy=" << format_double(r.discrepancy);
        if (r.condition_hint) out << "  cond=" << format_double(*r.condition_hint);
        out << "\n";
    }
    for (const auto& s : report.samples) {
        out << (s.passed ? "PASS" : "FAIL") << "  sample("
            << (s.config.combination == Combination::sum ? "sum" : "difference") << " "
            << shapes_string(s.config) << ") n=" << s.estimate.n << " N=" << s.estimate.N
            << " seed=" << s.config.seed << "  estimate=" << format_double(s.estimate.estimate)
            << "  closed_form=" << format_double(s.estimate.closed_form)
            << "  std_error=" << format_double(s.estimate.std_error)
            << "  z=" << format_double(s.estimate.z_score) << "\n";
    }
    out << "summary: total=" << report.total() << " passed=" << report.passed_count()
        << " worst_discrepancy=" << format_double(report.worst_discrepancy()) << "\n";
    return out.str();
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string render_csv(const Report& report) {
    std::ostringstream out;
    if (!report.samples.empty()) {
        out << "id,combination,shapes,n,samples,seed,estimate,std_error,closed_form,z_score,"
               "passed\n";
        for (const auto& s : report.samples) {
            out << "sample," << (s.config.combination == Combination::sum ? "sum" : "difference")
                << "," << csv_quote(shapes_string(s.config)) << "," << s.estimate.n << ","
                << s.estimate.N << "," << s.config.seed << ","
                << format_double(s.estimate.estimate) << ","
                << format_double(s.estimate.std_error) << ","
                << format_double(s.estimate.closed_form) << ","
                << format_double(s.estimate.z_score) << "," << (s.passed ? "true" : "false")
                << "\n";
        }
        return out.str();
    }
    out << "id,params,n,mode,lhs,rhs,discrepancy,passed,condition_hint\n";
    for (const auto& [c, r] : report.cases) {
        out << to_string(c.id) << "," << csv_quote(join_params(c.params)) << "," << c.n << ","
            << to_string(c.mode) << "," << csv_quote(r.lhs_string()) << ","
            << csv_quote(r.rhs_string()) << "," << format_double(r.discrepancy) << ","
            << (r.passed ? "true" : "false") << ","
            << (r.condition_hint ? format_double(*r.condition_hint) : "") << "\n";
    }
    return out.str();
}

std::string render_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["version"] = report.version;
    doc["cases"] = nlohmann::ordered_json::array();
    for (const auto& [c, r] : report.cases) {
        nlohmann::ordered_json entry;
        entry["id"] = to_string(c.id);
        auto params = nlohmann::ordered_json::array();
        for (const auto& p : c.params) {
            if (const auto* rp = std::get_if<Rational>(&p))
                params.push_back(rp->to_string());
            else
                params.push_back(std::get<double>(p));
        }
        entry["params"] = std::move(params);
        entry["n"] = c.n;
        entry["mode"] = to_string(c.mode);
        if (r.exact_lhs) {
            entry["lhs"] = r.exact_lhs->to_string();
            entry["rhs"] = r.exact_rhs->to_string();
        } else {
            entry["lhs"] = r.lhs;
            entry["rhs"] = r.rhs;
        }
        entry["discrepancy"] = r.discrepancy;
        entry["passed"] = r.passed;
        if (r.condition_hint) entry["condition_hint"] = *r.condition_hint;
        doc["cases"].push_back(std::move(entry));
    }
    for (const auto& s : report.samples) {
        nlohmann::ordered_json entry;
        entry["id"] = "sample";
        auto params = nlohmann::ordered_json::array();
        for (const auto& spec : s.config.shapes) params.push_back(spec.shape);
        entry["params"] = std::move(params);
        entry["n"] = s.estimate.n;
        entry["mode"] = "montecarlo";
        entry["lhs"] = s.estimate.estimate;
        entry["rhs"] = s.estimate.closed_form;
        entry["discrepancy"] = std::fabs(s.estimate.z_score);
        entry["passed"] = s.passed;
        entry["combination"] = s.config.combination == Combination::sum ? "sum" : "difference";
        entry["std_error"] = s.estimate.std_error;
        entry["z_score"] = s.estimate.z_score;
        entry["seed"] = s.config.seed;
        entry["samples"] = s.estimate.N;
        doc["cases"].push_back(std::move(entry));
    }
    doc["summary"] = {{"total", report.total()},
                      {"passed", report.passed_count()},
                      {"worst_discrepancy", report.worst_discrepancy()}};
    return doc.dump(2) + "\n";
}

std::string render_table_text(const Report& report) {
    std::ostringstream out;
    if (!report.cases.empty()) {
        const auto& first = report.cases.front().c;
        out << "identity " << to_string(first.id) << "  params=(" << join_params(first.params)
            << ")  mode=" << to_string(first.mode) << "\n";
    }
    std::size_t lhs_width = 3, rhs_width = 3;
    for (const auto& [c, r] : report.cases) {
        lhs_width = std::max(lhs_width, r.lhs_string().size());
        rhs_width = std::max(rhs_width, r.rhs_string().size());
    }
    out << "  n  " << std::string(lhs_width > 3 ? lhs_width - 3 : 0, ' ') << "lhs  "
        << std::string(rhs_width > 3 ? rhs_width - 3 : 0, ' ') << "rhs  discrepancy\n";
    for (const auto& [c, r] : report.cases) {
        std::string lhs = r.lhs_string(), rhs = r.rhs_string();
        out << std::string(c.n < 10 ? 2 : (c.n < 100 ? 1 : 0), ' ') << c.n << "  "
            << std::string(lhs_width - lhs.size(), ' ') << lhs << "  "
            << std::string(rhs_width - rhs.size(), ' ') << rhs << "  "
            << format_double(r.discrepancy) << (r.passed ? "" : "  FAIL") << "\n";
    }
    return out.str();
}

std::string render_table_csv(const Report& report) {
    std::ostringstream out;
    out << "n,lhs,rhs,discrepancy,passed\n";
    for (const auto& [c, r] : report.cases)
        out << c.n << "," << csv_quote(r.lhs_string()) << "," << csv_quote(r.rhs_string()) << ","
            << format_double(r.discrepancy) << "," << (r.passed ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace betakit
