// SPDX-License-Identifier: MIT
//
// trdim — truncation-error bounds and eps-truncation dimensions for weighted
// anchored Sobolev spaces.
//
// Subcommands: dim, bound, kernel, norm, reproduce, oracle.
// Exit codes: 0 success, 1 golden/consistency mismatch, 2 invalid arguments,
// 3 numeric infeasibility or divergence.

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "trdim/dimension.hpp"
#include "trdim/errors.hpp"
#include "trdim/tables.hpp"

using json = nlohmann::ordered_json;
using namespace trdim;

namespace {

// ============================================================================
// Flag parsing helpers
// ============================================================================

double parse_extended(const std::string& v, const char* flag) {
    if (v == "inf") return infinity;
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw InvalidArgument(std::string(flag) + ": expected a number or 'inf', got '" + v + "'");
    }
}

std::optional<std::int64_t> parse_dim(const std::string& v, const char* flag) {
    if (v == "inf") return std::nullopt;
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size() || x < 0) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw InvalidArgument(std::string(flag) + ": expected a nonnegative integer or 'inf'");
    }
}

std::vector<double> parse_point(const std::string& v, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InvalidArgument(std::string(flag) + ": expected comma-separated decimals");
        }
    }
    if (out.empty()) throw InvalidArgument(std::string(flag) + ": empty point");
    return out;
}

std::string fmt_extended(double v) {
    if (std::isinf(v)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ============================================================================
// Shared weight/exponent options
// ============================================================================

struct ModelOpts {
    std::string weights = "poly";
    double a = 2.0;
    double b = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    std::string gammas_file;
    std::string p = "2";
    std::string q = "2";
    std::string s;  // default depends on the weight family
    std::string norm_variant = "bound";

    bool has_s = false;
};

void add_model_options(CLI::App* cmd, ModelOpts& o) {
    cmd->add_option("--weights", o.weights, "Weight family: poly|explicit|pod")
        ->check(CLI::IsMember({"poly", "explicit", "pod"}))
        ->capture_default_str();
    cmd->add_option("--a", o.a, "Decay exponent of gamma_j = j^{-a} (poly, pod)");
    cmd->add_option("--b", o.b, "POD cardinality exponent")->capture_default_str();
    cmd->add_option("--c1", o.c1, "POD leading constant")->capture_default_str();
    cmd->add_option("--c2", o.c2, "POD coordinate constant")->capture_default_str();
    cmd->add_option("--gammas-file", o.gammas_file,
                    "Explicit weights, one positive decimal per line");
    cmd->add_option("--p", o.p, "Source-space exponent p in [1, inf]")->capture_default_str();
    cmd->add_option("--q", o.q, "Target-space exponent q in [1, inf]")->capture_default_str();
    cmd->add_option("--s", o.s, "Dimension (positive integer or 'inf')");
    cmd->add_option("--norm-variant", o.norm_variant,
                    "Embedding-norm constant: bound|exact-q1")
        ->check(CLI::IsMember({"bound", "exact-q1"}))
        ->capture_default_str();
}

void finalize_model_opts(CLI::App* cmd, ModelOpts& o) {
    o.has_s = cmd->count("--s") > 0;
}

ExponentConfig make_config(const ModelOpts& o) {
    const auto variant =
        o.norm_variant == "exact-q1" ? NormVariant::exact_q1 : NormVariant::prop1_bound;
    return ExponentConfig::make(parse_extended(o.p, "--p"), parse_extended(o.q, "--q"), variant);
}

WeightModel make_model(const ModelOpts& o) {
    if (o.weights == "poly") {
        std::optional<std::int64_t> dim;  // default: s = inf
        if (o.has_s) dim = parse_dim(o.s, "--s");
        if (dim && *dim < 1) throw InvalidArgument("--s: dimension must be >= 1");
        return ProductWeights::poly_decay(o.a, dim);
    }
    if (o.weights == "explicit") {
        if (o.gammas_file.empty())
            throw InvalidArgument("--weights explicit requires --gammas-file");
        return ProductWeights::load(o.gammas_file);
    }
    std::int64_t dim = 10000;
    if (o.has_s) {
        auto d = parse_dim(o.s, "--s");
        if (!d) throw InvalidArgument("POD weights require a finite --s");
        dim = *d;
    }
    return PODWeights::make(o.c1, o.c2, o.b, o.a, dim);
}

json model_inputs(const ModelOpts& o) {
    json in;
    in["weights"] = o.weights;
    if (o.weights == "explicit") {
        in["gammas-file"] = o.gammas_file;
    } else {
        in["a"] = fmt_extended(o.a);
    }
    if (o.weights == "pod") {
        in["b"] = fmt_extended(o.b);
        in["c1"] = fmt_extended(o.c1);
        in["c2"] = fmt_extended(o.c2);
    }
    in["p"] = o.p;
    in["q"] = o.q;
    if (o.has_s)
        in["s"] = o.s;
    else if (o.weights == "poly")
        in["s"] = "inf";
    else if (o.weights == "pod")
        in["s"] = "10000";
    if (o.norm_variant != "bound") in["norm-variant"] = o.norm_variant;
    return in;
}

// ============================================================================
// Record emission (text / csv / json / md)
// ============================================================================

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
    for (const auto& [key, val] : j.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (val.is_object())
            flatten(val, name, out);
        else if (val.is_string())
            out.emplace_back(name, val.get<std::string>());
        else
            out.emplace_back(name, val.dump());
    }
}

void emit_record(const json& rec, const std::string& format) {
    if (format == "json") {
        std::cout << rec.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(rec, "", flat);
    if (format == "csv") {
        auto field = [](const std::string& v) {
            if (v.find_first_of(",\"") == std::string::npos) return v;
            std::string quoted = "\"";
            for (char c : v) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            return quoted + "\"";
        };
        for (std::size_t i = 0; i < flat.size(); ++i)
            std::cout << field(flat[i].first) << (i + 1 < flat.size() ? "," : "\n");
        for (std::size_t i = 0; i < flat.size(); ++i)
            std::cout << field(flat[i].second) << (i + 1 < flat.size() ? "," : "\n");
        return;
    }
    if (format == "md") {
        std::cout << "| field | value |\n|---|---|\n";
        for (const auto& [k, v] : flat) std::cout << "| " << k << " | " << v << " |\n";
        return;
    }
    std::size_t width = 0;
    for (const auto& [k, v] : flat) width = std::max(width, k.size());
    for (const auto& [k, v] : flat)
        std::cout << k << std::string(width - k.size() + 2, ' ') << v << "\n";
}

const char* method_name(SolveMethod m) {
    switch (m) {
        case SolveMethod::automatic: return "auto";
        case SolveMethod::closed_form: return "closed_form";
        case SolveMethod::bound_scan: return "bound_scan";
        case SolveMethod::direct_scan: return "direct_scan";
    }
    return "?";
}

json result_record(const DimensionResult& r) {
    json out;
    out["k"] = r.k;
    out["is_exact_dimension"] = r.is_exact_dimension;
    out["method"] = method_name(r.method_used);
    out["mode"] = r.mode == ThresholdMode::budget ? "budget" : "definition";
    out["criterion"] = r.criterion;
    out["threshold"] = r.threshold;
    json cert;
    cert["tail_at_k"] = r.tail_at_k;
    cert["k_pass"] = r.tail_at_k <= r.threshold;
    if (r.tail_before) {
        cert["tail_at_k_minus_1"] = *r.tail_before;
        cert["k_minus_one_fail"] = *r.tail_before > r.threshold;
    }
    out["certificate"] = cert;
    if (r.budget_vacuous) out["budget_vacuous"] = true;
    return out;
}

// ============================================================================
// Table emission
// ============================================================================

void emit_table(const tables::ReproductionTable& t, const std::string& format) {
    auto cell_str = [&](double v) {
        char buf[40];
        if (t.integer_cells)
            std::snprintf(buf, sizeof buf, "%" PRId64, static_cast<std::int64_t>(v));
        else
            std::snprintf(buf, sizeof buf, "%.5f", v);
        return std::string(buf);
    };
    if (format == "json") {
        json out;
        out["table"] = t.name;
        out["metadata"] = t.metadata;
        out["rows"] = t.row_labels;
        out["cols"] = t.col_labels;
        if (t.integer_cells) {
            std::vector<std::vector<std::int64_t>> cells;
            for (const auto& row : t.cells) cells.emplace_back(row.begin(), row.end());
            out["cells"] = cells;
        } else {
            out["cells"] = t.cells;
        }
        std::cout << out.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        std::cout << t.name;
        for (const auto& c : t.col_labels) std::cout << "," << c;
        std::cout << "\n";
        for (std::size_t r = 0; r < t.cells.size(); ++r) {
            std::cout << t.row_labels[r];
            for (double v : t.cells[r]) std::cout << "," << cell_str(v);
            std::cout << "\n";
        }
        return;
    }
    if (format == "md") {
        std::cout << "| " << t.name << " |";
        for (const auto& c : t.col_labels) std::cout << " " << c << " |";
        std::cout << "\n|---|";
        for (std::size_t i = 0; i < t.col_labels.size(); ++i) std::cout << "---|";
        std::cout << "\n";
        for (std::size_t r = 0; r < t.cells.size(); ++r) {
            std::cout << "| " << t.row_labels[r] << " |";
            for (double v : t.cells[r]) std::cout << " " << cell_str(v) << " |";
            std::cout << "\n";
        }
        return;
    }
    std::cout << "table " << t.name << "  (" << t.metadata << ")\n";
    const int w = 9;
    std::printf("%8s", "");
    for (const auto& c : t.col_labels) std::printf("%*s", w, c.c_str());
    std::printf("\n");
    for (std::size_t r = 0; r < t.cells.size(); ++r) {
        std::printf("%-8s", t.row_labels[r].c_str());
        for (double v : t.cells[r]) std::printf("%*s", w, cell_str(v).c_str());
        std::printf("\n");
    }
}

// ============================================================================
// Subcommand drivers
// ============================================================================

int run_dim(const ModelOpts& mo, const std::string& eps_str, const std::string& mode_str,
            const std::string& method_str, std::int64_t cutoff, bool verbose,
            const std::string& format) {
    DimensionQuery q;
    q.model = make_model(mo);
    q.cfg = make_config(mo);
    q.epsilon = parse_extended(eps_str, "--eps");
    q.mode = mode_str == "definition" ? ThresholdMode::definition : ThresholdMode::budget;
    q.cutoff = cutoff;
    if (method_str == "closed-form")
        q.method = SolveMethod::closed_form;
    else if (method_str == "scan")
        q.method = std::holds_alternative<ProductWeights>(q.model) &&
                           std::get<ProductWeights>(q.model).dimension().has_value()
                       ? SolveMethod::direct_scan
                       : SolveMethod::bound_scan;
    if (verbose)
        q.on_probe = [](std::int64_t k, double v) {
            std::fprintf(stderr, "probe k=%" PRId64 "  tail=%.12e\n", k, v);
        };
    const DimensionResult res =
        q.mode == ThresholdMode::definition ? dim_upper_bound(q) : solve_dimension(q);

    json rec;
    rec["command"] = "dim";
    json in = model_inputs(mo);
    in["eps"] = eps_str;
    in["mode"] = mode_str;
    in["method"] = method_str;
    in["cutoff"] = std::to_string(cutoff);
    rec["inputs"] = in;
    json r = result_record(res);
    for (auto& [key, v] : r.items()) rec[key] = v;
    if (q.cfg.extrapolated) rec["extrapolated"] = true;
    emit_record(rec, format);
    return 0;
}

int run_bound(const ModelOpts& mo, std::int64_t k, bool exact, std::int64_t cutoff,
              const std::string& format) {
    const WeightModel model = make_model(mo);
    const ExponentConfig cfg = make_config(mo);
    TailBound tb;
    if (cfg.combine_mode == CombineMode::max) {
        tb = tail_p1(model, k);
    } else if (const auto* pw = std::get_if<ProductWeights>(&model)) {
        tb = exact ? tail_exact_product(*pw, cfg, k) : tail_bound_product(*pw, cfg, k, cutoff);
    } else {
        const auto& pod = std::get<PODWeights>(model);
        tb = exact ? pod_tail_exact(pod, cfg, k) : pod_tail_bound(pod, cfg, k);
    }
    json rec;
    rec["command"] = "bound";
    json in = model_inputs(mo);
    in["k"] = std::to_string(k);
    if (exact) in["exact"] = "true";
    in["cutoff"] = std::to_string(cutoff);
    rec["inputs"] = in;
    rec["k"] = tb.k;
    rec["value"] = tb.value;
    if (tb.raw_power) rec["raw_power"] = *tb.raw_power;
    rec["exactness"] = tb.exactness == Exactness::exact ? "exact" : "upper_bound";
    if (cfg.extrapolated) rec["extrapolated"] = true;
    emit_record(rec, format);
    return 0;
}

int run_kernel(const ModelOpts& mo, const std::string& xs, const std::string& ys,
               const std::string& format) {
    const WeightModel model = make_model(mo);
    const auto* pw = std::get_if<ProductWeights>(&model);
    if (!pw) throw InvalidArgument("kernel: product weights only");
    const auto x = parse_point(xs, "--x");
    const auto y = ys.empty() ? x : parse_point(ys, "--y");
    const double K = kernel_eval(*pw, x, y);
    json rec;
    rec["command"] = "kernel";
    json in = model_inputs(mo);
    in["x"] = xs;
    in["y"] = ys.empty() ? xs : ys;
    rec["inputs"] = in;
    rec["value"] = K;
    emit_record(rec, format);
    return 0;
}

int run_norm(const ModelOpts& mo, std::int64_t cutoff, const std::string& format) {
    const ExponentConfig cfg = make_config(mo);
    json rec;
    rec["command"] = "norm";
    json in = model_inputs(mo);
    in["cutoff"] = std::to_string(cutoff);
    rec["inputs"] = in;
    rec["p_star"] = fmt_extended(cfg.p_star);
    if (cfg.combine_mode == CombineMode::power_pstar) rec["embedding_factor"] = cfg.C;
    rec["norm_upper"] = embedding_norm_upper(cfg);
    if (cfg.q == 1.0 && cfg.combine_mode == CombineMode::power_pstar)
        rec["norm_exact_q1"] = embedding_norm_exact_q1(cfg.p);
    const WeightModel model = make_model(mo);
    if (const auto* pw = std::get_if<ProductWeights>(&model)) {
        if (cfg.combine_mode == CombineMode::power_pstar) {
            const auto ss = continuity_bound_Ss(*pw, cfg, cutoff);
            rec["continuity_bound_Ss"] = ss.value;
            rec["continuity_bound_exactness"] =
                ss.exactness == Exactness::exact ? "exact" : "upper_bound";
        }
        const auto ws = weight_sum(*pw, cutoff);
        rec["weight_sum"] = ws.value;
        rec["weight_sum_exactness"] =
            ws.exactness == Exactness::exact ? "exact" : "upper_bound";
    }
    if (cfg.extrapolated) rec["extrapolated"] = true;
    emit_record(rec, format);
    return 0;
}

int run_reproduce(const std::string& table, bool check, std::int64_t cutoff, int jobs,
                  const std::string& method_str, const std::string& format) {
    const auto id = tables::parse_table_id(table);
    SolveMethod method = SolveMethod::automatic;
    if (method_str == "scan") method = SolveMethod::direct_scan;
    if (method_str == "closed-form") method = SolveMethod::closed_form;
    const auto run = tables::run_table(id, cutoff, jobs, method);
    emit_table(run.table, format);
    if (!check) return 0;
    const auto& want = tables::golden(id);
    const auto mismatches = tables::diff(run.table, want);
    const std::size_t total = want.cells.size() * want.cells.front().size();
    if (mismatches.empty()) {
        std::cout << total << "/" << total << " cells match\n";
        return 0;
    }
    std::cout << (total - mismatches.size()) << "/" << total << " cells match\n";
    for (const auto& m : mismatches) std::cout << "MISMATCH " << m << "\n";
    return 1;
}

int run_oracle(const ModelOpts& mo, std::int64_t k_flag, bool has_k, int trials,
               const std::string& format) {
    // --s 0 is an allowed degenerate request: nothing to enumerate
    if (mo.has_s && mo.s == "0") {
        std::cout << "empty report (s = 0)\n";
        return 0;
    }
    struct Check {
        std::string name;
        double max_rel_dev = 0.0;
        bool pass = true;
    };
    std::vector<Check> checks;
    auto rel_dev = [](double a, double b) {
        const double ref = std::max(std::abs(a), std::abs(b));
        return ref == 0.0 ? 0.0 : std::abs(a - b) / ref;
    };

    auto product_checks = [&](const ProductWeights& pw, const std::string& tag) {
        const std::int64_t s = *pw.dimension();
        Check eq{tag + " exact-vs-enumeration", 0.0, true};
        Check dom{tag + " bound-dominates-exact", 0.0, true};
        Check p1{tag + " p1-closed-form-vs-enumeration", 0.0, true};
        const std::int64_t k_lo = has_k ? k_flag : 0;
        const std::int64_t k_hi = has_k ? k_flag : s;
        for (double p : {2.0, infinity}) {
            for (double q : {1.0, 2.0}) {
                const auto cfg = ExponentConfig::make(p, q);
                for (std::int64_t k = k_lo; k <= k_hi; ++k) {
                    const auto exact = tail_exact_product(pw, cfg, k);
                    const auto brute = tail_brute_force(WeightModel{pw}, cfg, k);
                    eq.max_rel_dev =
                        std::max(eq.max_rel_dev, rel_dev(*exact.raw_power, *brute.raw_power));
                    const auto bound = tail_bound_product(pw, cfg, k);
                    if (bound.value < exact.value * (1.0 - 1e-12)) dom.pass = false;
                }
            }
        }
        for (std::int64_t k = k_lo; k <= k_hi; ++k) {
            const auto closed = tail_p1(WeightModel{pw}, k);
            const double enumer = max_weight_brute_force(WeightModel{pw}, k);
            p1.max_rel_dev = std::max(p1.max_rel_dev, rel_dev(closed.value, enumer));
        }
        eq.pass = eq.max_rel_dev <= 1e-12;
        p1.pass = p1.max_rel_dev <= 1e-12;
        checks.push_back(eq);
        checks.push_back(dom);
        checks.push_back(p1);
    };

    const WeightModel model = make_model(mo);
    if (const auto* pw = std::get_if<ProductWeights>(&model)) {
        if (!pw->dimension()) throw InvalidArgument("oracle: requires a finite --s");
        if (*pw->dimension() > max_enumerable_dimension)
            throw EnumerationLimitError("oracle: --s exceeds the enumeration cap " +
                                        std::to_string(max_enumerable_dimension));
        if (mo.weights == "explicit" && mo.gammas_file.empty()) {
            throw InvalidArgument("oracle: --weights explicit requires --gammas-file "
                                  "(use --weights poly --trials N for random instances)");
        }
        if (mo.weights == "poly" && trials > 1) {
            std::mt19937_64 rng(20250810);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            const std::int64_t cap = *pw->dimension();
            for (int t = 0; t < trials; ++t) {
                const std::int64_t s = 1 + static_cast<std::int64_t>(rng() % cap);
                std::vector<double> g(static_cast<std::size_t>(s));
                for (auto& v : g) v = std::nextafter(unif(rng), 1.0);
                std::sort(g.rbegin(), g.rend());
                product_checks(ProductWeights::explicit_sequence(g),
                               "trial" + std::to_string(t));
            }
        } else {
            product_checks(*pw, mo.weights);
        }
    } else {
        const auto& pod = std::get<PODWeights>(model);
        if (pod.dimension > max_enumerable_dimension)
            throw EnumerationLimitError("oracle: --s exceeds the enumeration cap " +
                                        std::to_string(max_enumerable_dimension));
        Check eq{"pod exact-vs-enumeration", 0.0, true};
        Check dom{"pod bound-dominates-enumeration (k>=2)", 0.0, true};
        Check head{"pod head-bound-dominates-exact (k>=2)", 0.0, true};
        const auto cfg = make_config(mo);
        if (cfg.combine_mode == CombineMode::max)
            throw ModeMismatch("oracle: POD comparisons need p > 1");
        for (std::int64_t k = 0; k <= pod.dimension; ++k) {
            const auto brute = tail_brute_force(model, cfg, k);
            const auto exact = pod_tail_exact(pod, cfg, k);
            eq.max_rel_dev =
                std::max(eq.max_rel_dev, rel_dev(*exact.raw_power, *brute.raw_power));
            if (k >= 2) {
                const auto bound = pod_tail_bound(pod, cfg, k);
                if (*bound.raw_power < *brute.raw_power * (1.0 - 1e-12)) dom.pass = false;
                if (pod_head_bound(pod, cfg, k) < pod_head_exact(pod, cfg, k) * (1.0 - 1e-12))
                    head.pass = false;
            }
        }
        eq.pass = eq.max_rel_dev <= 1e-12;
        checks.push_back(eq);
        checks.push_back(dom);
        checks.push_back(head);
    }

    bool all_pass = true;
    double overall = 0.0;
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        overall = std::max(overall, c.max_rel_dev);
    }
    if (format == "json") {
        json out;
        out["command"] = "oracle";
        out["max_rel_dev"] = overall;
        out["pass"] = all_pass;
        json arr = json::array();
        for (const auto& c : checks)
            arr.push_back({{"name", c.name}, {"max_rel_dev", c.max_rel_dev}, {"pass", c.pass}});
        out["checks"] = arr;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& c : checks)
            std::printf("%-45s %s  max_rel_dev=%.3e\n", c.name.c_str(),
                        c.pass ? "OK  " : "FAIL", c.max_rel_dev);
        std::printf("overall: %s (max relative deviation %.3e)\n", all_pass ? "OK" : "FAIL",
                    overall);
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncation-error bounds and eps-truncation dimensions for weighted "
                 "anchored Sobolev spaces"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --format after the subcommand name
    std::string format = "text";
    app.add_option("--format", format, "Output format: text|csv|json|md")
        ->check(CLI::IsMember({"text", "csv", "json", "md"}))
        ->capture_default_str();

    ModelOpts dim_mo, bound_mo, kernel_mo, norm_mo, oracle_mo;
    std::string eps, mode = "budget", method = "auto";
    std::int64_t cutoff = 1000, k = 0, oracle_k = 0;
    bool verbose = false, exact = false, check = false;
    int jobs = 1, trials = 1;
    std::string table, xs, ys;
    std::int64_t bound_cutoff = 1000, norm_cutoff = 1000, repr_cutoff = 1000;
    std::string repr_method = "auto";

    auto* dim = app.add_subcommand("dim", "Smallest cut k meeting an error demand");
    add_model_options(dim, dim_mo);
    dim->add_option("--eps", eps, "Error demand")->required();
    dim->add_option("--mode", mode, "Threshold mode: definition|budget")
        ->check(CLI::IsMember({"definition", "budget"}))
        ->capture_default_str();
    dim->add_option("--method", method, "Solver: auto|closed-form|scan")
        ->check(CLI::IsMember({"auto", "closed-form", "scan"}))
        ->capture_default_str();
    dim->add_option("--cutoff", cutoff, "Head length J of infinite-product estimates")
        ->capture_default_str();
    dim->add_flag("--verbose", verbose, "Log every probe of the scan to stderr");

    auto* bound = app.add_subcommand("bound", "Truncation-error value at a given cut");
    add_model_options(bound, bound_mo);
    bound->add_option("--k", k, "Cut size")->required();
    bound->add_flag("--exact", exact, "Exact tail instead of the upper bound");
    bound->add_option("--cutoff", bound_cutoff, "Head length J of infinite-product estimates")
        ->capture_default_str();

    auto* kernel = app.add_subcommand("kernel", "Reproducing-kernel value K(x, y)");
    add_model_options(kernel, kernel_mo);
    kernel->add_option("--x", xs, "First point, comma-separated coordinates in [0,1]")
        ->required();
    kernel->add_option("--y", ys, "Second point (defaults to --x)");

    auto* norm = app.add_subcommand("norm", "Embedding-operator constants and weight sums");
    add_model_options(norm, norm_mo);
    norm->add_option("--cutoff", norm_cutoff, "Head length J of infinite-product estimates")
        ->capture_default_str();

    auto* repr = app.add_subcommand("reproduce", "Regenerate a built-in reference table");
    repr->add_option("--table", table, "One of p1|p2q2|pinf_q2|q1_bound|q1_exact|pod|constants")
        ->required();
    repr->add_flag("--check", check, "Diff against the embedded golden values");
    repr->add_option("--cutoff", repr_cutoff, "Head length J of infinite-product estimates")
        ->capture_default_str();
    repr->add_option("--jobs", jobs, "Compute table cells with N worker threads")
        ->capture_default_str();
    repr->add_option("--method", repr_method, "auto|closed-form|scan (p2q2 only)")
        ->check(CLI::IsMember({"auto", "closed-form", "scan"}))
        ->capture_default_str();

    auto* oracle = app.add_subcommand("oracle", "Brute-force consistency checks (s <= 22)");
    add_model_options(oracle, oracle_mo);
    oracle->add_option("--k", oracle_k, "Check a single cut instead of all");
    oracle->add_option("--trials", trials, "Randomized explicit-weight instances (fixed seed)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (dim->parsed()) {
            finalize_model_opts(dim, dim_mo);
            return run_dim(dim_mo, eps, mode, method, cutoff, verbose, format);
        }
        if (bound->parsed()) {
            finalize_model_opts(bound, bound_mo);
            return run_bound(bound_mo, k, exact, bound_cutoff, format);
        }
        if (kernel->parsed()) {
            finalize_model_opts(kernel, kernel_mo);
            return run_kernel(kernel_mo, xs, ys, format);
        }
        if (norm->parsed()) {
            finalize_model_opts(norm, norm_mo);
            return run_norm(norm_mo, norm_cutoff, format);
        }
        if (repr->parsed())
            return run_reproduce(table, check, repr_cutoff, jobs, repr_method, format);
        if (oracle->parsed()) {
            finalize_model_opts(oracle, oracle_mo);
            return run_oracle(oracle_mo, oracle_k, oracle->count("--k") > 0, trials, format);
        }
    } catch (const DivergentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const AdmissibilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoSolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const EnumerationLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
