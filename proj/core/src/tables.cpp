// SPDX-License-Identifier: MIT
#include "trdim/tables.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "trdim/errors.hpp"

namespace trdim::tables {

namespace {

const std::vector<double> kEpsGrid = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

std::vector<std::string> eps_labels() {
    return {"1e-1", "1e-2", "1e-3", "1e-4", "1e-5", "1e-6"};
}

std::vector<std::string> a_labels(const std::vector<int>& as) {
    std::vector<std::string> out;
    for (int a : as) out.push_back("a=" + std::to_string(a));
    return out;
}

void parallel_cells(int jobs, std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    std::vector<std::thread> workers;
    const int count = static_cast<int>(std::min<std::int64_t>(jobs, n));
    workers.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) {
        workers.emplace_back([&] {
            for (std::int64_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

// prod_{j=1}^{s} (1 + j^{-a p*} / C) by direct log1p summation.
double finite_product(double a, double pst, double C, std::int64_t s) {
    return std::exp(detail::log1p_sum_desc(
        [&](std::int64_t j) { return std::pow(static_cast<double>(j), -a * pst) / C; }, 1, s));
}

double round_decimals(double v, int nd) {
    const double scale = std::pow(10.0, nd);
    return std::round(v * scale) / scale;
}

struct GridSpec {
    std::vector<int> a_values;
    std::int64_t scan_dimension = 1000000;
};

TableRun run_grid(const std::string& name, const std::string& meta, const GridSpec& grid,
                  int jobs,
                  const std::function<DimensionResult(int a, double eps)>& cell) {
    TableRun run;
    run.table.name = name;
    run.table.metadata = meta;
    run.table.row_labels = a_labels(grid.a_values);
    run.table.col_labels = eps_labels();
    const auto rows = grid.a_values.size();
    const auto cols = kEpsGrid.size();
    run.table.cells.assign(rows, std::vector<double>(cols, 0.0));
    run.results.assign(rows, std::vector<DimensionResult>(cols));
    parallel_cells(jobs, static_cast<std::int64_t>(rows * cols), [&](std::int64_t idx) {
        const auto r = static_cast<std::size_t>(idx) / cols;
        const auto c = static_cast<std::size_t>(idx) % cols;
        run.results[r][c] = cell(grid.a_values[r], kEpsGrid[c]);
        run.table.cells[r][c] = static_cast<double>(run.results[r][c].k);
    });
    return run;
}

TableRun run_p1(int jobs) {
    return run_grid("p1", "p=1, gamma_j = j^{-a}; exact truncation dimension", {{2, 3, 4, 5}},
                    jobs, [](int a, double eps) {
                        return dim_p1_polydecay(static_cast<double>(a), eps);
                    });
}

TableRun run_p2q2_closed(std::int64_t cutoff, int jobs) {
    const auto cfg = ExponentConfig::make(2.0, 2.0);
    return run_grid("p2q2", "p=q=2, gamma_j = j^{-a}; closed-form budget cut k(eps)",
                    {{2, 3, 4, 5}}, jobs, [&](int a, double eps) {
                        const double P =
                            infinite_product_upper(2.0 * a, 1.0 / cfg.C, cutoff);
                        return k_eps_closed_form(a, cfg, eps, P);
                    });
}

TableRun run_p2q2_scan(int jobs) {
    const auto cfg = ExponentConfig::make(2.0, 2.0);
    GridSpec grid{{2, 3, 4, 5}};
    return run_grid("p2q2", "p=q=2, gamma_j = j^{-a}; direct scan at s=10^6", grid, jobs,
                    [&](int a, double eps) {
                        DimensionQuery q;
                        q.model = ProductWeights::poly_decay(a, grid.scan_dimension);
                        q.cfg = cfg;
                        q.epsilon = eps;
                        q.mode = ThresholdMode::budget;
                        q.method = SolveMethod::direct_scan;
                        return k_eps_scan(q);
                    });
}

TableRun run_pinf_q2(int jobs) {
    const auto cfg = ExponentConfig::make(infinity, 2.0);
    GridSpec grid{{3, 4, 5}};
    return run_grid("pinf_q2", "p=inf, q=2, gamma_j = j^{-a}; direct scan at s=10^6", grid,
                    jobs, [&](int a, double eps) {
                        DimensionQuery q;
                        q.model = ProductWeights::poly_decay(a, grid.scan_dimension);
                        q.cfg = cfg;
                        q.epsilon = eps;
                        q.mode = ThresholdMode::budget;
                        q.method = SolveMethod::direct_scan;
                        return k_eps_scan(q);
                    });
}

// The q = 1 grids carry their product estimates at four decimal places; the
// reference integers were produced from estimates of that precision, and two
// near-boundary cells depend on it.
TableRun run_q1(NormVariant variant, int jobs) {
    const auto cfg = ExponentConfig::make(2.0, 1.0, variant);
    const bool exact = variant == NormVariant::exact_q1;
    const std::string name = exact ? "q1_exact" : "q1_bound";
    const std::string meta = exact
        ? "p=2, q=1, exact embedding norm; closed-form budget cut at s=10^6"
        : "p=2, q=1, generic norm bound; closed-form budget cut at s=10^6";
    return run_grid(name, meta, {{2, 3, 4, 5}}, jobs, [&](int a, double eps) {
        const double P = round_decimals(finite_product(a, cfg.p_star, cfg.C, 1000000), 4);
        return k_eps_closed_form(a, cfg, eps, P);
    });
}

TableRun run_pod(int jobs) {
    TableRun run;
    run.table.name = "pod";
    run.table.metadata = "POD weights, s=10000, a=4, b=c1=c2=1, q=2; bound scan";
    run.table.row_labels = {"p=inf", "p=2"};
    run.table.col_labels = eps_labels();
    const std::vector<double> ps = {infinity, 2.0};
    run.table.cells.assign(2, std::vector<double>(kEpsGrid.size(), 0.0));
    run.results.assign(2, std::vector<DimensionResult>(kEpsGrid.size()));
    parallel_cells(jobs, static_cast<std::int64_t>(2 * kEpsGrid.size()), [&](std::int64_t idx) {
        const auto r = static_cast<std::size_t>(idx) / kEpsGrid.size();
        const auto c = static_cast<std::size_t>(idx) % kEpsGrid.size();
        DimensionQuery q;
        q.model = PODWeights::make(1.0, 1.0, 1.0, 4.0, 10000);
        q.cfg = ExponentConfig::make(ps[r], 2.0);
        q.epsilon = kEpsGrid[c];
        q.mode = ThresholdMode::budget;
        run.results[r][c] = k_eps_scan(q);
        run.table.cells[r][c] = static_cast<double>(run.results[r][c].k);
    });
    return run;
}

TableRun run_constants(std::int64_t cutoff) {
    TableRun run;
    run.table.name = "constants";
    run.table.metadata =
        "upper estimates of prod_j (1 + j^{-2a}/2), head cutoff J=" + std::to_string(cutoff);
    run.table.row_labels = a_labels({2, 3, 4, 5});
    run.table.col_labels = {"product"};
    run.table.integer_cells = false;
    for (int a : {2, 3, 4, 5})
        run.table.cells.push_back({infinite_product_upper(2.0 * a, 0.5, cutoff)});
    return run;
}

ReproductionTable make_golden(const std::string& name,
                              std::vector<std::string> row_labels,
                              std::vector<std::string> col_labels,
                              std::vector<std::vector<double>> cells,
                              bool integer_cells = true) {
    ReproductionTable t;
    t.name = name;
    t.row_labels = std::move(row_labels);
    t.col_labels = std::move(col_labels);
    t.cells = std::move(cells);
    t.integer_cells = integer_cells;
    t.metadata = "golden";
    return t;
}

}  // namespace

TableId parse_table_id(const std::string& name) {
    if (name == "p1") return TableId::p1;
    if (name == "p2q2") return TableId::p2q2;
    if (name == "pinf_q2") return TableId::pinf_q2;
    if (name == "q1_bound") return TableId::q1_bound;
    if (name == "q1_exact") return TableId::q1_exact;
    if (name == "pod") return TableId::pod;
    if (name == "constants") return TableId::constants;
    throw InvalidArgument("unknown table id: " + name +
                          " (expected p1|p2q2|pinf_q2|q1_bound|q1_exact|pod|constants)");
}

std::string table_id_name(TableId id) {
    switch (id) {
        case TableId::p1: return "p1";
        case TableId::p2q2: return "p2q2";
        case TableId::pinf_q2: return "pinf_q2";
        case TableId::q1_bound: return "q1_bound";
        case TableId::q1_exact: return "q1_exact";
        case TableId::pod: return "pod";
        case TableId::constants: return "constants";
    }
    throw InvalidArgument("unknown table id");
}

TableRun run_table(TableId id, std::int64_t cutoff, int jobs, SolveMethod method) {
    switch (id) {
        case TableId::p1:
            return run_p1(jobs);
        case TableId::p2q2:
            if (method == SolveMethod::direct_scan) return run_p2q2_scan(jobs);
            return run_p2q2_closed(cutoff, jobs);
        case TableId::pinf_q2:
            return run_pinf_q2(jobs);
        case TableId::q1_bound:
            return run_q1(NormVariant::prop1_bound, jobs);
        case TableId::q1_exact:
            return run_q1(NormVariant::exact_q1, jobs);
        case TableId::pod:
            return run_pod(jobs);
        case TableId::constants:
            return run_constants(cutoff);
    }
    throw InvalidArgument("unknown table id");
}

const ReproductionTable& golden(TableId id) {
    static const ReproductionTable p1 = make_golden(
        "p1", a_labels({2, 3, 4, 5}), eps_labels(),
        {{3, 9, 31, 99, 316, 999},
         {2, 4, 9, 21, 46, 99},
         {1, 3, 5, 9, 17, 31},
         {1, 2, 3, 6, 9, 15}});
    static const ReproductionTable p2q2 = make_golden(
        "p2q2", a_labels({2, 3, 4, 5}), eps_labels(),
        {{4, 17, 80, 373, 1733, 8045},
         {2, 5, 12, 31, 79, 198},
         {2, 3, 6, 11, 22, 42},
         {1, 2, 4, 6, 11, 18}});
    static const ReproductionTable pinf_q2 = make_golden(
        "pinf_q2", a_labels({3, 4, 5}), eps_labels(),
        {{3, 10, 32, 101, 319, 1010},
         {2, 4, 9, 19, 40, 86},
         {1, 3, 5, 8, 15, 26}});
    static const ReproductionTable q1_bound = make_golden(
        "q1_bound", a_labels({2, 3, 4, 5}), eps_labels(),
        {{4, 16, 76, 354, 1643, 7628},
         {2, 5, 12, 30, 76, 192},
         {2, 3, 6, 11, 21, 41},
         {1, 2, 4, 6, 10, 17}});
    static const ReproductionTable q1_exact = make_golden(
        "q1_exact", a_labels({2, 3, 4, 5}), eps_labels(),
        {{3, 14, 67, 312, 1449, 6727},
         {2, 4, 11, 28, 71, 178},
         {1, 3, 5, 10, 20, 39},
         {1, 2, 4, 6, 10, 17}});
    static const ReproductionTable pod = make_golden(
        "pod", {"p=inf", "p=2"}, eps_labels(),
        {{3, 8, 26, 81, 256, 809}, {2, 5, 12, 29, 74, 185}});
    static const ReproductionTable constants = make_golden(
        "constants", a_labels({2, 3, 4, 5}), {"product"},
        {{1.56225}, {1.51302}, {1.50306}, {1.50075}}, false);
    switch (id) {
        case TableId::p1: return p1;
        case TableId::p2q2: return p2q2;
        case TableId::pinf_q2: return pinf_q2;
        case TableId::q1_bound: return q1_bound;
        case TableId::q1_exact: return q1_exact;
        case TableId::pod: return pod;
        case TableId::constants: return constants;
    }
    throw InvalidArgument("unknown table id");
}

std::vector<std::string> diff(const ReproductionTable& got, const ReproductionTable& want) {
    std::vector<std::string> out;
    if (got.cells.size() != want.cells.size()) {
        out.push_back("row count differs: got " + std::to_string(got.cells.size()) +
                      ", want " + std::to_string(want.cells.size()));
        return out;
    }
    for (std::size_t r = 0; r < got.cells.size(); ++r) {
        if (got.cells[r].size() != want.cells[r].size()) {
            out.push_back("column count differs in row " + want.row_labels[r]);
            continue;
        }
        for (std::size_t c = 0; c < got.cells[r].size(); ++c) {
            const double g = got.cells[r][c];
            const double w = want.cells[r][c];
            bool match;
            char buf[160];
            if (want.integer_cells) {
                match = g == w;
                if (!match)
                    std::snprintf(buf, sizeof buf, "cell (%s, %s): got %lld, want %lld",
                                  want.row_labels[r].c_str(), want.col_labels[c].c_str(),
                                  static_cast<long long>(g), static_cast<long long>(w));
            } else {
                // real-valued cells are checked at the golden print precision
                match = std::abs(round_decimals(g, 5) - w) < 1e-12;
                if (!match)
                    std::snprintf(buf, sizeof buf, "cell (%s, %s): got %.5f, want %.5f",
                                  want.row_labels[r].c_str(), want.col_labels[c].c_str(), g, w);
            }
            if (!match) out.emplace_back(buf);
        }
    }
    return out;
}

}  // namespace trdim::tables
