// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "trdim/dimension.hpp"

namespace trdim::tables {

/// A named grid of cut sizes k (or constants) over weight parameters x error
/// demands, plus embedded golden values for the --check mode.
struct ReproductionTable {
    std::string name;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> cells;  // integer-valued except `constants`
    bool integer_cells = true;
    std::string metadata;
};

enum class TableId { p1, p2q2, pinf_q2, q1_bound, q1_exact, pod, constants };

TableId parse_table_id(const std::string& name);
std::string table_id_name(TableId id);

/// A generated table together with the per-cell solver results (empty for
/// the constants table); the results carry the minimality certificates.
struct TableRun {
    ReproductionTable table;
    std::vector<std::vector<DimensionResult>> results;  // [row][col]
};

/// Regenerates a table with its fixed parameters. `method` overrides the
/// table's default solver where meaningful (closed_form vs direct_scan for
/// the p = q = 2 grid).
TableRun run_table(TableId id, std::int64_t cutoff = 1000, int jobs = 1,
                   SolveMethod method = SolveMethod::automatic);

/// The reference values the generated tables are checked against.
const ReproductionTable& golden(TableId id);

/// Cell-level differences between two tables (empty when they agree).
std::vector<std::string> diff(const ReproductionTable& got, const ReproductionTable& want);

}  // namespace trdim::tables
