#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tschls/analytic.hpp"
#include "tschls/core.hpp"

namespace tschls {

/// One row of the built-in reference table: a (period, deadline, strategy)
/// configuration and its expected figures under the default energy model.
struct Table1Row {
    double t_c_s = 0.0;
    std::optional<double> t_d_s;
    StrategyKind strategy = StrategyKind::conventional_tsch;
    std::optional<int> n_slp;
    std::optional<int> n_snz;
    double t_wc_s = 0.0;
    double p_tx_uw = 0.0;
    double p_rx_uw = 0.0;
};

inline constexpr double kTable1PowerTolUw = 0.0005;
inline constexpr double kTable1TimeTolS = 0.005;

/// The 14 pinned reference rows.
std::span<const Table1Row> table1_reference();

/// Traffic description for a reference row (periodic stream).
TrafficSpec table1_traffic(const Table1Row& row);

/// Evaluate the analytic model for one reference configuration.
PowerFigures table1_compute(const Table1Row& row);

struct Table1Check {
    bool ok = true;
    std::vector<std::string> mismatches;  // one message per offending cell
};

/// Recompute every row and compare against the pinned values.
Table1Check table1_verify();

enum class TableFormat { markdown, csv };

/// Render the recomputed table.
std::string table1_render(TableFormat format);

}  // namespace tschls
