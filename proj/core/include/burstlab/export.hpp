#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "burstlab/format.hpp"
#include "burstlab/pipeline.hpp"

namespace burstlab {

enum class ExportFormat : std::uint8_t { Gnuplot, Json };

std::optional<ExportFormat> parse_export_format(std::string_view s);

// Plot-ready tables:
//   zipf          rank vs f_U per role and channel
//   lv_pdf        P(L_V) per frequency class, real and permuted
//   mean_lv       mu(L_V) +- sigma vs log10<f>
//   zscores       z vs log10<f>, configured denominator
//   corr_cross    cross-user r vs log10<f> of both channels
//   corr_same     same-user r vs log10<f> of both channels
std::vector<Table> plot_tables(const Analysis& analysis, const RunConfig& config);

// Gnuplot: one indexed data block per table, blocks separated by two blank
// lines. JSON: {"tables": [{"name", "columns", "rows"}...]}.
void export_tables(std::span<const Table> tables, ExportFormat format, std::ostream& out);

}  // namespace burstlab
