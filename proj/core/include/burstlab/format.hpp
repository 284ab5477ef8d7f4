#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "burstlab/localvar.hpp"
#include "burstlab/trains.hpp"

namespace burstlab {

// One output cell. monostate is written as NA (CSV, gnuplot) or null (JSON).
using Cell = std::variant<std::monostate, std::string, std::int64_t, double>;

inline Cell cell(std::optional<double> v) { return v ? Cell{*v} : Cell{}; }
inline Cell cell(std::size_t v) { return Cell{static_cast<std::int64_t>(v)}; }

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Shortest decimal form that round-trips; NaN is NA, infinities inf/-inf.
std::string format_double(double v);
std::string format_cell(const Cell& c);

void write_csv(const Table& table, std::ostream& out);

// Gnuplot data block: '#'-prefixed name and header lines, whitespace
// separated rows. Strings containing whitespace are double-quoted.
void write_gnuplot(const Table& table, std::ostream& out);

// Per-train L_V rows: user_id,role,channel,n_spikes,lv,exclusion.
Table lv_table(std::span<const LvRecord> records);

// Per-train rows: user_id,role,channel,n_spikes[,timestamps]. Timestamps are
// ';'-separated.
Table trains_table(const TrainSet& trains, FrequencyMode mode, bool with_times);

}  // namespace burstlab
