#include "burstlab/format.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace burstlab {

std::string format_double(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "NA"; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
  };
  return std::visit(Visitor{}, c);
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_cell(row[i]);
    }
    out << '\n';
  }
}

void write_gnuplot(const Table& table, std::ostream& out) {
  out << "# " << table.name << '\n' << '#';
  for (const auto& c : table.columns) out << ' ' << c;
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ' ';
      std::string s = format_cell(row[i]);
      if (s.find_first_of(" \t") != std::string::npos || s.empty()) s = '"' + s + '"';
      out << s;
    }
    out << '\n';
  }
}

Table lv_table(std::span<const LvRecord> records) {
  Table t{"lv", {"user_id", "role", "channel", "n_spikes", "lv", "exclusion"}, {}};
  t.rows.reserve(records.size());
  for (const auto& r : records) {
    t.rows.push_back({Cell{static_cast<std::int64_t>(r.key.user)}, Cell{std::string(to_string(r.key.role))},
                      Cell{std::string(to_string(r.key.channel))}, cell(r.frequency),
                      r.lv.ok() ? Cell{r.lv.value} : Cell{}, Cell{std::string(to_string(r.lv.status))}});
  }
  return t;
}

Table trains_table(const TrainSet& trains, FrequencyMode mode, bool with_times) {
  Table t{"trains", {"user_id", "role", "channel", "n_spikes"}, {}};
  if (with_times) t.columns.push_back("timestamps");
  t.rows.reserve(trains.size());
  for (const auto& raw : trains) {
    const SpikeTrain deduped = dedup_one_second(raw);
    std::vector<Cell> row{Cell{static_cast<std::int64_t>(raw.key.user)}, Cell{std::string(to_string(raw.key.role))},
                          Cell{std::string(to_string(raw.key.channel))},
                          cell(mode == FrequencyMode::PostDedup ? deduped.size() : raw.size())};
    if (with_times) {
      std::string joined;
      for (std::size_t i = 0; i < deduped.times.size(); ++i) {
        if (i) joined += ';';
        joined += std::to_string(deduped.times[i]);
      }
      row.push_back(Cell{std::move(joined)});
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace burstlab
