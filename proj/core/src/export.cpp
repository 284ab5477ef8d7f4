#include "burstlab/export.hpp"

#include <cmath>
#include <ostream>

#include "json.hpp"

namespace burstlab {

std::optional<ExportFormat> parse_export_format(std::string_view s) {
  if (s == "gnuplot") return ExportFormat::Gnuplot;
  if (s == "json") return ExportFormat::Json;
  return std::nullopt;
}

namespace {

Table select(const Table& src, std::string name, std::initializer_list<std::string_view> keep,
             bool (*filter)(const Table&, const std::vector<Cell>&) = nullptr) {
  std::vector<std::size_t> idx;
  Table out{std::move(name), {}, {}};
  for (auto k : keep) {
    for (std::size_t i = 0; i < src.columns.size(); ++i) {
      if (src.columns[i] == k) {
        idx.push_back(i);
        out.columns.push_back(src.columns[i]);
      }
    }
  }
  for (const auto& row : src.rows) {
    if (filter && !filter(src, row)) continue;
    std::vector<Cell> r;
    r.reserve(idx.size());
    for (auto i : idx) r.push_back(row[i]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

std::size_t column(const Table& t, std::string_view name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  return t.columns.size();
}

bool populated(const Table& t, const std::vector<Cell>& row) {
  return !std::holds_alternative<std::monostate>(row[column(t, "mu_lv")]);
}

}  // namespace

std::vector<Table> plot_tables(const Analysis& a, const RunConfig& config) {
  std::vector<Table> out;
  out.push_back(select(zipf_table(a), "zipf", {"role", "channel", "rank", "frequency"}));

  Table pdf = select(lv_hist_table(a), "lv_pdf",
                     {"source", "role", "channel", "class_index", "log10_mean_f", "lv_lo", "lv_hi", "density"});
  // L_V distributions are drawn for the aggregate channel only.
  const auto ch = column(pdf, "channel");
  std::erase_if(pdf.rows, [ch](const std::vector<Cell>& r) { return std::get<std::string>(r[ch]) != "all"; });
  out.push_back(std::move(pdf));

  Table bins = bins_table(a, false);
  out.push_back(select(bins, "mean_lv", {"role", "channel", "class_index", "log10_mean_f", "n_included", "mu_lv", "sigma_lv"},
                       populated));

  Table z = select(zscores_table(a), "zscores",
                   {"role", "comparison", "denominator", "class_index", "log10_mean_f", "z"});
  const auto dn = column(z, "denominator");
  const std::string wanted(to_string(config.z_denominator));
  std::erase_if(z.rows, [dn, &wanted](const std::vector<Cell>& r) { return std::get<std::string>(r[dn]) != wanted; });
  out.push_back(std::move(z));

  const Table corr = correlations_table(a);
  for (auto [name, mode] : {std::pair{"corr_cross", "cross_user"}, std::pair{"corr_same", "same_user"}}) {
    Table t = select(corr, name, {"role", "pair", "mode", "class_index", "log10_mean_f_k", "log10_mean_f_k2", "n_pairs", "r"});
    const auto mc = column(t, "mode");
    const std::string m(mode);
    std::erase_if(t.rows, [mc, &m](const std::vector<Cell>& r) { return std::get<std::string>(r[mc]) != m; });
    out.push_back(std::move(t));
  }
  return out;
}

void export_tables(std::span<const Table> tables, ExportFormat format, std::ostream& out) {
  if (format == ExportFormat::Gnuplot) {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (i) out << "\n\n";
      write_gnuplot(tables[i], out);
    }
    return;
  }

  using nlohmann::ordered_json;
  ordered_json doc;
  doc["tables"] = ordered_json::array();
  for (const auto& t : tables) {
    ordered_json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    jt["rows"] = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json jr = ordered_json::array();
      for (const auto& c : row) {
        std::visit(
            [&jr](const auto& v) {
              using V = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<V, std::monostate>) {
                jr.push_back(nullptr);
              } else if constexpr (std::is_same_v<V, double>) {
                if (std::isfinite(v)) {
                  jr.push_back(v);
                } else {
                  jr.push_back(format_double(v));
                }
              } else {
                jr.push_back(v);
              }
            },
            c);
      }
      jt["rows"].push_back(std::move(jr));
    }
    doc["tables"].push_back(std::move(jt));
  }
  out << doc.dump(1) << '\n';
}

}  // namespace burstlab
