#include "kershaw/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "kershaw/errors.hpp"

namespace kershaw {

std::string to_string(TableKind kind) {
  switch (kind) {
    case TableKind::Profile: return "profile";
    case TableKind::Errors: return "errors";
    case TableKind::Surface: return "surface";
    case TableKind::Diagnostics: return "diagnostics";
  }
  return "profile";
}

void OutputTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw Error("row has " + std::to_string(row.size()) + " cells, table has " +
                std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::string format_cell(double v) {
  if (std::isnan(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const OutputTable& table) {
  std::string out = "# config: " + to_string(table.kind) + "; " + table.meta + "\n# ";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out += (i ? "," : "") + table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const OutputTable& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << to_csv(table);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

OutputTable parse_csv(const std::string& text) {
  OutputTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      cells.push_back(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      const std::string prefix = "# config: ";
      if (line.rfind(prefix, 0) != 0) throw ParseError("line 1: missing '# config:' line", 1);
      const auto semi = line.find("; ", prefix.size());
      const std::string kind = line.substr(prefix.size(), semi == std::string::npos ? std::string::npos : semi - prefix.size());
      if (kind == "profile") t.kind = TableKind::Profile;
      else if (kind == "errors") t.kind = TableKind::Errors;
      else if (kind == "surface") t.kind = TableKind::Surface;
      else if (kind == "diagnostics") t.kind = TableKind::Diagnostics;
      else throw ParseError("line 1: unknown table kind '" + kind + "'", 1);
      t.meta = semi == std::string::npos ? std::string() : line.substr(semi + 2);
    } else if (line_no == 2) {
      if (line.rfind("# ", 0) != 0) throw ParseError("line 2: missing column header", 2);
      t.columns = split(line.substr(2));
    } else {
      auto cells = split(line);
      if (cells.size() != t.columns.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(t.columns.size()) + " cells, got " +
                             std::to_string(cells.size()),
                         line_no);
      }
      t.rows.push_back(std::move(cells));
    }
  }
  if (line_no < 2) throw ParseError("table is missing its header lines", line_no);
  return t;
}

OutputTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

OutputTable profile_table(const RunResult& run, const std::string& meta) {
  OutputTable t;
  t.kind = TableKind::Profile;
  t.meta = meta;
  t.columns = {"t", "z"};
  for (std::size_t j = 0; j <= run.model.order; ++j) t.columns.push_back("u" + std::to_string(j));
  const auto z = run.grid.centers();
  for (const auto& snap : run.snapshots) {
    for (std::size_t i = 0; i < snap.cells.size(); ++i) {
      std::vector<std::string> row{format_cell(snap.time), format_cell(z[i])};
      for (double v : snap.cells[i].values()) row.push_back(format_cell(v));
      t.add_row(std::move(row));
    }
  }
  return t;
}

OutputTable diagnostics_table(const RunResult& run, const std::string& meta) {
  OutputTable t;
  t.kind = TableKind::Diagnostics;
  t.meta = meta;
  t.columns = {"t", "mass", "min_slack"};
  for (const auto& d : run.diagnostics) {
    const double slack = std::isfinite(d.min_slack) ? d.min_slack : std::numeric_limits<double>::quiet_NaN();
    t.add_row({format_cell(d.time), format_cell(d.mass), format_cell(slack)});
  }
  return t;
}

OutputTable errors_table(const std::vector<ErrorRow>& rows, const std::string& meta) {
  OutputTable t;
  t.kind = TableKind::Errors;
  t.meta = meta;
  t.columns = {"model", "N", "L1", "Linf"};
  for (const auto& r : rows) {
    t.add_row({family_name(r.kind.family), std::to_string(r.kind.order), format_cell(r.norms.l1),
               format_cell(r.norms.linf)});
  }
  return t;
}

OutputTable surface_table(const ClosureKind& kind, std::size_t n, const std::string& meta) {
  if (kind.order != 2 || kind.family == ClosureFamily::PN) {
    throw ValidationError("surface needs a Kershaw or M_N model of order 2", "order");
  }
  OutputTable t;
  t.kind = TableKind::Surface;
  t.meta = meta;
  t.columns = {"phi1", "phi2", "phi3", "lambda1", "lambda2", "lambda3"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double h = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double phi2 = (static_cast<double>(j) + 0.5) * h;
    for (std::size_t i = 0; i < n; ++i) {
      const double phi1 = -1.0 + (static_cast<double>(i) + 0.5) * 2.0 * h;
      double phi3 = nan;
      double lam[3] = {nan, nan, nan};
      if (phi2 >= phi1 * phi1) {
        try {
          const MomentVector u{1.0, phi1, phi2};
          const FluxJacobianReport r = jacobian(kind, u);
          phi3 = flux(kind, u)[2];
          for (int k = 0; k < 3; ++k) lam[k] = r.eigenvalues[static_cast<std::size_t>(k)];
        } catch (const Error&) {
          phi3 = nan;
          lam[0] = lam[1] = lam[2] = nan;
        }
      }
      t.add_row({format_cell(phi1), format_cell(phi2), format_cell(phi3), format_cell(lam[0]),
                 format_cell(lam[1]), format_cell(lam[2])});
    }
  }
  return t;
}

}  // namespace kershaw
