#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "kershaw/closures.hpp"
#include "kershaw/config.hpp"
#include "kershaw/scenario.hpp"

namespace kershaw {

enum class TableKind { Profile, Errors, Surface, Diagnostics };

std::string to_string(TableKind kind);

/// A rectangular table of preformatted cells. An empty cell marks a missing
/// value (non-realizable surface points, slack of P_N runs).
struct OutputTable {
  TableKind kind = TableKind::Profile;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  /// Echoed configuration, written to the "# config:" line.
  std::string meta;

  void add_row(std::vector<std::string> row);
};

/// %.17g, or an empty string for NaN.
std::string format_cell(double v);

/// Line 1: "# config: <kind>; <meta>", line 2: "# col1,col2,...", then rows.
void write_csv(const std::filesystem::path& path, const OutputTable& table);
std::string to_csv(const OutputTable& table);

/// Inverse of to_csv. Throws ParseError with the offending line number.
OutputTable read_csv(const std::filesystem::path& path);
OutputTable parse_csv(const std::string& text);

/// Columns t, z, u0..uN; one block per snapshot, z ascending.
OutputTable profile_table(const RunResult& run, const std::string& meta);
/// Columns t, mass, min_slack.
OutputTable diagnostics_table(const RunResult& run, const std::string& meta);

struct ErrorRow {
  ClosureKind kind;
  ErrorNorms norms;
};
/// Columns model, N, L1, Linf; rows in the given order.
OutputTable errors_table(const std::vector<ErrorRow>& rows, const std::string& meta);

/// Normalized closure surface of an order-2 model over cell centers of
/// [-1, 1] x [0, 1] with n samples per axis, phi_2 outer and phi_1 inner.
/// Columns phi1, phi2, phi3, lambda1, lambda2, lambda3; phi3 and the
/// eigenvalues are empty where phi_2 < phi_1^2 or the closure is undefined.
OutputTable surface_table(const ClosureKind& kind, std::size_t n, const std::string& meta);

}  // namespace kershaw
