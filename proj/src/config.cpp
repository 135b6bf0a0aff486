#include "kershaw/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "kershaw/errors.hpp"

namespace kershaw {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, const std::string& field) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ValidationError(field + ": expected a real number, got '" + std::string(text) + "'", field);
  }
  return v;
}

std::size_t parse_count(std::string_view text, const std::string& field) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError(field + ": expected an integer, got '" + std::string(text) + "'", field);
  }
  if (v < 0) throw ValidationError(field + " must be nonnegative", field);
  return static_cast<std::size_t>(v);
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

std::string format_real(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

void validate(const RunConfig& c) {
  if (c.order < 1) throw ValidationError("order must be at least 1", "order");
  if (c.n_cells < 2) throw ValidationError("n_cells must be at least 2", "n_cells");
  if (c.scenario == ScenarioName::PlaneSource && c.n_cells % 2 != 0) {
    throw ValidationError("plane_source needs an even n_cells", "n_cells");
  }
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ValidationError("cfl must lie in (0, 1]", "cfl");
  if (c.final_time < 0.0) throw ValidationError("final_time must be nonnegative", "final_time");
  const double tf = c.effective_final_time();
  for (double t : c.output_times) {
    if (t < 0.0 || t > tf) throw ValidationError("output_times must lie in [0, t_f]", "output_times");
  }
  if (c.reference_model && c.reference_order < 1) {
    throw ValidationError("reference_order must be at least 1", "reference_order");
  }
  if (c.orders.empty()) throw ValidationError("orders must not be empty", "orders");
  for (std::size_t n : c.orders) {
    if (n < 1) throw ValidationError("orders must all be at least 1", "orders");
  }
  if (c.surface_n < 1) throw ValidationError("surface_n must be at least 1", "surface_n");
}

}  // namespace

std::string family_name(ClosureFamily family) {
  switch (family) {
    case ClosureFamily::Kershaw: return "kershaw";
    case ClosureFamily::PN: return "pn";
    case ClosureFamily::MN: return "mn";
  }
  return "kershaw";
}

ClosureFamily parse_family(std::string_view name) {
  if (name == "kershaw") return ClosureFamily::Kershaw;
  if (name == "pn") return ClosureFamily::PN;
  if (name == "mn") return ClosureFamily::MN;
  throw ValidationError("unknown model '" + std::string(name) + "' (kershaw, pn, mn)", "model");
}

ScenarioName parse_scenario(std::string_view name) {
  if (name == "plane_source") return ScenarioName::PlaneSource;
  if (name == "source_beam") return ScenarioName::SourceBeam;
  throw ValidationError("unknown scenario '" + std::string(name) + "' (plane_source, source_beam)",
                        "scenario");
}

std::optional<ClosureKind> RunConfig::reference_kind() const {
  if (!reference_model) return std::nullopt;
  return ClosureKind{*reference_model, reference_order};
}

Scenario RunConfig::make_scenario() const {
  return scenario == ScenarioName::SourceBeam ? Scenario::source_beam() : Scenario::plane_source();
}

double RunConfig::effective_final_time() const {
  return final_time > 0.0 ? final_time : make_scenario().final_time;
}

RunOptions RunConfig::run_options() const {
  RunOptions o;
  o.cfl = cfl;
  o.final_time = final_time;
  o.output_times = output_times;
  return o;
}

std::string RunConfig::echo() const {
  std::ostringstream s;
  s << "scenario=" << to_string(scenario) << " model=" << family_name(model) << " order=" << order
    << " n_cells=" << n_cells << " cfl=" << format_real(cfl)
    << " final_time=" << format_real(effective_final_time()) << " output_times=";
  for (std::size_t i = 0; i < output_times.size(); ++i) {
    s << (i ? "," : "") << format_real(output_times[i]);
  }
  if (output_times.empty()) s << "default";
  s << " reference_model=" << (reference_model ? family_name(*reference_model) : "none")
    << " reference_order=" << reference_order << " orders=";
  for (std::size_t i = 0; i < orders.size(); ++i) s << (i ? "," : "") << orders[i];
  s << " surface_n=" << surface_n;
  return s.str();
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty key", line_no);
    if (!seen.insert(key).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'", line_no);
    }

    if (key == "scenario") {
      c.scenario = parse_scenario(value);
    } else if (key == "model") {
      c.model = parse_family(value);
    } else if (key == "order") {
      c.order = parse_count(value, key);
    } else if (key == "n_cells") {
      c.n_cells = parse_count(value, key);
    } else if (key == "cfl") {
      c.cfl = parse_real(value, key);
    } else if (key == "final_time") {
      c.final_time = parse_real(value, key);
    } else if (key == "output_dir") {
      if (value.empty()) throw ValidationError("output_dir must not be empty", key);
      c.output_dir = std::string(value);
    } else if (key == "output_times") {
      c.output_times.clear();
      for (auto item : split_list(value)) c.output_times.push_back(parse_real(item, key));
    } else if (key == "reference_model") {
      if (value == "none") {
        c.reference_model.reset();
      } else {
        try {
          c.reference_model = parse_family(value);
        } catch (const ValidationError& e) {
          throw ValidationError(e.what(), key);
        }
      }
    } else if (key == "reference_order") {
      c.reference_order = parse_count(value, key);
    } else if (key == "orders") {
      c.orders.clear();
      for (auto item : split_list(value)) c.orders.push_back(parse_count(item, key));
    } else if (key == "surface_n") {
      c.surface_n = parse_count(value, key);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'", line_no);
    }
  }
  validate(c);
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace kershaw
