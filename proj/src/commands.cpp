#include "kershaw/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "kershaw/errors.hpp"
#include "kershaw/output.hpp"

namespace kershaw {

namespace {

std::string lower_name(const ClosureKind& kind) {
  std::string s = kind.name();
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

RunResult run_model(const RunConfig& config, const ClosureKind& kind) {
  return run_scenario(config.make_scenario(), kind, config.n_cells, config.run_options());
}

}  // namespace

std::size_t job_count_from_env() {
  const char* v = std::getenv(kJobsEnv);
  if (v == nullptr) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1) return 1;
  return static_cast<std::size_t>(n);
}

std::vector<std::filesystem::path> run_command(const RunConfig& config,
                                               const std::filesystem::path& out) {
  const std::string meta = config.echo();
  const RunResult run = run_model(config, config.model_kind());
  std::vector<std::filesystem::path> files{out / "profile.csv", out / "diagnostics.csv"};
  write_csv(files[0], profile_table(run, meta));
  write_csv(files[1], diagnostics_table(run, meta));
  if (const auto ref_kind = config.reference_kind()) {
    const RunResult ref = run_model(config, *ref_kind);
    files.push_back(out / "errors.csv");
    write_csv(files.back(), errors_table({{run.model, compare_to_reference(run, ref)}}, meta));
  }
  return files;
}

std::vector<std::filesystem::path> sweep_command(const RunConfig& config,
                                                 const std::filesystem::path& out,
                                                 std::size_t jobs) {
  const auto ref_kind = config.reference_kind();
  if (!ref_kind) throw ValidationError("sweep needs reference_model", "reference_model");
  std::vector<std::size_t> orders = config.orders;
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

  const std::string meta = config.echo();
  // Slot 0 holds the reference; slots 1.. the sweep orders.
  std::vector<ClosureKind> kinds{*ref_kind};
  for (std::size_t n : orders) kinds.push_back({config.model, n});
  std::vector<RunResult> results(kinds.size());
  std::vector<std::exception_ptr> failures(kinds.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < kinds.size(); i = next++) {
      try {
        results[i] = run_model(config, kinds[i]);
        if (i > 0) {
          const std::string name = lower_name(kinds[i]);
          write_csv(out / ("profile_" + name + ".csv"), profile_table(results[i], meta));
          write_csv(out / ("diagnostics_" + name + ".csv"), diagnostics_table(results[i], meta));
        }
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, kinds.size());
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<std::filesystem::path> files;
  std::vector<ErrorRow> rows;
  for (std::size_t i = 1; i < kinds.size(); ++i) {
    const std::string name = lower_name(kinds[i]);
    files.push_back(out / ("profile_" + name + ".csv"));
    files.push_back(out / ("diagnostics_" + name + ".csv"));
    rows.push_back({kinds[i], compare_to_reference(results[i], results[0])});
  }
  files.push_back(out / "errors.csv");
  write_csv(files.back(), errors_table(rows, meta));
  return files;
}

std::vector<std::filesystem::path> surface_command(const RunConfig& config,
                                                   const std::filesystem::path& out) {
  const ClosureKind kind = config.model_kind();
  const auto path = out / ("surface_" + lower_name(kind) + ".csv");
  write_csv(path, surface_table(kind, config.surface_n, config.echo()));
  return {path};
}

}  // namespace kershaw
