#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regtor/common/check_report.hpp"
#include "regtor/modules/sequences.hpp"
#include "regtor/tor/tor.hpp"

namespace regtor::suite {

enum class CheckId {
  kRegularity,
  kBialgebra,
  kKoszulResolution,
  kCorTor,
  kPropGr,
  kModelExact,
  kModelColinear,
  kSingular,
  kLeibniz,
  kDelta0,
  kPropSequence,
  kFactorization,
  kLongSequence,
  kTheorem1,
};

/// All checks in run order.
const std::vector<CheckId>& all_checks();
/// "REGULARITY", "COR_TOR", ...
std::string to_string(CheckId id);
std::optional<CheckId> parse_check_id(std::string_view name);
/// One-line statement of what the check verifies.
std::string_view claim(CheckId id);
/// Checks that must PASS before `id` runs; otherwise it is SKIPPED.
const std::vector<CheckId>& prerequisites(CheckId id);

struct RunOptions {
  unsigned s_max = 3;
  unsigned degree_max = 8;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t bialgebra_trials = 100;
  /// Record wall time per check. Off by default so certificates are
  /// byte-identical across runs.
  bool timings = false;
};

/// Lazily built modules, sequences, Tor groups and connecting maps of one
/// instance, shared by all checks of a run.
class Workspace {
 public:
  Workspace(std::shared_ptr<const poly::RingContext> ctx, RunOptions options);

  const poly::RingContext& ctx() const { return *ctx_; }
  const std::shared_ptr<const poly::RingContext>& ctx_ptr() const { return ctx_; }
  const RunOptions& options() const { return options_; }
  modules::ModuleCache& modules() { return modules_; }

  const tor::KoszulTensorComplex& complex(const std::shared_ptr<const modules::FiltrationModule>& m);
  const tor::TorModule& tor(const std::shared_ptr<const modules::FiltrationModule>& m);
  const modules::ShortExactSequence& ses(modules::SesTag tag);
  /// Connecting map of the sequence with the given lift strategy.
  const tor::TorMap& connecting(modules::SesTag tag, linalg::PivotOrder order = linalg::PivotOrder::kNatural);
  /// Map on Tor induced by the projection of the sequence.
  const tor::TorMap& projection_on_tor(modules::SesTag tag);
  /// Map on Tor induced by I^{s+1} -> I^{s+1}/I^{s+2}.
  const tor::TorMap& reduction_on_tor(unsigned s);

 private:
  std::shared_ptr<const tor::TorModule> tor_ptr(const std::shared_ptr<const modules::FiltrationModule>& m);

  std::shared_ptr<const poly::RingContext> ctx_;
  RunOptions options_;
  modules::ModuleCache modules_;
  std::map<std::string, std::shared_ptr<const tor::KoszulTensorComplex>> complexes_;
  std::map<std::string, std::shared_ptr<const tor::TorModule>> tors_;
  std::map<std::string, modules::ShortExactSequence> sequences_;
  std::map<std::string, tor::TorMap> maps_;
};

/// Runs one check without looking at prerequisites.
CheckReport run_check(CheckId id, Workspace& workspace);

struct CheckResult {
  CheckId id;
  CheckReport report;
  std::optional<double> elapsed_ms;
};

struct Certificate {
  Json instance;
  std::vector<CheckResult> checks;

  bool passed() const;
  Json to_json() const;
  std::string to_text() const;
};

/// Human summary of a certificate in JSON form: one line per check.
std::string render_text(const Json& certificate);

/// Description of the instance as it appears in certificates.
Json describe_instance(const poly::RingContext& ctx, const RunOptions& options);

/// Runs the selected checks in run order. Prerequisites that were not
/// selected are evaluated internally and only used for gating.
Certificate run_all(std::shared_ptr<const poly::RingContext> ctx, const RunOptions& options,
                    const std::vector<CheckId>& selection);

/// Whether the sequence is exactly x_1, ..., x_n.
bool is_variable_sequence(const poly::RingContext& ctx);

}  // namespace regtor::suite
