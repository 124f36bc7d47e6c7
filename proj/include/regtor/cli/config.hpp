#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "regtor/poly/ring_context.hpp"
#include "regtor/suite/suite.hpp"

namespace regtor::cli {

enum class OutputFormat { kJson, kText };

/// A run as described by a config file.
///
/// Key-value form, one `key = value` per line, `#` starts a comment:
///
///     base = Z              # Z, Q or "Fp <prime>"
///     vars = x, y
///     weights = 1, 1        # optional, defaults to all 1
///     sequence = x^2, y^3
///     s_max = 3
///     degree_max = 8
///     seed = 0
///     checks = all          # none, or a comma separated list of check ids
///     output = cert.json    # optional
///     format = json         # json or text
///
/// The JSON form uses the same keys, with lists as arrays. Sequence entries
/// are stored in rendered normal form, so equal configs compare equal.
struct RunConfig {
  std::string base = "Z";
  std::vector<std::string> vars;
  std::vector<unsigned> weights;
  std::vector<std::string> sequence;
  unsigned s_max = 3;
  unsigned degree_max = 8;
  std::uint64_t seed = 0;
  /// Check ids in run order; empty means none were requested.
  std::vector<suite::CheckId> checks = suite::all_checks();
  std::string output;
  OutputFormat format = OutputFormat::kJson;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { kParse, kValidation };

  /// Parse errors carry a 1-based line and column.
  ConfigError(Kind kind, const std::string& message, std::size_t line = 0, std::size_t column = 0);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Key-value or JSON text (detected by a leading '{'). Throws ConfigError.
RunConfig parse_config(std::string_view text);
/// Reads and parses a file; an unreadable file is a validation error.
RunConfig load_config(const std::string& path);
/// Key-value text that parses back to an equal config.
std::string render_config(const RunConfig& config);

linalg::BaseRing parse_base_ring(std::string_view spec);
/// "Z", "Q" or "Fp <p>".
std::string base_ring_spec(const linalg::BaseRing& ring);

/// Resolves "all", "none" and ids in any order into run order; unknown ids are
/// validation errors.
std::vector<suite::CheckId> resolve_checks(const std::vector<std::string>& names);

std::shared_ptr<const poly::RingContext> build_context(const RunConfig& config);

suite::RunOptions run_options(const RunConfig& config, unsigned threads, bool timings);

}  // namespace regtor::cli
