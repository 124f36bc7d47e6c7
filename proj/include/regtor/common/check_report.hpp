#pragma once

#include <string>
#include <utility>

#include "json.hpp"

namespace regtor {

using Json = nlohmann::ordered_json;

enum class CheckStatus { kPass, kFail, kSkipped };

/// "PASS", "FAIL" or "SKIPPED".
std::string to_string(CheckStatus status);

/// Outcome of one verification. `witness` is null unless the check failed
/// with a concrete counterexample; `payload` holds numeric evidence.
struct CheckReport {
  CheckStatus status = CheckStatus::kPass;
  std::string detail;
  Json witness;
  Json payload;

  bool passed() const { return status == CheckStatus::kPass; }

  static CheckReport pass(std::string detail, Json payload = Json()) {
    return {CheckStatus::kPass, std::move(detail), Json(), std::move(payload)};
  }
  static CheckReport fail(std::string detail, Json witness = Json(), Json payload = Json()) {
    return {CheckStatus::kFail, std::move(detail), std::move(witness), std::move(payload)};
  }
  static CheckReport skipped(std::string reason) {
    return {CheckStatus::kSkipped, std::move(reason), Json(), Json()};
  }
};

}  // namespace regtor
