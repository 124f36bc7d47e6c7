#include "regtor/common/check_report.hpp"

namespace regtor {

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "PASS";
    case CheckStatus::kFail:
      return "FAIL";
    case CheckStatus::kSkipped:
      return "SKIPPED";
  }
  return "UNKNOWN";
}

}  // namespace regtor
