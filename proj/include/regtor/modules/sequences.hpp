#pragma once

#include <memory>
#include <optional>
#include <string>

#include "regtor/common/check_report.hpp"
#include "regtor/modules/graded_module.hpp"

namespace regtor::modules {

enum class SesKind {
  kDefining,    // 0 -> I^{s+1} -> I^s -> I^s/I^{s+1} -> 0, also called E^s
  kFiltration,  // 0 -> I^{s+1}/I^{s+2} -> I^s/I^{s+2} -> I^s/I^{s+1} -> 0
  kSingular,    // direct sum of the filtration sequences for s <= s_max
  kROverI,      // 0 -> I -> R -> R/I -> 0
};

struct SesTag {
  SesKind kind = SesKind::kDefining;
  unsigned s = 0;

  static SesTag defining(unsigned s) { return {SesKind::kDefining, s}; }
  static SesTag filtration(unsigned s) { return {SesKind::kFiltration, s}; }
  /// `s` is the truncation s_max.
  static SesTag singular(unsigned s_max) { return {SesKind::kSingular, s_max}; }
  static SesTag r_over_i() { return {SesKind::kROverI, 0}; }

  std::string label() const;
  friend bool operator==(const SesTag&, const SesTag&) = default;
};

/// Products attached to a sequence 0 -> J -> B -> A' -> 0 of algebras.
/// The J-actions are present only when J * J = 0 makes them well defined.
struct AlgebraData {
  std::shared_ptr<const BilinearMap> middle_product;    // B x B -> B
  std::shared_ptr<const BilinearMap> quotient_product;  // A' x A' -> A'
  std::shared_ptr<const BilinearMap> right_action;      // J x A' -> J
  std::shared_ptr<const BilinearMap> left_action;       // A' x J -> J
};

/// 0 -> A -> B -> C -> 0, verified degreewise up to the degree bound.
class ShortExactSequence {
 public:
  /// Throws std::logic_error if the sequence is not exact in some degree.
  ShortExactSequence(SesTag tag, ModuleMorphism inclusion, ModuleMorphism projection,
                     std::optional<AlgebraData> algebra = std::nullopt);

  const SesTag& tag() const { return tag_; }
  std::string label() const { return tag_.label(); }
  const ModuleMorphism& inclusion() const { return inclusion_; }
  const ModuleMorphism& projection() const { return projection_; }
  const FiltrationModule& left() const;
  const FiltrationModule& middle() const;
  const FiltrationModule& right() const;
  std::shared_ptr<const FiltrationModule> left_ptr() const { return left_; }
  std::shared_ptr<const FiltrationModule> middle_ptr() const { return middle_; }
  std::shared_ptr<const FiltrationModule> right_ptr() const { return right_; }
  const std::optional<AlgebraData>& algebra() const { return algebra_; }
  unsigned degree_bound() const { return inclusion_.degree_bound(); }

 private:
  SesTag tag_;
  ModuleMorphism inclusion_;
  ModuleMorphism projection_;
  std::shared_ptr<const FiltrationModule> left_;
  std::shared_ptr<const FiltrationModule> middle_;
  std::shared_ptr<const FiltrationModule> right_;
  std::optional<AlgebraData> algebra_;
};

/// First degree where A -> B -> C fails to be short exact, described.
std::optional<std::string> find_exactness_violation(const ModuleMorphism& inclusion,
                                                    const ModuleMorphism& projection);

ShortExactSequence build_ses(ModuleCache& cache, SesTag tag);

/// The product of any two generators of J = image of the inclusion vanishes
/// in the middle algebra, for total degree <= bound. Pairs are scanned by
/// total degree, then distinct generator pairs before squares.
CheckReport check_singular(const ShortExactSequence& ses, unsigned bound);

/// A map of short exact sequences given by its three components.
struct SesMorphism {
  ModuleMorphism left;
  ModuleMorphism middle;
  ModuleMorphism right;
};

/// E^s -> F^s: reduction mod I^{s+2} on the left and middle terms, the
/// identity on I^s/I^{s+1}.
SesMorphism pushout_morphism(const ShortExactSequence& defining, const ShortExactSequence& filtration);

/// Both squares commute and the target middle term is the pushout of the
/// left map along the source inclusion: A_E -> A_F + B_E -> B_F -> 0 is
/// exact degreewise.
CheckReport check_pushout(const ShortExactSequence& source, const ShortExactSequence& target,
                          const SesMorphism& morphism);

}  // namespace regtor::modules
