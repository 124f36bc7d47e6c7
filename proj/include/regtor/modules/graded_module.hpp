#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "regtor/linalg/homology.hpp"
#include "regtor/poly/ring_context.hpp"

namespace regtor::modules {

using linalg::BaseRing;
using linalg::ExactMatrix;
using linalg::Scalar;
using linalg::ModuleInvariants;
using linalg::Vector;
using poly::Polynomial;
using poly::RingContext;

/// One internal degree of a graded module: `generators` free generators
/// modulo the column span of `relations`.
struct ModulePiece {
  std::size_t generators = 0;
  ExactMatrix relations;
};

/// Degreewise finitely presented graded R-module, known up to a degree bound.
///
/// action(j, d) is the matrix of multiplication by r_j from piece d to piece
/// d + deg r_j on generators; it is defined whenever d + deg r_j <= bound.
class GradedModule {
 public:
  GradedModule(std::string label, std::shared_ptr<const RingContext> ctx, unsigned degree_bound,
               std::vector<ModulePiece> pieces, std::vector<std::vector<ExactMatrix>> actions);
  virtual ~GradedModule() = default;

  const std::string& label() const { return label_; }
  const RingContext& ctx() const { return *ctx_; }
  const std::shared_ptr<const RingContext>& ctx_ptr() const { return ctx_; }
  unsigned degree_bound() const { return degree_bound_; }

  const ModulePiece& piece(unsigned d) const { return pieces_.at(d); }
  std::size_t generators(unsigned d) const { return pieces_.at(d).generators; }
  const ExactMatrix& relations(unsigned d) const { return pieces_.at(d).relations; }
  const ExactMatrix& action(std::size_t j, unsigned d) const { return actions_.at(j).at(d); }
  ModuleInvariants invariants(unsigned d) const;

  /// Checks that every action preserves relations and that actions commute
  /// modulo relations, up to the degree bound. Returns a description of the
  /// first violation.
  std::optional<std::string> find_structure_violation() const;

 protected:
  GradedModule(std::string label, std::shared_ptr<const RingContext> ctx, unsigned degree_bound)
      : label_(std::move(label)), ctx_(std::move(ctx)), degree_bound_(degree_bound) {}

  std::string label_;
  std::shared_ptr<const RingContext> ctx_;
  unsigned degree_bound_;
  std::vector<ModulePiece> pieces_;
  std::vector<std::vector<ExactMatrix>> actions_;
};

/// I^numerator / I^denominator inside R (no denominator: the ideal power
/// itself). I^0 = R.
struct FiltrationComponent {
  unsigned numerator = 0;
  std::optional<unsigned> denominator;

  std::string label() const;
  friend bool operator==(const FiltrationComponent&, const FiltrationComponent&) = default;
};

/// A finite direct sum of filtration subquotients I^a / I^b of R.
///
/// Each component piece is presented on a reduced generating set: a Smith
/// normal form of the denominator inside the numerator lattice removes
/// generators that die and leaves one relation d * g per torsion generator.
/// Every generator has a polynomial representative, and `class_of` maps
/// polynomials of the numerator back to generator coordinates.
class FiltrationModule : public GradedModule {
 public:
  FiltrationModule(std::string label, std::shared_ptr<const RingContext> ctx, unsigned degree_bound,
                   std::vector<FiltrationComponent> components, unsigned threads = 1);

  const std::vector<FiltrationComponent>& components() const { return components_; }
  /// Index of the first generator of component c in piece d.
  std::size_t offset(std::size_t c, unsigned d) const { return offsets_.at(d).at(c); }
  std::size_t component_generators(std::size_t c, unsigned d) const;
  /// Component owning generator g of piece d.
  std::size_t component_of(unsigned d, std::size_t g) const;

  /// Polynomial representative of generator g of piece d.
  const Polynomial& representative(unsigned d, std::size_t g) const { return reps_.at(d).at(g); }

  /// Coordinates (in all of piece d) of the class of a polynomial lying in
  /// the numerator of component c; nullopt if it does not lie there.
  std::optional<Vector> try_class_of(std::size_t c, const Polynomial& p, unsigned d) const;
  /// As try_class_of, throwing std::invalid_argument on failure.
  Vector class_of(std::size_t c, const Polynomial& p, unsigned d) const;

  /// Sum of representatives weighted by x, one polynomial per component.
  std::vector<Polynomial> representatives_of(unsigned d, const Vector& x) const;

 private:
  std::vector<FiltrationComponent> components_;
  std::vector<std::vector<linalg::Subquotient>> component_pieces_;  // [d][c]
  std::vector<std::vector<std::size_t>> offsets_;                   // [d][c]
  std::vector<std::vector<Polynomial>> reps_;                       // [d][g]
};

/// Hermite-reduced basis of (I^s)_d in the monomial coordinates of R_d,
/// obtained from all products m * r^α with |α| = s.
ExactMatrix ideal_power_lattice(const RingContext& ctx, unsigned s, unsigned d);

/// Shares filtration modules of one instance by label so that every consumer
/// sees the same generator bases.
class ModuleCache {
 public:
  ModuleCache(std::shared_ptr<const RingContext> ctx, unsigned degree_bound, unsigned threads = 1)
      : ctx_(std::move(ctx)), degree_bound_(degree_bound), threads_(threads) {}

  const std::shared_ptr<const RingContext>& ctx_ptr() const { return ctx_; }
  unsigned degree_bound() const { return degree_bound_; }
  unsigned threads() const { return threads_; }

  std::shared_ptr<const FiltrationModule> get(const std::vector<FiltrationComponent>& components,
                                              const std::string& label = "");
  /// I^s.
  std::shared_ptr<const FiltrationModule> power(unsigned s);
  /// I^s / I^t.
  std::shared_ptr<const FiltrationModule> quotient(unsigned s, unsigned t);

 private:
  std::shared_ptr<const RingContext> ctx_;
  unsigned degree_bound_;
  unsigned threads_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const FiltrationModule>> modules_;
};

std::shared_ptr<const FiltrationModule> ideal_power(std::shared_ptr<const RingContext> ctx, unsigned s,
                                                    unsigned degree_bound);
std::shared_ptr<const FiltrationModule> filtration_quotient(std::shared_ptr<const RingContext> ctx, unsigned s,
                                                            unsigned t, unsigned degree_bound);

/// Graded morphism given degreewise on generators.
class ModuleMorphism {
 public:
  ModuleMorphism(std::shared_ptr<const GradedModule> source, std::shared_ptr<const GradedModule> target,
                 std::vector<ExactMatrix> maps);

  /// The map induced by the identity of R, sending source component c into
  /// target component component_map[c] (or to zero when absent).
  static ModuleMorphism induced(std::shared_ptr<const FiltrationModule> source,
                                std::shared_ptr<const FiltrationModule> target,
                                const std::vector<std::optional<std::size_t>>& component_map);
  static ModuleMorphism identity(std::shared_ptr<const GradedModule> m);
  static ModuleMorphism zero(std::shared_ptr<const GradedModule> source, std::shared_ptr<const GradedModule> target);

  const GradedModule& source() const { return *source_; }
  const GradedModule& target() const { return *target_; }
  const std::shared_ptr<const GradedModule>& source_ptr() const { return source_; }
  const std::shared_ptr<const GradedModule>& target_ptr() const { return target_; }
  const ExactMatrix& matrix(unsigned d) const { return maps_.at(d); }
  unsigned degree_bound() const { return static_cast<unsigned>(maps_.size()) - 1; }

  /// Relations map into relations and the map commutes with every action,
  /// modulo target relations. Returns the first violation.
  std::optional<std::string> find_violation() const;

 private:
  std::shared_ptr<const GradedModule> source_;
  std::shared_ptr<const GradedModule> target_;
  std::vector<ExactMatrix> maps_;
};

/// g ∘ f, degreewise.
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);

/// Bilinear map first × second → target computed by multiplying polynomial
/// representatives: component c1 times component c2 lands in component
/// rule(c1, c2) of the target, or is zero when the rule gives nothing.
/// matrix(d, e) has one column per generator pair (a, b), at a * |second_e| + b.
class BilinearMap {
 public:
  using Rule = std::function<std::optional<std::size_t>(std::size_t, std::size_t)>;

  BilinearMap(std::shared_ptr<const FiltrationModule> first, std::shared_ptr<const FiltrationModule> second,
              std::shared_ptr<const FiltrationModule> target, Rule rule);

  const FiltrationModule& first() const { return *first_; }
  const FiltrationModule& second() const { return *second_; }
  const FiltrationModule& target() const { return *target_; }

  /// Defined for d + e <= the target's degree bound. Thread-safe.
  const ExactMatrix& matrix(unsigned d, unsigned e) const;
  Vector apply(unsigned d, unsigned e, const Vector& x, const Vector& y) const;

 private:
  std::shared_ptr<const FiltrationModule> first_;
  std::shared_ptr<const FiltrationModule> second_;
  std::shared_ptr<const FiltrationModule> target_;
  Rule rule_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<unsigned, unsigned>, ExactMatrix> cache_;
};

}  // namespace regtor::modules
