#include "regtor/modules/graded_module.hpp"

#include <stdexcept>

#include "regtor/common/parallel.hpp"

namespace regtor::modules {

namespace {

bool columns_in_image(const linalg::ImageSolver& solver, const ExactMatrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!solver.solve(m.column_vector(c))) return false;
  }
  return true;
}

// All multisets of size s from {0..n-1} as non-decreasing index lists.
void multisets(std::size_t n, unsigned s, std::size_t start, std::vector<std::size_t>& current,
               std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == s) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    current.push_back(i);
    multisets(n, s, i, current, out);
    current.pop_back();
  }
}

}  // namespace

GradedModule::GradedModule(std::string label, std::shared_ptr<const RingContext> ctx, unsigned degree_bound,
                           std::vector<ModulePiece> pieces, std::vector<std::vector<ExactMatrix>> actions)
    : label_(std::move(label)),
      ctx_(std::move(ctx)),
      degree_bound_(degree_bound),
      pieces_(std::move(pieces)),
      actions_(std::move(actions)) {
  if (pieces_.size() != degree_bound_ + 1) throw std::invalid_argument("GradedModule: one piece per degree");
  if (actions_.size() != ctx_->n()) throw std::invalid_argument("GradedModule: one action list per r_j");
  for (std::size_t j = 0; j < ctx_->n(); ++j) {
    const unsigned e = ctx_->seq_degree(j);
    const std::size_t expected = degree_bound_ + 1 >= e ? degree_bound_ + 1 - e : 0;
    if (actions_[j].size() != expected) throw std::invalid_argument("GradedModule: action list has wrong length");
  }
}

ModuleInvariants GradedModule::invariants(unsigned d) const { return linalg::cokernel_invariants(relations(d)); }

std::optional<std::string> GradedModule::find_structure_violation() const {
  const auto& c = ctx();
  for (unsigned d = 0; d <= degree_bound_; ++d) {
    for (std::size_t j = 0; j < c.n(); ++j) {
      const unsigned ej = c.seq_degree(j);
      if (d + ej > degree_bound_) continue;
      linalg::ImageSolver target(relations(d + ej));
      if (!columns_in_image(target, action(j, d) * relations(d))) {
        return "action of r_" + std::to_string(j + 1) + " does not preserve relations in degree " +
               std::to_string(d);
      }
      for (std::size_t i = j + 1; i < c.n(); ++i) {
        const unsigned ei = c.seq_degree(i);
        if (d + ei + ej > degree_bound_) continue;
        ExactMatrix ij = action(i, d + ej) * action(j, d);
        ExactMatrix ji = action(j, d + ei) * action(i, d);
        linalg::ImageSolver top(relations(d + ei + ej));
        if (!columns_in_image(top, ij - ji)) {
          return "actions of r_" + std::to_string(i + 1) + " and r_" + std::to_string(j + 1) +
                 " do not commute in degree " + std::to_string(d);
        }
      }
    }
  }
  return std::nullopt;
}

std::string FiltrationComponent::label() const {
  if (!denominator) return numerator == 0 ? "R" : "I^" + std::to_string(numerator);
  if (numerator == 0 && *denominator == 1) return "S";
  return (numerator == 0 ? std::string("R") : "I^" + std::to_string(numerator)) + "/I^" +
         std::to_string(*denominator);
}

ExactMatrix ideal_power_lattice(const RingContext& ctx, unsigned s, unsigned d) {
  std::vector<std::vector<std::size_t>> alphas;
  std::vector<std::size_t> current;
  multisets(ctx.n(), s, 0, current, alphas);
  std::vector<linalg::Vector> gens;
  for (const auto& alpha : alphas) {
    Polynomial prod = ctx.one();
    unsigned deg = 0;
    for (std::size_t j : alpha) {
      prod = prod * ctx.sequence()[j];
      deg += ctx.seq_degree(j);
    }
    if (deg > d) continue;
    ExactMatrix m = poly::mult_matrix(ctx, prod, d - deg);
    for (std::size_t c = 0; c < m.cols(); ++c) gens.push_back(m.column_vector(c));
  }
  return linalg::image_basis(ExactMatrix::from_columns(ctx.base(), ctx.piece_rank(d), gens));
}

FiltrationModule::FiltrationModule(std::string label, std::shared_ptr<const RingContext> ctx, unsigned degree_bound,
                                   std::vector<FiltrationComponent> components, unsigned threads)
    : GradedModule(std::move(label), std::move(ctx), degree_bound), components_(std::move(components)) {
  for (const auto& comp : components_) {
    if (comp.denominator && *comp.denominator <= comp.numerator) {
      throw std::invalid_argument("filtration component needs denominator > numerator");
    }
  }
  const RingContext& c = *ctx_;
  const std::size_t degrees = degree_bound_ + 1;
  pieces_.resize(degrees);
  component_pieces_.resize(degrees);
  offsets_.resize(degrees);
  reps_.resize(degrees);

  parallel_for(degrees, threads, [&](std::size_t di) {
    const auto d = static_cast<unsigned>(di);
    std::vector<ExactMatrix> relation_blocks;
    std::size_t total = 0;
    for (const auto& comp : components_) {
      ExactMatrix numerator = ideal_power_lattice(c, comp.numerator, d);
      ExactMatrix denominator = comp.denominator ? ideal_power_lattice(c, *comp.denominator, d)
                                                 : ExactMatrix(c.base(), c.piece_rank(d), 0);
      linalg::Subquotient sq(numerator, denominator);
      offsets_[d].push_back(total);
      total += sq.generator_count();
      relation_blocks.push_back(sq.relations());
      for (std::size_t g = 0; g < sq.generator_count(); ++g) {
        reps_[d].push_back(c.from_coordinates(sq.cycle_basis().column_vector(g), d));
      }
      component_pieces_[d].push_back(std::move(sq));
    }
    pieces_[d].generators = total;
    pieces_[d].relations = linalg::block_diagonal(c.base(), relation_blocks);
  });

  actions_.assign(c.n(), {});
  std::vector<std::pair<std::size_t, unsigned>> cells;
  for (std::size_t j = 0; j < c.n(); ++j) {
    const unsigned e = c.seq_degree(j);
    for (unsigned d = 0; d + e <= degree_bound_; ++d) cells.emplace_back(j, d);
    actions_[j].resize(degree_bound_ + 1 >= e ? degree_bound_ + 1 - e : 0);
  }
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const auto [j, d] = cells[i];
    const unsigned target = d + c.seq_degree(j);
    ExactMatrix m(c.base(), generators(target), 0);
    for (std::size_t g = 0; g < generators(d); ++g) {
      m.append_column(class_of(component_of(d, g), reps_[d][g] * c.sequence()[j], target));
    }
    actions_[j][d] = std::move(m);
  });
}

std::size_t FiltrationModule::component_generators(std::size_t c, unsigned d) const {
  return component_pieces_.at(d).at(c).generator_count();
}

std::size_t FiltrationModule::component_of(unsigned d, std::size_t g) const {
  const auto& offs = offsets_.at(d);
  for (std::size_t c = offs.size(); c-- > 0;) {
    if (g >= offs[c]) return c;
  }
  throw std::out_of_range("component_of");
}

std::optional<Vector> FiltrationModule::try_class_of(std::size_t c, const Polynomial& p, unsigned d) const {
  auto local = component_pieces_.at(d).at(c).try_class_of(ctx().coordinates(p, d));
  if (!local) return std::nullopt;
  Vector out(generators(d));
  std::copy(local->begin(), local->end(), out.begin() + static_cast<std::ptrdiff_t>(offset(c, d)));
  return out;
}

Vector FiltrationModule::class_of(std::size_t c, const Polynomial& p, unsigned d) const {
  auto v = try_class_of(c, p, d);
  if (!v) {
    throw std::invalid_argument(ctx().render(p) + " does not lie in " + components_.at(c).label() + " in degree " +
                                std::to_string(d));
  }
  return *v;
}

std::vector<Polynomial> FiltrationModule::representatives_of(unsigned d, const Vector& x) const {
  std::vector<Polynomial> out(components_.size(), ctx().zero());
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (sgn(x[g]) == 0) continue;
    auto& slot = out[component_of(d, g)];
    slot = slot + reps_.at(d)[g].scaled(x[g]);
  }
  return out;
}

std::shared_ptr<const FiltrationModule> ModuleCache::get(const std::vector<FiltrationComponent>& components,
                                                         const std::string& label) {
  std::string key = label;
  if (key.empty()) {
    for (std::size_t i = 0; i < components.size(); ++i) key += (i ? " + " : "") + components[i].label();
  }
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = modules_.find(key);
    if (it != modules_.end()) return it->second;
  }
  auto m = std::make_shared<const FiltrationModule>(key, ctx_, degree_bound_, components, threads_);
  std::lock_guard<std::mutex> lock(mutex_);
  return modules_.try_emplace(key, std::move(m)).first->second;
}

std::shared_ptr<const FiltrationModule> ModuleCache::power(unsigned s) {
  return get({FiltrationComponent{s, std::nullopt}});
}

std::shared_ptr<const FiltrationModule> ModuleCache::quotient(unsigned s, unsigned t) {
  return get({FiltrationComponent{s, t}});
}

std::shared_ptr<const FiltrationModule> ideal_power(std::shared_ptr<const RingContext> ctx, unsigned s,
                                                    unsigned degree_bound) {
  FiltrationComponent comp{s, std::nullopt};
  return std::make_shared<const FiltrationModule>(comp.label(), std::move(ctx), degree_bound,
                                                  std::vector<FiltrationComponent>{comp});
}

std::shared_ptr<const FiltrationModule> filtration_quotient(std::shared_ptr<const RingContext> ctx, unsigned s,
                                                            unsigned t, unsigned degree_bound) {
  FiltrationComponent comp{s, t};
  return std::make_shared<const FiltrationModule>(comp.label(), std::move(ctx), degree_bound,
                                                  std::vector<FiltrationComponent>{comp});
}

ModuleMorphism::ModuleMorphism(std::shared_ptr<const GradedModule> source, std::shared_ptr<const GradedModule> target,
                               std::vector<ExactMatrix> maps)
    : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
  const unsigned bound = std::min(source_->degree_bound(), target_->degree_bound());
  if (maps_.size() != bound + 1) throw std::invalid_argument("ModuleMorphism: one matrix per degree");
  for (unsigned d = 0; d <= bound; ++d) {
    if (maps_[d].rows() != target_->generators(d) || maps_[d].cols() != source_->generators(d)) {
      throw std::invalid_argument("ModuleMorphism: matrix shape mismatch in degree " + std::to_string(d));
    }
  }
}

ModuleMorphism ModuleMorphism::induced(std::shared_ptr<const FiltrationModule> source,
                                       std::shared_ptr<const FiltrationModule> target,
                                       const std::vector<std::optional<std::size_t>>& component_map) {
  if (component_map.size() != source->components().size()) {
    throw std::invalid_argument("induced morphism: one target component per source component");
  }
  const unsigned bound = std::min(source->degree_bound(), target->degree_bound());
  std::vector<ExactMatrix> maps;
  for (unsigned d = 0; d <= bound; ++d) {
    ExactMatrix m(source->ctx().base(), target->generators(d), 0);
    for (std::size_t g = 0; g < source->generators(d); ++g) {
      const auto& dest = component_map[source->component_of(d, g)];
      m.append_column(dest ? target->class_of(*dest, source->representative(d, g), d) : Vector(target->generators(d)));
    }
    maps.push_back(std::move(m));
  }
  return ModuleMorphism(std::move(source), std::move(target), std::move(maps));
}

ModuleMorphism ModuleMorphism::identity(std::shared_ptr<const GradedModule> m) {
  std::vector<ExactMatrix> maps;
  for (unsigned d = 0; d <= m->degree_bound(); ++d) maps.push_back(ExactMatrix::identity(m->ctx().base(), m->generators(d)));
  return ModuleMorphism(m, m, std::move(maps));
}

ModuleMorphism ModuleMorphism::zero(std::shared_ptr<const GradedModule> source,
                                    std::shared_ptr<const GradedModule> target) {
  std::vector<ExactMatrix> maps;
  const unsigned bound = std::min(source->degree_bound(), target->degree_bound());
  for (unsigned d = 0; d <= bound; ++d) {
    maps.emplace_back(source->ctx().base(), target->generators(d), source->generators(d));
  }
  return ModuleMorphism(std::move(source), std::move(target), std::move(maps));
}

std::optional<std::string> ModuleMorphism::find_violation() const {
  const RingContext& c = source_->ctx();
  const unsigned bound = degree_bound();
  for (unsigned d = 0; d <= bound; ++d) {
    linalg::ImageSolver rel(target_->relations(d));
    if (!columns_in_image(rel, maps_[d] * source_->relations(d))) {
      return "relations are not preserved in degree " + std::to_string(d);
    }
    for (std::size_t j = 0; j < c.n(); ++j) {
      const unsigned e = c.seq_degree(j);
      if (d + e > bound) continue;
      ExactMatrix diff = maps_[d + e] * source_->action(j, d) - target_->action(j, d) * maps_[d];
      linalg::ImageSolver top(target_->relations(d + e));
      if (!columns_in_image(top, diff)) {
        return "map does not commute with r_" + std::to_string(j + 1) + " in degree " + std::to_string(d);
      }
    }
  }
  return std::nullopt;
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  if (&f.target() != &g.source()) throw std::invalid_argument("compose: modules do not match");
  std::vector<ExactMatrix> maps;
  const unsigned bound = std::min(f.degree_bound(), g.degree_bound());
  for (unsigned d = 0; d <= bound; ++d) maps.push_back(g.matrix(d) * f.matrix(d));
  return ModuleMorphism(f.source_ptr(), g.target_ptr(), std::move(maps));
}

BilinearMap::BilinearMap(std::shared_ptr<const FiltrationModule> first, std::shared_ptr<const FiltrationModule> second,
                         std::shared_ptr<const FiltrationModule> target, Rule rule)
    : first_(std::move(first)), second_(std::move(second)), target_(std::move(target)), rule_(std::move(rule)) {}

const ExactMatrix& BilinearMap::matrix(unsigned d, unsigned e) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find({d, e});
    if (it != cache_.end()) return it->second;
  }
  const unsigned total = d + e;
  if (total > target_->degree_bound()) throw std::out_of_range("BilinearMap: degree beyond bound");
  const std::size_t g2 = second_->generators(e);
  ExactMatrix m(target_->ctx().base(), target_->generators(total), first_->generators(d) * g2);
  for (std::size_t a = 0; a < first_->generators(d); ++a) {
    for (std::size_t b = 0; b < g2; ++b) {
      auto dest = rule_(first_->component_of(d, a), second_->component_of(e, b));
      if (!dest) continue;
      Vector col = target_->class_of(*dest, first_->representative(d, a) * second_->representative(e, b), total);
      m.set_column(a * g2 + b, col);
    }
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.try_emplace({d, e}, std::move(m)).first->second;
}

Vector BilinearMap::apply(unsigned d, unsigned e, const Vector& x, const Vector& y) const {
  const ExactMatrix& m = matrix(d, e);
  const auto& ring = target_->ctx().base();
  Vector out(m.rows());
  const std::size_t g2 = y.size();
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < g2; ++b) {
      if (sgn(y[b]) == 0) continue;
      const Scalar w = ring.mul(x[a], y[b]);
      for (const auto& [r, v] : m.column(a * g2 + b)) out[r] = ring.add(out[r], ring.mul(w, v));
    }
  }
  return out;
}

}  // namespace regtor::modules
