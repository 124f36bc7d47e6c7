#include "regtor/modules/sequences.hpp"

#include <stdexcept>

namespace regtor::modules {

namespace {

bool zero_modulo(const linalg::ImageSolver& relations, const ExactMatrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!relations.solve(m.column_vector(c))) return false;
  }
  return true;
}

std::shared_ptr<const FiltrationModule> as_filtration(const std::shared_ptr<const GradedModule>& m) {
  auto f = std::dynamic_pointer_cast<const FiltrationModule>(m);
  if (!f) throw std::logic_error("short exact sequence terms must be filtration modules");
  return f;
}

std::string render_class(const FiltrationModule& m, unsigned d, const Vector& x) {
  Polynomial sum = m.ctx().zero();
  for (const auto& p : m.representatives_of(d, x)) sum = sum + p;
  return m.ctx().render(sum);
}

std::vector<FiltrationComponent> layered(unsigned s_max, unsigned shift, unsigned width) {
  std::vector<FiltrationComponent> out;
  for (unsigned s = 0; s <= s_max; ++s) out.push_back({s + shift, s + shift + width});
  return out;
}

std::vector<std::optional<std::size_t>> same_components(std::size_t count) {
  std::vector<std::optional<std::size_t>> out;
  for (std::size_t c = 0; c < count; ++c) out.emplace_back(c);
  return out;
}

}  // namespace

std::string SesTag::label() const {
  switch (kind) {
    case SesKind::kDefining:
      return "DEFSES(" + std::to_string(s) + ")";
    case SesKind::kFiltration:
      return "F(" + std::to_string(s) + ")";
    case SesKind::kSingular:
      return "SINGEXP(s_max=" + std::to_string(s) + ")";
    case SesKind::kROverI:
      return "R_OVER_I";
  }
  return "?";
}

std::optional<std::string> find_exactness_violation(const ModuleMorphism& inclusion,
                                                    const ModuleMorphism& projection) {
  if (&inclusion.target() != &projection.source()) return "inclusion target is not the projection source";
  if (auto v = inclusion.find_violation()) return "inclusion: " + *v;
  if (auto v = projection.find_violation()) return "projection: " + *v;
  const GradedModule& a = inclusion.source();
  const GradedModule& b = inclusion.target();
  const GradedModule& c = projection.target();
  const unsigned bound = std::min(inclusion.degree_bound(), projection.degree_bound());
  for (unsigned d = 0; d <= bound; ++d) {
    const std::string where = " in degree " + std::to_string(d);
    if (!linalg::presented_injective(inclusion.matrix(d), a.relations(d), b.relations(d))) {
      return "inclusion is not injective" + where;
    }
    if (!linalg::presented_surjective(projection.matrix(d), c.relations(d))) {
      return "projection is not surjective" + where;
    }
    if (!zero_modulo(linalg::ImageSolver(c.relations(d)), projection.matrix(d) * inclusion.matrix(d))) {
      return "projection after inclusion is nonzero" + where;
    }
    auto h = linalg::presented_homology(inclusion.matrix(d), projection.matrix(d), b.relations(d), c.relations(d));
    if (!h.invariants().is_zero()) return "kernel of projection exceeds image of inclusion" + where;
  }
  return std::nullopt;
}

ShortExactSequence::ShortExactSequence(SesTag tag, ModuleMorphism inclusion, ModuleMorphism projection,
                                       std::optional<AlgebraData> algebra)
    : tag_(tag),
      inclusion_(std::move(inclusion)),
      projection_(std::move(projection)),
      left_(as_filtration(inclusion_.source_ptr())),
      middle_(as_filtration(inclusion_.target_ptr())),
      right_(as_filtration(projection_.target_ptr())),
      algebra_(std::move(algebra)) {
  if (auto v = find_exactness_violation(inclusion_, projection_)) {
    throw std::logic_error(tag_.label() + " is not exact: " + *v);
  }
}

const FiltrationModule& ShortExactSequence::left() const { return *left_; }
const FiltrationModule& ShortExactSequence::middle() const { return *middle_; }
const FiltrationModule& ShortExactSequence::right() const { return *right_; }

ShortExactSequence build_ses(ModuleCache& cache, SesTag tag) {
  std::shared_ptr<const FiltrationModule> a;
  std::shared_ptr<const FiltrationModule> b;
  std::shared_ptr<const FiltrationModule> c;
  std::optional<AlgebraData> algebra;
  const unsigned s = tag.s;

  auto products = [&](BilinearMap::Rule middle_rule, BilinearMap::Rule quotient_rule) {
    AlgebraData data;
    data.middle_product = std::make_shared<const BilinearMap>(b, b, b, middle_rule);
    data.quotient_product = std::make_shared<const BilinearMap>(c, c, c, quotient_rule);
    return data;
  };

  switch (tag.kind) {
    case SesKind::kDefining:
    case SesKind::kROverI: {
      a = cache.power(s + 1);
      b = cache.power(s);
      c = cache.quotient(s, s + 1);
      if (s == 0) {
        auto unit = [](std::size_t, std::size_t) -> std::optional<std::size_t> { return 0; };
        algebra = products(unit, unit);
      }
      break;
    }
    case SesKind::kFiltration: {
      a = cache.quotient(s + 1, s + 2);
      b = cache.quotient(s, s + 2);
      c = cache.quotient(s, s + 1);
      if (s == 0) {
        auto unit = [](std::size_t, std::size_t) -> std::optional<std::size_t> { return 0; };
        algebra = products(unit, unit);
        algebra->right_action = std::make_shared<const BilinearMap>(a, c, a, unit);
        algebra->left_action = std::make_shared<const BilinearMap>(c, a, a, unit);
      }
      break;
    }
    case SesKind::kSingular: {
      const std::string tail = " (s<=" + std::to_string(s) + ")";
      a = cache.get(layered(s, 1, 1), "sum I^{s+1}/I^{s+2}" + tail);
      b = cache.get(layered(s, 0, 2), "sum I^s/I^{s+2}" + tail);
      c = cache.get(layered(s, 0, 1), "sum I^s/I^{s+1}" + tail);
      const unsigned s_max = s;
      auto graded = [s_max](std::size_t x, std::size_t y) -> std::optional<std::size_t> {
        if (x + y > s_max) return std::nullopt;
        return x + y;
      };
      algebra = products(graded, graded);
      algebra->right_action = std::make_shared<const BilinearMap>(a, c, a, graded);
      algebra->left_action = std::make_shared<const BilinearMap>(c, a, a, graded);
      break;
    }
  }
  const auto map = same_components(a->components().size());
  ModuleMorphism inclusion = ModuleMorphism::induced(a, b, map);
  ModuleMorphism projection = ModuleMorphism::induced(b, c, map);
  return ShortExactSequence(tag, std::move(inclusion), std::move(projection), std::move(algebra));
}

CheckReport check_singular(const ShortExactSequence& ses, unsigned bound) {
  if (!ses.algebra() || !ses.algebra()->middle_product) {
    return CheckReport::skipped(ses.label() + " carries no product on its middle term");
  }
  const BilinearMap& product = *ses.algebra()->middle_product;
  const FiltrationModule& j = ses.left();
  const FiltrationModule& b = ses.middle();
  bound = std::min(bound, ses.degree_bound());
  std::size_t pairs = 0;

  for (unsigned total = 0; total <= bound; ++total) {
    linalg::ImageSolver relations(b.relations(total));
    for (unsigned d1 = 0; 2 * d1 <= total; ++d1) {
      const unsigned d2 = total - d1;
      const ExactMatrix& in1 = ses.inclusion().matrix(d1);
      const ExactMatrix& in2 = ses.inclusion().matrix(d2);
      std::vector<std::pair<std::size_t, std::size_t>> order;
      if (d1 < d2) {
        for (std::size_t x = 0; x < in1.cols(); ++x) {
          for (std::size_t y = 0; y < in2.cols(); ++y) order.emplace_back(x, y);
        }
      } else {
        for (std::size_t x = 0; x < in1.cols(); ++x) {
          for (std::size_t y = x + 1; y < in2.cols(); ++y) order.emplace_back(x, y);
        }
        for (std::size_t x = 0; x < in1.cols(); ++x) order.emplace_back(x, x);
      }
      for (const auto& [x, y] : order) {
        ++pairs;
        Vector prod = product.apply(d1, d2, in1.column_vector(x), in2.column_vector(y));
        if (relations.solve(prod)) continue;
        Json witness{{"first", j.ctx().render(j.representative(d1, x))},
                     {"second", j.ctx().render(j.representative(d2, y))},
                     {"degrees", {d1, d2}},
                     {"product", render_class(b, total, prod)}};
        return CheckReport::fail("product of two kernel elements is nonzero in " + b.label(), witness,
                                 Json{{"sequence", ses.label()}, {"degree_bound", bound}, {"pairs_checked", pairs}});
      }
    }
  }
  return CheckReport::pass("kernel squares to zero in " + b.label(),
                           Json{{"sequence", ses.label()}, {"degree_bound", bound}, {"pairs_checked", pairs}});
}

SesMorphism pushout_morphism(const ShortExactSequence& defining, const ShortExactSequence& filtration) {
  return SesMorphism{ModuleMorphism::induced(defining.left_ptr(), filtration.left_ptr(), {0}),
                     ModuleMorphism::induced(defining.middle_ptr(), filtration.middle_ptr(), {0}),
                     ModuleMorphism::induced(defining.right_ptr(), filtration.right_ptr(), {0})};
}

CheckReport check_pushout(const ShortExactSequence& source, const ShortExactSequence& target,
                          const SesMorphism& morphism) {
  const BaseRing& ring = source.middle().ctx().base();
  const unsigned bound = std::min(source.degree_bound(), target.degree_bound());
  for (const auto* f : {&morphism.left, &morphism.middle, &morphism.right}) {
    if (auto v = f->find_violation()) return CheckReport::fail("component is not a module map: " + *v);
  }
  for (unsigned d = 0; d <= bound; ++d) {
    const Json where{{"degree", d}};
    linalg::ImageSolver mid_rel(target.middle().relations(d));
    linalg::ImageSolver right_rel(target.right().relations(d));
    ExactMatrix left_square = target.inclusion().matrix(d) * morphism.left.matrix(d) -
                              morphism.middle.matrix(d) * source.inclusion().matrix(d);
    if (!zero_modulo(mid_rel, left_square)) return CheckReport::fail("left square does not commute", where);
    ExactMatrix right_square = target.projection().matrix(d) * morphism.middle.matrix(d) -
                               morphism.right.matrix(d) * source.projection().matrix(d);
    if (!zero_modulo(right_rel, right_square)) return CheckReport::fail("right square does not commute", where);

    // A_E -> A_F + B_E -> B_F -> 0
    ExactMatrix into_sum = morphism.left.matrix(d).vstack(source.inclusion().matrix(d).scaled(ring.from_int(-1)));
    ExactMatrix out_of_sum = target.inclusion().matrix(d).hstack(morphism.middle.matrix(d));
    ExactMatrix sum_rel = linalg::block_diagonal(ring, {target.left().relations(d), source.middle().relations(d)});
    if (!linalg::presented_surjective(out_of_sum, target.middle().relations(d))) {
      return CheckReport::fail("pushout map onto the middle term is not surjective", where);
    }
    auto h = linalg::presented_homology(into_sum, out_of_sum, sum_rel, target.middle().relations(d));
    if (!h.invariants().is_zero()) return CheckReport::fail("pushout sequence is not exact", where);
    if (!linalg::presented_injective(morphism.right.matrix(d), source.right().relations(d),
                                     target.right().relations(d)) ||
        !linalg::presented_surjective(morphism.right.matrix(d), target.right().relations(d))) {
      return CheckReport::fail("map on cokernels is not an isomorphism", where);
    }
  }
  return CheckReport::pass(target.label() + " is the pushout of " + source.label(), Json{{"degree_bound", bound}});
}

}  // namespace regtor::modules
