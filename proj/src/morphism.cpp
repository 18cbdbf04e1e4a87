#include "pathalg/morphism.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pathalg {

GeneratorMap::GeneratorMap(const FiniteDimAlgebra& source, const FiniteDimAlgebra& target,
                           const std::vector<FreeElement>& arrow_images)
    : source_(&source), target_(&target) {
  const Quiver& q = source.quiver();
  if (!(q == target.quiver())) throw AmbientMismatch("maps between different quivers are not supported");
  if (source.degree() != target.degree()) throw AmbientMismatch("source and target fields differ");
  if (arrow_images.size() != static_cast<std::size_t>(q.arrow_count()))
    throw std::invalid_argument("one image per arrow is required");
  for (int a = 0; a < q.arrow_count(); ++a) {
    const auto& img = arrow_images[static_cast<std::size_t>(a)];
    for (const auto& [p, c] : img.terms())
      if (p.source() != q.arrow(a).source || p.target() != q.arrow(a).target)
        throw std::invalid_argument("image of arrow " + q.arrow(a).name + " leaves e_t A e_s");
    images_.push_back(target.coords(img));
    left_.push_back(target.left_mult(images_.back()));
  }
}

Vec GeneratorMap::image(const Path& p) const {
  const GF2m& f = target_->field();
  Vec x = target_->idempotent(p.source());
  for (std::size_t k = p.length(); k-- > 0;) {
    x = left_[static_cast<std::size_t>(p.arrow_at(k))].apply(f, x);
    if (is_zero(x)) break;
  }
  return x;
}

Vec GeneratorMap::image(const FreeElement& x) const {
  const GF2m& f = target_->field();
  Vec out(target_->dim(), 0);
  for (const auto& [p, c] : x.terms()) axpy(f, c.value(), image(p), out);
  return out;
}

Vec GeneratorMap::image(const Vec& source_coords) const {
  const GF2m& f = target_->field();
  Vec out(target_->dim(), 0);
  for (std::size_t i = 0; i < source_coords.size(); ++i)
    if (source_coords[i] != 0) axpy(f, source_coords[i], image(source_->basis()[i]), out);
  return out;
}

GeneratorMap identity_map(const FiniteDimAlgebra& a) { return natural_map(a, a); }

GeneratorMap natural_map(const FiniteDimAlgebra& source, const FiniteDimAlgebra& target) {
  std::vector<FreeElement> imgs;
  for (int z = 0; z < source.quiver().arrow_count(); ++z)
    imgs.emplace_back(target.quiver(), Path::arrow(target.quiver(), z), FieldElement::one(target.degree()));
  return GeneratorMap(source, target, imgs);
}

GeneratorMap compose(const GeneratorMap& g, const GeneratorMap& f) {
  if (&f.target() != &g.source()) throw AmbientMismatch("maps do not compose");
  std::vector<FreeElement> imgs;
  for (const auto& img : f.arrow_images()) imgs.push_back(g.target().element(g.image(img)));
  return GeneratorMap(f.source(), g.target(), imgs);
}

WellDefined check_well_defined(const GeneratorMap& f) {
  WellDefined res;
  for (const auto& r : f.source().presentation().generators()) {
    Vec img = f.image(r);
    if (!is_zero(img)) {
      res.ok = false;
      res.relation = r;
      res.image = f.target().element(img);
      return res;
    }
  }
  return res;
}

Matrix linearize(const GeneratorMap& f) {
  std::vector<Vec> cols;
  for (const auto& p : f.source().basis()) cols.push_back(f.image(p));
  return Matrix::from_columns(f.target().dim(), cols);
}

namespace {

void require_well_defined(const GeneratorMap& f) {
  auto w = check_well_defined(f);
  if (!w.ok) throw std::invalid_argument("map is not well defined: " + w.relation->to_string() + " maps to " + w.image->to_string());
}

}  // namespace

Subspace kernel_basis(const GeneratorMap& f) {
  require_well_defined(f);
  const GF2m& fld = f.source().field();
  return Subspace(fld, f.source().dim(), nullspace(fld, linearize(f)));
}

bool is_surjective(const GeneratorMap& f) {
  require_well_defined(f);
  return rank(f.target().field(), linearize(f)) == f.target().dim();
}

bool is_isomorphism(const GeneratorMap& f) {
  if (!check_well_defined(f).ok) return false;
  return f.source().dim() == f.target().dim() && rank(f.target().field(), linearize(f)) == f.target().dim();
}

Subspace ideal_span(const FiniteDimAlgebra& a, const std::vector<Vec>& generators) {
  const GF2m& f = a.field();
  Subspace s(a.dim());
  std::vector<Vec> work;
  auto push = [&](Vec v) {
    if (s.insert(f, v)) work.push_back(std::move(v));
  };
  // Split into e_u x e_v pieces so that arrows alone generate the rest.
  const int nv = a.quiver().vertex_count();
  for (const auto& g : generators)
    for (int u = 0; u < nv; ++u)
      for (int v = 0; v < nv; ++v) push(a.multiply(a.multiply(a.idempotent(u), g), a.idempotent(v)));
  while (!work.empty()) {
    Vec x = std::move(work.back());
    work.pop_back();
    for (int z = 0; z < a.quiver().arrow_count(); ++z) {
      push(a.left_arrow(z).apply(f, x));
      push(a.right_arrow(z).apply(f, x));
    }
  }
  return s;
}

KernelComparison compare_kernel_with_ideal(const GeneratorMap& f, const std::vector<FreeElement>& ideal_generators) {
  KernelComparison res;
  Subspace ker = kernel_basis(f);
  res.kernel_dim = ker.dim();
  std::vector<Vec> gens;
  res.generators_in_kernel = true;
  for (const auto& g : ideal_generators) {
    Vec v = f.source().coords(g);
    if (!ker.contains(f.source().field(), v) && res.generators_in_kernel) {
      res.generators_in_kernel = false;
      res.offending = g;
    }
    gens.push_back(std::move(v));
  }
  res.ideal_dim = ideal_span(f.source(), gens).dim();
  res.equal = res.generators_in_kernel && res.ideal_dim == res.kernel_dim;
  return res;
}

bool kernel_equals_ideal(const GeneratorMap& f, const IdealPresentation& ideal) {
  return compare_kernel_with_ideal(f, ideal.generators()).equal;
}

RadSquareReport rad_square_containment(const GeneratorMap& f) {
  RadSquareReport res;
  const auto& s = f.source();
  const auto& t = f.target();
  res.contained = radical_power_basis(s, 2).contains(s.field(), kernel_basis(f));
  res.source_top = s.dim() - radical_power_basis(s, 1).dim();
  res.target_top = t.dim() - radical_power_basis(t, 1).dim();
  res.source_second = s.dim() - radical_power_basis(s, 2).dim();
  res.target_second = t.dim() - radical_power_basis(t, 2).dim();
  return res;
}

FiniteDimAlgebra quotient_by(const FiniteDimAlgebra& a, const std::vector<FreeElement>& extra) {
  return FiniteDimAlgebra(a.presentation().with_extra(extra), a.groebner().order());
}

GeneratorMap parse_map(const FiniteDimAlgebra& source, const FiniteDimAlgebra& target, std::string_view text) {
  const Quiver& q = source.quiver();
  std::vector<FreeElement> imgs;
  for (int z = 0; z < q.arrow_count(); ++z)
    imgs.emplace_back(q, Path::arrow(q, z), FieldElement::one(target.degree()));
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto arrow_pos = line.find("->");
    std::istringstream head(line.substr(0, arrow_pos == std::string::npos ? line.size() : arrow_pos));
    std::string kind, name;
    head >> kind >> name;
    if (kind.empty()) continue;
    if (arrow_pos == std::string::npos || name.empty()) throw ParseError("expected '<vertex|arrow> <name> -> <element>': " + line);
    std::string rhs = line.substr(arrow_pos + 2);
    if (kind == "vertex") {
      auto v = q.find_vertex(name);
      if (!v) throw ParseError("unknown vertex " + name);
      if (!(parse_element(q, target.degree(), rhs) == FreeElement(q, Path::trivial(*v), FieldElement::one(target.degree()))))
        throw std::invalid_argument("only vertex-preserving maps are supported");
    } else if (kind == "arrow") {
      auto a = q.find_arrow(name);
      if (!a) throw ParseError("unknown arrow " + name);
      imgs[static_cast<std::size_t>(*a)] = parse_element(q, target.degree(), rhs);
    } else {
      throw ParseError("unknown map line kind " + kind);
    }
  }
  return GeneratorMap(source, target, imgs);
}

}  // namespace pathalg
