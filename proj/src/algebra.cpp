#include "pathalg/algebra.hpp"

#include <random>
#include <stdexcept>

namespace pathalg {

FiniteDimAlgebra::FiniteDimAlgebra(IdealPresentation presentation, const MonomialOrder& order,
                                   const CompletionOptions& options)
    : presentation_(std::move(presentation)), gb_(complete(presentation_, order, options)) {
  build();
}

FiniteDimAlgebra::FiniteDimAlgebra(IdealPresentation presentation)
    : FiniteDimAlgebra(presentation, MonomialOrder::natural(presentation.quiver())) {}

void FiniteDimAlgebra::build() {
  basis_ = gb_.quotient_basis();
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  const std::size_t n = dim();
  const Quiver& q = quiver();

  table_.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto pq = compose(basis_[i], basis_[j]);
      if (!pq) continue;
      auto& out = table_[i * n + j];
      if (gb_.is_normal(*pq)) {
        out.emplace_back(static_cast<std::uint32_t>(index_.at(*pq)), 1);
        continue;
      }
      for (const auto& t : gb_.reduce_path(*pq)) out.emplace_back(static_cast<std::uint32_t>(index_.at(t.path)), t.coef);
    }

  for (int a = 0; a < q.arrow_count(); ++a) {
    Vec av = arrow(a);
    left_arrow_.push_back(left_mult(av));
    right_arrow_.push_back(right_mult(av));
  }

  const GF2m& f = field();
  // rad^n = sum of arrow * rad^(n-1).
  Subspace r1(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!basis_[i].is_trivial()) {
      Vec e(n, 0);
      e[i] = 1;
      r1.insert(f, e);
    }
  rad_.push_back(Subspace::whole(n));
  rad_.push_back(r1);
  while (!rad_.back().empty()) {
    Subspace next(n);
    for (const auto& v : rad_.back().basis())
      for (const auto& l : left_arrow_) next.insert(f, l.apply(f, v));
    rad_.push_back(std::move(next));
  }

  // soc^n = {x : arrow * x in soc^(n-1) for every arrow}.
  soc_.push_back(Subspace(n));
  while (soc_.back().dim() < n) {
    Matrix ann = soc_.back().annihilator(f);
    Matrix cond;
    for (const auto& l : left_arrow_) cond.append_rows(ann.rows() ? ann.multiply(f, l) : Matrix(0, n));
    Subspace next(f, n, nullspace(f, cond));
    if (next.dim() == soc_.back().dim()) throw std::logic_error("socle series stalled; radical is not nilpotent");
    soc_.push_back(std::move(next));
  }
}

std::optional<std::size_t> FiniteDimAlgebra::index_of(const Path& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vec FiniteDimAlgebra::coords(const FreeElement& x) const {
  Vec v(dim(), 0);
  auto nf = gb_.normal_form(x);
  for (const auto& [p, c] : nf.terms()) v[index_.at(p)] = c.value();
  return v;
}

FreeElement FiniteDimAlgebra::element(const Vec& v) const {
  FreeElement x(quiver(), degree());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) x.add_term(basis_[i], FieldElement(v[i], degree()));
  return x;
}

Vec FiniteDimAlgebra::idempotent(int vertex) const {
  Vec v(dim(), 0);
  v[index_.at(Path::trivial(vertex))] = 1;
  return v;
}

Vec FiniteDimAlgebra::one() const {
  Vec v(dim(), 0);
  for (int u = 0; u < quiver().vertex_count(); ++u) v[index_.at(Path::trivial(u))] = 1;
  return v;
}

Vec FiniteDimAlgebra::arrow(int a) const {
  return coords(FreeElement(quiver(), Path::arrow(quiver(), a), FieldElement::one(degree())));
}

Vec FiniteDimAlgebra::multiply(const Vec& x, const Vec& y) const {
  const GF2m& f = field();
  const std::size_t n = dim();
  Vec out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      std::uint8_t c = f.mul(x[i], y[j]);
      for (const auto& [k, v] : table_[i * n + j]) out[k] ^= f.mul(c, v);
    }
  }
  return out;
}

Matrix FiniteDimAlgebra::left_mult(const Vec& a) const {
  const std::size_t n = dim();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    Vec col = multiply(a, e);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

Matrix FiniteDimAlgebra::right_mult(const Vec& a) const {
  const std::size_t n = dim();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    Vec col = multiply(e, a);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

Subspace FiniteDimAlgebra::right_socle() const {
  Matrix cond;
  for (const auto& r : right_arrow_) cond.append_rows(r);
  return Subspace(field(), dim(), nullspace(field(), cond));
}

bool FiniteDimAlgebra::check_associative() const {
  const GF2m& f = field();
  const std::size_t n = dim();
  auto times = [&](const SparseVec& x, std::size_t k, bool x_left) {
    Vec out(n, 0);
    for (const auto& [i, c] : x) {
      const auto& p = x_left ? table_[i * n + k] : table_[k * n + i];
      for (const auto& [m, v] : p) out[m] ^= f.mul(c, v);
    }
    return out;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (basis_[i].source() != basis_[j].target()) continue;
      const auto& ij = table_[i * n + j];
      for (std::size_t k = 0; k < n; ++k) {
        if (basis_[j].source() != basis_[k].target()) continue;
        if (times(ij, k, true) != times(table_[j * n + k], i, false)) return false;
      }
    }
  return true;
}

Subspace radical_power_basis(const FiniteDimAlgebra& a, std::size_t n) {
  const auto& rad = a.radical_series();
  return n < rad.size() ? rad[n] : rad.back();
}

std::size_t loewy_length(const FiniteDimAlgebra& a) { return a.loewy_length(); }

const std::vector<Subspace>& socle_series(const FiniteDimAlgebra& a) { return a.socle_series(); }

IntMatrix cartan_matrix(const FiniteDimAlgebra& a) {
  auto nv = static_cast<std::size_t>(a.quiver().vertex_count());
  IntMatrix c(nv, std::vector<long>(nv, 0));
  for (const auto& p : a.basis()) ++c[static_cast<std::size_t>(p.target())][static_cast<std::size_t>(p.source())];
  return c;
}

std::vector<std::array<long, 2>> DecompositionMatrix::expanded() const {
  std::vector<std::array<long, 2>> out(rows.begin(), rows.end());
  if (out.empty()) return out;
  for (std::size_t i = 1; i < last_row_count; ++i) out.push_back(rows.back());
  if (last_row_count == 0) out.pop_back();
  return out;
}

IntMatrix cartan_from_decomposition(const DecompositionMatrix& d) {
  IntMatrix c(2, std::vector<long>(2, 0));
  for (const auto& r : d.expanded()) {
    if (r[0] < 0 || r[1] < 0) throw std::invalid_argument("negative decomposition number");
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v) c[u][v] += r[u] * r[v];
  }
  return c;
}

namespace {

// Solutions of phi(b_i b_j) = phi(b_j b_i).
std::vector<Vec> symmetric_functionals(const FiniteDimAlgebra& a) {
  const GF2m& f = a.field();
  const std::size_t n = a.dim();
  Subspace eqs(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec row(n, 0);
      for (const auto& [k, c] : a.product(i, j)) row[k] ^= c;
      for (const auto& [k, c] : a.product(j, i)) row[k] ^= c;
      if (!is_zero(row)) eqs.insert(f, std::move(row));
    }
  return nullspace(f, Matrix::from_rows(n, eqs.basis()));
}

std::uint8_t apply_functional(const GF2m& f, const Vec& phi, const Vec& x) {
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 && phi[i] != 0) acc ^= f.mul(phi[i], x[i]);
  return acc;
}

}  // namespace

bool is_symmetric_nondegenerate(const FiniteDimAlgebra& a, const Vec& phi) {
  const GF2m& f = a.field();
  const std::size_t n = a.dim();
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint8_t ij = 0, ji = 0;
      for (const auto& [k, c] : a.product(i, j)) ij ^= f.mul(c, phi[k]);
      for (const auto& [k, c] : a.product(j, i)) ji ^= f.mul(c, phi[k]);
      if (ij != ji) return false;
      gram(i, j) = ij;
    }
  return rank(f, gram) == n;
}

SymmetricFormResult find_symmetric_form(const FiniteDimAlgebra& a, const SymmetricFormOptions& options) {
  const GF2m& f = a.field();
  const auto sols = symmetric_functionals(a);
  SymmetricFormResult res;
  res.solution_dim = sols.size();
  if (sols.empty()) return res;

  // A nonzero left ideal inside ker(phi) contains a simple left ideal
  // k x with x in the socle, and A x = span{e_v x}. So phi is
  // nondegenerate iff x -> (phi(e_v x))_v is injective on the socle.
  const Subspace& soc = a.socle_series().at(1);
  const std::size_t r = soc.dim();
  const auto nv = static_cast<std::size_t>(a.quiver().vertex_count());
  std::vector<std::vector<Vec>> ev_x(nv);  // e_v * socle basis
  for (std::size_t v = 0; v < nv; ++v)
    for (const auto& x : soc.basis()) ev_x[v].push_back(a.multiply(a.idempotent(static_cast<int>(v)), x));
  // Per solution functional k: matrix M_k[v][i] = phi_k(e_v x_i).
  std::vector<Matrix> mk;
  for (const auto& phi : sols) {
    Matrix m(nv, r);
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t i = 0; i < r; ++i) m(v, i) = apply_functional(f, phi, ev_x[v][i]);
    mk.push_back(std::move(m));
  }

  // Nondegeneracy depends on lambda only through M(lambda), so it suffices
  // to run over combinations of solutions whose M_k are independent.
  std::vector<std::size_t> pick_idx;
  {
    Subspace img(nv * r);
    for (std::size_t k = 0; k < mk.size(); ++k) {
      Vec flat;
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t i = 0; i < r; ++i) flat.push_back(mk[k](v, i));
      if (img.insert(f, flat)) pick_idx.push_back(k);
    }
  }

  auto test = [&](const std::vector<std::uint8_t>& lambda) -> bool {
    ++res.candidates;
    Matrix m(nv, r);
    for (std::size_t k = 0; k < lambda.size(); ++k) m.add_scaled(f, lambda[k], mk[pick_idx[k]]);
    if (rank(f, m) != r) return false;
    Vec phi(a.dim(), 0);
    for (std::size_t k = 0; k < lambda.size(); ++k) axpy(f, lambda[k], sols[pick_idx[k]], phi);
    if (!is_symmetric_nondegenerate(a, phi)) return false;
    res.status = FormStatus::Found;
    res.form = std::move(phi);
    return true;
  };

  const std::size_t s = pick_idx.size();
  const unsigned q = f.order();
  long double space = 1;
  for (std::size_t i = 0; i < s; ++i) space *= q;
  std::vector<std::uint8_t> lambda(s, 0);
  if (space <= static_cast<long double>(options.exhaustive_limit)) {
    // Odometer over F^s, skipping zero.
    for (;;) {
      std::size_t i = 0;
      while (i < s && ++lambda[i] == q) lambda[i++] = 0;
      if (i == s) break;
      if (test(lambda)) return res;
    }
    res.status = FormStatus::NotFound;
    return res;
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<unsigned> pick(0, q - 1);
  for (std::uint64_t t = 0; t < options.samples; ++t) {
    for (auto& l : lambda) l = static_cast<std::uint8_t>(pick(rng));
    if (test(lambda)) return res;
  }
  res.status = FormStatus::NotFoundSampled;
  return res;
}

}  // namespace pathalg
