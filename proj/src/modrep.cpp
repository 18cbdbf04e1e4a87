#include "pathalg/modrep.hpp"

#include <algorithm>

namespace pathalg {

Representation::Representation(const FiniteDimAlgebra& algebra, std::vector<int> vertex_of, std::vector<Matrix> arrows)
    : algebra_(&algebra), vertex_of_(std::move(vertex_of)), arrows_(std::move(arrows)) {
  const Quiver& q = algebra.quiver();
  if (arrows_.size() != static_cast<std::size_t>(q.arrow_count()))
    throw std::invalid_argument("one matrix per arrow is required");
  const std::size_t n = dim();
  for (int v : vertex_of_)
    if (v < 0 || v >= q.vertex_count()) throw std::invalid_argument("basis vector at an unknown vertex");
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Matrix& m = arrows_[static_cast<std::size_t>(a)];
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("arrow matrix has the wrong shape");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m(i, j) != 0 && (vertex_of_[j] != q.arrow(a).source || vertex_of_[i] != q.arrow(a).target))
          throw std::invalid_argument("arrow matrix does not respect vertices");
  }
}

std::vector<std::size_t> Representation::vertex_dims() const {
  std::vector<std::size_t> d(static_cast<std::size_t>(algebra_->quiver().vertex_count()), 0);
  for (int v : vertex_of_) ++d[static_cast<std::size_t>(v)];
  return d;
}

Matrix Representation::arrow_block(int a) const {
  const Arrow& ar = algebra_->quiver().arrow(a);
  std::vector<std::size_t> src, tgt;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (vertex_of_[i] == ar.source) src.push_back(i);
    if (vertex_of_[i] == ar.target) tgt.push_back(i);
  }
  Matrix m(tgt.size(), src.size());
  for (std::size_t r = 0; r < tgt.size(); ++r)
    for (std::size_t c = 0; c < src.size(); ++c) m(r, c) = action(a)(tgt[r], src[c]);
  return m;
}

Vec Representation::apply(const Path& p, Vec x) const {
  const GF2m& f = algebra_->field();
  if (p.is_trivial()) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (vertex_of_[i] != p.source()) x[i] = 0;
    return x;
  }
  for (std::size_t k = p.length(); k-- > 0;) {
    x = action(p.arrow_at(k)).apply(f, x);
    if (is_zero(x)) break;
  }
  return x;
}

Vec Representation::apply(const FreeElement& x, const Vec& v) const {
  const GF2m& f = algebra_->field();
  Vec out(dim(), 0);
  for (const auto& [p, c] : x.terms()) axpy(f, c.value(), apply(p, v), out);
  return out;
}

Matrix Representation::matrix_of(const FreeElement& x) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim(); ++j) {
    Vec e(dim(), 0);
    e[j] = 1;
    cols.push_back(apply(x, e));
  }
  return Matrix::from_columns(dim(), cols);
}

std::optional<FreeElement> Representation::violated_relation() const {
  for (const auto& r : algebra_->presentation().uniform_generators())
    if (!matrix_of(r).is_zero()) return r;
  return std::nullopt;
}

namespace {

void require_module(const Representation& m) {
  if (auto r = m.violated_relation()) throw ModuleAxiomError("relation " + r->to_string() + " acts nontrivially");
}

std::size_t projected_dim(const GF2m& f, const Subspace& s, const std::vector<int>& vertex_of, int v) {
  std::vector<Vec> rows;
  for (const auto& b : s.basis()) {
    Vec r;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (vertex_of[i] == v) r.push_back(b[i]);
    rows.push_back(std::move(r));
  }
  std::size_t cols = static_cast<std::size_t>(std::count(vertex_of.begin(), vertex_of.end(), v));
  return rank(f, Matrix::from_rows(cols, rows));
}

}  // namespace

Representation projective(const FiniteDimAlgebra& a, int vertex) {
  if (vertex < 0 || vertex >= a.quiver().vertex_count()) throw std::invalid_argument("unknown vertex");
  std::vector<std::size_t> idx;
  std::vector<int> vert;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.basis()[i].source() == vertex) {
      idx.push_back(i);
      vert.push_back(a.basis()[i].target());
    }
  std::vector<Matrix> arrows;
  for (int z = 0; z < a.quiver().arrow_count(); ++z) {
    Matrix m(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = a.left_arrow(z)(idx[r], idx[c]);
    arrows.push_back(std::move(m));
  }
  Representation p(a, std::move(vert), std::move(arrows));
  require_module(p);
  return p;
}

Representation simple_module(const FiniteDimAlgebra& a, int vertex) {
  if (vertex < 0 || vertex >= a.quiver().vertex_count()) throw std::invalid_argument("unknown vertex");
  return Representation(a, {vertex}, std::vector<Matrix>(static_cast<std::size_t>(a.quiver().arrow_count()), Matrix(1, 1)));
}

Representation string_module(const FiniteDimAlgebra& a, const Path& w) {
  Vec nf = a.coords(FreeElement(a.quiver(), w, FieldElement::one(a.degree())));
  if (is_zero(nf)) throw StringModulePrecondition("path " + w.to_string(a.quiver()) + " is zero in the algebra", 0);
  const auto& soc = a.socle_series();
  std::size_t level = 1;
  while (!soc[level].contains(a.field(), nf)) ++level;
  if (level <= 2)
    throw StringModulePrecondition("path " + w.to_string(a.quiver()) + " lies in soc^" + std::to_string(level), level);

  auto verts = w.vertex_sequence(a.quiver());
  const std::size_t n = verts.size();
  std::vector<Matrix> arrows(static_cast<std::size_t>(a.quiver().arrow_count()), Matrix(n, n));
  for (std::size_t j = 0; j + 1 < n; ++j) arrows[static_cast<std::size_t>(w.arrow_at(w.length() - 1 - j))](j + 1, j) = 1;
  Representation m(a, std::move(verts), std::move(arrows));
  require_module(m);
  return m;
}

std::vector<Subspace> radical_series(const Representation& m) {
  require_module(m);
  const GF2m& f = m.algebra().field();
  std::vector<Subspace> out{Subspace::whole(m.dim())};
  while (!out.back().empty()) {
    Subspace next(m.dim());
    for (const auto& v : out.back().basis())
      for (int a = 0; a < m.algebra().quiver().arrow_count(); ++a) next.insert(f, m.action(a).apply(f, v));
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<std::vector<std::size_t>> composition_layers(const Representation& m) {
  const GF2m& f = m.algebra().field();
  auto rad = radical_series(m);
  const int nv = m.algebra().quiver().vertex_count();
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t j = 0; j + 1 < rad.size(); ++j) {
    std::vector<std::size_t> layer;
    for (int v = 0; v < nv; ++v)
      layer.push_back(projected_dim(f, rad[j], m.vertex_of(), v) - projected_dim(f, rad[j + 1], m.vertex_of(), v));
    out.push_back(std::move(layer));
  }
  return out;
}

std::vector<Subspace> socle_series(const Representation& m) {
  require_module(m);
  const GF2m& f = m.algebra().field();
  const std::size_t n = m.dim();
  std::vector<Subspace> out{Subspace(n)};
  while (out.back().dim() < n) {
    Matrix ann = out.back().annihilator(f);
    Matrix cond;
    for (int a = 0; a < m.algebra().quiver().arrow_count(); ++a) cond.append_rows(ann.multiply(f, m.action(a)));
    Subspace next(f, n, nullspace(f, cond));
    if (next.dim() == out.back().dim()) throw std::logic_error("module socle series stalled");
    out.push_back(std::move(next));
  }
  return out;
}

bool is_uniserial(const Representation& m) {
  for (const auto& layer : composition_layers(m)) {
    std::size_t total = 0;
    for (auto d : layer) total += d;
    if (total > 1) return false;
  }
  return true;
}

FactorSequence factor_sequence(const Representation& m) {
  FactorSequence out;
  for (const auto& layer : composition_layers(m)) {
    int v = -1;
    for (std::size_t i = 0; i < layer.size(); ++i)
      if (layer[i] == 1 && v == -1) v = static_cast<int>(i);
      else if (layer[i] != 0) v = -2;
    out.push_back(v < 0 ? -1 : v);
  }
  return out;
}

namespace {

// Backtracking search for a uniserial module. Basis b_0..b_n with b_j in
// layer j at vertex seq[j]. For each j the first arrow (in arrow order)
// from seq[j] to seq[j+1] whose b_{j+1}-coefficient on b_j is nonzero is
// the "chosen" arrow; replacing b_{j+1} by its image of b_j makes that
// column exactly e_{j+1}, and arrows before it have zero b_{j+1}-entry.
// Columns are filled from the bottom up. Column j only meets columns > j
// in the relations applied to b_j, and that condition is affine-linear in
// the unknown entries of column j, so each column is solved exactly.
class UniserialSearch {
 public:
  UniserialSearch(const FiniteDimAlgebra& a, const FactorSequence& seq, const UniserialOptions& opt)
      : a_(a), q_(a.quiver()), f_(a.field()), seq_(seq), opt_(opt), n_(seq.size()) {
    for (const auto& r : a.presentation().uniform_generators()) rels_.push_back(r);
    cols_.assign(static_cast<std::size_t>(q_.arrow_count()), std::vector<Vec>(n_, Vec(n_, 0)));
  }

  UniserialResult run() {
    UniserialResult res;
    res.exists = column(n_ - 1);
    res.nodes = nodes_;
    if (res.exists) {
      std::vector<Matrix> arrows;
      for (int z = 0; z < q_.arrow_count(); ++z)
        arrows.push_back(Matrix::from_columns(n_, cols_[static_cast<std::size_t>(z)]));
      res.witness.emplace(a_, std::vector<int>(seq_.begin(), seq_.end()), std::move(arrows));
    }
    return res;
  }

 private:
  struct Unknown {
    int arrow;
    std::size_t pos;
  };

  // Image of x (supported on positions > j) under an arrow.
  Vec act(int z, const Vec& x) const {
    Vec out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      if (x[i] != 0) axpy(f_, x[i], cols_[static_cast<std::size_t>(z)][i], out);
    return out;
  }

  // rho(p) x for a path given by word[0 .. len) applied right to left.
  Vec act_word(const std::string& word, std::size_t len, Vec x) const {
    for (std::size_t k = len; k-- > 0;) {
      x = act(static_cast<unsigned char>(word[k]), x);
      if (is_zero(x)) break;
    }
    return x;
  }

  bool column(std::size_t j) {
    const int v = seq_[j];
    std::vector<int> out_arrows;
    for (int z = 0; z < q_.arrow_count(); ++z)
      if (q_.arrow(z).source == v) out_arrows.push_back(z);
    if (j + 1 == n_) {
      for (int z : out_arrows) std::fill(cols_[static_cast<std::size_t>(z)][j].begin(), cols_[static_cast<std::size_t>(z)][j].end(), 0);
      return j == 0 ? true : column(j - 1);
    }
    const int next_v = seq_[j + 1];
    for (int chosen : out_arrows) {
      if (q_.arrow(chosen).target != next_v) continue;
      std::vector<Unknown> unknowns;
      for (int z : out_arrows) {
        if (z == chosen) continue;
        for (std::size_t i = j + 1; i < n_; ++i) {
          if (seq_[i] != q_.arrow(z).target) continue;
          if (i == j + 1 && z < chosen) continue;
          unknowns.push_back({z, i});
        }
      }
      for (int z : out_arrows) std::fill(cols_[static_cast<std::size_t>(z)][j].begin(), cols_[static_cast<std::size_t>(z)][j].end(), 0);
      cols_[static_cast<std::size_t>(chosen)][j][j + 1] = 1;

      // Equations: for every relation r starting at v, r b_j = 0. Each term
      // p = p' z contributes p' applied to column z of b_j.
      const std::size_t u = unknowns.size();
      std::vector<Vec> rows;
      for (const auto& r : rels_) {
        if (r.terms().begin()->first.source() != v) continue;
        std::vector<Vec> coeff(u + 1, Vec(n_, 0));  // per unknown, last = constant
        for (const auto& [p, c] : r.terms()) {
          const auto& w = p.word();
          int first = static_cast<unsigned char>(w.back());
          std::size_t rest = w.size() - 1;
          if (first == chosen) {
            Vec e(n_, 0);
            e[j + 1] = 1;
            axpy(f_, c.value(), act_word(w, rest, e), coeff[u]);
          }
          for (std::size_t k = 0; k < u; ++k) {
            if (unknowns[k].arrow != first) continue;
            Vec e(n_, 0);
            e[unknowns[k].pos] = 1;
            axpy(f_, c.value(), act_word(w, rest, e), coeff[k]);
          }
        }
        for (std::size_t i = 0; i < n_; ++i) {
          Vec row(u + 1, 0);
          for (std::size_t k = 0; k <= u; ++k) row[k] = coeff[k][i];
          if (!is_zero(row)) rows.push_back(std::move(row));
        }
      }
      Matrix aug = Matrix::from_rows(u + 1, rows);
      auto pivots = rref(f_, aug);
      if (!pivots.empty() && pivots.back() == u) continue;  // inconsistent
      Vec particular(u, 0);
      for (std::size_t r = 0; r < pivots.size(); ++r) particular[pivots[r]] = aug(r, u);
      std::vector<Vec> kernel;
      std::vector<bool> is_pivot(u, false);
      for (auto p : pivots) is_pivot[p] = true;
      for (std::size_t fcol = 0; fcol < u; ++fcol) {
        if (is_pivot[fcol]) continue;
        Vec kv(u, 0);
        kv[fcol] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) kv[pivots[r]] = aug(r, fcol);
        kernel.push_back(std::move(kv));
      }

      std::vector<std::uint8_t> lambda(kernel.size(), 0);
      for (;;) {
        if (++nodes_ > opt_.budget)
          throw SearchBudgetExceeded("uniserial search exceeded " + std::to_string(opt_.budget) + " assignments");
        Vec x = particular;
        for (std::size_t k = 0; k < kernel.size(); ++k) axpy(f_, lambda[k], kernel[k], x);
        for (std::size_t k = 0; k < u; ++k) cols_[static_cast<std::size_t>(unknowns[k].arrow)][j][unknowns[k].pos] = x[k];
        if (j == 0 || column(j - 1)) return true;
        std::size_t i = 0;
        while (i < lambda.size() && ++lambda[i] == f_.order()) lambda[i++] = 0;
        if (i == lambda.size()) break;
      }
    }
    return false;
  }

  const FiniteDimAlgebra& a_;
  const Quiver& q_;
  const GF2m& f_;
  const FactorSequence& seq_;
  UniserialOptions opt_;
  std::size_t n_;
  std::vector<FreeElement> rels_;
  std::vector<std::vector<Vec>> cols_;  // cols_[arrow][j] = image of b_j
  std::uint64_t nodes_ = 0;
};

void check_sequence(const FiniteDimAlgebra& a, const FactorSequence& seq) {
  if (seq.empty()) throw std::invalid_argument("factor sequence is empty");
  for (int v : seq)
    if (v < 0 || v >= a.quiver().vertex_count()) throw std::invalid_argument("factor sequence names an unknown vertex");
}

}  // namespace

UniserialResult uniserial_search(const FiniteDimAlgebra& a, const FactorSequence& seq, const UniserialOptions& options) {
  check_sequence(a, seq);
  if (seq.size() > a.loewy_length()) return {};
  return UniserialSearch(a, seq, options).run();
}

bool uniserial_exists(const FiniteDimAlgebra& a, const FactorSequence& seq, const UniserialOptions& options) {
  return uniserial_search(a, seq, options).exists;
}

std::optional<bool> uniserial_exists_by_strings(const FiniteDimAlgebra& a, const FactorSequence& seq) {
  check_sequence(a, seq);
  if (find_symmetric_form(a).status != FormStatus::Found) return std::nullopt;
  std::vector<FreeElement> soc;
  for (const auto& v : a.socle_series().at(1).basis()) soc.push_back(a.element(v));
  std::optional<FiniteDimAlgebra> bar;
  try {
    bar.emplace(a.presentation().with_extra(soc), a.groebner().order());
  } catch (const InadmissibleIdeal&) {
    return std::nullopt;
  }
  for (const auto& r : bar->groebner().relations())
    if (!r.tail.empty()) return std::nullopt;

  // Paths through the vertex sequence, built in traversal order.
  const Quiver& q = a.quiver();
  std::vector<Path> paths{Path::trivial(seq[0])};
  for (std::size_t j = 1; j < seq.size(); ++j) {
    std::vector<Path> next;
    for (const auto& p : paths)
      for (int z = 0; z < q.arrow_count(); ++z)
        if (q.arrow(z).source == seq[j - 1] && q.arrow(z).target == seq[j])
          if (auto e = compose(Path::arrow(q, z), p); e && bar->groebner().is_normal(*e)) next.push_back(*e);
    paths = std::move(next);
  }
  if (!paths.empty()) return true;

  auto top = projective(a, seq[0]);
  return is_uniserial(top) && factor_sequence(top) == seq;
}

}  // namespace pathalg
