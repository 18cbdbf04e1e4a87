#include "pathalg/gbasis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <tuple>

namespace pathalg {

MonomialOrder::MonomialOrder(std::vector<int> precedence) : rank_(std::move(precedence)) {
  std::vector<int> sorted = rank_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i)) throw std::invalid_argument("arrow precedence must be a permutation");
}

MonomialOrder MonomialOrder::natural(const Quiver& q) {
  std::vector<int> r(static_cast<std::size_t>(q.arrow_count()));
  std::iota(r.begin(), r.end(), 0);
  return MonomialOrder(std::move(r));
}

MonomialOrder MonomialOrder::reversed(const Quiver& q) {
  std::vector<int> r(static_cast<std::size_t>(q.arrow_count()));
  for (int i = 0; i < q.arrow_count(); ++i) r[static_cast<std::size_t>(i)] = q.arrow_count() - 1 - i;
  return MonomialOrder(std::move(r));
}

int MonomialOrder::compare(const Path& a, const Path& b) const noexcept {
  if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
  if (a.is_trivial()) return a.source() - b.source();
  const auto& wa = a.word();
  const auto& wb = b.word();
  auto [ia, ib] = std::mismatch(wa.begin(), wa.end(), wb.begin());
  if (ia == wa.end()) return 0;
  return rank_[static_cast<unsigned char>(*ia)] - rank_[static_cast<unsigned char>(*ib)];
}

IdealPresentation::IdealPresentation(const Quiver& q, int degree, std::vector<FreeElement> generators)
    : quiver_(&q), degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.degree() != degree_ || !(g.quiver() == q)) throw AmbientMismatch("generator from a different ambient");
}

bool IdealPresentation::admissible() const {
  for (const auto& g : generators_)
    if (!g.is_zero() && g.min_length() < 2) return false;
  return true;
}

std::vector<FreeElement> IdealPresentation::uniform_generators() const {
  std::vector<FreeElement> out;
  for (const auto& g : generators_)
    for (int t = 0; t < quiver_->vertex_count(); ++t)
      for (int s = 0; s < quiver_->vertex_count(); ++s) {
        auto c = g.component(t, s);
        if (!c.is_zero()) out.push_back(std::move(c));
      }
  return out;
}

IdealPresentation IdealPresentation::with_extra(const std::vector<FreeElement>& extra) const {
  auto gens = generators_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return IdealPresentation(*quiver_, degree_, std::move(gens));
}

std::size_t default_cap(int d) { return 3 * (std::size_t{1} << (d - 1)) + 8; }

namespace {

struct Desc {
  const MonomialOrder* ord;
  bool operator()(const Path& a, const Path& b) const noexcept { return ord->compare(a, b) > 0; }
};

using Workspace = std::map<Path, std::uint8_t, Desc>;

void accumulate(Workspace& w, Path p, std::uint8_t c) {
  if (c == 0) return;
  auto [it, inserted] = w.try_emplace(std::move(p), c);
  if (!inserted) {
    it->second ^= c;
    if (it->second == 0) w.erase(it);
  }
}

Path splice(const Quiver& q, const Path& whole, std::size_t pos, std::size_t len, const Path& middle) {
  const auto& word = whole.word();
  std::string nw;
  nw.reserve(word.size() - len + middle.length());
  nw.append(word, 0, pos);
  nw += middle.word();
  nw.append(word, pos + len, std::string::npos);
  if (nw.empty()) return Path::trivial(whole.source());
  return Path::from_word_unchecked(q, std::move(nw));
}

// Full reduction of w by the relations for which alive(i) holds.
template <class Alive>
std::vector<Term> reduce_workspace(const Quiver& q, const GF2m& f, const std::vector<Relation>& rels, Alive alive,
                                   Workspace& w) {
  std::vector<Term> out;
  while (!w.empty()) {
    auto node = w.extract(w.begin());
    const Path& p = node.key();
    std::uint8_t c = node.mapped();
    const Relation* hit = nullptr;
    std::size_t pos = std::string::npos;
    if (!p.is_trivial()) {
      for (std::size_t i = 0; i < rels.size() && !hit; ++i) {
        if (!alive(i)) continue;
        if (rels[i].tip.length() > p.length()) continue;
        pos = p.word().find(rels[i].tip.word());
        if (pos != std::string::npos) hit = &rels[i];
      }
    }
    if (!hit) {
      out.push_back({p, c});
      continue;
    }
    for (const auto& t : hit->tail) accumulate(w, splice(q, p, pos, hit->tip.length(), t.path), f.mul(c, t.coef));
  }
  return out;
}

bool tip_occurs(const Path& p, const Path& tip) {
  return !tip.is_trivial() && tip.length() <= p.length() && p.word().find(tip.word()) != std::string::npos;
}

// Normal words grouped by length: level n holds those of length n.
// Returns the first empty level index, or nullopt when words of length
// `limit` still exist or a level exceeds level_limit.
std::optional<std::size_t> normal_word_levels(const Quiver& q, const std::vector<Path>& tips, std::size_t limit,
                                              std::size_t level_limit, std::vector<std::vector<Path>>* levels) {
  std::vector<Path> cur;
  for (int v = 0; v < q.vertex_count(); ++v) cur.push_back(Path::trivial(v));
  for (std::size_t n = 0;; ++n) {
    if (cur.empty()) return n;
    if (n >= limit || cur.size() > level_limit) return std::nullopt;
    std::vector<Path> next;
    for (const auto& w : cur)
      for (int a = 0; a < q.arrow_count(); ++a) {
        if (q.arrow(a).source != w.target()) continue;
        std::string nw(1, static_cast<char>(a));
        nw += w.word();
        // w is normal, so only tips that are prefixes of the new word matter.
        bool bad = std::any_of(tips.begin(), tips.end(), [&](const Path& t) {
          return t.length() <= nw.size() && nw.compare(0, t.length(), t.word()) == 0;
        });
        if (!bad) next.push_back(Path::from_word_unchecked(q, std::move(nw)));
      }
    if (levels) levels->push_back(std::move(cur));
    cur = std::move(next);
  }
}

}  // namespace

class Completion {
 public:
  Completion(const IdealPresentation& ideal, const MonomialOrder& order, const CompletionOptions& options)
      : q_(ideal.quiver()), f_(GF2m::get(ideal.degree())), ideal_(ideal), order_(order), options_(options) {}

  GroebnerBasis run() {
    if (order_.precedence().size() != static_cast<std::size_t>(q_.arrow_count()))
      throw std::invalid_argument("monomial order does not match the quiver");
    if (!ideal_.admissible())
      throw InadmissibleIdeal("generator has a term of length below 2; the ideal is not inside the square of the arrow ideal");
    for (const auto& g : ideal_.uniform_generators()) insert_element(g);

    std::size_t cap = options_.cap;
    bool doubled = false;
    std::optional<std::size_t> bound;
    for (;;) {
      drain(cap);
      bound = normal_word_levels(q_, alive_tips(), cap + 1, options_.level_limit, nullptr);
      if (bound) break;
      if (!doubled) {
        cap *= 2;
        doubled = true;
        continue;
      }
      if (options_.allow_incomplete) return finish(false);
      throw NotFiniteDimensional("normal words persist beyond length " + std::to_string(cap));
    }
    // The quotient is finite; finish every deferred overlap exactly.
    do {
      drain(SIZE_MAX);
    } while (requeue_unresolved());
    return finish(true);
  }

 private:
  struct Pair {
    std::size_t len, i, j, k;
    bool operator>(const Pair& o) const { return std::tie(len, i, j, k) > std::tie(o.len, o.i, o.j, o.k); }
  };

  Workspace workspace() const { return Workspace(Desc{&order_}); }

  std::vector<Term> reduce(Workspace& w, std::size_t skip = SIZE_MAX) const {
    return reduce_workspace(q_, f_, rels_, [&](std::size_t i) { return alive_[i] && i != skip; }, w);
  }

  std::vector<Path> alive_tips() const {
    std::vector<Path> out;
    for (std::size_t i = 0; i < rels_.size(); ++i)
      if (alive_[i]) out.push_back(rels_[i].tip);
    return out;
  }

  void insert_element(const FreeElement& x) {
    auto w = workspace();
    for (const auto& [p, c] : x.terms()) accumulate(w, p, c.value());
    auto r = reduce(w);
    if (!r.empty()) add(std::move(r));
  }

  // poly is fully reduced, nonzero and sorted in decreasing order.
  void add(std::vector<Term> poly) {
    std::uint8_t lead_inv = f_.inv(poly.front().coef);
    Relation rel{poly.front().path, {}};
    for (std::size_t t = 1; t < poly.size(); ++t) rel.tail.push_back({poly[t].path, f_.mul(lead_inv, poly[t].coef)});
    std::size_t n = rels_.size();
    rels_.push_back(std::move(rel));
    alive_.push_back(true);
    const Path& tip = rels_[n].tip;

    std::vector<std::vector<Term>> removed;
    for (std::size_t s = 0; s < n; ++s) {
      if (!alive_[s] || !tip_occurs(rels_[s].tip, tip)) continue;
      alive_[s] = false;
      std::vector<Term> el{{rels_[s].tip, 1}};
      el.insert(el.end(), rels_[s].tail.begin(), rels_[s].tail.end());
      removed.push_back(std::move(el));
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (!alive_[s]) continue;
      auto& tail = rels_[s].tail;
      if (std::none_of(tail.begin(), tail.end(), [&](const Term& t) { return tip_occurs(t.path, tip); })) continue;
      auto w = workspace();
      for (auto& t : tail) accumulate(w, t.path, t.coef);
      tail = reduce(w, s);
    }
    for (std::size_t s = 0; s <= n; ++s) {
      if (!alive_[s]) continue;
      enqueue(s, n);
      if (s != n) enqueue(n, s);
    }
    for (auto& el : removed) {
      auto w = workspace();
      for (auto& t : el) accumulate(w, t.path, t.coef);
      auto r = reduce(w);
      if (!r.empty()) add(std::move(r));
    }
  }

  // Overlaps where a proper suffix of tip i equals a proper prefix of tip j.
  void enqueue(std::size_t i, std::size_t j) {
    const auto& a = rels_[i].tip.word();
    const auto& b = rels_[j].tip.word();
    std::size_t kmax = std::min(a.size(), b.size()) - 1;
    for (std::size_t k = 1; k <= kmax; ++k)
      if (a.compare(a.size() - k, k, b, 0, k) == 0) queue_.push({a.size() + b.size() - k, i, j, k});
  }

  std::vector<Term> s_element(const Pair& p) const {
    const Path& ti = rels_[p.i].tip;
    const Path& tj = rels_[p.j].tip;
    std::string wword = ti.word() + tj.word().substr(p.k);
    Path whole = Path::from_word_unchecked(q_, wword);
    auto w = workspace();
    for (const auto& t : rels_[p.i].tail) accumulate(w, splice(q_, whole, 0, ti.length(), t.path), t.coef);
    std::size_t pos_j = ti.length() - p.k;
    for (const auto& t : rels_[p.j].tail) accumulate(w, splice(q_, whole, pos_j, tj.length(), t.path), t.coef);
    return reduce(w);
  }

  void drain(std::size_t cap) {
    while (!queue_.empty() && queue_.top().len <= cap) {
      Pair p = queue_.top();
      queue_.pop();
      if (!alive_[p.i] || !alive_[p.j]) continue;
      auto s = s_element(p);
      if (!s.empty()) add(std::move(s));
    }
  }

  // Checks every overlap among the surviving relations once more; any
  // nonzero remainder is added. Returns true if something was added.
  bool requeue_unresolved() {
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < rels_.size(); ++i)
      if (alive_[i]) live.push_back(i);
    std::vector<std::vector<Term>> fresh;
    for (auto i : live)
      for (auto j : live) {
        const auto& a = rels_[i].tip.word();
        const auto& b = rels_[j].tip.word();
        std::size_t kmax = std::min(a.size(), b.size()) - 1;
        for (std::size_t k = 1; k <= kmax; ++k) {
          if (a.compare(a.size() - k, k, b, 0, k) != 0) continue;
          auto s = s_element({0, i, j, k});
          if (!s.empty()) fresh.push_back(std::move(s));
        }
      }
    bool grew = false;
    for (auto& s : fresh) {
      auto w = workspace();
      for (auto& t : s) accumulate(w, t.path, t.coef);
      auto r = reduce(w);
      if (!r.empty()) {
        add(std::move(r));
        grew = true;
      }
    }
    return grew;
  }

  GroebnerBasis finish(bool complete) {
    GroebnerBasis gb(q_, ideal_.degree(), order_);
    for (std::size_t i = 0; i < rels_.size(); ++i)
      if (alive_[i]) gb.relations_.push_back(rels_[i]);
    std::sort(gb.relations_.begin(), gb.relations_.end(),
              [&](const Relation& a, const Relation& b) { return order_.less(a.tip, b.tip); });
    gb.complete_ = complete;
    if (complete) gb.bound_ = *normal_word_levels(q_, gb.tips(), SIZE_MAX, SIZE_MAX, nullptr);
    return gb;
  }

  const Quiver& q_;
  const GF2m& f_;
  const IdealPresentation& ideal_;
  MonomialOrder order_;
  CompletionOptions options_;
  std::vector<Relation> rels_;
  std::vector<bool> alive_;
  std::priority_queue<Pair, std::vector<Pair>, std::greater<Pair>> queue_;
};

GroebnerBasis complete(const IdealPresentation& ideal, const MonomialOrder& order, const CompletionOptions& options) {
  return Completion(ideal, order, options).run();
}

std::vector<Path> GroebnerBasis::tips() const {
  std::vector<Path> out;
  for (const auto& r : relations_) out.push_back(r.tip);
  return out;
}

FreeElement GroebnerBasis::relation_element(std::size_t i) const {
  const auto& r = relations_.at(i);
  FreeElement x(*quiver_, r.tip, FieldElement::one(degree_));
  for (const auto& t : r.tail) x.add_term(t.path, FieldElement(t.coef, degree_));
  return x;
}

void GroebnerBasis::require_complete() const {
  if (!complete_) throw IncompleteBasis("Groebner basis is not complete");
}

std::vector<Term> GroebnerBasis::reduce_path(const Path& p) const {
  require_complete();
  Workspace w(Desc{&order_});
  accumulate(w, p, 1);
  return reduce_workspace(*quiver_, field(), relations_, [](std::size_t) { return true; }, w);
}

FreeElement GroebnerBasis::normal_form(const FreeElement& x) const {
  require_complete();
  if (x.degree() != degree_ || !(x.quiver() == *quiver_)) throw AmbientMismatch("element from a different ambient");
  Workspace w(Desc{&order_});
  for (const auto& [p, c] : x.terms()) accumulate(w, p, c.value());
  FreeElement out(*quiver_, degree_);
  for (auto& t : reduce_workspace(*quiver_, field(), relations_, [](std::size_t) { return true; }, w))
    out.add_term(t.path, FieldElement(t.coef, degree_));
  return out;
}

bool GroebnerBasis::is_normal(const Path& p) const {
  return std::none_of(relations_.begin(), relations_.end(), [&](const Relation& r) { return tip_occurs(p, r.tip); });
}

std::vector<Path> GroebnerBasis::quotient_basis() const {
  require_complete();
  std::vector<std::vector<Path>> levels;
  normal_word_levels(*quiver_, tips(), SIZE_MAX, SIZE_MAX, &levels);
  std::vector<Path> out;
  for (auto& l : levels) out.insert(out.end(), l.begin(), l.end());
  std::sort(out.begin(), out.end(), [&](const Path& a, const Path& b) {
    if (a.source() != b.source()) return a.source() < b.source();
    if (a.target() != b.target()) return a.target() < b.target();
    return order_.less(a, b);
  });
  return out;
}

FreeElement normal_form(const FreeElement& x, const GroebnerBasis& gb) { return gb.normal_form(x); }
std::vector<Path> quotient_basis(const GroebnerBasis& gb) { return gb.quotient_basis(); }

IdealOracle::IdealOracle(const IdealPresentation& ideal, std::size_t bound)
    : quiver_(&ideal.quiver()), degree_(ideal.degree()), bound_(bound) {
  const Quiver& q = *quiver_;
  // All paths of length <= bound, in canonical order.
  std::vector<Path> paths;
  std::vector<Path> cur;
  for (int v = 0; v < q.vertex_count(); ++v) cur.push_back(Path::trivial(v));
  for (std::size_t n = 0; n <= bound && !cur.empty(); ++n) {
    std::sort(cur.begin(), cur.end(), PathLess{});
    paths.insert(paths.end(), cur.begin(), cur.end());
    if (n == bound) break;
    std::vector<Path> next;
    for (const auto& w : cur)
      for (int a = 0; a < q.arrow_count(); ++a)
        if (auto e = compose(Path::arrow(q, a), w)) next.push_back(std::move(*e));
    cur = std::move(next);
  }
  for (std::size_t i = 0; i < paths.size(); ++i) columns_.emplace(paths[i], i);

  for (const auto& r : ideal.uniform_generators()) {
    std::size_t m = r.min_length();
    if (m > bound) continue;
    int rs = r.terms().begin()->first.source();
    int rt = r.terms().begin()->first.target();
    for (const auto& p : paths) {
      if (p.source() != rt || p.length() + m > bound) continue;
      for (const auto& qq : paths) {
        if (p.length() + qq.length() + m > bound) break;  // paths are sorted by length
        if (qq.target() != rs) continue;
        SparseRow row;
        for (const auto& [w, c] : r.terms()) {
          if (w.length() + p.length() + qq.length() > bound) continue;
          Path full = *compose(*compose(p, w), qq);
          row.emplace_back(columns_.at(full), c.value());
        }
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        insert(std::move(row));
      }
    }
  }
}

IdealOracle::SparseRow IdealOracle::to_row(const FreeElement& x) const {
  SparseRow row;
  for (const auto& [p, c] : x.terms()) {
    auto it = columns_.find(p);
    if (it == columns_.end()) throw std::invalid_argument("term longer than the oracle bound");
    row.emplace_back(it->second, c.value());
  }
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  return row;
}

void IdealOracle::reduce(SparseRow& row) const {
  const GF2m& f = GF2m::get(degree_);
  while (!row.empty()) {
    auto it = pivots_.find(row.front().first);
    if (it == pivots_.end()) return;
    std::uint8_t c = row.front().second;  // pivot rows are monic
    const SparseRow& piv = it->second;
    SparseRow merged;
    merged.reserve(row.size() + piv.size());
    std::size_t a = 0, b = 0;
    while (a < row.size() || b < piv.size()) {
      if (b == piv.size() || (a < row.size() && row[a].first > piv[b].first)) {
        merged.push_back(row[a++]);
      } else if (a == row.size() || piv[b].first > row[a].first) {
        merged.emplace_back(piv[b].first, f.mul(c, piv[b].second));
        ++b;
      } else {
        std::uint8_t v = row[a].second ^ f.mul(c, piv[b].second);
        if (v != 0) merged.emplace_back(row[a].first, v);
        ++a;
        ++b;
      }
    }
    row = std::move(merged);
  }
}

void IdealOracle::insert(SparseRow row) {
  reduce(row);
  if (row.empty()) return;
  const GF2m& f = GF2m::get(degree_);
  std::uint8_t inv = f.inv(row.front().second);
  for (auto& e : row) e.second = f.mul(inv, e.second);
  pivots_.emplace(row.front().first, std::move(row));
}

bool IdealOracle::contains(const FreeElement& x) const {
  if (x.degree() != degree_ || !(x.quiver() == *quiver_)) throw AmbientMismatch("element from a different ambient");
  auto row = to_row(x);
  reduce(row);
  return row.empty();
}

bool ideal_membership_oracle(const FreeElement& x, const IdealPresentation& ideal, std::size_t bound) {
  return IdealOracle(ideal, bound).contains(x);
}

}  // namespace pathalg
