#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "pathalg/catalog.hpp"
#include "pathalg/groups.hpp"
#include "pathalg/morphism.hpp"

using namespace pathalg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failures for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <class T>
  void equal(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream s;
      s << what << ": got " << got << ", want " << want;
      failures.push_back(s.str());
    }
  }
};

std::string str(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
    s += "]";
  }
  return s + "]";
}

std::string str(const FactorSequence& q) {
  std::string s = "[";
  for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
  return s + "]";
}

// Built algebras shared between criteria.
class Cache {
 public:
  const FiniteDimAlgebra& get(const CatalogKey& k) {
    auto name = k.to_string();
    auto it = store_.find(name);
    if (it == store_.end()) it = store_.emplace(name, build_algebra(k)).first;
    return it->second;
  }

 private:
  std::map<std::string, FiniteDimAlgebra> store_;
};

Cache cache;

std::array<std::size_t, 2> projective_dims(const FiniteDimAlgebra& a) {
  std::array<std::size_t, 2> out{};
  for (const auto& p : a.basis()) ++out.at(static_cast<std::size_t>(p.source()));
  return out;
}

std::string dims_str(const std::array<std::size_t, 2>& d) {
  return "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + ")";
}

CatalogKey key_of(int family, bool hat, int d, unsigned c, int degree = 1) {
  return hat ? CatalogKey::hat(family, d, c, degree) : CatalogKey::basic(family, d, c, degree);
}

void criterion1(Check& ck) {
  for (int d = 3; d <= 5; ++d) {
    const auto t0 = Clock::now();
    const std::size_t D = std::size_t{1} << (d - 2), H = 2 * D;
    for (unsigned c : {0u, 1u}) {
      struct Row {
        int family;
        bool hat;
        std::size_t dim;
        std::array<std::size_t, 2> proj;
      };
      for (const Row& r : {Row{1, false, 9 * D + 1, {6 * D, 1 + 3 * D}}, Row{2, false, 9 + D, {6, 3 + D}},
                           Row{1, true, 9 * H + 2, {6 * H, 2 + 3 * H}}, Row{2, true, 18 + H, {12, 6 + H}}}) {
        const CatalogKey k = key_of(r.family, r.hat, d, c);
        const FiniteDimAlgebra& a = cache.get(k);
        ck.equal(a.dim(), r.dim, k.to_string() + " dim");
        ck.equal(dims_str(projective_dims(a)), dims_str(r.proj), k.to_string() + " projectives");
      }
    }
    const double secs = seconds_since(t0);
    const double limit = d <= 4 ? 10.0 : 60.0;
    ck.expect(secs < limit, "d=" + std::to_string(d) + " took " + std::to_string(secs) + " s");
    char buf[64];
    std::snprintf(buf, sizeof buf, "d=%d %.1fs", d, secs);
    ck.notes.push_back(buf);
  }
}

void criterion2(Check& ck) {
  for (int d = 3; d <= 5; ++d)
    for (int family : {1, 2})
      for (unsigned c : {0u, 1u}) {
        auto p = projective_dims(cache.get(key_of(family, false, d, c)));
        auto ph = projective_dims(cache.get(key_of(family, true, d, c)));
        for (std::size_t v = 0; v < 2; ++v)
          ck.equal(ph[v], 2 * p[v], key_of(family, true, d, c).to_string() + " P(" + std::to_string(v) + ")");
      }
}

void criterion3(Check& ck) {
  for (int d = 3; d <= 5; ++d)
    for (int family : {1, 2})
      for (unsigned c : {0u, 1u}) {
        const CatalogKey k = key_of(family, false, d, c);
        const FiniteDimAlgebra& a = cache.get(k);
        const std::size_t D = std::size_t{1} << (d - 2);
        const std::array<std::size_t, 2> loewy =
            family == 1 ? std::array<std::size_t, 2>{3 * D + 1, 3 * D + 1}
                        : std::array<std::size_t, 2>{4, d == 3 ? std::size_t{4} : D + 1};
        for (int v = 0; v < 2; ++v) {
          const std::string tag = k.to_string() + " P(" + std::to_string(v) + ")";
          Representation p = projective(a, v);
          ck.equal(radical_series(p).size() - 1, loewy[static_cast<std::size_t>(v)], tag + " Loewy length");
          ck.equal(socle_series(p).at(1).dim(), std::size_t{1}, tag + " socle dimension");
          const Vec w = a.coords(parse_element(a.quiver(), 1, socle_word(family, d, v)));
          bool killed = !is_zero(w);
          for (int z = 0; z < a.quiver().arrow_count(); ++z) killed = killed && is_zero(a.left_arrow(z).apply(a.field(), w));
          ck.expect(killed, tag + " socle word " + socle_word(family, d, v) + " is not a nonzero socle element");
          ck.expect(a.basis().size() == w.size(), tag + " coordinates");
          // the word lies in A e_v
          bool in_column = true;
          for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] != 0 && a.basis()[i].source() != v) in_column = false;
          ck.expect(in_column, tag + " socle word leaves A e_v");
        }
      }
}

void criterion4(Check& ck) {
  for (int d = 3; d <= 5; ++d)
    for (int family : {1, 2})
      for (bool hat : {false, true})
        for (unsigned c : {0u, 1u}) {
          const CatalogKey k = key_of(family, hat, d, c);
          ck.equal(str(cartan_matrix(cache.get(k))), str(cartan_from_decomposition(decomposition(family, hat, d))),
                   k.to_string() + " Cartan");
        }
  ck.equal(str(cartan_matrix(cache.get(key_of(1, false, 3, 0)))), std::string("[[8,4],[4,3]]"), "Lambda1 d=3 spot value");
  ck.equal(str(cartan_matrix(cache.get(key_of(2, true, 3, 0)))), std::string("[[8,4],[4,6]]"), "Lambda2hat d=3 spot value");
}

void criterion5(Check& ck) {
  const auto t0 = Clock::now();
  UniserialOptions opt;
  opt.budget = std::uint64_t{1} << 22;
  std::uint64_t max_nodes = 0;
  for (int degree : {1, 2})
    for (int family : {1, 2})
      for (unsigned c = 0; c < (1u << degree); ++c) {
        const CatalogKey k = key_of(family, false, 3, c, degree);
        const FiniteDimAlgebra& a = cache.get(k);
        for (const auto& e : basic_battery(family, 3)) {
          UniserialResult r = uniserial_search(a, e.sequence, opt);
          max_nodes = std::max(max_nodes, r.nodes);
          ck.expect(r.exists == e.expected, k.to_string() + " " + str(e.sequence));
        }
      }
  for (int degree : {1, 2})
    for (int family : {1, 2})
      for (unsigned c = 0; c < (1u << degree); ++c) {
        const CatalogKey k = key_of(family, true, 3, c, degree);
        const FiniteDimAlgebra& a = cache.get(k);
        for (const auto& e : hat_battery(family, 3)) {
          Representation m = string_module(a, parse_path(a.quiver(), *e.word));
          ck.expect(!m.violated_relation() && is_uniserial(m) && factor_sequence(m) == e.sequence,
                    k.to_string() + " M_" + *e.word);
        }
      }
  const double secs = seconds_since(t0);
  ck.expect(secs < 120.0, "battery took " + std::to_string(secs) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.1fs, max %llu nodes", secs, static_cast<unsigned long long>(max_nodes));
  ck.notes.push_back(buf);
}

void criterion6(Check& ck) {
  for (int family : {1, 2})
    for (int d : {3, 4})
      for (unsigned chat : {0u, 1u})
        for (unsigned c1 : {0u, 1u}) {
          // kQ2/J with c1 = 0 is infinite-dimensional
          if (family == 2 && c1 == 0) continue;
          const FiniteDimAlgebra& src = cache.get(key_of(family, true, d, chat));
          const FiniteDimAlgebra& tgt = cache.get(CatalogKey::j(family, d, c1));
          const std::string tag = key_of(family, true, d, chat).to_string() + " -> " + CatalogKey::j(family, d, c1).to_string();
          GeneratorMap f = natural_map(src, tgt);
          ck.expect(check_well_defined(f).ok, tag + " not well defined");
          ck.expect(rad_square_containment(f).contained, tag + " kernel not inside rad^2");
          ck.expect(kernel_equals_ideal(f, tgt.presentation()), tag + " kernel differs from the ideal");
          const std::size_t basic_dim = cache.get(key_of(family, false, d, chat)).dim();
          ck.equal(kernel_basis(f).dim(), src.dim() - basic_dim, tag + " kernel dimension");
        }
}

void criterion7(Check& ck) {
  for (int family : {1, 2}) {
    for (int degree : {1, 2})
      for (unsigned c1 = 0; c1 < (1u << degree); ++c1) {
        if (family == 2 && c1 == 0) continue;
        const CatalogKey k = CatalogKey::j(family, 3, c1, 1, degree);
        ck.expect(find_symmetric_form(cache.get(k)).status == FormStatus::Found, k.to_string() + " has no symmetric form");
      }
    const std::vector<unsigned> c1s = family == 1 ? std::vector<unsigned>{0, 1} : std::vector<unsigned>{1, 2};
    for (unsigned c1 : c1s)
      for (unsigned last : {2u, 3u}) {
        const CatalogKey k = CatalogKey::j(family, 3, c1, last, 2);
        auto r = find_symmetric_form(cache.get(k));
        ck.expect(r.status == FormStatus::NotFound, k.to_string() + " has a symmetric form or the search was sampled");
      }
  }
}

void criterion8(Check& ck) {
  for (int family : {1, 2})
    for (int d : {3, 4}) {
      const FiniteDimAlgebra& src = cache.get(key_of(family, false, d, 0, 2));
      for (unsigned c1 = 0; c1 < 4; ++c1) {
        if (family == 2 && c1 == 0) continue;
        const CatalogKey k = CatalogKey::j(family, d, c1, 1, 2);
        GeneratorMap f(src, cache.get(k), closing_map_images(family, d, c1, 2));
        ck.expect(check_well_defined(f).ok && is_isomorphism(f), k.to_string() + " closing map is not an isomorphism");
      }
    }
}

void criterion9(Check& ck) {
  const auto t0 = Clock::now();
  for (int q : {3, 5, 7}) {
    GroupChecks g = check_groups(q);
    const std::size_t n = static_cast<std::size_t>(q), pgl = n * (n * n - 1);
    std::size_t two_part = 1;
    while ((n * n - 1) % (2 * two_part) == 0) two_part *= 2;
    const std::string tag = "q=" + std::to_string(q);
    ck.equal(g.pgl_order, pgl, tag + " |PGL2|");
    ck.expect(g.pgl_sylow.cls == TwoGroupClass::Dihedral && g.pgl_sylow.order == two_part,
              tag + " PGL2 Sylow " + g.pgl_sylow.to_string());
    ck.equal(g.ghat_order, 2 * pgl, tag + " |Ghat|");
    ck.expect(g.ghat_sylow.cls == TwoGroupClass::GeneralizedQuaternion && g.ghat_sylow.involutions == 1 &&
                  g.ghat_sylow.order == 2 * two_part,
              tag + " Ghat Sylow " + g.ghat_sylow.to_string());
    ck.equal(g.ghat_center, std::size_t{2}, tag + " |Z(Ghat)|");
    ck.equal(g.quotient_order, pgl, tag + " |Ghat/Z|");
    for (const auto& f : g.failures) ck.failures.push_back(tag + " " + f);
  }
  const double secs = seconds_since(t0);
  ck.expect(secs < 60.0, "groups took " + std::to_string(secs) + " s");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", secs);
  ck.notes.push_back(buf);
}

std::vector<Path> paths_up_to(const Quiver& q, std::size_t max_len) {
  std::vector<Path> out, level;
  for (int v = 0; v < q.vertex_count(); ++v) level.push_back(Path::trivial(v));
  for (std::size_t k = 0; k <= max_len; ++k) {
    out.insert(out.end(), level.begin(), level.end());
    std::vector<Path> next;
    for (const auto& p : level)
      for (auto& x : enumerate_normal_extensions(q, p, {})) next.push_back(std::move(x));
    level = std::move(next);
  }
  return out;
}

void criterion10(Check& ck) {
  std::vector<CatalogKey> keys;
  for (int family : {1, 2}) {
    for (unsigned c : {0u, 1u}) {
      keys.push_back(key_of(family, false, 3, c));
      keys.push_back(key_of(family, true, 3, c));
    }
    for (unsigned c1 : {0u, 1u})
      for (unsigned last : {0u, 1u})
        if (family == 1 || c1 != 0) keys.push_back(CatalogKey::j(family, 3, c1, last));
  }
  std::size_t members = 0, total = 0;
  for (const auto& k : keys) {
    const FiniteDimAlgebra& a = cache.get(k);
    const Quiver& q = a.quiver();
    const IdealPresentation& ideal = a.presentation();
    const std::size_t bound = std::max<std::size_t>(10, a.loewy_length() - 1);
    IdealOracle oracle(ideal, bound);
    std::mt19937 rng(static_cast<unsigned>(std::hash<std::string>{}(k.to_string())));
    const auto pool = paths_up_to(q, 10);
    const auto gens = ideal.uniform_generators();
    for (int t = 0; t < 200; ++t) {
      FreeElement x(q, 1);
      if (t % 2 == 0) {
        // random paths plus, usually, a normal word
        for (int j = 0; j < 3; ++j) x.add_term(pool[rng() % pool.size()], FieldElement::one(1));
        if (t % 8 != 0) x.add_term(a.basis()[rng() % a.dim()], FieldElement::one(1));
      } else {
        // a combination of p r s, kept within length 10, plus noise half the time
        for (int j = 0; j < 3; ++j) {
          const FreeElement& r = gens[rng() % gens.size()];
          FreeElement p(q, pool[rng() % pool.size()], FieldElement::one(1));
          FreeElement s(q, pool[rng() % pool.size()], FieldElement::one(1));
          FreeElement y = p * r * s;
          if (!y.is_zero() && y.max_length() <= 10) x += y;
        }
        if (t % 4 == 1) x.add_term(pool[rng() % pool.size()], FieldElement::one(1));
      }
      const bool by_gb = is_zero(a.coords(x));
      const bool by_oracle = oracle.contains(x);
      members += by_gb ? 1 : 0;
      ++total;
      ck.expect(by_gb == by_oracle, k.to_string() + " disagrees on " + x.to_string());
    }
  }
  ck.notes.push_back(std::to_string(keys.size()) + " ideals, " + std::to_string(total) + " elements, " +
                     std::to_string(members) + " in the ideal");
  ck.expect(members > total / 10, "too few ideal members sampled");
  ck.expect(members < total - total / 10, "too few non-members sampled");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"dimension table", criterion1},
      {"hatted projectives have twice the dimension", criterion2},
      {"Loewy lengths and socles of projectives", criterion3},
      {"Cartan matrices equal D^T D", criterion4},
      {"uniserial battery", criterion5},
      {"kernel of the natural surjection", criterion6},
      {"symmetric forms on kQ/J", criterion7},
      {"closing maps are isomorphisms", criterion8},
      {"groups and Sylow 2-subgroups", criterion9},
      {"Groebner normal form against the dense oracle", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check ck;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(ck);
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    std::string notes;
    for (const auto& n : ck.notes) notes += (notes.empty() ? "" : "; ") + n;
    std::printf("criterion %2zu %s  %s  [%.1fs%s%s]\n", i + 1, ck.failures.empty() ? "PASS" : "FAIL", criteria[i].first,
                secs, notes.empty() ? "" : "; ", notes.c_str());
    for (const auto& f : ck.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    if (!ck.failures.empty()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
