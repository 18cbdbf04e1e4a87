#include <doctest.h>

#include "pathalg/catalog.hpp"
#include "pathalg/modrep.hpp"

using namespace pathalg;

namespace {

std::vector<FactorSequence> all_sequences(std::size_t max_len) {
  std::vector<FactorSequence> out, level{{0}, {1}};
  for (std::size_t n = 1; n <= max_len; ++n) {
    out.insert(out.end(), level.begin(), level.end());
    std::vector<FactorSequence> next;
    for (const auto& s : level)
      for (int v : {0, 1}) {
        auto t = s;
        t.push_back(v);
        next.push_back(std::move(t));
      }
    level = std::move(next);
  }
  return out;
}

}  // namespace

TEST_SUITE("modrep") {
  TEST_CASE("projectives have the Cartan column dimensions") {
    for (const auto& key : {CatalogKey::basic(1, 3, 1), CatalogKey::hat(2, 3, 0)}) {
      FiniteDimAlgebra a = build_algebra(key);
      IntMatrix c = cartan_matrix(a);
      for (int v = 0; v < 2; ++v) {
        Representation p = projective(a, v);
        CHECK_FALSE(p.violated_relation().has_value());
        CHECK(static_cast<long>(p.dim()) == c[0][static_cast<std::size_t>(v)] + c[1][static_cast<std::size_t>(v)]);
        auto vd = p.vertex_dims();
        CHECK(static_cast<long>(vd[0]) == c[0][static_cast<std::size_t>(v)]);
      }
    }
  }

  TEST_CASE("projective radical layers") {
    FiniteDimAlgebra a = build_algebra(CatalogKey::basic(2, 3, 0));
    auto layers = composition_layers(projective(a, 0));
    REQUIRE(layers.size() == 4);
    CHECK(layers.front() == std::vector<std::size_t>{1, 0});
    CHECK(layers.back() == std::vector<std::size_t>{1, 0});
    CHECK(radical_series(projective(a, 1)).size() == 5);
    CHECK(socle_series(projective(a, 0)).back().dim() == 6);
  }

  TEST_CASE("simple modules are uniserial") {
    FiniteDimAlgebra a = build_algebra(CatalogKey::basic(1, 3, 0));
    Representation s = simple_module(a, 1);
    CHECK(s.dim() == 1);
    CHECK(is_uniserial(s));
    CHECK(factor_sequence(s) == FactorSequence{1});
    CHECK_THROWS(simple_module(a, 2));
  }

  TEST_CASE("string modules of the hatted algebra") {
    FiniteDimAlgebra a = build_algebra(CatalogKey::hat(1, 3, 1));
    const Quiver& q = a.quiver();
    for (const char* w : {"b g", "g b a", "a g b", "(g b a)^2"}) {
      Path p = parse_path(q, w);
      Representation m = string_module(a, p);
      CHECK_FALSE(m.violated_relation().has_value());
      CHECK(is_uniserial(m));
      CHECK(factor_sequence(m) == p.vertex_sequence(q));
    }
  }

  TEST_CASE("string module preconditions") {
    FiniteDimAlgebra a = build_algebra(CatalogKey::basic(1, 3, 0));
    const Quiver& q = a.quiver();
    try {
      string_module(a, parse_path(q, "b g"));
      FAIL("expected a precondition error");
    } catch (const StringModulePrecondition& e) {
      CHECK(e.socle_level() == 0);
    }
    CHECK_THROWS_AS(string_module(a, parse_path(q, "(g b a)^2")), StringModulePrecondition);
  }

  TEST_CASE("representations are validated") {
    FiniteDimAlgebra a = build_algebra(CatalogKey::basic(1, 3, 0));
    std::vector<Matrix> three(3, Matrix(2, 2));
    CHECK_THROWS(Representation(a, {0, 1}, std::vector<Matrix>(2, Matrix(2, 2))));
    CHECK_THROWS(Representation(a, {0, 2}, three));
    CHECK_THROWS(Representation(a, {0, 1}, std::vector<Matrix>(3, Matrix(3, 3))));
    // a: 0 -> 0 cannot map a vector at vertex 0 to vertex 1
    auto bad = three;
    bad[0](1, 0) = 1;
    CHECK_THROWS(Representation(a, {0, 1}, bad));
    // b g acts nontrivially on this two-dimensional b-g cycle
    auto cyc = three;
    cyc[1](1, 0) = 1;
    cyc[2](0, 1) = 1;
    Representation m(a, {0, 1}, cyc);
    CHECK(m.violated_relation().has_value());
    CHECK_THROWS_AS(radical_series(m), ModuleAxiomError);
    CHECK_THROWS_AS(socle_series(m), ModuleAxiomError);
  }

  TEST_CASE("uniserial search answers and witnesses") {
    FiniteDimAlgebra l1 = build_algebra(CatalogKey::basic(1, 3, 0));
    FiniteDimAlgebra h1 = build_algebra(CatalogKey::hat(1, 3, 0));
    CHECK_FALSE(uniserial_exists(l1, {1, 0, 1}));
    auto r = uniserial_search(h1, {1, 0, 1});
    REQUIRE(r.exists);
    REQUIRE(r.witness.has_value());
    CHECK(is_uniserial(*r.witness));
    CHECK(factor_sequence(*r.witness) == FactorSequence{1, 0, 1});
    CHECK(uniserial_exists(l1, {0}));
    CHECK(uniserial_exists(l1, {0, 0}));
    CHECK_THROWS(uniserial_search(l1, {}));
    CHECK_THROWS(uniserial_search(l1, {0, 3}));
  }

  TEST_CASE("search budget is enforced") {
    FiniteDimAlgebra l1 = build_algebra(CatalogKey::basic(1, 4, 0, 2));
    UniserialOptions o;
    o.budget = 1;
    auto seq = parse_path(l1.quiver(), "(g b a)^4").vertex_sequence(l1.quiver());
    CHECK_THROWS_AS(uniserial_search(l1, seq, o), SearchBudgetExceeded);
  }

  TEST_CASE("search agrees with the string checker on all short sequences") {
    for (const auto& key : {CatalogKey::basic(1, 3, 0), CatalogKey::basic(1, 3, 1), CatalogKey::basic(2, 3, 0),
                            CatalogKey::basic(2, 4, 1, 2)}) {
      FiniteDimAlgebra a = build_algebra(key);
      for (const auto& seq : all_sequences(5)) {
        auto strings = uniserial_exists_by_strings(a, seq);
        REQUIRE(strings.has_value());
        CHECK_MESSAGE(uniserial_exists(a, seq) == *strings, key.to_string());
      }
    }
  }

  TEST_CASE("string checker does not apply to the hatted algebras") {
    FiniteDimAlgebra a = build_algebra(CatalogKey::hat(2, 3, 0));
    CHECK_FALSE(uniserial_exists_by_strings(a, {1, 1, 1}).has_value());
  }
}
