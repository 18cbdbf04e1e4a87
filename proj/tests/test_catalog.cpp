#include <doctest.h>

#include <atomic>
#include <fstream>
#include <map>
#include <sstream>

#include "pathalg/catalog.hpp"

using namespace pathalg;

namespace {

// Every key with d <= 5 over GF(2) or GF(4), indexed by its printed name.
std::map<std::string, CatalogKey> key_index() {
  std::map<std::string, CatalogKey> out;
  for (int family : {1, 2})
    for (int d = 3; d <= 5; ++d)
      for (int m : {1, 2})
        for (unsigned x = 0; x < (1u << m); ++x) {
          for (auto k : {CatalogKey::basic(family, d, x, m), CatalogKey::hat(family, d, x, m)}) out[k.to_string()] = k;
          for (unsigned y = 0; y < (1u << m); ++y) {
            auto k = CatalogKey::j(family, d, x, y, m);
            out[k.to_string()] = k;
          }
        }
  return out;
}

std::vector<std::array<long, 2>> rows_of(const std::vector<std::array<long, 2>>& head, std::array<long, 2> last, std::size_t n) {
  auto out = head;
  for (std::size_t i = 0; i < n; ++i) out.push_back(last);
  return out;
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("generators match the hand-written golden file") {
    std::ifstream in(std::string(GOLDEN_DIR) + "/catalog_generators.txt");
    REQUIRE(in.good());
    const auto index = key_index();
    std::vector<std::pair<std::string, std::vector<std::string>>> blocks;
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) {
        continue;
      } else if (line[0] == '#') {
        continue;
      } else if (line[0] == 'L' || line[0] == 'J') {
        blocks.push_back({line, {}});
      } else {
        REQUIRE_FALSE(blocks.empty());
        blocks.back().second.push_back(line);
      }
    }
    REQUIRE(blocks.size() == 11);
    for (const auto& [name, lines] : blocks) {
      CAPTURE(name);
      auto it = index.find(name);
      REQUIRE(it != index.end());
      const CatalogKey& key = it->second;
      IdealPresentation p = build(key);
      REQUIRE(p.generators().size() == lines.size());
      for (std::size_t i = 0; i < lines.size(); ++i)
        CHECK(p.generators()[i] == parse_element(p.quiver(), key.degree, lines[i]));
    }
  }

  TEST_CASE("key names") {
    CHECK(CatalogKey::basic(1, 3, 0).to_string() == "L1(d=3,c=0,gf2)");
    CHECK(CatalogKey::hat(2, 4, 2, 2).to_string() == "L2hat(d=4,chat=w,gf4)");
    CHECK(CatalogKey::j(1, 3, 0, 2, 2).to_string() == "J1(d=3,c1=0,c2=w,gf4)");
    CHECK(CatalogKey::j(2, 5, 3, 1, 2).to_string() == "J2(d=5,c1=w2,c3=1,gf4)");
    CHECK(CatalogKey::basic(1, 3, 5, 3).to_string() == "L1(d=3,c=5,gf8)");
  }

  TEST_CASE("parameter names") {
    CHECK(param_name(2, 2) == "w");
    CHECK(param_name(3, 2) == "w2");
    CHECK(param_name(2, 1) == "2");
    CHECK(parse_param("w", 2) == 2);
    CHECK(parse_param("w2", 2) == 3);
    CHECK(parse_param("1", 1) == 1);
    CHECK_THROWS_AS(parse_param("w", 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_param("4", 2), std::invalid_argument);
  }

  TEST_CASE("key validation") {
    CHECK_NOTHROW(CatalogKey::basic(1, 3, 1).validate());
    CHECK_THROWS_AS(CatalogKey::basic(3, 3, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(CatalogKey::basic(1, 2, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(CatalogKey::basic(1, 3, 2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(CatalogKey::hat(2, 3, 0, 0).validate(), std::invalid_argument);
    auto k = CatalogKey::j(1, 3, 1);
    k.c3 = 1;
    CHECK_THROWS_AS(k.validate(), std::invalid_argument);
    k = CatalogKey::j(2, 3, 1);
    k.c = 1;
    CHECK_THROWS_AS(k.validate(), std::invalid_argument);
    k = CatalogKey::basic(1, 3, 0);
    k.c1 = 1;
    CHECK_THROWS_AS(k.validate(), std::invalid_argument);
    CHECK_THROWS_AS(build(CatalogKey::j(1, 3, 0, 4, 2)), std::invalid_argument);
  }

  TEST_CASE("decomposition matrices") {
    const std::vector<std::array<long, 2>> head{{1, 0}, {1, 0}, {1, 1}, {1, 1}};
    CHECK(decomposition(1, false, 3).expanded() == rows_of(head, {2, 1}, 1));
    CHECK(decomposition(2, false, 5).expanded() == rows_of(head, {0, 1}, 7));
    auto h1 = head;
    h1.push_back({0, 1});
    CHECK(decomposition(1, true, 4).expanded() == rows_of(h1, {2, 1}, 7));
    auto h2 = head;
    h2.push_back({2, 1});
    CHECK(decomposition(2, true, 3).expanded() == rows_of(h2, {0, 1}, 3));
    CHECK(cartan_from_decomposition(decomposition(1, false, 3)) == IntMatrix{{8, 4}, {4, 3}});
    CHECK(cartan_from_decomposition(decomposition(2, true, 3)) == IntMatrix{{8, 4}, {4, 6}});
    CHECK_THROWS(decomposition(3, false, 3));
  }

  TEST_CASE("expected shapes follow the closed forms") {
    for (int d = 3; d <= 6; ++d) {
      const std::size_t D = std::size_t{1} << (d - 2), H = 2 * D;
      CHECK(expected_shape(1, false, d).dim == 9 * D + 1);
      CHECK(expected_shape(2, false, d).dim == 9 + D);
      CHECK(expected_shape(1, true, d).dim == 9 * H + 2);
      CHECK(expected_shape(2, true, d).dim == 18 + H);
      for (int f : {1, 2})
        for (int v : {0, 1})
          CHECK(expected_shape(f, true, d).projective_dims[static_cast<std::size_t>(v)] ==
                2 * expected_shape(f, false, d).projective_dims[static_cast<std::size_t>(v)]);
      // the Cartan matrix sums to the dimension
      for (int f : {1, 2})
        for (bool hat : {false, true}) {
          long total = 0;
          for (const auto& row : cartan_from_decomposition(decomposition(f, hat, d)))
            for (long x : row) total += x;
          CHECK(static_cast<std::size_t>(total) == expected_shape(f, hat, d).dim);
        }
    }
    CHECK(expected_shape(2, false, 3).projective_loewy == std::array<std::size_t, 2>{4, 4});
    CHECK(expected_shape(2, false, 5).projective_loewy == std::array<std::size_t, 2>{4, 9});
    CHECK(expected_shape(1, false, 4).projective_loewy == std::array<std::size_t, 2>{13, 13});
  }

  TEST_CASE("named words") {
    CHECK(socle_word(1, 4, 0) == "(g b a)^4");
    CHECK(socle_word(2, 3, 1) == "e^2");
    CHECK(kernel_words(1, 3).size() == 6);
    CHECK(kernel_words(2, 4).back() == "e^5");
    FiniteDimAlgebra j = build_algebra(CatalogKey::j(2, 4, 1));
    for (const auto& w : kernel_words(2, 4)) CHECK(is_zero(j.coords(parse_element(j.quiver(), 1, w))));
  }

  TEST_CASE("battery contents") {
    auto b1 = basic_battery(1, 3);
    REQUIRE(b1.size() == 3);
    CHECK(b1[1].sequence == FactorSequence{0, 0, 1, 0, 0, 1, 0});
    CHECK(b1[2].sequence == FactorSequence{0, 1, 0, 0, 1, 0, 0});
    CHECK(basic_battery(2, 3).size() == 4);
    CHECK(basic_battery(2, 4).size() == 3);
    auto h2 = hat_battery(2, 3);
    REQUIRE(h2.size() == 4);
    CHECK(h2[0].sequence == FactorSequence{1, 1, 1});
    for (const auto& e : h2) CHECK(e.expected);
    CHECK(hat_battery(1, 4).back().word == std::optional<std::string>("(a g b)^4"));
  }

  TEST_CASE("J2 with c1 = 0 is not finite-dimensional") {
    CHECK_THROWS_AS(build_algebra(CatalogKey::j(2, 3, 0)), NotFiniteDimensional);
    CHECK_THROWS_AS(closing_map_images(2, 3, 0, 1), std::invalid_argument);
  }

  TEST_CASE("parallel_for visits each index once and rethrows") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }),
                    std::runtime_error);
    int serial = 0;
    parallel_for(5, 1, [&](std::size_t) { ++serial; });
    CHECK(serial == 5);
  }

  TEST_CASE("default grids") {
    CHECK(default_grid(1) == std::vector<unsigned>{0, 1});
    CHECK(default_grid(2) == std::vector<unsigned>{0, 1, 2});
  }

  TEST_CASE("verification pipeline at d = 3") {
    for (int family : {1, 2})
      for (int degree : {1, 2}) {
        VerifyOptions o;
        o.family = family;
        o.degree = degree;
        auto r = verify_theorem(o);
        CAPTURE(r.steps_json().dump());
        CHECK(r.passed());
        CHECK(r.first_failure() == 0);
        REQUIRE(r.steps.size() == 8);
        for (int i = 0; i < 8; ++i) CHECK(r.steps[static_cast<std::size_t>(i)].step == i + 1);
        for (const auto& s : r.steps_json()) CHECK(s["status"] == "pass");
      }
  }

  TEST_CASE("injected parameter fails the symmetry step") {
    for (int family : {1, 2}) {
      VerifyOptions o;
      o.family = family;
      o.inject = 2;
      auto r = verify_theorem(o);
      CHECK_FALSE(r.passed());
      CHECK(r.first_failure() == 7);
      CHECK(r.steps.size() == 7);
      CHECK(r.steps.back().witness.has_value());
    }
  }

  TEST_CASE("pipeline options are validated") {
    VerifyOptions o;
    o.d = 6;
    CHECK_THROWS_AS(verify_theorem(o), std::invalid_argument);
    o = {};
    o.family = 2;
    o.c1_grid = {0};
    CHECK_THROWS_AS(verify_theorem(o), std::invalid_argument);
    o = {};
    o.chat_grid = {2};
    CHECK_THROWS_AS(verify_theorem(o), std::invalid_argument);
  }
}
