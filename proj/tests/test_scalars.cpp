#include <doctest.h>

#include "pathalg/scalars.hpp"

using namespace pathalg;

namespace {

// Carry-less multiplication reduced by the modulus, written independently
// of the table-driven field.
unsigned slow_mul(unsigned a, unsigned b, unsigned modulus, int m) {
  unsigned r = 0;
  for (int i = 0; i < m; ++i)
    if (b >> i & 1u) r ^= a << i;
  for (int i = 2 * m - 2; i >= m; --i)
    if (r >> i & 1u) r ^= modulus << (i - m);
  return r;
}

}  // namespace

TEST_SUITE("scalars") {
  TEST_CASE("GF(4) multiplication table") {
    const GF2m& f = GF2m::get(2);
    // 0, 1, w, w^2 = w + 1
    const unsigned table[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    for (unsigned a = 0; a < 4; ++a)
      for (unsigned b = 0; b < 4; ++b) CHECK(f.mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) == table[a][b]);
  }

  TEST_CASE("moduli table") {
    CHECK(conway_modulus(1) == 0x3);
    CHECK(conway_modulus(2) == 0x7);
    CHECK(conway_modulus(3) == 0xB);
    CHECK(conway_modulus(4) == 0x13);
    CHECK(conway_modulus(8) == 0x11D);
    CHECK_THROWS_AS(GF2m::get(9), FieldError);
    CHECK_THROWS_AS(GF2m::get(0), FieldError);
  }

  TEST_CASE("table multiplication agrees with carry-less reduction") {
    for (int m = 1; m <= kMaxFieldDegree; ++m) {
      const GF2m& f = GF2m::get(m);
      for (unsigned a = 0; a < f.order(); ++a)
        for (unsigned b = 0; b < f.order(); ++b)
          REQUIRE(f.mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) == slow_mul(a, b, f.modulus(), m));
    }
  }

  TEST_CASE("field axioms hold exhaustively for small degrees") {
    for (int m = 1; m <= 4; ++m) {
      const GF2m& f = GF2m::get(m);
      const auto n = f.order();
      for (unsigned a = 0; a < n; ++a) {
        const auto x = static_cast<std::uint8_t>(a);
        if (x != 0) CHECK(f.mul(x, f.inv(x)) == 1);
        for (unsigned b = 0; b < n; ++b)
          for (unsigned c = 0; c < n; ++c) {
            const auto y = static_cast<std::uint8_t>(b), z = static_cast<std::uint8_t>(c);
            REQUIRE(f.mul(x, f.mul(y, z)) == f.mul(f.mul(x, y), z));
            REQUIRE(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
          }
      }
    }
  }

  TEST_CASE("multiplicative group is cyclic of order 2^m - 1 generated by x") {
    for (int m = 2; m <= kMaxFieldDegree; ++m) {
      const GF2m& f = GF2m::get(m);
      unsigned period = 0;
      std::uint8_t y = 1;
      do {
        y = f.mul(y, 2);
        ++period;
      } while (y != 1);
      CHECK(period == f.order() - 1);
      CHECK(f.pow(2, f.order() - 1) == 1);
    }
  }

  TEST_CASE("inverse of zero throws") { CHECK_THROWS_AS(GF2m::get(3).inv(0), FieldError); }

  TEST_CASE("FieldElement parse and aliases") {
    CHECK(FieldElement::parse("w", 2).value() == 2);
    CHECK(FieldElement::parse("w2", 2).value() == 3);
    CHECK(FieldElement::parse("3", 2).value() == 3);
    CHECK_THROWS_AS(FieldElement::parse("w", 1), FieldError);
    CHECK_THROWS_AS(FieldElement::parse("4", 2), FieldError);
    CHECK_THROWS_AS(FieldElement::parse("x", 3), FieldError);
  }

  TEST_CASE("FieldElement arithmetic") {
    FieldElement w(2, 2);
    CHECK(w * w == FieldElement(3, 2));
    CHECK(w * w * w == FieldElement::one(2));
    CHECK(w + w == FieldElement::zero(2));
    CHECK(w.inv() == FieldElement(3, 2));
    CHECK(w.pow(4) == w);
    CHECK_THROWS(FieldElement(1, 2) + FieldElement(1, 3));
    CHECK(all_elements(3).size() == 8);
  }
}
