#include "pathalg/scalars.hpp"

#include <array>
#include <charconv>
#include <memory>
#include <mutex>
#include <ostream>

namespace pathalg {

namespace {

// Conway polynomials C(2, m), m = 1..8. Do not change: serialized
// field elements depend on this table.
constexpr std::array<unsigned, kMaxFieldDegree + 1> kModuli = {
    0,
    0x3,    // x + 1
    0x7,    // x^2 + x + 1
    0xB,    // x^3 + x + 1
    0x13,   // x^4 + x + 1
    0x25,   // x^5 + x^2 + 1
    0x5B,   // x^6 + x^4 + x^3 + x + 1
    0x83,   // x^7 + x + 1
    0x11D,  // x^8 + x^4 + x^3 + x^2 + 1
};

unsigned poly_mulmod(unsigned a, unsigned b, unsigned modulus, int degree) {
  unsigned r = 0;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << degree)) a ^= modulus;
  }
  return r;
}

}  // namespace

unsigned conway_modulus(int degree) {
  if (degree < 1 || degree > kMaxFieldDegree)
    throw FieldError("unsupported extension degree " + std::to_string(degree));
  return kModuli[static_cast<std::size_t>(degree)];
}

GF2m::GF2m(int degree)
    : degree_(degree), order_(1u << degree), modulus_(conway_modulus(degree)) {
  mul_.resize(static_cast<std::size_t>(order_) * order_);
  inv_.assign(order_, 0);
  for (unsigned a = 0; a < order_; ++a) {
    for (unsigned b = 0; b < order_; ++b) {
      unsigned p = poly_mulmod(a, b, modulus_, degree_);
      mul_[a * order_ + b] = static_cast<std::uint8_t>(p);
      if (p == 1) inv_[a] = static_cast<std::uint8_t>(b);
    }
  }
}

const GF2m& GF2m::get(int degree) {
  static std::array<std::unique_ptr<GF2m>, kMaxFieldDegree + 1> fields;
  static std::once_flag flag;
  std::call_once(flag, [] {
    for (int m = 1; m <= kMaxFieldDegree; ++m) fields[static_cast<std::size_t>(m)].reset(new GF2m(m));
  });
  if (degree < 1 || degree > kMaxFieldDegree)
    throw FieldError("unsupported extension degree " + std::to_string(degree));
  return *fields[static_cast<std::size_t>(degree)];
}

std::uint8_t GF2m::inv(std::uint8_t a) const {
  if (a == 0) throw FieldError("inverse of zero");
  return inv_[a];
}

std::uint8_t GF2m::pow(std::uint8_t a, unsigned long long n) const noexcept {
  std::uint8_t result = 1;
  std::uint8_t base = a;
  while (n != 0) {
    if (n & 1ull) result = mul(result, base);
    base = mul(base, base);
    n >>= 1;
  }
  return result;
}

FieldElement::FieldElement(unsigned value, int degree) {
  const GF2m& f = GF2m::get(degree);
  if (!f.contains(value))
    throw FieldError("value " + std::to_string(value) + " out of range for GF(2^" +
                     std::to_string(degree) + ")");
  value_ = static_cast<std::uint8_t>(value);
  degree_ = static_cast<std::uint8_t>(degree);
}

FieldElement FieldElement::inv() const { return {field().inv(value_), degree_}; }

FieldElement FieldElement::pow(unsigned long long n) const {
  return {field().pow(value_, n), degree_};
}

FieldElement operator+(FieldElement a, FieldElement b) {
  if (a.degree_ != b.degree_) throw FieldError("mismatched extension degrees");
  FieldElement r;
  r.value_ = a.value_ ^ b.value_;
  r.degree_ = a.degree_;
  return r;
}

FieldElement operator*(FieldElement a, FieldElement b) {
  if (a.degree_ != b.degree_) throw FieldError("mismatched extension degrees");
  FieldElement r;
  r.value_ = GF2m::get(a.degree_).mul(a.value_, b.value_);
  r.degree_ = a.degree_;
  return r;
}

FieldElement FieldElement::parse(std::string_view text, int degree) {
  if (degree >= 2) {
    if (text == "w") return {2, degree};
    if (text == "w2") return FieldElement(2, degree) * FieldElement(2, degree);
  }
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw FieldError("cannot parse field element '" + std::string(text) + "'");
  return {v, degree};
}

std::ostream& operator<<(std::ostream& os, FieldElement a) { return os << a.to_string(); }

std::vector<FieldElement> all_elements(int degree) {
  const GF2m& f = GF2m::get(degree);
  std::vector<FieldElement> out;
  out.reserve(f.order());
  for (unsigned v = 0; v < f.order(); ++v) out.emplace_back(v, degree);
  return out;
}

}  // namespace pathalg
