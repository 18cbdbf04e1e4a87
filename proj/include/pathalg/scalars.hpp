#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pathalg {

// Largest supported extension degree over GF(2).
inline constexpr int kMaxFieldDegree = 8;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The field GF(2^m) for 1 <= m <= 8, realized as GF(2)[x]/(f) with the
// Conway polynomial f of degree m. Elements are bit patterns 0 .. 2^m-1.
// Instances are immutable singletons obtained through get().
class GF2m {
 public:
  static const GF2m& get(int degree);

  int degree() const noexcept { return degree_; }
  unsigned order() const noexcept { return order_; }
  // Bit pattern of the modulus polynomial, including the leading x^m.
  unsigned modulus() const noexcept { return modulus_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const noexcept { return a ^ b; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const noexcept { return a ^ b; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept {
    return mul_[static_cast<std::size_t>(a) * order_ + b];
  }
  std::uint8_t inv(std::uint8_t a) const;
  std::uint8_t pow(std::uint8_t a, unsigned long long n) const noexcept;
  std::uint8_t div(std::uint8_t a, std::uint8_t b) const { return mul(a, inv(b)); }

  bool contains(unsigned v) const noexcept { return v < order_; }

  GF2m(const GF2m&) = delete;
  GF2m& operator=(const GF2m&) = delete;

 private:
  explicit GF2m(int degree);

  int degree_;
  unsigned order_;
  unsigned modulus_;
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> inv_;
};

// Irreducible modulus table, versioned with the serialization format.
unsigned conway_modulus(int degree);

// A value in GF(2^m) carrying its extension degree.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(unsigned value, int degree);

  static FieldElement zero(int degree) { return {0, degree}; }
  static FieldElement one(int degree) { return {1, degree}; }

  std::uint8_t value() const noexcept { return value_; }
  int degree() const noexcept { return degree_; }
  const GF2m& field() const { return GF2m::get(degree_); }

  bool is_zero() const noexcept { return value_ == 0; }
  bool is_one() const noexcept { return value_ == 1; }

  FieldElement inv() const;
  FieldElement pow(unsigned long long n) const;

  friend FieldElement operator+(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a, FieldElement b) { return a + b; }
  friend FieldElement operator-(FieldElement a) { return a; }
  friend FieldElement operator*(FieldElement a, FieldElement b);
  friend FieldElement operator/(FieldElement a, FieldElement b) { return a * b.inv(); }
  FieldElement& operator+=(FieldElement b) { return *this = *this + b; }
  FieldElement& operator*=(FieldElement b) { return *this = *this * b; }

  friend bool operator==(FieldElement a, FieldElement b) noexcept {
    return a.value_ == b.value_ && a.degree_ == b.degree_;
  }

  std::string to_string() const { return std::to_string(value_); }
  // Accepts the integer encoding; `w` and `w2` are accepted as aliases for
  // the classes of x and x^2 when m >= 2.
  static FieldElement parse(std::string_view text, int degree);

 private:
  std::uint8_t value_ = 0;
  std::uint8_t degree_ = 1;
};

std::ostream& operator<<(std::ostream& os, FieldElement a);

// Every element of GF(2^m) in increasing bit-pattern order.
std::vector<FieldElement> all_elements(int degree);

}  // namespace pathalg
