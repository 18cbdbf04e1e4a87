#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pathalg {

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// F_p or F_{p^2} for p in {3, 5, 7}. F_{p^2} = F_p[x]/(x^2 + k) with the
// least k making the polynomial irreducible (x^2+1, x^2+2, x^2+1). The
// element a + b x is encoded as a + p b, so F_p sits inside as 0 .. p-1.
class OddField {
 public:
  static const OddField& get(int q);

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  int modulus_constant() const noexcept { return k_; }

  using Elt = std::uint16_t;
  Elt add(Elt a, Elt b) const noexcept { return add_[a * q_ + b]; }
  Elt mul(Elt a, Elt b) const noexcept { return mul_[a * q_ + b]; }
  Elt neg(Elt a) const noexcept { return neg_[a]; }
  Elt sub(Elt a, Elt b) const noexcept { return add(a, neg(b)); }
  Elt inv(Elt a) const;
  // Some y with y^2 = a, if one exists.
  std::optional<Elt> sqrt(Elt a) const;

  OddField(const OddField&) = delete;
  OddField& operator=(const OddField&) = delete;

 private:
  explicit OddField(int q);

  int p_, q_, k_;
  std::vector<Elt> add_, mul_, neg_, inv_;
};

// Row-major [[a, b], [c, d]].
using Mat2 = std::array<OddField::Elt, 4>;

// A finite group of 2x2 matrices stored by full enumeration. In projective
// groups each element is a class modulo scalars, represented by the matrix
// whose first nonzero entry is 1.
class MatrixGroup {
 public:
  MatrixGroup(const OddField& f, bool projective, std::vector<Mat2> elements);

  const OddField& field() const noexcept { return *field_; }
  bool projective() const noexcept { return projective_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Mat2>& elements() const noexcept { return elements_; }
  bool contains(const Mat2& m) const;

  Mat2 identity() const;
  Mat2 multiply(const Mat2& x, const Mat2& y) const;
  Mat2 inverse(const Mat2& x) const;
  std::size_t element_order(const Mat2& x) const;
  // Normal form of a matrix for this group (class representative if projective).
  Mat2 canonical(const Mat2& m) const;

  // A generating set chosen greedily in element order.
  const std::vector<Mat2>& generators() const;
  // Identity present, inverses present, and closed under right
  // multiplication by the generators.
  bool check_closure() const;

  MatrixGroup subgroup(const std::vector<Mat2>& gens) const;

 private:
  std::uint32_t code(const Mat2& m) const;

  const OddField* field_;
  bool projective_;
  std::vector<Mat2> elements_;
  std::unordered_map<std::uint32_t, std::uint32_t> index_;
  mutable std::optional<std::vector<Mat2>> generators_;
};

enum class GroupKind { GL2, SL2, PGL2, PSL2 };

// q in {3, 5, 7, 9} for GL2 and PGL2; also 25 and 49 for SL2 and PSL2.
MatrixGroup construct(GroupKind kind, int q);

struct DicksonPair {
  MatrixGroup pgl;   // PGL2(F_q)
  MatrixGroup h;     // H_q inside PSL2(F_{q^2})
  MatrixGroup ghat;  // full preimage of H_q in SL2(F_{q^2})
  MatrixGroup sl2;   // SL2(F_{q^2})
  // PGL2(F_q) -> H_q given by rescaling to determinant 1 is a bijective
  // homomorphism (checked on all element-generator products).
  bool isomorphism_certified = false;
};

// q prime in {3, 5, 7}.
DicksonPair dickson_subgroup(int q);

// Sylow 2-subgroup grown deterministically through normalizing 2-elements.
MatrixGroup sylow2(const MatrixGroup& g);

enum class TwoGroupClass { Cyclic, Klein, Dihedral, Semidihedral, GeneralizedQuaternion, Other };

struct TwoGroupType {
  TwoGroupClass cls = TwoGroupClass::Other;
  std::size_t order = 0;
  std::size_t involutions = 0;
  // The involution count matches the class.
  bool consistent = false;

  // e.g. "dihedral(8)", "quaternion(16)".
  std::string to_string() const;
};

std::string class_name(TwoGroupClass c);
TwoGroupType classify_2group(const MatrixGroup& h);
std::size_t count_involutions(const MatrixGroup& g);

MatrixGroup center(const MatrixGroup& g);
// Requires a center of scalar matrices; the quotient is realized as the
// group of projective classes, and the fibre sizes are checked to equal
// |Z|. Throws GroupError otherwise.
MatrixGroup quotient_by_center(const MatrixGroup& g);

struct GroupChecks {
  int q = 0;
  int d = 0;  // v2(q^2 - 1)
  std::size_t pgl_order = 0;
  TwoGroupType pgl_sylow;
  std::size_t pgl_center = 0;
  std::size_t sl2_order = 0;
  TwoGroupType sl2_sylow;
  std::size_t h_order = 0;
  std::size_t ghat_order = 0;
  TwoGroupType ghat_sylow;
  bool ghat_involution_is_minus_one = false;
  std::size_t ghat_center = 0;
  bool center_is_plus_minus_one = false;
  std::size_t quotient_order = 0;
  TwoGroupType quotient_sylow;
  bool isomorphism_certified = false;
  bool closure_ok = false;
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

// q in {3, 5, 7}; throws GroupError otherwise.
GroupChecks check_groups(int q);

}  // namespace pathalg
