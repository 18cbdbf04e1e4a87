#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pathalg/paths.hpp"

namespace pathalg {

class NotFiniteDimensional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InadmissibleIdeal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IncompleteBasis : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Length-then-lexicographic order. precedence[i] is the rank of arrow i;
// lexicographic comparison reads words in written order.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<int> precedence);

  // Arrow index order (a < b < g < e for the catalog quivers).
  static MonomialOrder natural(const Quiver& q);
  static MonomialOrder reversed(const Quiver& q);

  const std::vector<int>& precedence() const noexcept { return rank_; }

  // <0, 0, >0
  int compare(const Path& a, const Path& b) const noexcept;
  bool less(const Path& a, const Path& b) const noexcept { return compare(a, b) < 0; }

 private:
  std::vector<int> rank_;
};

class IdealPresentation {
 public:
  IdealPresentation(const Quiver& q, int degree, std::vector<FreeElement> generators);

  const Quiver& quiver() const noexcept { return *quiver_; }
  int degree() const noexcept { return degree_; }
  const std::vector<FreeElement>& generators() const noexcept { return generators_; }

  // Every generator lies in the square of the arrow ideal.
  bool admissible() const;
  // Generators split into their e_t x e_s pieces, zero pieces dropped.
  std::vector<FreeElement> uniform_generators() const;

  IdealPresentation with_extra(const std::vector<FreeElement>& extra) const;

 private:
  const Quiver* quiver_;
  int degree_;
  std::vector<FreeElement> generators_;
};

struct Term {
  Path path;
  std::uint8_t coef;
};

// tip == sum(tail) modulo the ideal; tail terms are all smaller than tip
// and share its endpoints.
struct Relation {
  Path tip;
  std::vector<Term> tail;
};

struct CompletionOptions {
  // Longest overlap word processed before finite-dimensionality is tested;
  // doubled once before giving up.
  std::size_t cap = 32;
  // Return an incomplete basis instead of throwing NotFiniteDimensional.
  bool allow_incomplete = false;
  // Abort if a normal-word level grows past this size while testing
  // finite-dimensionality.
  std::size_t level_limit = 1u << 20;
};

class GroebnerBasis {
 public:
  const Quiver& quiver() const noexcept { return *quiver_; }
  int degree() const noexcept { return degree_; }
  const GF2m& field() const { return GF2m::get(degree_); }
  const MonomialOrder& order() const noexcept { return order_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }

  // Least length with no normal word; only meaningful when complete.
  std::size_t degree_bound() const noexcept { return bound_; }
  bool complete() const noexcept { return complete_; }

  std::vector<Path> tips() const;
  // tip - tail as a free element.
  FreeElement relation_element(std::size_t i) const;

  FreeElement normal_form(const FreeElement& x) const;
  // Normal form of one path, as sparse terms in decreasing order.
  std::vector<Term> reduce_path(const Path& p) const;
  bool is_normal(const Path& p) const;

  // All normal words ordered by (source, target, monomial order).
  std::vector<Path> quotient_basis() const;

 private:
  friend GroebnerBasis complete(const IdealPresentation&, const MonomialOrder&, const CompletionOptions&);
  friend class Completion;

  GroebnerBasis(const Quiver& q, int degree, MonomialOrder order)
      : quiver_(&q), degree_(degree), order_(std::move(order)) {}

  void require_complete() const;

  const Quiver* quiver_;
  int degree_;
  MonomialOrder order_;
  std::vector<Relation> relations_;
  std::size_t bound_ = 0;
  bool complete_ = false;
};

// Default cap used for the catalog: 3 * 2^(d-1) + 8.
std::size_t default_cap(int d);

GroebnerBasis complete(const IdealPresentation& ideal, const MonomialOrder& order,
                       const CompletionOptions& options = {});

FreeElement normal_form(const FreeElement& x, const GroebnerBasis& gb);
std::vector<Path> quotient_basis(const GroebnerBasis& gb);

// Independent dense oracle for ideal membership, built without any
// rewriting: the span of all p*r*q (r a generator, p and q paths) inside
// the truncated path algebra kQ / (paths longer than bound), computed by
// sparse row reduction. Agrees with ideal membership whenever every path
// longer than bound lies in the ideal.
class IdealOracle {
 public:
  IdealOracle(const IdealPresentation& ideal, std::size_t bound);

  std::size_t bound() const noexcept { return bound_; }
  // Rank of the truncated ideal inside the span of paths of length <= bound.
  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t column_count() const noexcept { return columns_.size(); }

  // Precondition: every term of x has length <= bound.
  bool contains(const FreeElement& x) const;

 private:
  using SparseRow = std::vector<std::pair<std::size_t, std::uint8_t>>;  // decreasing column

  SparseRow to_row(const FreeElement& x) const;
  void reduce(SparseRow& row) const;
  void insert(SparseRow row);

  const Quiver* quiver_;
  int degree_;
  std::size_t bound_;
  std::unordered_map<Path, std::size_t, PathHash> columns_;
  std::unordered_map<std::size_t, SparseRow> pivots_;
};

bool ideal_membership_oracle(const FreeElement& x, const IdealPresentation& ideal, std::size_t bound);

}  // namespace pathalg
