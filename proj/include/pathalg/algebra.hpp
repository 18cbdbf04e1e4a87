#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pathalg/gbasis.hpp"
#include "pathalg/linalg.hpp"

namespace pathalg {

using IntMatrix = std::vector<std::vector<long>>;

// A = kQ/I with the normal words of a complete Groebner basis as k-basis.
// Immutable after construction.
class FiniteDimAlgebra {
 public:
  using SparseVec = std::vector<std::pair<std::uint32_t, std::uint8_t>>;

  FiniteDimAlgebra(IdealPresentation presentation, const MonomialOrder& order, const CompletionOptions& options = {});
  explicit FiniteDimAlgebra(IdealPresentation presentation);

  const IdealPresentation& presentation() const noexcept { return presentation_; }
  const GroebnerBasis& groebner() const noexcept { return gb_; }
  const Quiver& quiver() const noexcept { return presentation_.quiver(); }
  int degree() const noexcept { return presentation_.degree(); }
  const GF2m& field() const { return GF2m::get(degree()); }

  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Path>& basis() const noexcept { return basis_; }
  std::optional<std::size_t> index_of(const Path& p) const;

  Vec coords(const FreeElement& x) const;
  FreeElement element(const Vec& v) const;
  Vec idempotent(int vertex) const;
  Vec one() const;
  Vec arrow(int a) const;

  // b_i * b_j expanded in the basis.
  const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  Vec multiply(const Vec& x, const Vec& y) const;
  // Matrices of x -> a x and x -> x a.
  Matrix left_mult(const Vec& a) const;
  Matrix right_mult(const Vec& a) const;
  const Matrix& left_arrow(int a) const { return left_arrow_.at(static_cast<std::size_t>(a)); }
  const Matrix& right_arrow(int a) const { return right_arrow_.at(static_cast<std::size_t>(a)); }

  // rad^0 = A, ..., the last entry is the first zero power.
  const std::vector<Subspace>& radical_series() const noexcept { return rad_; }
  std::size_t loewy_length() const noexcept { return rad_.size() - 1; }
  // soc^0 = 0 up to the first power equal to A; soc^n = {x : rad^n x = 0}.
  const std::vector<Subspace>& socle_series() const noexcept { return soc_; }
  // {x : x rad = 0}
  Subspace right_socle() const;

  // Checks (b_i b_j) b_k = b_i (b_j b_k) on all composable triples.
  bool check_associative() const;

 private:
  void build();

  IdealPresentation presentation_;
  GroebnerBasis gb_;
  std::vector<Path> basis_;
  std::unordered_map<Path, std::size_t, PathHash> index_;
  std::vector<SparseVec> table_;
  std::vector<Matrix> left_arrow_;
  std::vector<Matrix> right_arrow_;
  std::vector<Subspace> rad_;
  std::vector<Subspace> soc_;
};

Subspace radical_power_basis(const FiniteDimAlgebra& a, std::size_t n);
std::size_t loewy_length(const FiniteDimAlgebra& a);
const std::vector<Subspace>& socle_series(const FiniteDimAlgebra& a);
// C[u][v] = number of normal words from v to u = [P(v) : S_u].
IntMatrix cartan_matrix(const FiniteDimAlgebra& a);

// Rows of a decomposition matrix; the last row counts `last_row_count`
// times in total.
struct DecompositionMatrix {
  std::vector<std::array<long, 2>> rows;
  std::size_t last_row_count = 1;

  std::vector<std::array<long, 2>> expanded() const;
  std::size_t row_count() const { return rows.empty() ? 0 : rows.size() - 1 + last_row_count; }
};

IntMatrix cartan_from_decomposition(const DecompositionMatrix& d);

enum class FormStatus { Found, NotFound, NotFoundSampled };

struct SymmetricFormResult {
  FormStatus status = FormStatus::NotFound;
  // Values of the functional on the basis of A.
  std::optional<Vec> form;
  std::size_t solution_dim = 0;
  std::uint64_t candidates = 0;
};

struct SymmetricFormOptions {
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 20;
  std::uint64_t samples = std::uint64_t{1} << 16;
  std::uint64_t seed = 0x5eed;
};

// A functional with phi(ab) = phi(ba) whose kernel contains no nonzero left ideal.
SymmetricFormResult find_symmetric_form(const FiniteDimAlgebra& a, const SymmetricFormOptions& options = {});
// Symmetric and the Gram matrix phi(b_i b_j) is invertible.
bool is_symmetric_nondegenerate(const FiniteDimAlgebra& a, const Vec& phi);

}  // namespace pathalg
