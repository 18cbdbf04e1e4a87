#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathalg/algebra.hpp"

namespace pathalg {

class ModuleAxiomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StringModulePrecondition : public std::invalid_argument {
 public:
  StringModulePrecondition(const std::string& what, std::size_t level)
      : std::invalid_argument(what), level_(level) {}
  // Least n with NF(w) in soc^n; 0 when NF(w) = 0.
  std::size_t socle_level() const noexcept { return level_; }

 private:
  std::size_t level_;
};

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using FactorSequence = std::vector<int>;

// A representation of the quiver satisfying the relations of an algebra.
// Stored on the total space: basis vector i lives at vertex vertex_of(i)
// and each arrow acts by a total-space matrix that maps vertex source(a)
// to vertex target(a).
class Representation {
 public:
  Representation(const FiniteDimAlgebra& algebra, std::vector<int> vertex_of, std::vector<Matrix> arrows);

  const FiniteDimAlgebra& algebra() const noexcept { return *algebra_; }
  std::size_t dim() const noexcept { return vertex_of_.size(); }
  const std::vector<int>& vertex_of() const noexcept { return vertex_of_; }
  std::vector<std::size_t> vertex_dims() const;
  const Matrix& action(int a) const { return arrows_.at(static_cast<std::size_t>(a)); }
  // Restriction of an arrow to its source and target vertex spaces.
  Matrix arrow_block(int a) const;

  Vec apply(const Path& p, Vec x) const;
  Vec apply(const FreeElement& x, const Vec& v) const;
  Matrix matrix_of(const FreeElement& x) const;

  // Generator of the ideal whose action is nonzero, if any.
  std::optional<FreeElement> violated_relation() const;

 private:
  const FiniteDimAlgebra* algebra_;
  std::vector<int> vertex_of_;
  std::vector<Matrix> arrows_;
};

Representation projective(const FiniteDimAlgebra& a, int vertex);
Representation simple_module(const FiniteDimAlgebra& a, int vertex);
// M_w: basis b_0..b_n along the vertices of w, the j-th arrow of w sends
// b_{j-1} to b_j and every other arrow acts by zero.
Representation string_module(const FiniteDimAlgebra& a, const Path& w);

// rad^0 M = M down to the first zero term (included).
std::vector<Subspace> radical_series(const Representation& m);
// Per-vertex dimensions of rad^j M / rad^(j+1) M for every nonzero layer.
std::vector<std::vector<std::size_t>> composition_layers(const Representation& m);
// soc^0 = 0 up to M.
std::vector<Subspace> socle_series(const Representation& m);
bool is_uniserial(const Representation& m);
// Vertex of each radical layer; only meaningful for uniserial modules.
FactorSequence factor_sequence(const Representation& m);

struct UniserialOptions {
  std::uint64_t budget = std::uint64_t{1} << 22;
};

struct UniserialResult {
  bool exists = false;
  std::uint64_t nodes = 0;
  std::optional<Representation> witness;
};

// Exact search over the working field for a uniserial module whose
// radical layers are S_seq[0], S_seq[1], ... from the top.
UniserialResult uniserial_search(const FiniteDimAlgebra& a, const FactorSequence& seq,
                                 const UniserialOptions& options = {});
bool uniserial_exists(const FiniteDimAlgebra& a, const FactorSequence& seq, const UniserialOptions& options = {});

// Independent answer for symmetric algebras whose quotient by the socle is
// monomial: a uniserial module either is a module over A/soc(A), where it
// exists iff some path with the vertex sequence is nonzero, or contains a
// projective-injective summand and so equals P(seq[0]). nullopt when the
// hypotheses fail.
std::optional<bool> uniserial_exists_by_strings(const FiniteDimAlgebra& a, const FactorSequence& seq);

}  // namespace pathalg
