#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pathalg/algebra.hpp"

namespace pathalg {

// A vertex-preserving algebra map kQ/I -> B given on arrows. Vertex
// idempotents go to the matching idempotents of B.
class GeneratorMap {
 public:
  GeneratorMap(const FiniteDimAlgebra& source, const FiniteDimAlgebra& target, const std::vector<FreeElement>& arrow_images);

  const FiniteDimAlgebra& source() const noexcept { return *source_; }
  const FiniteDimAlgebra& target() const noexcept { return *target_; }
  // Target coordinates of each arrow image.
  const std::vector<Vec>& arrow_images() const noexcept { return images_; }

  // Image of a path or free element of the source quiver, in target coordinates.
  Vec image(const Path& p) const;
  Vec image(const FreeElement& x) const;
  // Image of an element of the source algebra given in source coordinates.
  Vec image(const Vec& source_coords) const;

 private:
  const FiniteDimAlgebra* source_;
  const FiniteDimAlgebra* target_;
  std::vector<Vec> images_;
  std::vector<Matrix> left_;  // left multiplication by each arrow image
};

GeneratorMap identity_map(const FiniteDimAlgebra& a);
// Every arrow to itself.
GeneratorMap natural_map(const FiniteDimAlgebra& source, const FiniteDimAlgebra& target);
// g after f.
GeneratorMap compose(const GeneratorMap& g, const GeneratorMap& f);

struct WellDefined {
  bool ok = true;
  // Source relation with nonzero image, and that image.
  std::optional<FreeElement> relation;
  std::optional<FreeElement> image;
};

WellDefined check_well_defined(const GeneratorMap& f);

// target_dim x source_dim matrix on the normal-word bases.
Matrix linearize(const GeneratorMap& f);
Subspace kernel_basis(const GeneratorMap& f);
bool is_surjective(const GeneratorMap& f);
bool is_isomorphism(const GeneratorMap& f);

// Two-sided ideal of A generated by the given elements (source coordinates).
Subspace ideal_span(const FiniteDimAlgebra& a, const std::vector<Vec>& generators);

struct KernelComparison {
  bool equal = false;
  bool generators_in_kernel = false;
  std::size_t ideal_dim = 0;
  std::size_t kernel_dim = 0;
  // First generator whose image in the source algebra is not in the kernel.
  std::optional<FreeElement> offending;
};

KernelComparison compare_kernel_with_ideal(const GeneratorMap& f, const std::vector<FreeElement>& ideal_generators);
bool kernel_equals_ideal(const GeneratorMap& f, const IdealPresentation& ideal);

struct RadSquareReport {
  bool contained = false;
  std::size_t source_top = 0, target_top = 0;        // dim A/rad
  std::size_t source_second = 0, target_second = 0;  // dim A/rad^2
};

RadSquareReport rad_square_containment(const GeneratorMap& f);

FiniteDimAlgebra quotient_by(const FiniteDimAlgebra& a, const std::vector<FreeElement>& extra);

// Lines "vertex 0 -> 1_0" and "arrow g -> g + 1*a g (b a g)^3"; '#' starts
// a comment. Arrows without a line map to themselves.
GeneratorMap parse_map(const FiniteDimAlgebra& source, const FiniteDimAlgebra& target, std::string_view text);

}  // namespace pathalg
