#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pathalg/scalars.hpp"

namespace pathalg {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AmbientMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string name;
  int source;
  int target;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  int vertex_count() const noexcept { return static_cast<int>(vertices_.size()); }
  int arrow_count() const noexcept { return static_cast<int>(arrows_.size()); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const Arrow& arrow(int i) const { return arrows_.at(static_cast<std::size_t>(i)); }

  std::optional<int> find_arrow(std::string_view name) const;
  std::optional<int> find_vertex(std::string_view label) const;

  friend bool operator==(const Quiver&, const Quiver&);

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

// Q1: vertices {0,1}, a: 0->0, b: 0->1, g: 1->0.
const Quiver& quiver_q1();
// Q2: Q1 plus the loop e: 1->1.
const Quiver& quiver_q2();

// A path written the way words are written in the algebra: the rightmost
// arrow acts first. `word()` holds arrow indices in written order, so the
// last character is the first arrow traversed. Trivial paths 1_v have an
// empty word and source == target == v.
class Path {
 public:
  Path() = default;
  static Path trivial(int vertex);
  static Path arrow(const Quiver& q, int index);
  // Throws std::invalid_argument when consecutive arrows do not compose.
  static Path from_word(const Quiver& q, std::string word);
  // Same as from_word but trusts the caller that the word composes.
  static Path from_word_unchecked(const Quiver& q, std::string word);

  const std::string& word() const noexcept { return word_; }
  int source() const noexcept { return source_; }
  int target() const noexcept { return target_; }
  std::size_t length() const noexcept { return word_.size(); }
  bool is_trivial() const noexcept { return word_.empty(); }
  int arrow_at(std::size_t i) const { return static_cast<unsigned char>(word_[i]); }

  // The sequence of vertices visited, in traversal order (source first).
  std::vector<int> vertex_sequence(const Quiver& q) const;

  std::string to_string(const Quiver& q) const;

  friend bool operator==(const Path&, const Path&) = default;
  friend std::optional<Path> compose(const Path& p, const Path& q);

 private:
  std::string word_;
  int source_ = 0;
  int target_ = 0;
};

// Canonical length-lex comparison by arrow index; trivial paths by vertex.
struct PathLess {
  bool operator()(const Path& a, const Path& b) const noexcept;
};

struct PathHash {
  std::size_t operator()(const Path& p) const noexcept;
};

// p * q, i.e. q first and then p; defined iff source(p) == target(q).
std::optional<Path> compose(const Path& p, const Path& q);

// Finite linear combination of paths of one quiver with coefficients in
// GF(2^m). No zero coefficient is ever stored.
class FreeElement {
 public:
  using TermMap = std::map<Path, FieldElement, PathLess>;

  FreeElement(const Quiver& q, int degree) : quiver_(&q), degree_(degree) {}
  FreeElement(const Quiver& q, const Path& p, FieldElement c);
  static FreeElement one(const Quiver& q, int degree);

  const Quiver& quiver() const noexcept { return *quiver_; }
  int degree() const noexcept { return degree_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  FieldElement coefficient(const Path& p) const;
  void add_term(const Path& p, FieldElement c);

  FreeElement& operator+=(const FreeElement& other);
  FreeElement& operator-=(const FreeElement& other);
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
  friend FreeElement operator*(const FreeElement& a, const FreeElement& b);
  friend FreeElement operator*(FieldElement c, const FreeElement& a);

  // e_target * x * e_source
  FreeElement component(int target, int source) const;
  // Lowest length among terms; only meaningful when nonzero.
  std::size_t min_length() const;
  std::size_t max_length() const;

  std::string to_string() const;

  friend bool operator==(const FreeElement& a, const FreeElement& b);

 private:
  void check_ambient(const FreeElement& other) const;

  const Quiver* quiver_;
  int degree_;
  TermMap terms_;
};

// Path literals: juxtaposed arrow names, `^` powers, parenthesized groups,
// and 1_v for trivial paths, e.g. "(g b a)^4", "e^3", "1_0".
Path parse_path(const Quiver& q, std::string_view text);
// Relation lines: terms joined by '+' or '-', each optionally prefixed by a
// coefficient and '*', e.g. "b g + 1*(b a g)^2". "0" is the zero element.
FreeElement parse_element(const Quiver& q, int degree, std::string_view text);
// One element per non-empty line; '#' starts a comment.
std::vector<FreeElement> parse_relation_file(const Quiver& q, int degree, std::string_view text);

enum class ExtensionSide {
  After,   // zeta * prefix: apply one more arrow after the path
  Before,  // prefix * zeta
  Both,
};

// All one-arrow extensions of prefix that contain no forbidden word as a
// contiguous subword. Empty when prefix itself contains one.
std::vector<Path> enumerate_normal_extensions(const Quiver& q, const Path& prefix,
                                              const std::vector<Path>& forbidden_tips,
                                              ExtensionSide side = ExtensionSide::After);

}  // namespace pathalg
