#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathalg/algebra.hpp"
#include "pathalg/modrep.hpp"

namespace pathalg {

// Basic: the algebra Lambda_{i,c}. Hat: the central-extension algebra with
// parameter chat. J: the comparison ideals J_{c1,c2} (family 1) and
// J_{c1,c3} (family 2).
enum class Variant { Basic, Hat, J };

// Parameters are encodings of elements of GF(2^degree).
struct CatalogKey {
  int family = 1;
  Variant variant = Variant::Basic;
  int d = 3;
  int degree = 1;
  unsigned c = 0;                // c for Basic, chat for Hat
  unsigned c1 = 0;               // J only
  std::optional<unsigned> c2;    // J, family 1; absent means 1
  std::optional<unsigned> c3;    // J, family 2; absent means 1

  static CatalogKey basic(int family, int d, unsigned c, int degree = 1);
  static CatalogKey hat(int family, int d, unsigned chat, int degree = 1);
  // Sets c2 for family 1 and c3 for family 2.
  static CatalogKey j(int family, int d, unsigned c1, unsigned c_last = 1, int degree = 1);

  // Throws std::invalid_argument.
  void validate() const;
  std::string to_string() const;
};

// Human-readable name of a field element: 0, 1, w, w2 in GF(4), else the integer code.
std::string param_name(unsigned value, int degree);
// Inverse of param_name; also accepts integer codes.
unsigned parse_param(const std::string& text, int degree);

// Generator literals in the path-literal syntax of parse_element.
std::vector<std::string> generator_literals(const CatalogKey& key);
IdealPresentation build(const CatalogKey& key);
// Completed with cap default_cap(d); throws NotFiniteDimensional if the key
// does not give a finite-dimensional quotient.
FiniteDimAlgebra build_algebra(const CatalogKey& key);

// Decomposition matrix of the block: first the fixed rows, the last row
// repeated 2^(d-2)-1 (basic) or 2^(d-1)-1 (hat) times.
DecompositionMatrix decomposition(int family, bool hat, int d);

struct ExpectedShape {
  std::size_t dim = 0;
  std::array<std::size_t, 2> projective_dims{};
  std::array<std::size_t, 2> projective_loewy{};  // basic only, else 0
};
// Composition counts as stated for the two families.
ExpectedShape expected_shape(int family, bool hat, int d);

// Word whose normal form spans soc(P(v)) in the basic algebra.
std::string socle_word(int family, int d, int vertex);

// Elements that must vanish in kQ/J_{c1,1}.
std::vector<std::string> kernel_words(int family, int d);

// Uniserial battery entries.
struct BatteryEntry {
  std::string label;
  FactorSequence sequence;
  bool expected;
  std::optional<std::string> word;  // the path of an explicit M_w witness
};
std::vector<BatteryEntry> basic_battery(int family, int d);
std::vector<BatteryEntry> hat_battery(int family, int d);

// The closing map Lambda_{i,0} -> kQ_i/J_{c1,1}, as images of arrows.
std::vector<FreeElement> closing_map_images(int family, int d, unsigned c1, int degree);

struct StepRecord {
  int step = 0;
  std::string key;
  std::string claim;
  nlohmann::json expected;
  nlohmann::json actual;
  bool pass = false;
  std::optional<nlohmann::json> witness;
};

struct VerificationReport {
  std::vector<StepRecord> steps;

  bool passed() const;
  // Step number of the first failure, 0 when all passed.
  int first_failure() const;
  nlohmann::json steps_json() const;
};

struct VerifyOptions {
  int family = 1;
  int d = 3;
  int degree = 1;
  // Empty grids select the defaults: all of GF(2), or {0, 1, w} otherwise;
  // family 2 drops c1 = 0.
  std::vector<unsigned> chat_grid;
  std::vector<unsigned> c1_grid;
  // Replaces c2 (family 1) or c3 (family 2) in the positive symmetric-form
  // check; the field is promoted to contain the value.
  std::optional<unsigned> inject;
  std::uint64_t budget = std::uint64_t{1} << 22;
  unsigned threads = 0;  // 0: hardware concurrency
  bool allow_large = false;
};

std::vector<unsigned> default_grid(int degree);

// Runs the eight steps in order and stops after the first failing one.
VerificationReport verify_theorem(const VerifyOptions& options);

// Runs f(0..n-1) on up to `threads` workers (0 = hardware concurrency).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f);

}  // namespace pathalg
