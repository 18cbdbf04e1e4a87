#include "pathalg/paths.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace pathalg {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  if (arrows_.size() > 255) throw std::invalid_argument("too many arrows");
  std::set<std::string> names;
  for (const auto& a : arrows_) {
    if (!names.insert(a.name).second) throw std::invalid_argument("duplicate arrow name " + a.name);
    if (a.source < 0 || a.source >= vertex_count() || a.target < 0 || a.target >= vertex_count())
      throw std::invalid_argument("arrow " + a.name + " uses an undeclared vertex");
  }
}

std::optional<int> Quiver::find_arrow(std::string_view name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Quiver::find_vertex(std::string_view label) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

bool operator==(const Quiver& a, const Quiver& b) {
  if (&a == &b) return true;
  if (a.vertices_ != b.vertices_ || a.arrows_.size() != b.arrows_.size()) return false;
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    const auto& x = a.arrows_[i];
    const auto& y = b.arrows_[i];
    if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
  }
  return true;
}

const Quiver& quiver_q1() {
  static const Quiver q({"0", "1"}, {{"a", 0, 0}, {"b", 0, 1}, {"g", 1, 0}});
  return q;
}

const Quiver& quiver_q2() {
  static const Quiver q({"0", "1"}, {{"a", 0, 0}, {"b", 0, 1}, {"g", 1, 0}, {"e", 1, 1}});
  return q;
}

Path Path::trivial(int vertex) {
  Path p;
  p.source_ = p.target_ = vertex;
  return p;
}

Path Path::arrow(const Quiver& q, int index) {
  const Arrow& a = q.arrow(index);
  Path p;
  p.word_.push_back(static_cast<char>(index));
  p.source_ = a.source;
  p.target_ = a.target;
  return p;
}

Path Path::from_word(const Quiver& q, std::string word) {
  if (word.empty()) throw std::invalid_argument("empty word needs a base vertex");
  for (std::size_t i = 0; i < word.size(); ++i) {
    int idx = static_cast<unsigned char>(word[i]);
    if (idx >= q.arrow_count()) throw std::invalid_argument("arrow index out of range");
    if (i + 1 < word.size()) {
      int next = static_cast<unsigned char>(word[i + 1]);
      if (next >= q.arrow_count()) throw std::invalid_argument("arrow index out of range");
      if (q.arrow(idx).source != q.arrow(next).target)
        throw std::invalid_argument("arrows " + q.arrow(idx).name + " and " + q.arrow(next).name +
                                    " do not compose");
    }
  }
  return from_word_unchecked(q, std::move(word));
}

Path Path::from_word_unchecked(const Quiver& q, std::string word) {
  Path p;
  p.target_ = q.arrow(static_cast<unsigned char>(word.front())).target;
  p.source_ = q.arrow(static_cast<unsigned char>(word.back())).source;
  p.word_ = std::move(word);
  return p;
}

std::vector<int> Path::vertex_sequence(const Quiver& q) const {
  std::vector<int> seq{source_};
  for (auto it = word_.rbegin(); it != word_.rend(); ++it)
    seq.push_back(q.arrow(static_cast<unsigned char>(*it)).target);
  return seq;
}

namespace {

std::string arrow_names(const Quiver& q, std::string_view word) {
  std::string out;
  for (char c : word) {
    if (!out.empty()) out += ' ';
    out += q.arrow(static_cast<unsigned char>(c)).name;
  }
  return out;
}

}  // namespace

std::string Path::to_string(const Quiver& q) const {
  if (is_trivial()) return "1_" + q.vertices()[static_cast<std::size_t>(source_)];
  // Greedy run-length compression of repeated blocks, e.g. "(g b a)^2 g".
  std::vector<std::string> parts;
  std::size_t i = 0;
  const std::size_t n = word_.size();
  while (i < n) {
    std::size_t best_len = 1, best_reps = 1;
    for (std::size_t len = 1; len <= 8 && i + 2 * len <= n; ++len) {
      std::size_t reps = 1;
      while (i + (reps + 1) * len <= n &&
             word_.compare(i + reps * len, len, word_, i, len) == 0)
        ++reps;
      if (reps >= 2 && reps * len > best_reps * best_len) {
        best_len = len;
        best_reps = reps;
      }
    }
    std::string block = arrow_names(q, std::string_view(word_).substr(i, best_len));
    if (best_reps == 1) {
      parts.push_back(block);
    } else if (best_len == 1) {
      parts.push_back(block + "^" + std::to_string(best_reps));
    } else {
      parts.push_back("(" + block + ")^" + std::to_string(best_reps));
    }
    i += best_len * best_reps;
  }
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

bool PathLess::operator()(const Path& a, const Path& b) const noexcept {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.is_trivial()) return a.source() < b.source();
  return a.word() < b.word();
}

std::size_t PathHash::operator()(const Path& p) const noexcept {
  std::size_t h = std::hash<std::string>{}(p.word());
  return h ^ (static_cast<std::size_t>(p.source()) * 0x9e3779b97f4a7c15ull) ^
         (static_cast<std::size_t>(p.target()) << 7);
}

std::optional<Path> compose(const Path& p, const Path& q) {
  if (p.source() != q.target()) return std::nullopt;
  if (p.is_trivial()) return q;
  if (q.is_trivial()) return p;
  Path r;
  r.word_.reserve(p.length() + q.length());
  r.word_ = p.word_;
  r.word_ += q.word_;
  r.source_ = q.source_;
  r.target_ = p.target_;
  return r;
}

FreeElement::FreeElement(const Quiver& q, const Path& p, FieldElement c) : quiver_(&q), degree_(c.degree()) {
  add_term(p, c);
}

FreeElement FreeElement::one(const Quiver& q, int degree) {
  FreeElement x(q, degree);
  for (int v = 0; v < q.vertex_count(); ++v) x.add_term(Path::trivial(v), FieldElement::one(degree));
  return x;
}

FieldElement FreeElement::coefficient(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? FieldElement::zero(degree_) : it->second;
}

void FreeElement::add_term(const Path& p, FieldElement c) {
  if (c.degree() != degree_) throw AmbientMismatch("coefficient field mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FreeElement::check_ambient(const FreeElement& other) const {
  if (degree_ != other.degree_ || !(*quiver_ == *other.quiver_))
    throw AmbientMismatch("free elements over different quivers or fields");
}

FreeElement& FreeElement::operator+=(const FreeElement& other) {
  check_ambient(other);
  for (const auto& [p, c] : other.terms_) add_term(p, c);
  return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& other) {
  check_ambient(other);
  for (const auto& [p, c] : other.terms_) add_term(p, -c);
  return *this;
}

FreeElement operator*(const FreeElement& a, const FreeElement& b) {
  a.check_ambient(b);
  FreeElement out(*a.quiver_, a.degree_);
  for (const auto& [p, c] : a.terms_)
    for (const auto& [q, d] : b.terms_)
      if (auto pq = compose(p, q)) out.add_term(*pq, c * d);
  return out;
}

FreeElement operator*(FieldElement c, const FreeElement& a) {
  FreeElement out(*a.quiver_, a.degree_);
  for (const auto& [p, d] : a.terms_) out.add_term(p, c * d);
  return out;
}

FreeElement FreeElement::component(int target, int source) const {
  FreeElement out(*quiver_, degree_);
  for (const auto& [p, c] : terms_)
    if (p.target() == target && p.source() == source) out.terms_.emplace(p, c);
  return out;
}

std::size_t FreeElement::min_length() const {
  std::size_t m = SIZE_MAX;
  for (const auto& [p, c] : terms_) m = std::min(m, p.length());
  return m;
}

std::size_t FreeElement::max_length() const {
  std::size_t m = 0;
  for (const auto& [p, c] : terms_) m = std::max(m, p.length());
  return m;
}

std::string FreeElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Largest term first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    if (!it->second.is_one()) out += it->second.to_string() + "*";
    out += it->first.to_string(*quiver_);
  }
  return out;
}

bool operator==(const FreeElement& a, const FreeElement& b) {
  return a.degree_ == b.degree_ && *a.quiver_ == *b.quiver_ && a.terms_ == b.terms_;
}

namespace {

class LiteralParser {
 public:
  LiteralParser(const Quiver& q, int degree, std::string_view text) : q_(q), degree_(degree), text_(text) {}

  FreeElement element() {
    FreeElement out(q_, degree_);
    skip_ws();
    if (at_end()) fail("empty element");
    bool first = true;
    while (true) {
      skip_ws();
      if (!first) {
        if (at_end()) break;
        char op = text_[pos_];
        if (op != '+' && op != '-') fail("expected '+' or '-'");
        ++pos_;
        skip_ws();
      }
      first = false;
      term(out);
      skip_ws();
      if (at_end()) break;
    }
    return out;
  }

  Path path_only() {
    skip_ws();
    Path p = sequence();
    skip_ws();
    if (!at_end()) fail("trailing characters");
    return p;
  }

 private:
  void term(FreeElement& out) {
    FieldElement coef = FieldElement::one(degree_);
    std::size_t save = pos_;
    std::string tok = identifier();
    skip_ws();
    if (!tok.empty() && !at_end() && text_[pos_] == '*') {
      ++pos_;
      try {
        coef = FieldElement::parse(tok, degree_);
      } catch (const FieldError& e) {
        fail(e.what());
      }
      skip_ws();
    } else if (tok == "0") {
      return;
    } else {
      pos_ = save;
    }
    out.add_term(sequence(), coef);
  }

  Path sequence() {
    std::optional<Path> acc;
    while (true) {
      skip_ws();
      if (at_end() || text_[pos_] == ')' || text_[pos_] == '+' || text_[pos_] == '-') break;
      for (const Path& f : factor()) {
        if (!acc) {
          acc = f;
        } else {
          auto c = compose(*acc, f);
          if (!c) fail("path does not compose at '" + f.to_string(q_) + "'");
          acc = std::move(*c);
        }
      }
    }
    if (!acc) fail("expected a path");
    return *acc;
  }

  // A factor may expand to several juxtaposed arrows ("bag").
  std::vector<Path> factor() {
    std::vector<Path> atoms;
    skip_ws();
    if (text_[pos_] == '(') {
      ++pos_;
      Path inner = sequence();
      skip_ws();
      if (at_end() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      atoms.push_back(std::move(inner));
    } else {
      std::string tok = identifier();
      if (tok.empty()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
      if (tok.rfind("1_", 0) == 0) {
        auto v = q_.find_vertex(tok.substr(2));
        if (!v) fail("unknown vertex in '" + tok + "'");
        atoms.push_back(Path::trivial(*v));
      } else if (auto a = q_.find_arrow(tok)) {
        atoms.push_back(Path::arrow(q_, *a));
      } else {
        for (char ch : tok) {
          auto single = q_.find_arrow(std::string(1, ch));
          if (!single) fail("unknown arrow '" + tok + "'");
          atoms.push_back(Path::arrow(q_, *single));
        }
      }
    }
    skip_ws();
    if (!at_end() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (k < 1) fail("exponent must be positive");
      Path base = atoms.back();
      atoms.pop_back();
      Path power = base;
      for (int i = 1; i < k; ++i) {
        auto c = compose(power, base);
        if (!c) fail("power of a non-loop");
        power = std::move(*c);
      }
      atoms.push_back(std::move(power));
    }
    return atoms;
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in '" + std::string(text_) + "'");
  }

  const Quiver& q_;
  int degree_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool contains_forbidden(const std::string& word, const std::vector<Path>& tips) {
  return std::any_of(tips.begin(), tips.end(), [&](const Path& t) {
    return !t.is_trivial() && word.find(t.word()) != std::string::npos;
  });
}

}  // namespace

Path parse_path(const Quiver& q, std::string_view text) { return LiteralParser(q, 1, text).path_only(); }

FreeElement parse_element(const Quiver& q, int degree, std::string_view text) {
  return LiteralParser(q, degree, text).element();
}

std::vector<FreeElement> parse_relation_file(const Quiver& q, int degree, std::string_view text) {
  std::vector<FreeElement> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    out.push_back(parse_element(q, degree, line));
  }
  return out;
}

std::vector<Path> enumerate_normal_extensions(const Quiver& q, const Path& prefix,
                                              const std::vector<Path>& forbidden_tips, ExtensionSide side) {
  std::vector<Path> out;
  if (contains_forbidden(prefix.word(), forbidden_tips)) return out;
  for (int a = 0; a < q.arrow_count(); ++a) {
    Path arrow = Path::arrow(q, a);
    auto consider = [&](std::optional<Path> ext) {
      if (!ext || contains_forbidden(ext->word(), forbidden_tips)) return;
      if (std::find(out.begin(), out.end(), *ext) == out.end()) out.push_back(std::move(*ext));
    };
    if (side != ExtensionSide::Before) consider(compose(arrow, prefix));
    if (side != ExtensionSide::After) consider(compose(prefix, arrow));
  }
  return out;
}

}  // namespace pathalg
