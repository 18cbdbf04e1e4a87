#include "pathalg/groups.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_set>

namespace pathalg {

namespace {

bool is_square_mod(int a, int p) {
  for (int y = 0; y < p; ++y)
    if ((y * y) % p == ((a % p) + p) % p) return true;
  return false;
}

int prime_of(int q) {
  switch (q) {
    case 3: case 9: return 3;
    case 5: case 25: return 5;
    case 7: case 49: return 7;
    default: throw GroupError("unsupported field order " + std::to_string(q));
  }
}

std::size_t two_part(std::size_t n) {
  std::size_t t = 1;
  while (n % 2 == 0) {
    n /= 2;
    t *= 2;
  }
  return t;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

OddField::OddField(int q) : p_(prime_of(q)), q_(q), k_(0) {
  const int p = p_;
  if (q != p) {
    k_ = 1;
    while (is_square_mod(-k_, p)) ++k_;
  }
  add_.resize(static_cast<std::size_t>(q * q));
  mul_.resize(add_.size());
  neg_.resize(static_cast<std::size_t>(q));
  inv_.assign(static_cast<std::size_t>(q), 0);
  auto enc = [&](int a, int b) { return static_cast<Elt>(((a % p) + p) % p + p * (((b % p) + p) % p)); };
  for (int x = 0; x < q; ++x) {
    const int a = x % p, b = x / p;
    neg_[static_cast<std::size_t>(x)] = enc(-a, -b);
    for (int y = 0; y < q; ++y) {
      const int c = y % p, e = y / p;
      const auto i = static_cast<std::size_t>(x * q + y);
      add_[i] = enc(a + c, b + e);
      // x^2 = -k
      mul_[i] = enc(a * c - k_ * b * e, a * e + b * c);
    }
  }
  for (int x = 1; x < q; ++x)
    for (int y = 1; y < q; ++y)
      if (mul(static_cast<Elt>(x), static_cast<Elt>(y)) == 1) inv_[static_cast<std::size_t>(x)] = static_cast<Elt>(y);
}

const OddField& OddField::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<OddField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[q];
  if (!slot) slot.reset(new OddField(q));
  return *slot;
}

OddField::Elt OddField::inv(Elt a) const {
  if (a == 0) throw GroupError("zero has no inverse");
  return inv_[a];
}

std::optional<OddField::Elt> OddField::sqrt(Elt a) const {
  for (int y = 0; y < q_; ++y)
    if (mul(static_cast<Elt>(y), static_cast<Elt>(y)) == a) return static_cast<Elt>(y);
  return std::nullopt;
}

namespace {

Mat2 mat_mul(const OddField& f, const Mat2& x, const Mat2& y) {
  return {f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])), f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
          f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])), f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3]))};
}

OddField::Elt det(const OddField& f, const Mat2& m) { return f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2])); }

Mat2 scale(const OddField& f, OddField::Elt s, const Mat2& m) {
  return {f.mul(s, m[0]), f.mul(s, m[1]), f.mul(s, m[2]), f.mul(s, m[3])};
}

Mat2 projective_canonical(const OddField& f, const Mat2& m) {
  for (auto e : m)
    if (e != 0) return scale(f, f.inv(e), m);
  throw GroupError("zero matrix has no projective class");
}

bool is_scalar(const Mat2& m) { return m[1] == 0 && m[2] == 0 && m[0] == m[3]; }

}  // namespace

MatrixGroup::MatrixGroup(const OddField& f, bool projective, std::vector<Mat2> elements)
    : field_(&f), projective_(projective), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end(), [&](const Mat2& a, const Mat2& b) { return code(a) < code(b); });
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (canonical(elements_[i]) != elements_[i]) throw GroupError("element is not in canonical form");
    if (!index_.emplace(code(elements_[i]), static_cast<std::uint32_t>(i)).second) throw GroupError("duplicate element");
  }
}

std::uint32_t MatrixGroup::code(const Mat2& m) const {
  const auto q = static_cast<std::uint32_t>(field_->q());
  return m[0] + q * (m[1] + q * (m[2] + q * m[3]));
}

bool MatrixGroup::contains(const Mat2& m) const { return index_.count(code(canonical(m))) != 0; }

Mat2 MatrixGroup::identity() const { return {1, 0, 0, 1}; }

Mat2 MatrixGroup::canonical(const Mat2& m) const { return projective_ ? projective_canonical(*field_, m) : m; }

Mat2 MatrixGroup::multiply(const Mat2& x, const Mat2& y) const { return canonical(mat_mul(*field_, x, y)); }

Mat2 MatrixGroup::inverse(const Mat2& x) const {
  const OddField& f = *field_;
  const auto di = f.inv(det(f, x));
  return canonical(scale(f, di, {x[3], f.neg(x[1]), f.neg(x[2]), x[0]}));
}

std::size_t MatrixGroup::element_order(const Mat2& x) const {
  const Mat2 id = identity();
  Mat2 y = canonical(x);
  std::size_t n = 1;
  while (y != id) {
    y = multiply(y, x);
    if (++n > order()) throw GroupError("element order exceeds group order");
  }
  return n;
}

namespace {

// Closure of gens under multiplication, starting from the identity.
std::vector<Mat2> close(const MatrixGroup& g, const std::vector<Mat2>& gens, std::vector<Mat2> members,
                        std::unordered_set<std::uint64_t>& seen, auto key) {
  std::vector<Mat2> frontier = members;
  while (!frontier.empty()) {
    std::vector<Mat2> next;
    for (const auto& y : frontier)
      for (const auto& s : gens) {
        Mat2 z = g.multiply(y, s);
        if (seen.insert(key(z)).second) {
          members.push_back(z);
          next.push_back(z);
        }
      }
    frontier = std::move(next);
  }
  return members;
}

}  // namespace

const std::vector<Mat2>& MatrixGroup::generators() const {
  if (generators_) return *generators_;
  auto key = [&](const Mat2& m) -> std::uint64_t { return code(m); };
  std::vector<Mat2> gens;
  std::unordered_set<std::uint64_t> seen{key(identity())};
  std::vector<Mat2> members{identity()};
  for (const auto& x : elements_) {
    if (members.size() == elements_.size()) break;
    if (seen.count(key(x))) continue;
    gens.push_back(x);
    members = close(*this, gens, std::move(members), seen, key);
  }
  generators_ = std::move(gens);
  return *generators_;
}

bool MatrixGroup::check_closure() const {
  if (!contains(identity())) return false;
  const auto& gens = generators();
  for (const auto& x : elements_) {
    if (!contains(inverse(x))) return false;
    for (const auto& s : gens)
      if (!contains(multiply(x, s))) return false;
  }
  return true;
}

MatrixGroup MatrixGroup::subgroup(const std::vector<Mat2>& gens) const {
  auto key = [&](const Mat2& m) -> std::uint64_t { return code(m); };
  std::vector<Mat2> canon;
  for (const auto& s : gens) {
    if (!contains(s)) throw GroupError("generator outside the group");
    canon.push_back(canonical(s));
  }
  std::unordered_set<std::uint64_t> seen{key(identity())};
  auto members = close(*this, canon, {identity()}, seen, key);
  return MatrixGroup(*field_, projective_, std::move(members));
}

MatrixGroup construct(GroupKind kind, int q) {
  const OddField& f = OddField::get(q);
  const bool small = q <= 9;
  if ((kind == GroupKind::GL2 || kind == GroupKind::PGL2) && !small)
    throw GroupError("GL2 and PGL2 are enumerated only for q <= 9");
  const auto n = static_cast<std::size_t>(q);
  const std::size_t sl_order = n * (n * n - 1);
  std::vector<Mat2> out;
  using E = OddField::Elt;
  switch (kind) {
    case GroupKind::GL2:
    case GroupKind::PGL2:
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          for (int c = 0; c < q; ++c)
            for (int d = 0; d < q; ++d) {
              Mat2 m{static_cast<E>(a), static_cast<E>(b), static_cast<E>(c), static_cast<E>(d)};
              if (det(f, m) == 0) continue;
              if (kind == GroupKind::PGL2 && projective_canonical(f, m) != m) continue;
              out.push_back(m);
            }
      break;
    case GroupKind::SL2:
    case GroupKind::PSL2: {
      std::unordered_set<std::uint32_t> seen;
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          for (int c = 0; c < q; ++c) {
            // a d - b c = 1
            const E bc1 = f.add(f.mul(static_cast<E>(b), static_cast<E>(c)), 1);
            auto emit = [&](E d) {
              Mat2 m{static_cast<E>(a), static_cast<E>(b), static_cast<E>(c), d};
              if (kind == GroupKind::PSL2) {
                m = projective_canonical(f, m);
                const auto k = static_cast<std::uint32_t>(m[0] + n * (m[1] + n * (m[2] + n * m[3])));
                if (!seen.insert(k).second) return;
              }
              out.push_back(m);
            };
            if (a != 0) {
              emit(f.mul(bc1, f.inv(static_cast<E>(a))));
            } else if (bc1 == 0) {
              for (int d = 0; d < q; ++d) emit(static_cast<E>(d));
            }
          }
      break;
    }
  }
  const bool proj = kind == GroupKind::PGL2 || kind == GroupKind::PSL2;
  MatrixGroup g(f, proj, std::move(out));
  std::size_t expect = 0;
  switch (kind) {
    case GroupKind::GL2: expect = sl_order * (n - 1); break;
    case GroupKind::SL2: expect = sl_order; break;
    case GroupKind::PGL2: expect = sl_order; break;
    case GroupKind::PSL2: expect = sl_order / 2; break;
  }
  if (g.order() != expect) throw std::logic_error("enumerated group has the wrong order");
  return g;
}

DicksonPair dickson_subgroup(int q) {
  if (q != 3 && q != 5 && q != 7) throw GroupError("q must be one of 3, 5, 7");
  const OddField& big = OddField::get(q * q);
  MatrixGroup pgl = construct(GroupKind::PGL2, q);
  MatrixGroup sl2 = construct(GroupKind::SL2, q * q);

  // F_q sits in F_{q^2} with the same codes.
  std::vector<Mat2> h_elems, image;
  for (const auto& g : pgl.elements()) {
    auto lambda = big.sqrt(big.inv(det(big, g)));
    if (!lambda) throw std::logic_error("determinant is not a square in F_{q^2}");
    Mat2 s = scale(big, *lambda, g);
    if (det(big, s) != 1) throw std::logic_error("rescaled matrix is not in SL2");
    Mat2 cls = projective_canonical(big, s);
    image.push_back(cls);
    h_elems.push_back(cls);
  }
  std::sort(h_elems.begin(), h_elems.end());
  const bool injective = std::adjacent_find(h_elems.begin(), h_elems.end()) == h_elems.end();
  h_elems.erase(std::unique(h_elems.begin(), h_elems.end()), h_elems.end());
  MatrixGroup h(big, true, h_elems);

  std::vector<Mat2> ghat;
  for (const auto& x : sl2.elements())
    if (h.contains(projective_canonical(big, x))) ghat.push_back(x);
  MatrixGroup gh(big, false, std::move(ghat));

  // Homomorphism on element-generator products.
  bool hom = injective && h.order() == pgl.order();
  if (hom) {
    std::unordered_map<std::uint32_t, std::size_t> pos;
    const auto n = static_cast<std::uint32_t>(q);
    auto key = [&](const Mat2& m) { return m[0] + n * (m[1] + n * (m[2] + n * m[3])); };
    for (std::size_t i = 0; i < pgl.order(); ++i) pos[key(pgl.elements()[i])] = i;
    auto phi = [&](const Mat2& x) { return image[pos.at(key(x))]; };
    for (const auto& x : pgl.elements()) {
      for (const auto& s : pgl.generators())
        if (phi(pgl.multiply(x, s)) != h.multiply(phi(x), phi(s))) {
          hom = false;
          break;
        }
      if (!hom) break;
    }
  }
  DicksonPair out{std::move(pgl), std::move(h), std::move(gh), std::move(sl2), hom};
  return out;
}

MatrixGroup sylow2(const MatrixGroup& g) {
  const std::size_t target = two_part(g.order());
  const auto& el = g.elements();
  std::vector<std::size_t> ord(el.size(), 0);
  auto order_of = [&](std::size_t i) {
    if (ord[i] == 0) ord[i] = g.element_order(el[i]);
    return ord[i];
  };
  std::vector<Mat2> gens;
  MatrixGroup h = g.subgroup({});
  while (h.order() < target) {
    bool grown = false;
    for (std::size_t i = 0; i < el.size() && !grown; ++i) {
      const Mat2& x = el[i];
      if (h.contains(x) || !is_power_of_two(order_of(i))) continue;
      const Mat2 xi = g.inverse(x);
      bool normalizes = true;
      for (const auto& s : gens)
        if (!h.contains(g.multiply(g.multiply(x, s), xi))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      gens.push_back(x);
      h = g.subgroup(gens);
      if (!is_power_of_two(h.order())) throw std::logic_error("extension is not a 2-group");
      grown = true;
    }
    if (!grown) throw std::logic_error("no normalizing 2-element found");
  }
  return h;
}

std::string class_name(TwoGroupClass c) {
  switch (c) {
    case TwoGroupClass::Cyclic: return "cyclic";
    case TwoGroupClass::Klein: return "klein";
    case TwoGroupClass::Dihedral: return "dihedral";
    case TwoGroupClass::Semidihedral: return "semidihedral";
    case TwoGroupClass::GeneralizedQuaternion: return "generalized_quaternion";
    case TwoGroupClass::Other: return "other";
  }
  return "";
}

std::string TwoGroupType::to_string() const {
  const std::string name = cls == TwoGroupClass::GeneralizedQuaternion ? "quaternion" : class_name(cls);
  return name + "(" + std::to_string(order) + ")";
}

std::size_t count_involutions(const MatrixGroup& g) {
  std::size_t n = 0;
  const Mat2 id = g.identity();
  for (const auto& x : g.elements())
    if (x != id && g.multiply(x, x) == id) ++n;
  return n;
}

TwoGroupType classify_2group(const MatrixGroup& h) {
  const std::size_t n = h.order();
  if (!is_power_of_two(n)) throw GroupError("not a 2-group");
  TwoGroupType t;
  t.order = n;
  t.involutions = count_involutions(h);
  const Mat2 id = h.identity();
  std::vector<Mat2> half;
  bool cyclic = false;
  for (const auto& x : h.elements()) {
    const std::size_t o = h.element_order(x);
    if (o == n) cyclic = true;
    if (2 * o == n) half.push_back(x);
  }
  if (cyclic) {
    t.cls = TwoGroupClass::Cyclic;
  } else if (n == 4) {
    t.cls = TwoGroupClass::Klein;
  } else if (n >= 8) {
    auto power = [&](Mat2 x, std::size_t k) {
      Mat2 y = id;
      while (k-- > 0) y = h.multiply(y, x);
      return y;
    };
    for (const auto& r : half) {
      const std::size_t m = n / 2;
      std::vector<Mat2> pw;
      for (std::size_t k = 0; k < m; ++k) pw.push_back(power(r, k));
      const Mat2 r_inv = h.inverse(r);
      const Mat2 r_mid = pw[m / 2];
      const Mat2 r_semi = power(r, m / 2 - 1);
      for (const auto& s : h.elements()) {
        if (std::find(pw.begin(), pw.end(), s) != pw.end()) continue;
        const Mat2 conj = h.multiply(h.multiply(s, r), h.inverse(s));
        const Mat2 s2 = h.multiply(s, s);
        if (conj == r_inv && s2 == id) t.cls = TwoGroupClass::Dihedral;
        else if (conj == r_inv && s2 == r_mid) t.cls = TwoGroupClass::GeneralizedQuaternion;
        else if (n >= 16 && conj == r_semi && s2 == id) t.cls = TwoGroupClass::Semidihedral;
        if (t.cls != TwoGroupClass::Other) break;
      }
      if (t.cls != TwoGroupClass::Other) break;
    }
  }
  switch (t.cls) {
    case TwoGroupClass::Cyclic: t.consistent = t.involutions == (n > 1 ? 1u : 0u); break;
    case TwoGroupClass::Klein: t.consistent = t.involutions == 3; break;
    case TwoGroupClass::Dihedral: t.consistent = t.involutions == n / 2 + 1; break;
    case TwoGroupClass::Semidihedral: t.consistent = t.involutions == n / 4 + 1; break;
    case TwoGroupClass::GeneralizedQuaternion: t.consistent = t.involutions == 1; break;
    case TwoGroupClass::Other: t.consistent = true; break;
  }
  return t;
}

MatrixGroup center(const MatrixGroup& g) {
  std::vector<Mat2> z;
  const auto& gens = g.generators();
  for (const auto& x : g.elements()) {
    bool central = true;
    for (const auto& s : gens)
      if (g.multiply(x, s) != g.multiply(s, x)) {
        central = false;
        break;
      }
    if (central) z.push_back(x);
  }
  return MatrixGroup(g.field(), g.projective(), std::move(z));
}

MatrixGroup quotient_by_center(const MatrixGroup& g) {
  MatrixGroup z = center(g);
  if (z.order() == 1) return MatrixGroup(g.field(), g.projective(), g.elements());
  if (g.projective()) throw GroupError("quotient of a projective group by a nontrivial center is not supported");
  for (const auto& x : z.elements())
    if (!is_scalar(x)) throw GroupError("center contains a non-scalar matrix");
  std::map<Mat2, std::size_t> fibres;
  for (const auto& x : g.elements()) ++fibres[projective_canonical(g.field(), x)];
  std::vector<Mat2> classes;
  for (const auto& [cls, count] : fibres) {
    if (count != z.order()) throw GroupError("coset size differs from the center order");
    classes.push_back(cls);
  }
  return MatrixGroup(g.field(), true, std::move(classes));
}

GroupChecks check_groups(int q) {
  if (q != 3 && q != 5 && q != 7) throw GroupError("q must be one of 3, 5, 7");
  GroupChecks r;
  r.q = q;
  const auto n = static_cast<std::size_t>(q);
  const std::size_t pgl_expect = n * (n * n - 1);
  auto fail = [&](bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
  };
  r.d = 0;
  for (std::size_t m = n * n - 1; m % 2 == 0; m /= 2) ++r.d;

  DicksonPair dp = dickson_subgroup(q);
  r.pgl_order = dp.pgl.order();
  fail(r.pgl_order == pgl_expect, "|PGL2(F_q)| != q(q^2-1)");
  MatrixGroup ps = sylow2(dp.pgl);
  r.pgl_sylow = classify_2group(ps);
  fail(r.pgl_sylow.cls == TwoGroupClass::Dihedral, "Sylow 2-subgroup of PGL2(F_q) is not dihedral");
  fail(r.pgl_sylow.order == two_part(n * n - 1), "Sylow 2-subgroup of PGL2(F_q) has the wrong order");
  fail(r.pgl_sylow.order == (std::size_t{1} << r.d), "Sylow order of PGL2(F_q) differs from 2^v2(q^2-1)");
  fail(r.pgl_sylow.consistent, "involution count of the PGL2 Sylow does not match its class");
  r.pgl_center = center(dp.pgl).order();
  fail(r.pgl_center == 1, "PGL2(F_q) has a nontrivial center");

  r.sl2_order = dp.sl2.order();
  fail(r.sl2_order == n * n * (n * n * n * n - 1), "|SL2(F_{q^2})| != q^2(q^4-1)");
  const MatrixGroup& sl2 = dp.sl2;
  r.sl2_sylow = classify_2group(sylow2(sl2));
  fail(r.sl2_sylow.cls == TwoGroupClass::GeneralizedQuaternion, "Sylow 2-subgroup of SL2(F_{q^2}) is not quaternion");

  r.h_order = dp.h.order();
  fail(r.h_order == pgl_expect, "|H_q| != |PGL2(F_q)|");
  r.isomorphism_certified = dp.isomorphism_certified;
  fail(r.isomorphism_certified, "PGL2(F_q) -> H_q is not a certified isomorphism");
  r.ghat_order = dp.ghat.order();
  fail(r.ghat_order == 2 * pgl_expect, "|Ghat_q| != 2q(q^2-1)");
  MatrixGroup gs = sylow2(dp.ghat);
  r.ghat_sylow = classify_2group(gs);
  fail(r.ghat_sylow.cls == TwoGroupClass::GeneralizedQuaternion, "Sylow 2-subgroup of Ghat_q is not quaternion");
  fail(r.ghat_sylow.order == 2 * r.pgl_sylow.order, "Sylow order of Ghat_q is not twice that of PGL2(F_q)");
  fail(r.ghat_sylow.involutions == 1, "Sylow 2-subgroup of Ghat_q has more than one involution");
  const OddField& big = dp.ghat.field();
  const Mat2 minus_one{big.neg(1), 0, 0, big.neg(1)};
  for (const auto& x : gs.elements())
    if (x != gs.identity() && gs.multiply(x, x) == gs.identity()) r.ghat_involution_is_minus_one = x == minus_one;
  fail(r.ghat_involution_is_minus_one, "the involution of the Ghat_q Sylow is not -I");

  MatrixGroup z = center(dp.ghat);
  r.ghat_center = z.order();
  r.center_is_plus_minus_one = z.order() == 2 && z.contains(minus_one) && z.contains(z.identity());
  fail(r.center_is_plus_minus_one, "center of Ghat_q is not {I, -I}");
  MatrixGroup quot = quotient_by_center(dp.ghat);
  r.quotient_order = quot.order();
  fail(r.quotient_order == r.pgl_order, "|Ghat_q / Z| != |PGL2(F_q)|");
  r.quotient_sylow = classify_2group(sylow2(quot));
  fail(r.quotient_sylow.cls == TwoGroupClass::Dihedral && r.quotient_sylow.order == r.pgl_sylow.order,
       "Sylow 2-subgroup of Ghat_q / Z is not the dihedral group of PGL2(F_q)");

  r.closure_ok = dp.pgl.check_closure() && dp.h.check_closure() && dp.ghat.check_closure() && sl2.check_closure() &&
                 quot.check_closure() && ps.check_closure() && gs.check_closure();
  fail(r.closure_ok, "closure check failed");
  return r;
}

}  // namespace pathalg
