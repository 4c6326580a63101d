#pragma once

// Univariate polynomials over Q: arithmetic, parsing, Sturm root isolation,
// exact critical data, composition and functional decomposition.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vancycle/errors.hpp"
#include "vancycle/rational.hpp"

namespace vancycle {

/// Polynomial with rational coefficients in ascending degree. The leading
/// coefficient is nonzero; the zero polynomial has no coefficients.
class RealPoly {
 public:
  RealPoly() = default;
  explicit RealPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    for (auto& r : c_) r.canonicalize();
    trim();
  }
  RealPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static RealPoly constant(const Rat& r) { return RealPoly(std::vector<Rat>{r}); }
  static RealPoly x() { return RealPoly{0, 1}; }
  static RealPoly monomial(const Rat& a, std::size_t k) {
    std::vector<Rat> c(k + 1);
    c[k] = a;
    return RealPoly(std::move(c));
  }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  const std::vector<Rat>& coeffs() const noexcept { return c_; }
  Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
  const Rat& lead() const { return c_.back(); }

  Rat operator()(const Rat& x) const {
    Rat acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) {
      acc *= x;
      acc += c_[k];
    }
    return acc;
  }

  double approx(double x) const {
    double acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k].get_d();
    return acc;
  }

  RealPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return RealPoly(std::move(d));
  }

  RealPoly monic() const {
    if (is_zero()) return {};
    RealPoly m(*this);
    Rat l = lead();
    for (auto& x : m.c_) x /= l;
    return m;
  }

  friend RealPoly operator+(const RealPoly& a, const RealPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return RealPoly(std::move(c));
  }
  friend RealPoly operator-(const RealPoly& a) {
    RealPoly m(a);
    for (auto& x : m.c_) x = -x;
    return m;
  }
  friend RealPoly operator-(const RealPoly& a, const RealPoly& b) { return a + (-b); }
  friend RealPoly operator*(const RealPoly& a, const RealPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return RealPoly(std::move(c));
  }
  friend RealPoly operator*(const Rat& s, const RealPoly& a) { return RealPoly::constant(s) * a; }
  friend bool operator==(const RealPoly& a, const RealPoly& b) { return a.c_ == b.c_; }

  RealPoly pow(unsigned e) const {
    RealPoly r = constant(1), base = *this;
    while (e) {
      if (e & 1u) r = r * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return r;
  }

  /// Euclidean division: *this = q*d + r with deg r < deg d.
  std::pair<RealPoly, RealPoly> divmod(const RealPoly& d) const {
    if (d.is_zero()) throw PreconditionError("polynomial division by zero");
    std::vector<Rat> r = c_;
    if (degree() < d.degree()) return {RealPoly(), *this};
    std::vector<Rat> q(c_.size() - d.c_.size() + 1);
    const Rat& dl = d.lead();
    for (std::size_t k = q.size(); k-- > 0;) {
      Rat f = r[k + d.c_.size() - 1] / dl;
      q[k] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= f * d.c_[j];
    }
    r.resize(d.c_.size() - 1);
    return {RealPoly(std::move(q)), RealPoly(std::move(r))};
  }
  RealPoly operator%(const RealPoly& d) const { return divmod(d).second; }
  RealPoly operator/(const RealPoly& d) const { return divmod(d).first; }

  /// "coeffs: a0,a1,..." with exact rationals.
  std::string to_coeffs_string() const {
    std::string s = "coeffs: ";
    if (c_.empty()) return s + "0";
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (k) s += ",";
      s += c_[k].get_str();
    }
    return s;
  }

  /// Human-readable expression in the given variable, highest degree first.
  std::string to_string(char var = 'x') const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rat& a = c_[k];
      if (a == 0) continue;
      Rat mag = abs(a);
      if (s.empty())
        s += a < 0 ? "-" : "";
      else
        s += a < 0 ? " - " : " + ";
      bool unit = mag == 1 && k > 0;
      if (!unit) s += mag.get_str();
      if (k > 0) {
        if (!unit) s += "*";
        s += var;
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

/// Monic gcd (zero if both inputs are zero).
inline RealPoly poly_gcd(RealPoly a, RealPoly b) {
  while (!b.is_zero()) {
    RealPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline RealPoly squarefree_part(const RealPoly& p) {
  if (p.is_constant()) return p;
  return (p / poly_gcd(p, p.derivative())).monic();
}

/// Yun's algorithm: p = lc * prod_k factors[k]^(k+1), factors pairwise coprime,
/// each squarefree and monic (possibly constant 1).
inline std::vector<RealPoly> squarefree_factorization(const RealPoly& p) {
  std::vector<RealPoly> out;
  if (p.is_constant()) return out;
  RealPoly a = p.monic();
  RealPoly b = a.derivative();
  RealPoly c = poly_gcd(a, b);
  RealPoly w = a / c;
  RealPoly y = b / c;
  RealPoly z = y - w.derivative();
  while (!w.is_constant()) {
    RealPoly g = poly_gcd(w, z);
    out.push_back(g);
    w = w / g;
    y = z / g;
    z = y - w.derivative();
  }
  while (!out.empty() && out.back().is_constant()) out.pop_back();
  return out;
}

/// compose(outer, inner) = outer(inner(x)).
inline RealPoly compose(const RealPoly& outer, const RealPoly& inner) {
  RealPoly acc;
  const auto& c = outer.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * inner + RealPoly::constant(c[k]);
  return acc;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  RealPoly parse() {
    skip_ws();
    RealPoly p = expr(true);
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("syntax error: " + msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  // expr := [sign] term (('+'|'-') term)*
  RealPoly expr(bool allow_sign) {
    RealPoly acc;
    bool negate = false;
    if (allow_sign && (peek('-') || peek('+'))) {
      negate = s_[pos_] == '-';
      ++pos_;
    }
    acc = term();
    if (negate) acc = -acc;
    while (peek('+') || peek('-')) {
      bool minus = s_[pos_] == '-';
      ++pos_;
      RealPoly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  // term := power (('*'|'/') power)*
  RealPoly term() {
    RealPoly acc = power();
    while (peek('*') || peek('/')) {
      bool div = s_[pos_] == '/';
      std::size_t at = pos_;
      ++pos_;
      RealPoly f = power();
      if (div) {
        if (!f.is_constant() || f.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        acc = (1 / f.lead()) * acc;
      } else {
        acc = acc * f;
      }
    }
    return acc;
  }

  // power := primary ['^' integer]
  RealPoly power() {
    RealPoly base = primary();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      std::string digits(s_.substr(start, pos_ - start));
      if (digits.size() > 4) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  RealPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RealPoly inner = expr(true);
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RealPoly::constant(Rat(BigInt(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      if (var_ == 0)
        var_ = c;
      else if (var_ != c)
        fail("second variable '" + std::string(1, c) + "' (polynomial already uses '" + std::string(1, var_) + "')");
      ++pos_;
      if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) fail("variable names are one letter");
      return RealPoly::x();
    }
    fail("expected a number, variable or '('");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  char var_ = 0;
};

}  // namespace detail

/// Parses an expression ("(x+1)*(x-2)^2", "3/2*y^4 - y") or an ascending
/// coefficient list ("coeffs: 1,0,-2,0,1"). Constant results are rejected.
inline RealPoly parse_poly(std::string_view text) {
  std::size_t lead = 0;
  while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
  RealPoly p;
  if (text.substr(lead, 7) == "coeffs:") {
    std::size_t pos = lead + 7;
    std::vector<Rat> coeffs;
    while (true) {
      std::size_t comma = text.find(',', pos);
      std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      auto r = try_parse_rat(item);
      if (!r) {
        std::size_t off = pos;
        while (off < text.size() && std::isspace(static_cast<unsigned char>(text[off]))) ++off;
        throw ParseError("syntax error: bad coefficient '" + std::string(item) + "'", off);
      }
      coeffs.push_back(*r);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    p = RealPoly(std::move(coeffs));
  } else {
    p = detail::PolyParser(text).parse();
  }
  if (p.is_zero()) throw InputError("zero polynomial");
  if (p.degree() == 0) throw InputError("polynomial has degree 0");
  return p;
}

// ---------------------------------------------------------------------------
// Intervals and root isolation

/// Closed rational interval; lo == hi denotes an exactly known point.
struct Interval {
  Rat lo, hi;
  bool is_point() const { return lo == hi; }
  Rat width() const { return hi - lo; }
  Rat mid() const {
    Rat m = (lo + hi) / 2;
    m.canonicalize();
    return m;
  }
  double approx() const { return mid().get_d(); }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool overlaps(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
};

/// Range of p over [iv.lo, iv.hi] by interval Horner evaluation.
inline Interval eval_interval(const RealPoly& p, const Interval& iv) {
  if (iv.is_point()) {
    Rat v = p(iv.lo);
    return {v, v};
  }
  Rat lo = 0, hi = 0;
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    Rat a = lo * iv.lo, b = lo * iv.hi, d = hi * iv.lo, e = hi * iv.hi;
    lo = std::min({a, b, d, e}) + c[k];
    hi = std::max({a, b, d, e}) + c[k];
  }
  return {lo, hi};
}

class SturmSequence {
 public:
  explicit SturmSequence(const RealPoly& p) {
    seq_.push_back(p);
    seq_.push_back(p.derivative());
    while (!seq_.back().is_zero() && seq_.back().degree() > 0) {
      RealPoly r = seq_[seq_.size() - 2] % seq_.back();
      if (r.is_zero()) break;
      seq_.push_back(-r);
    }
  }

  int variations(const Rat& x) const {
    int count = 0, prev = 0;
    for (const auto& q : seq_) {
      int s = sign(q(x));
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }

  /// Distinct roots in (a, b]; a must not be a root.
  int count(const Rat& a, const Rat& b) const { return variations(a) - variations(b); }

 private:
  std::vector<RealPoly> seq_;
};

inline Rat cauchy_bound(const RealPoly& p) {
  Rat m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rat(abs(p.coeff(k) / p.lead())));
  return m + 1;
}

/// Shrinks an isolating interval of a simple root of the squarefree q by
/// one bisection. Endpoints are never roots unless the interval is a point.
inline void bisect_root(const RealPoly& q, Interval& iv) {
  if (iv.is_point()) return;
  Rat m = iv.mid();
  int sm = sign(q(m));
  if (sm == 0) {
    iv = {m, m};
    return;
  }
  if (sign(q(iv.lo)) * sm < 0)
    iv.hi = m;
  else
    iv.lo = m;
}

inline void refine_root_to(const RealPoly& q, Interval& iv, const Rat& width) {
  while (!iv.is_point() && iv.width() > width) bisect_root(q, iv);
}

namespace detail {

/// Isolating intervals (open, non-root rational endpoints) for the real
/// roots of a squarefree polynomial, sorted and pairwise disjoint.
inline std::vector<Interval> isolate_squarefree(const RealPoly& q) {
  std::vector<Interval> out;
  if (q.degree() < 1) return out;
  SturmSequence sturm(q);
  Rat bound = cauchy_bound(q) + 1;
  struct Job {
    Rat a, b;
    int n;
  };
  std::vector<Job> stack{{-bound, bound, sturm.count(-bound, bound)}};
  static const std::pair<long, long> kSplits[] = {{1, 2}, {1, 3}, {2, 3}, {2, 5}, {3, 5}, {3, 7}, {4, 7}, {5, 11}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    if (j.n == 0) continue;
    if (j.n == 1) {
      out.push_back({j.a, j.b});
      continue;
    }
    Rat m;
    for (auto [num, den] : kSplits) {
      m = j.a + (j.b - j.a) * Rat(num, den);
      if (q(m) != 0) break;
    }
    int left = sturm.count(j.a, m);
    stack.push_back({m, j.b, j.n - left});
    stack.push_back({j.a, m, left});
  }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  return out;
}

}  // namespace detail

struct RealRoot {
  Interval iso;
  int multiplicity = 1;
  /// Squarefree factor that has this root as a simple root.
  RealPoly factor;
};

struct RootIsolation {
  std::vector<RealRoot> roots;
  int nonreal_count = 0;
};

/// Sturm isolation of every real root with multiplicity, sorted, pairwise
/// disjoint, refined to width <= 2^-32 times the root bound.
inline RootIsolation real_roots(const RealPoly& p) {
  if (p.degree() < 1) throw PreconditionError("real_roots needs a nonconstant polynomial");
  RootIsolation out;
  auto factors = squarefree_factorization(p);
  Rat target = cauchy_bound(p) / Rat(BigInt(1) << 32);
  int real_count = 0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].degree() < 1) continue;
    for (auto& iv : detail::isolate_squarefree(factors[k])) {
      refine_root_to(factors[k], iv, target);
      out.roots.push_back({iv, static_cast<int>(k + 1), factors[k]});
      real_count += static_cast<int>(k + 1);
    }
  }
  auto by_lo = [](const RealRoot& a, const RealRoot& b) { return a.iso.lo < b.iso.lo; };
  std::sort(out.roots.begin(), out.roots.end(), by_lo);
  // Roots of different factors are distinct; shrink until the boxes separate.
  for (bool clash = true; clash;) {
    clash = false;
    for (std::size_t i = 0; i + 1 < out.roots.size(); ++i) {
      auto& a = out.roots[i];
      auto& b = out.roots[i + 1];
      if (a.iso.overlaps(b.iso)) {
        clash = true;
        bisect_root(a.factor, a.iso);
        bisect_root(b.factor, b.iso);
      }
    }
    std::sort(out.roots.begin(), out.roots.end(), by_lo);
  }
  out.nonreal_count = p.degree() - real_count;
  return out;
}

// ---------------------------------------------------------------------------
// Real algebraic numbers

/// A real root of a squarefree rational polynomial, pinned by an isolating
/// interval. `exact` is set once the number is recognized as rational.
struct AlgebraicNumber {
  RealPoly defining;
  Interval iso;
  std::optional<Rat> exact;

  void refine() {
    if (exact) return;
    bisect_root(defining, iso);
    if (iso.is_point()) exact = iso.lo;
  }

  Interval bounds() const { return exact ? Interval{*exact, *exact} : iso; }
  double approx() const { return exact ? exact->get_d() : iso.approx(); }

  /// Checks whether the simplest rational inside the box is a root.
  bool try_recognize_rational() {
    if (exact) return true;
    Rat r = simplest_between(iso.lo, iso.hi);
    if (defining(r) == 0) {
      exact = r;
      iso = {r, r};
    }
    return exact.has_value();
  }
};

inline constexpr int kMaxRefinement = 256;

// ---------------------------------------------------------------------------
// Critical data

enum class AxisRole { G, H };

inline const char* role_name(AxisRole r) { return r == AxisRole::G ? "g" : "h"; }

namespace detail {

/// Characteristic polynomial by Faddeev-LeVerrier over Q.
inline RealPoly char_poly(const std::vector<std::vector<Rat>>& a) {
  const std::size_t n = a.size();
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    // m <- a*m + c[n-k+1] I
    std::vector<std::vector<Rat>> next(n, std::vector<Rat>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] += a[i][l] * m[l][j];
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    m = std::move(next);
    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return RealPoly(std::move(c));
}

}  // namespace detail

/// Res_x(p'(x), y - p(x)) up to a nonzero constant: the characteristic
/// polynomial of multiplication by p in Q[x]/(p'). Its roots are the
/// critical values, one per critical point.
inline RealPoly critical_value_resultant(const RealPoly& p) {
  RealPoly d = p.derivative();
  const std::size_t m = static_cast<std::size_t>(d.degree());
  RealPoly pm = p % d;
  std::vector<std::vector<Rat>> mat(m, std::vector<Rat>(m, 0));
  RealPoly xk = RealPoly::constant(1);
  for (std::size_t k = 0; k < m; ++k) {
    RealPoly col = (xk * pm) % d;
    for (std::size_t r = 0; r < m; ++r) mat[r][k] = col.coeff(r);
    xk = (xk * RealPoly::x()) % d;
  }
  return detail::char_poly(mat);
}

struct CriticalData {
  RealPoly poly;
  AxisRole role = AxisRole::G;
  /// Isolating intervals of the critical points, sorted increasing.
  std::vector<Interval> critical_points;
  /// Critical value at each spatial position.
  std::vector<AlgebraicNumber> critical_values;
  /// Index of each position's value among the distinct values, ascending.
  std::vector<std::size_t> value_class;
  /// Blocks of 1-based positions sharing a critical value, by first position.
  std::vector<std::vector<std::size_t>> coincidence_partition;
  /// 1-based rank of each position's value: ascending for g, descending for
  /// h, ties broken by spatial order.
  std::vector<std::size_t> value_rank;

  std::size_t size() const noexcept { return critical_points.size(); }
  bool same_value(std::size_t pos_a, std::size_t pos_b) const { return value_class[pos_a] == value_class[pos_b]; }
};

inline CriticalData critical_data(const RealPoly& p, AxisRole role) {
  if (p.degree() < 2) throw PreconditionError("critical data needs degree >= 2");
  RealPoly d = p.derivative();
  if (!poly_gcd(d, d.derivative()).is_constant())
    throw DegenerateCriticalPoint("p' has a multiple root: " + p.to_string());
  const std::size_t n = static_cast<std::size_t>(d.degree());
  auto points = detail::isolate_squarefree(d);
  if (points.size() != n)
    throw NonRealCriticalPoint(std::to_string(n - points.size()) + " non-real critical points: " + p.to_string());
  Rat target = cauchy_bound(d) / Rat(BigInt(1) << 32);
  for (auto& iv : points) refine_root_to(d, iv, target);

  RealPoly value_poly = squarefree_part(critical_value_resultant(p));
  auto value_boxes = detail::isolate_squarefree(value_poly);

  CriticalData cd;
  cd.poly = p;
  cd.role = role;
  cd.critical_points = points;
  cd.value_class.resize(n);
  cd.critical_values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Interval& pt = cd.critical_points[i];
    for (int it = 0;; ++it) {
      Interval img = eval_interval(p, pt);
      std::vector<std::size_t> hits;
      for (std::size_t v = 0; v < value_boxes.size(); ++v)
        if (img.overlaps(value_boxes[v])) hits.push_back(v);
      if (hits.size() == 1) {
        cd.value_class[i] = hits[0];
        break;
      }
      if (hits.empty() || it > 4 * kMaxRefinement)
        throw UndecidedCoincidence("could not match critical value to a resultant root");
      bisect_root(d, pt);
      for (std::size_t v : hits) bisect_root(value_poly, value_boxes[v]);
    }
  }
  std::vector<AlgebraicNumber> distinct;
  for (const auto& box : value_boxes) {
    AlgebraicNumber a{value_poly, box, std::nullopt};
    if (box.is_point()) a.exact = box.lo;
    for (int it = 0; it < 96 && !a.try_recognize_rational(); ++it) a.refine();
    distinct.push_back(std::move(a));
  }
  for (std::size_t i = 0; i < n; ++i) cd.critical_values[i] = distinct[cd.value_class[i]];

  std::vector<std::size_t> block_of(value_boxes.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t vc = cd.value_class[i];
    if (block_of[vc] == static_cast<std::size_t>(-1)) {
      block_of[vc] = cd.coincidence_partition.size();
      cd.coincidence_partition.emplace_back();
    }
    cd.coincidence_partition[block_of[vc]].push_back(i + 1);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cd.value_class[a] == cd.value_class[b]) return false;
    return role == AxisRole::G ? cd.value_class[a] < cd.value_class[b] : cd.value_class[a] > cd.value_class[b];
  });
  cd.value_rank.resize(n);
  for (std::size_t r = 0; r < n; ++r) cd.value_rank[order[r]] = r + 1;
  return cd;
}

/// Number of vanishing cycles of g(x) + h(y).
inline std::size_t milnor_number(std::size_t d, std::size_t e) {
  if (d < 2 || e < 2) throw PreconditionError("milnor_number needs d, e >= 2");
  return (d - 1) * (e - 1);
}

// ---------------------------------------------------------------------------
// Functional decomposition

struct Decomposition {
  RealPoly inner;  ///< monic, zero constant term
  RealPoly outer;
};

/// Expansion p = sum_k b_k inner^k with deg b_k < deg inner.
inline std::vector<RealPoly> base_expansion(RealPoly p, const RealPoly& inner) {
  std::vector<RealPoly> digits;
  while (!p.is_zero()) {
    auto [q, r] = p.divmod(inner);
    digits.push_back(std::move(r));
    p = std::move(q);
  }
  return digits;
}

/// Finds p = outer(inner) with deg inner = inner_degree, or nullopt.
inline std::optional<Decomposition> decompose(const RealPoly& p, std::size_t inner_degree) {
  const int n = p.degree();
  if (inner_degree < 2 || n < 0 || static_cast<std::size_t>(n) % inner_degree != 0 ||
      inner_degree > static_cast<std::size_t>(n) / 2)
    throw PreconditionError("inner degree must divide deg p with 2 <= a <= deg p / 2");
  const std::size_t s = inner_degree;
  const long r = n / static_cast<long>(s);
  // Reversed monic p is 1 + a_1 t + ...; its r-th root mod t^(s+1) gives the
  // reversed candidate inner polynomial.
  RealPoly q = p.monic();
  std::vector<Rat> b(s + 1), a(s + 1);
  for (std::size_t k = 0; k <= s; ++k) b[k] = q.coeff(static_cast<std::size_t>(n) - k);
  a[0] = 1;
  Rat alpha(1, r);
  for (std::size_t k = 1; k <= s; ++k) {
    Rat acc = 0;
    for (std::size_t j = 1; j <= k; ++j)
      acc += ((alpha + 1) * static_cast<long>(j) - static_cast<long>(k)) * b[j] * a[k - j];
    a[k] = acc / static_cast<long>(k);
  }
  std::vector<Rat> inner_c(s + 1);
  for (std::size_t k = 0; k < s; ++k) inner_c[s - k] = a[k];
  inner_c[0] = 0;
  RealPoly inner(std::move(inner_c));

  auto digits = base_expansion(q, inner);
  std::vector<Rat> outer_c;
  for (const auto& dgt : digits) {
    if (dgt.degree() > 0) return std::nullopt;
    outer_c.push_back(dgt.coeff(0) * p.lead());
  }
  RealPoly outer(std::move(outer_c));
  if (outer.degree() < 2) return std::nullopt;
  return Decomposition{std::move(inner), std::move(outer)};
}

/// outer such that p = outer(inner) exactly, if one exists.
inline std::optional<RealPoly> outer_for(const RealPoly& p, const RealPoly& inner) {
  if (inner.degree() < 1) return std::nullopt;
  std::vector<Rat> outer_c;
  for (const auto& dgt : base_expansion(p, inner)) {
    if (dgt.degree() > 0) return std::nullopt;
    outer_c.push_back(dgt.coeff(0));
  }
  return RealPoly(std::move(outer_c));
}

}  // namespace vancycle
