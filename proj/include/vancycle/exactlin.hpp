#pragma once

// Exact linear algebra over the rationals for cycle lattices: canonical
// subspace bases, Krylov spans and invariant closures under integer matrices.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vancycle/errors.hpp"
#include "vancycle/rational.hpp"

namespace vancycle {

/// Element of the cycle lattice tensored with Q, in the join-cycle basis.
class CycleVector {
 public:
  CycleVector() = default;
  explicit CycleVector(std::size_t dim) : entries_(dim) {}
  explicit CycleVector(std::vector<Rat> entries) : entries_(std::move(entries)) {}
  CycleVector(std::initializer_list<long> ints) {
    entries_.reserve(ints.size());
    for (long v : ints) entries_.emplace_back(v);
  }

  static CycleVector unit(std::size_t dim, std::size_t k) {
    CycleVector v(dim);
    v.entries_.at(k) = 1;
    return v;
  }

  std::size_t dim() const noexcept { return entries_.size(); }
  const Rat& operator[](std::size_t i) const { return entries_[i]; }
  Rat& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Rat>& entries() const noexcept { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rat& r) { return r == 0; });
  }

  friend bool operator==(const CycleVector& a, const CycleVector& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Rat> entries_;
};

/// Dense square integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  IntMatrix(std::size_t n, std::vector<std::int64_t> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n * n) throw DimensionMismatch("matrix entry count does not match size");
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  const std::vector<std::int64_t>& data() const noexcept { return a_; }

  IntMatrix transpose() const {
    IntMatrix t(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  IntMatrix operator-() const {
    IntMatrix m(*this);
    for (auto& x : m.a_) x = -x;
    return m;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("matrix product of different sizes");
    IntMatrix m(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        std::int64_t aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

  bool is_skew_symmetric() const {
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = r; c < n_; ++c)
        if ((*this)(r, c) != -(*this)(c, r)) return false;
    return true;
  }

  CycleVector apply(const CycleVector& v) const {
    if (v.dim() != n_) throw DimensionMismatch("vector dimension does not match matrix");
    CycleVector out(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      Rat acc = 0;
      for (std::size_t c = 0; c < n_; ++c) {
        std::int64_t m = (*this)(r, c);
        if (m != 0 && v[c] != 0) acc += Rat(static_cast<long>(m)) * v[c];
      }
      out[r] = acc;
    }
    return out;
  }

  /// Exact determinant by Bareiss fraction-free elimination.
  BigInt determinant() const {
    if (n_ == 0) return 1;
    std::vector<BigInt> m(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) m[i] = static_cast<long>(a_[i]);
    auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return m[r * n_ + c]; };
    BigInt prev = 1;
    int flip = 1;
    for (std::size_t k = 0; k + 1 < n_; ++k) {
      if (at(k, k) == 0) {
        std::size_t s = k + 1;
        while (s < n_ && at(s, k) == 0) ++s;
        if (s == n_) return 0;
        for (std::size_t c = 0; c < n_; ++c) std::swap(at(k, c), at(s, c));
        flip = -flip;
      }
      for (std::size_t i = k + 1; i < n_; ++i) {
        for (std::size_t j = k + 1; j < n_; ++j) {
          BigInt t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
          mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
          at(i, j) = t;
        }
        at(i, k) = 0;
      }
      prev = at(k, k);
    }
    return flip * at(n_ - 1, n_ - 1);
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

/// Row-reduced basis of a subspace of Q^n: pivots are 1 and the pivot
/// columns vanish in every other row. Rows are ordered by pivot column.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  explicit SubspaceBasis(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

  static SubspaceBasis full(std::size_t n) {
    SubspaceBasis b(n);
    for (std::size_t i = 0; i < n; ++i) {
      b.rows_.push_back(CycleVector::unit(n, i));
      b.pivots_.push_back(i);
    }
    return b;
  }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<CycleVector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivot_cols() const noexcept { return pivots_; }

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

  /// Residual of v after subtracting its projection along the pivot columns.
  CycleVector reduce(const CycleVector& v) const {
    check_dim(v);
    CycleVector w = v;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rat f = w[pivots_[r]];
      if (f == 0) continue;
      const CycleVector& row = rows_[r];
      for (std::size_t c = pivots_[r]; c < ambient_dim_; ++c)
        if (row[c] != 0) w[c] -= f * row[c];
    }
    return w;
  }

  bool contains(const CycleVector& v) const { return reduce(v).is_zero(); }

  /// Adds v to the span; returns true iff the rank grew.
  bool insert(const CycleVector& v) {
    CycleVector w = reduce(v);
    std::size_t p = 0;
    while (p < ambient_dim_ && w[p] == 0) ++p;
    if (p == ambient_dim_) return false;
    Rat lead = w[p];
    for (std::size_t c = p; c < ambient_dim_; ++c)
      if (w[c] != 0) w[c] /= lead;
    for (auto& row : rows_) {
      Rat f = row[p];
      if (f == 0) continue;
      for (std::size_t c = p; c < ambient_dim_; ++c)
        if (w[c] != 0) row[c] -= f * w[c];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(w));
    return true;
  }

  void check_dim(const CycleVector& v) const {
    if (v.dim() != ambient_dim_)
      throw DimensionMismatch("vector of dimension " + std::to_string(v.dim()) +
                              " against ambient dimension " + std::to_string(ambient_dim_));
  }

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<CycleVector> rows_;
  std::vector<std::size_t> pivots_;
};

namespace detail {

/// Integer echelon form kept fraction-free: rows are primitive integer
/// vectors, each zero before its pivot. Converted to the canonical rational
/// form only at the end.
class IntegerEchelon {
 public:
  explicit IntegerEchelon(std::size_t n) : n_(n) {}

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return n_; }

  /// Reduces w in place against the current rows (fraction-free).
  void reduce(std::vector<BigInt>& w) const {
    BigInt g, a, b;
    for (const auto& row : rows_) {
      const std::size_t p = row.pivot;
      if (w[p] == 0) continue;
      mpz_gcd(g.get_mpz_t(), row.v[p].get_mpz_t(), w[p].get_mpz_t());
      mpz_divexact(a.get_mpz_t(), row.v[p].get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), w[p].get_mpz_t(), g.get_mpz_t());
      for (std::size_t c = 0; c < n_; ++c) {
        if (c < p && w[c] == 0) continue;
        if (a != 1) w[c] *= a;
        if (c >= p && row.v[c] != 0) mpz_submul(w[c].get_mpz_t(), b.get_mpz_t(), row.v[c].get_mpz_t());
      }
      make_primitive(w);
    }
  }

  bool contains(std::vector<BigInt> w) const {
    reduce(w);
    return std::all_of(w.begin(), w.end(), [](const BigInt& x) { return x == 0; });
  }

  /// Inserts w; returns the reduced vector that was added, or nullptr if
  /// w was already in the span.
  const std::vector<BigInt>* insert(std::vector<BigInt> w) {
    reduce(w);
    std::size_t p = 0;
    while (p < n_ && w[p] == 0) ++p;
    if (p == n_) return nullptr;
    if (w[p] < 0)
      for (auto& x : w) x = -x;
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), p,
                                [](const Row& r, std::size_t piv) { return r.pivot < piv; });
    pos = rows_.insert(pos, Row{p, std::move(w)});
    return &pos->v;
  }

  SubspaceBasis to_basis() const {
    // Back-substitute in rationals from the last pivot upward.
    std::vector<CycleVector> rat_rows;
    rat_rows.reserve(rows_.size());
    for (const auto& row : rows_) {
      CycleVector v(n_);
      for (std::size_t c = 0; c < n_; ++c)
        if (row.v[c] != 0) v[c] = Rat(row.v[c], row.v[row.pivot]);
      for (std::size_t c = 0; c < n_; ++c) v[c].canonicalize();
      rat_rows.push_back(std::move(v));
    }
    for (std::size_t r = rows_.size(); r-- > 0;) {
      const std::size_t p = rows_[r].pivot;
      for (std::size_t above = 0; above < r; ++above) {
        Rat f = rat_rows[above][p];
        if (f == 0) continue;
        for (std::size_t c = p; c < n_; ++c)
          if (rat_rows[r][c] != 0) rat_rows[above][c] -= f * rat_rows[r][c];
      }
    }
    SubspaceBasis basis(n_);
    for (auto& v : rat_rows) basis.insert(v);
    return basis;
  }

  static void make_primitive(std::vector<BigInt>& w) {
    BigInt g = 0;
    for (const auto& x : w) {
      if (x == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
    if (g <= 1) return;
    for (auto& x : w)
      if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<BigInt> v;
  };
  std::size_t n_;
  std::vector<Row> rows_;
};

/// Clears denominators: returns a primitive integer vector parallel to v.
inline std::vector<BigInt> integer_direction(const CycleVector& v) {
  BigInt l = 1;
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (v[i] != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v[i].get_den_mpz_t());
  std::vector<BigInt> w(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v[i] == 0) continue;
    BigInt q = l / v[i].get_den();
    w[i] = q * v[i].get_num();
  }
  IntegerEchelon::make_primitive(w);
  return w;
}

/// Nonzero pattern of an integer matrix, for fast products with big vectors.
struct SparseRows {
  explicit SparseRows(const IntMatrix& m) : rows(m.size()) {
    for (std::size_t r = 0; r < m.size(); ++r)
      for (std::size_t c = 0; c < m.size(); ++c)
        if (m(r, c) != 0) rows[r].emplace_back(c, static_cast<long>(m(r, c)));
  }
  std::vector<BigInt> apply(const std::vector<BigInt>& v) const {
    std::vector<BigInt> out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (auto [c, m] : rows[r]) {
        if (v[c] == 0) continue;
        if (m == 1)
          out[r] += v[c];
        else if (m == -1)
          out[r] -= v[c];
        else
          out[r] += m * v[c];
      }
    return out;
  }
  std::vector<std::vector<std::pair<std::size_t, long>>> rows;
};

namespace modp {

inline constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

inline std::uint64_t reduce(unsigned __int128 x) {
  std::uint64_t r = static_cast<std::uint64_t>(x & kPrime) + static_cast<std::uint64_t>(x >> 61);
  r = (r & kPrime) + (r >> 61);
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return reduce(static_cast<unsigned __int128>(a) * b); }
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) { return sub(a, kPrime - b); }
inline std::uint64_t inv(std::uint64_t a) {
  std::uint64_t r = 1, e = kPrime - 2;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t from_long(long x) {
  return x >= 0 ? static_cast<std::uint64_t>(x) % kPrime : sub(0, static_cast<std::uint64_t>(-x) % kPrime);
}
inline std::uint64_t from_big(const BigInt& x) {
  static const BigInt p = [] {
    BigInt q;
    mpz_ui_pow_ui(q.get_mpz_t(), 2, 61);
    return BigInt(q - 1);
  }();
  BigInt m;
  mpz_fdiv_r(m.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return mpz_get_ui(m.get_mpz_t());
}

/// Wang's rational reconstruction with |num|, den below sqrt(p/2).
inline std::optional<Rat> reconstruct(std::uint64_t a) {
  constexpr std::int64_t bound = 1073741823;  // floor(sqrt(2^60))
  std::int64_t r0 = static_cast<std::int64_t>(kPrime), r1 = static_cast<std::int64_t>(a);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 > bound) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || s1 > bound || s1 < -bound || std::gcd(r1, s1) != 1) return std::nullopt;
  if (s1 < 0) {
    s1 = -s1;
    r1 = -r1;
  }
  return Rat(BigInt(static_cast<long>(r1)), BigInt(static_cast<long>(s1)));
}

/// Reduced row echelon form over F_p, grown one vector at a time.
class Echelon {
 public:
  explicit Echelon(std::size_t n) : n_(n), pivot_row_(n, npos) {}
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<std::vector<std::uint64_t>>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Adds u to the span; returns the normalized new row or null.
  const std::vector<std::uint64_t>* insert(std::vector<std::uint64_t> u) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint64_t f = u[pivots_[r]];
      if (f == 0) continue;
      const auto& row = rows_[r];
      for (std::size_t c : support_[r]) u[c] = sub(u[c], mul(f, row[c]));
    }
    std::size_t p = 0;
    while (p < n_ && u[p] == 0) ++p;
    if (p == n_) return nullptr;
    const std::uint64_t iv = inv(u[p]);
    std::vector<std::size_t> supp;
    for (std::size_t c = 0; c < n_; ++c)
      if (u[c]) {
        u[c] = mul(u[c], iv);
        supp.push_back(c);
      }
    // Keep the form reduced: clear column p in the older rows.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint64_t f = rows_[r][p];
      if (f == 0) continue;
      auto& row = rows_[r];
      for (std::size_t c : supp) row[c] = sub(row[c], mul(f, u[c]));
      support_[r].clear();
      for (std::size_t c = 0; c < n_; ++c)
        if (row[c]) support_[r].push_back(c);
    }
    pivot_row_[p] = rows_.size();
    pivots_.push_back(p);
    rows_.push_back(std::move(u));
    support_.push_back(std::move(supp));
    return &rows_.back();
  }

  /// Rows sorted by pivot with entries lifted to small rationals, or
  /// nothing if some entry is out of reconstruction range.
  std::optional<SubspaceBasis> lift() const {
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    SubspaceBasis basis(n_);
    for (std::size_t r : order) {
      CycleVector v(n_);
      for (std::size_t c : support_[r]) {
        auto q = reconstruct(rows_[r][c]);
        if (!q) return std::nullopt;
        v[c] = *q;
      }
      basis.insert(v);
    }
    return basis;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t n_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::vector<std::size_t>> support_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> pivot_row_;
};

inline std::vector<std::uint64_t> mul_vec(const SparseRows& m, const std::vector<std::uint64_t>& u) {
  std::vector<std::uint64_t> out(m.rows.size(), 0);
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    std::uint64_t acc = 0;
    for (auto [c, x] : m.rows[r]) {
      if (u[c] == 0) continue;
      if (x == 1)
        acc = add(acc, u[c]);
      else if (x == -1)
        acc = sub(acc, u[c]);
      else
        acc = add(acc, mul(from_long(x), u[c]));
    }
    out[r] = acc;
  }
  return out;
}

inline std::vector<std::uint64_t> lower(const std::vector<BigInt>& v) {
  std::vector<std::uint64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] == 0 ? 0 : from_big(v[i]);
  return out;
}

/// True when det m is nonzero mod p, which proves det m != 0 over Z.
inline bool det_nonzero(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::uint64_t> a(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = from_long(m.data()[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return false;
    if (piv != c)
      for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
    const std::uint64_t iv = inv(a[c * n + c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      std::uint64_t f = mul(a[r * n + c], iv);
      if (f == 0) continue;
      for (std::size_t k = c; k < n; ++k)
        if (a[c * n + k]) a[r * n + k] = sub(a[r * n + k], mul(f, a[c * n + k]));
    }
  }
  return true;
}

/// Smallest subspace over F_p containing seed and invariant under gens.
inline Echelon closure(std::span<const SparseRows> gens, const std::vector<BigInt>& seed) {
  const std::size_t n = seed.size();
  Echelon ech(n);
  std::vector<std::vector<std::uint64_t>> queue;
  if (const auto* r = ech.insert(lower(seed))) queue.push_back(*r);
  for (std::size_t head = 0; head < queue.size() && ech.rank() < n; ++head)
    for (const auto& g : gens) {
      if (const auto* r = ech.insert(mul_vec(g, queue[head]))) queue.push_back(*r);
      if (ech.rank() == n) break;
    }
  return ech;
}

}  // namespace modp

/// Rational product m * v using the sparse pattern.
inline CycleVector apply_rat(const SparseRows& m, const CycleVector& v) {
  CycleVector out(m.rows.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    for (auto [c, x] : m.rows[r])
      if (v[c] != 0) out[r] += x * v[c];
  return out;
}

/// Exact certificate for a candidate closure B: seed in B and g(B) in B for
/// every generator. Together with dim B not exceeding the modular rank (a
/// lower bound for the rational one) this proves B is the closure.
inline bool certifies_closure(std::span<const SparseRows> gens, const CycleVector& seed, const SubspaceBasis& b) {
  if (!b.contains(seed)) return false;
  for (const auto& row : b.rows())
    for (const auto& g : gens)
      if (!b.contains(apply_rat(g, row))) return false;
  return true;
}

/// Closure over Q: the modular answer lifted and certified, or fraction-free
/// elimination when lifting fails.
inline SubspaceBasis closure_exact(std::span<const SparseRows> gens, const CycleVector& seed, bool krylov) {
  const std::size_t n = seed.dim();
  if (seed.is_zero()) return SubspaceBasis(n);
  std::vector<BigInt> w = integer_direction(seed);
  modp::Echelon mod = modp::closure(gens, w);
  if (mod.rank() == n) return SubspaceBasis::full(n);
  if (auto lifted = mod.lift(); lifted && lifted->rank() == mod.rank() && certifies_closure(gens, seed, *lifted))
    return std::move(*lifted);

  IntegerEchelon ech(n);
  if (krylov) {
    // single generator: follow the last new direction
    const std::vector<BigInt>* last = ech.insert(std::move(w));
    while (last != nullptr && ech.rank() < n) last = ech.insert(gens[0].apply(*last));
  } else {
    std::vector<std::vector<BigInt>> queue;
    queue.push_back(*ech.insert(std::move(w)));
    for (std::size_t head = 0; head < queue.size() && ech.rank() < n; ++head)
      for (const auto& g : gens) {
        const std::vector<BigInt>* added = ech.insert(g.apply(queue[head]));
        if (added != nullptr) queue.push_back(*added);
        if (ech.rank() == n) break;
      }
  }
  if (ech.rank() == n) return SubspaceBasis::full(n);
  return ech.to_basis();
}

}  // namespace detail

/// Canonical reduced row-echelon basis of span(vectors).
inline SubspaceBasis rref_basis(std::span<const CycleVector> vectors, std::size_t ambient_dim) {
  detail::IntegerEchelon ech(ambient_dim);
  for (const auto& v : vectors) {
    if (v.dim() != ambient_dim) throw DimensionMismatch("vectors of differing dimension");
    if (v.is_zero()) continue;
    ech.insert(detail::integer_direction(v));
  }
  return ech.to_basis();
}

inline SubspaceBasis rref_basis(std::span<const CycleVector> vectors) {
  if (vectors.empty()) throw DimensionMismatch("ambient dimension unknown for an empty vector list");
  return rref_basis(vectors, vectors.front().dim());
}

inline bool member(const SubspaceBasis& basis, const CycleVector& v) { return basis.contains(v); }

inline std::pair<SubspaceBasis, bool> extend_span(SubspaceBasis basis, const CycleVector& v) {
  bool grew = basis.insert(v);
  return {std::move(basis), grew};
}

/// span{v, psi v, psi^2 v, ...}.
inline SubspaceBasis krylov_span(const IntMatrix& psi, const CycleVector& v) {
  const std::size_t n = psi.size();
  if (v.dim() != n) throw DimensionMismatch("Krylov seed dimension does not match matrix");
  const detail::SparseRows sparse[1] = {detail::SparseRows(psi)};
  return detail::closure_exact(sparse, v, true);
}

/// Krylov spans of many seeds under one matrix. Invariant subspaces already
/// found are reused when the seed lies in one of the right dimension.
class KrylovSpans {
 public:
  explicit KrylovSpans(const IntMatrix& psi) : n_(psi.size()), sparse_{detail::SparseRows(psi)} {}

  SubspaceBasis span(const CycleVector& v) {
    if (v.dim() != n_) throw DimensionMismatch("Krylov seed dimension does not match matrix");
    if (v.is_zero()) return SubspaceBasis(n_);
    const std::size_t r = detail::modp::closure(sparse_, detail::integer_direction(v)).rank();
    if (r == n_) return SubspaceBasis::full(n_);
    // The rational span has dimension >= r and lies inside any invariant
    // subspace holding v.
    for (const auto& s : known_)
      if (s.rank() == r && s.contains(v)) return s;
    known_.push_back(detail::closure_exact(sparse_, v, true));
    return known_.back();
  }

 private:
  std::size_t n_;
  std::vector<detail::SparseRows> sparse_;
  std::vector<SubspaceBasis> known_;
};

/// Smallest subspace containing seed and mapped into itself by every
/// generator. Generators must be invertible over Q.
inline SubspaceBasis invariant_closure(std::span<const IntMatrix> generators, const CycleVector& seed) {
  const std::size_t n = seed.dim();
  for (const auto& g : generators) {
    if (g.size() != n) throw DimensionMismatch("generator size does not match seed dimension");
    if (!detail::modp::det_nonzero(g) && g.determinant() == 0)
      throw SingularGenerator("closure generator has zero determinant");
  }
  std::vector<detail::SparseRows> sparse;
  sparse.reserve(generators.size());
  for (const auto& g : generators) sparse.emplace_back(g);
  return detail::closure_exact(sparse, seed, false);
}

/// Mutual containment.
inline bool same_subspace(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.rank() != b.rank()) return false;
  return std::all_of(b.rows().begin(), b.rows().end(), [&](const CycleVector& r) { return a.contains(r); });
}

inline bool is_subspace_of(const SubspaceBasis& small, const SubspaceBasis& big) {
  return std::all_of(small.rows().begin(), small.rows().end(),
                     [&](const CycleVector& r) { return big.contains(r); });
}

}  // namespace vancycle
