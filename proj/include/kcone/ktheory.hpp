#pragma once

#include "kcone/nilpotent.hpp"
#include "kcone/repcalc.hpp"
#include "kcone/rootdata.hpp"

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kcone {

/*
 * An element of the equivariant K-theory of the nilpotent cone written in
 * the basis {[gamma]_theta : gamma dominant}.  Non-dominant weights are
 * folded onto their dominant conjugate with coefficient +1: induction from
 * the maximal torus is Weyl invariant, the signs of the pushforward formula
 * live in the subset sums.
 */
struct KClass {
  std::map<Weight, Integer> coeffs;  // dominant keys, nonzero values
  std::optional<Integer> rank;       // virtual fiber dimension over the open orbit, if meaningful

  bool empty() const { return coeffs.empty(); }

  Integer coefficient(Weight const& w) const {
    auto it = coeffs.find(w);
    return it == coeffs.end() ? Integer(0) : it->second;
  }

  /// Adds c [w] to an already-dominant key.
  void add_dominant(Weight const& w, Integer const& c) {
    if (c == 0) return;
    auto [it, fresh] = coeffs.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) coeffs.erase(it);
    }
  }

  /// Adds c [w], folding w to its dominant conjugate.
  void add(RootDatum const& rd, Weight const& w, Integer const& c) { add_dominant(dominant_conjugate(rd, w), c); }

  KClass& operator+=(KClass const& o) {
    for (auto const& [w, c] : o.coeffs) add_dominant(w, c);
    rank = (rank && o.rank) ? std::optional<Integer>(*rank + *o.rank) : std::nullopt;
    return *this;
  }
  KClass& operator*=(Integer const& k) {
    if (k == 0) {
      coeffs.clear();
    } else {
      for (auto& [w, c] : coeffs) c *= k;
    }
    if (rank) *rank *= k;
    return *this;
  }
  friend KClass operator+(KClass a, KClass const& b) { return a += b; }
  friend KClass operator*(Integer const& k, KClass a) { return a *= k; }
  friend KClass operator-(KClass a, KClass const& b) { return a += Integer(-1) * b; }

  /// Equality of the classes; ranks are bookkeeping and not compared.
  bool same_class(KClass const& o) const { return coeffs == o.coeffs; }
};

/// Builds a class from raw (weight, coefficient) pairs, folding each weight.
inline KClass make_kclass(RootDatum const& rd, std::span<const std::pair<Weight, Integer>> terms) {
  KClass k;
  for (auto const& [w, c] : terms) k.add(rd, w, c);
  return k;
}

inline KClass gamma_class(RootDatum const& rd, Weight const& gamma) {
  KClass k;
  k.add(rd, gamma, 1);
  return k;
}

/// Class of the associated graded of the standard module I(lambda_L, lambda_R).
inline KClass std_to_class(RootDatum const& rd, Weight const& lambda_l, Weight const& lambda_r) {
  if (lambda_l.size() != lambda_r.size() || static_cast<int>(lambda_l.size()) != rd.rank)
    throw InconsistentInput("std_to_class: weights of the wrong rank");
  return gamma_class(rd, lambda_l + lambda_r);
}

struct ResourceLimits {
  // Cap on 2^(|Delta(g[1])| + |Delta+(l)|), the number of subset terms of a pushforward.
  std::uint64_t max_subsets = std::uint64_t{1} << 32;
  // Cap on the number of Levi highest weights in one orbit's spanning set.
  std::uint64_t max_spanning_weights = 100000;

  /// Reads KCONE_MAX_SUBSETS and KCONE_MAX_WEIGHTS when set.
  static ResourceLimits from_env() {
    ResourceLimits lim;
    read_env("KCONE_MAX_SUBSETS", lim.max_subsets);
    read_env("KCONE_MAX_WEIGHTS", lim.max_spanning_weights);
    return lim;
  }

 private:
  static void read_env(char const* name, std::uint64_t& out) {
    char const* env = std::getenv(name);
    if (!env) return;
    try {
      std::size_t used = 0;
      out = std::stoull(env, &used);
      if (used != std::string_view(env).size()) throw std::invalid_argument(env);
    } catch (std::exception const&) {
      throw ParseError(std::string(name) + " is not a number: " + env);
    }
  }
};

/*
 * [mu_* S(sigma)] for the irreducible sigma of the Levi factor with highest
 * weight phi:
 *
 *   sum_{A in Delta(g[1]), B in Delta+(l)} (-1)^{|A|+|B|} [phi - 2rho(A) + 2rho(B)]
 *
 * The subset sum is the expansion of prod_A (1 - e^{-alpha}) prod_B (1 - e^{beta})
 * times e^phi, evaluated factor by factor in the group ring before folding.
 */
inline KClass pushforward(RootDatum const& rd, GradingData const& gd, Weight const& phi,
                          ResourceLimits const& limits = {}) {
  if (!is_levi_dominant(phi, gd.levi_simple))
    throw InconsistentInput("pushforward: weight is not dominant for the Levi factor");
  std::size_t n = gd.degree1_roots.size() + gd.levi_positive_roots.size();
  if (n >= 64 || (std::uint64_t{1} << n) > limits.max_subsets)
    throw ResourceError("pushforward: 2^" + std::to_string(n) + " subset terms exceed the cap of " +
                        std::to_string(limits.max_subsets));

  std::map<Weight, Integer> poly{{phi, Integer(1)}};
  auto multiply = [&](Weight const& shift) {
    std::map<Weight, Integer> next = poly;
    for (auto const& [w, c] : poly) {
      auto [it, fresh] = next.try_emplace(w + shift, Integer(-c));
      if (!fresh) {
        it->second -= c;
        if (it->second == 0) next.erase(it);
      }
    }
    poly = std::move(next);
  };
  for (auto const& alpha : gd.degree1_roots) multiply(-alpha);
  for (auto const& beta : gd.levi_positive_roots) multiply(beta);

  KClass out;
  for (auto const& [w, c] : poly) out.add(rd, w, c);
  out.rank = weyl_dim(rd, std::span<const int>(gd.levi_simple), phi);
  return out;
}

/// Class of the irreducible of highest weight phi placed at the origin.
inline KClass skyscraper_class(RootDatum const& rd, Weight const& phi, ResourceLimits const& limits = {}) {
  if (!is_dominant(phi)) throw InconsistentInput("skyscraper_class: weight is not dominant");
  NilpotentOrbit zero;
  zero.dynkin_marks.assign(rd.rank, 0);
  return pushforward(rd, grading_data(rd, zero), phi, limits);
}

/// Restriction of a class to the compact group, truncated at `level`.
inline MultiplicityVector restrict_class_to_compact(RootDatum const& rd, KClass const& k, Rational const& level) {
  return restrict_to_compact(rd, k.coeffs, level);
}

// ---------------------------------------------------------------------------
// Exact integer linear algebra

/// Dense matrix of exact integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Integer const& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Rank over the rationals by fraction-free (Bareiss) elimination.
  std::size_t rank() const {
    auto a = data_;
    auto at = [&](std::size_t r, std::size_t c) -> Integer& { return a[r * cols_ + c]; };
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && at(p, c) == 0) ++p;
      if (p == rows_) continue;
      for (std::size_t k = 0; k < cols_; ++k) std::swap(at(p, k), at(r, k));
      for (std::size_t i = r + 1; i < rows_; ++i) {
        for (std::size_t k = c + 1; k < cols_; ++k)
          at(i, k) = exact_div(at(r, c) * at(i, k) - at(i, c) * at(r, k), prev);
        at(i, c) = 0;
      }
      prev = at(r, c);
      ++r;
    }
    return r;
  }

  friend bool operator==(IntMatrix const&, IntMatrix const&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

/// Sparse integer vector: (index, value) pairs sorted by index, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

/// Returns a*x + b*y.
inline SparseRow combine(Integer const& a, SparseRow const& x, Integer const& b, SparseRow const& y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      if (a != 0) out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      if (b != 0) out.emplace_back(y[j].first, b * y[j].second);
      ++j;
    } else {
      Integer v = a * x[i].second + b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/*
 * Row echelon form over the integers, maintained incrementally.  The
 * leading entry of a row is its smallest column index.  Rows always form a
 * Z-basis of the lattice spanned by everything inserted, and each row
 * carries its expression in terms of the inserted rows ("combination").
 */
class LatticeEchelon {
 public:
  struct Row {
    SparseRow entries;
    SparseRow combination;
  };

  /// Inserts v (with its own combination); true if the rational rank grew.
  bool insert(SparseRow v, SparseRow comb = {}) {
    while (!v.empty()) {
      std::size_t p = v.front().first;
      auto it = pivot_.find(p);
      if (it == pivot_.end()) {
        pivot_.emplace(p, rows_.size());
        rows_.push_back({std::move(v), std::move(comb)});
        return true;
      }
      Row& e = rows_[it->second];
      Integer const a = e.entries.front().second;
      Integer const b = v.front().second;
      Integer q, r;
      boost::multiprecision::divide_qr(b, a, q, r);
      if (r == 0) {
        v = combine(1, v, -q, e.entries);
        comb = combine(1, comb, -q, e.combination);
        continue;
      }
      // s a + t b = g; replace the pivot row by s e + t v and v by (b/g) e - (a/g) v.
      Integer g, s, t;
      extended_gcd(a, b, g, s, t);
      Integer ag = exact_div(a, g), bg = exact_div(b, g);
      SparseRow new_e = combine(s, e.entries, t, v);
      SparseRow new_ec = combine(s, e.combination, t, comb);
      v = combine(bg, e.entries, -ag, v);
      comb = combine(bg, e.combination, -ag, comb);
      e.entries = std::move(new_e);
      e.combination = std::move(new_ec);
    }
    return false;
  }

  struct Reduction {
    SparseRow residual;     // zero iff v lies in the rational span
    SparseRow combination;  // v * scale = sum combination[i] * input_i + residual
    Integer scale = 1;      // 1 iff every elimination step was integral
  };

  /// Reduces v against the echelon rows without modifying them.
  Reduction reduce(SparseRow v) const {
    Reduction red;
    std::size_t pos = 0;
    while (pos < v.size()) {
      auto it = pivot_.find(v[pos].first);
      if (it == pivot_.end()) {
        ++pos;
        continue;
      }
      // Pivot rows only touch columns at or after their pivot, so entries
      // before pos are final.
      Row const& e = rows_[it->second];
      Integer const& a = e.entries.front().second;
      Integer q, r;
      boost::multiprecision::divide_qr(v[pos].second, a, q, r);
      if (r != 0) {
        Integer m = exact_div(boost::multiprecision::abs(a), boost::multiprecision::gcd(a, v[pos].second));
        for (auto& x : v) x.second *= m;
        for (auto& x : red.combination) x.second *= m;
        red.scale *= m;
        q = exact_div(v[pos].second, a);
      }
      v = combine(1, v, -q, e.entries);
      red.combination = combine(1, red.combination, q, e.combination);
    }
    red.residual = std::move(v);
    return red;
  }

  std::size_t rank() const { return rows_.size(); }
  std::vector<Row> const& rows() const { return rows_; }

  /// Rows ordered by leading column.
  std::vector<Row const*> ordered_rows() const {
    std::vector<Row const*> out;
    for (auto const& [col, idx] : pivot_) out.push_back(&rows_[idx]);
    return out;
  }

 private:
  static void extended_gcd(Integer const& a, Integer const& b, Integer& g, Integer& s, Integer& t) {
    Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      Integer q = r0 / r1;
      Integer tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - q * s1;
      s0 = s1;
      s1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    if (r0 < 0) {
      r0 = -r0;
      s0 = -s0;
      t0 = -t0;
    }
    g = r0;
    s = s0;
    t = t0;
  }

  std::vector<Row> rows_;
  std::map<std::size_t, std::size_t> pivot_;
};

/*
 * Column index for flattening classes.  Columns run over dominant weights
 * in decreasing NormOrder, so the leading entry of an echelon row is its
 * largest weight; vectors supported in a ball are then exactly the
 * combinations of rows whose leading weight lies in that ball.
 */
class CoordinateIndex {
 public:
  CoordinateIndex(RootDatum const& rd, std::vector<Weight> weights) : rd_(&rd) {
    std::sort(weights.begin(), weights.end(), NormOrder{&rd});
    weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
    std::reverse(weights.begin(), weights.end());
    columns_ = std::move(weights);
    for (std::size_t i = 0; i < columns_.size(); ++i) index_.emplace(columns_[i], i);
  }

  template <class Range>
  static CoordinateIndex spanning(RootDatum const& rd, Range const& classes) {
    std::vector<Weight> ws;
    for (KClass const& k : classes)
      for (auto const& [w, c] : k.coeffs) ws.push_back(w);
    return CoordinateIndex(rd, std::move(ws));
  }

  std::size_t size() const { return columns_.size(); }
  Weight const& weight(std::size_t col) const { return columns_[col]; }
  std::vector<Weight> const& columns() const { return columns_; }
  std::optional<std::size_t> find(Weight const& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Flattens a class; throws if its support is not indexed.
  SparseRow flatten(KClass const& k) const {
    SparseRow row;
    for (auto const& [w, c] : k.coeffs) {
      auto col = find(w);
      if (!col) throw InconsistentInput("class support outside the coordinate window");
      row.emplace_back(*col, c);
    }
    std::sort(row.begin(), row.end(), [](auto const& x, auto const& y) { return x.first < y.first; });
    return row;
  }

  KClass unflatten(SparseRow const& row) const {
    KClass k;
    for (auto const& [col, c] : row) k.add_dominant(columns_[col], c);
    return k;
  }

 private:
  RootDatum const* rd_;
  std::vector<Weight> columns_;
  std::map<Weight, std::size_t> index_;
};

struct BasisExtraction {
  std::vector<std::size_t> selected;  // indices into the input vectors
  std::vector<Weight> columns;        // flattening order (decreasing NormOrder)
  IntMatrix coordinates;              // selected vectors, one row each
};

/*
 * Greedily selects, in input order, the vectors that are linearly
 * independent modulo span(modulo) and the previously selected vectors.
 * All supports must lie in the ball |gamma|^2 <= bound_sq.
 */
inline BasisExtraction hnf_basis_extract(RootDatum const& rd, std::span<const KClass> vectors,
                                         std::span<const KClass> modulo, Rational const& bound_sq) {
  for (auto const* group : {&vectors, &modulo})
    for (auto const& k : *group)
      for (auto const& [w, c] : k.coeffs)
        if (weight_norm_sq(rd, w) > bound_sq)
          throw InconsistentInput("hnf_basis_extract: class support exceeds the weight bound");

  std::vector<KClass> all(modulo.begin(), modulo.end());
  all.insert(all.end(), vectors.begin(), vectors.end());
  CoordinateIndex index = CoordinateIndex::spanning(rd, all);

  LatticeEchelon ech;
  for (auto const& k : modulo) ech.insert(index.flatten(k));
  BasisExtraction out;
  out.columns = index.columns();
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (ech.insert(index.flatten(vectors[i]))) out.selected.push_back(i);

  out.coordinates = IntMatrix(out.selected.size(), index.size());
  for (std::size_t r = 0; r < out.selected.size(); ++r)
    for (auto const& [col, c] : index.flatten(vectors[out.selected[r]])) out.coordinates(r, col) = c;
  return out;
}

struct EchelonVector {
  Weight leading;           // largest weight in the support
  KClass kclass;
  SparseRow combination;    // over the input vectors
};

/// Z-basis of the span of `vectors` in echelon form, ordered by leading
/// weight (smallest first).
inline std::vector<EchelonVector> echelon_basis(RootDatum const& rd, std::span<const KClass> vectors) {
  CoordinateIndex index = CoordinateIndex::spanning(rd, vectors);
  LatticeEchelon ech;
  for (std::size_t i = 0; i < vectors.size(); ++i) ech.insert(index.flatten(vectors[i]), {{i, Integer(1)}});
  std::vector<EchelonVector> out;
  auto rows = ech.ordered_rows();
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    auto const& row = **it;
    out.push_back({index.weight(row.entries.front().first), index.unflatten(row.entries), row.combination});
  }
  return out;
}

}  // namespace kcone
