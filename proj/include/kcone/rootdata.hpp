#pragma once

#include "kcone/exact.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kcone {

/// Largest total rank accepted by build_root_datum.
inline constexpr int kMaxRank = 16;

/*
 * A weight of the simply connected group, in fundamental-weight
 * coordinates: coords[i] = <lambda, alpha_i^vee>.  Roots are weights too;
 * the simple root alpha_j has coordinates given by column j of the Cartan
 * matrix.
 */
struct Weight {
  std::vector<std::int64_t> coords;

  Weight() = default;
  explicit Weight(std::size_t rank) : coords(rank, 0) {}
  Weight(std::initializer_list<std::int64_t> c) : coords(c) {}
  explicit Weight(std::vector<std::int64_t> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }
  std::int64_t& operator[](std::size_t i) { return coords[i]; }

  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](auto c) { return c == 0; });
  }

  Weight& operator+=(Weight const& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  Weight& operator-=(Weight const& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  friend Weight operator+(Weight a, Weight const& b) { return a += b; }
  friend Weight operator-(Weight a, Weight const& b) { return a -= b; }
  friend Weight operator-(Weight a) {
    for (auto& c : a.coords) c = -c;
    return a;
  }
  friend Weight operator*(std::int64_t k, Weight a) {
    for (auto& c : a.coords) c *= k;
    return a;
  }

  friend bool operator==(Weight const&, Weight const&) = default;
  friend auto operator<=>(Weight const& a, Weight const& b) { return a.coords <=> b.coords; }

  friend std::ostream& operator<<(std::ostream& os, Weight const& w) {
    os << '(';
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w.coords[i];
    return os << ')';
  }
};

inline std::string to_string(Weight const& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w.coords[i]);
  return out + ")";
}

/// A simple factor of a (possibly decomposable) root datum.
struct SimpleFactor {
  char series = 'A';
  int rank = 0;
  int offset = 0;  // index of the factor's first simple root

  std::string label() const { return std::string(1, series) + std::to_string(rank); }
};

struct RootDatum {
  std::string type_label;
  int rank = 0;
  std::vector<SimpleFactor> factors;

  // cartan[i][j] = <alpha_j, alpha_i^vee>
  std::vector<std::vector<int>> cartan;
  // d_i with d_i a_ij = d_j a_ji; d_i = |alpha_i|^2 / 2, short roots have d = 1
  std::vector<int> symmetrizer;

  // Positive roots, sorted by height then by simple-root coordinates.
  std::vector<Weight> positive_roots;
  // Expansion of each positive root over the simple roots.
  std::vector<std::vector<int>> positive_roots_simple;
  // simple_root_indices[j] = position of alpha_j in positive_roots
  std::vector<std::size_t> simple_root_indices;

  // <lambda, mu> = lambda^T form_int mu / form_scale
  std::vector<std::vector<std::int64_t>> form_int;
  std::int64_t form_scale = 1;

  int dimension() const { return rank + 2 * static_cast<int>(positive_roots.size()); }

  Weight simple_root(std::size_t j) const { return positive_roots[simple_root_indices[j]]; }

  Weight zero() const { return Weight(static_cast<std::size_t>(rank)); }

  /// rho in fundamental coordinates: all ones.
  Weight rho() const { return Weight(std::vector<std::int64_t>(rank, 1)); }
};

namespace detail {

inline std::vector<std::vector<int>> simple_cartan(char series, int n) {
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (series) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;  // alpha_n short
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;  // alpha_n long
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      // Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(2, 3);
      a[1][2] = -1;
      a[2][1] = -2;  // alpha_1, alpha_2 long
      break;
    case 'G':
      a[0][1] = -3;  // alpha_1 short
      a[1][0] = -1;
      break;
  }
  return a;
}

inline std::vector<int> simple_symmetrizer(char series, int n) {
  std::vector<int> d(n, 1);
  switch (series) {
    case 'B':
      std::fill(d.begin(), d.end() - 1, 2);
      break;
    case 'C':
      d[n - 1] = 2;
      break;
    case 'F':
      d[0] = d[1] = 2;
      break;
    case 'G':
      d[1] = 3;
      break;
    default:
      break;
  }
  return d;
}

inline bool valid_factor(char series, int n) {
  switch (series) {
    case 'A': return n >= 1;
    case 'B': return n >= 2;
    case 'C': return n >= 2;
    case 'D': return n >= 4;
    case 'E': return n >= 6 && n <= 8;
    case 'F': return n == 4;
    case 'G': return n == 2;
    default: return false;
  }
}

inline SimpleFactor parse_factor(std::string_view text) {
  if (text.size() < 2 || !std::isupper(static_cast<unsigned char>(text[0])))
    throw ParseError("malformed Cartan type '" + std::string(text) + "'");
  for (char c : text.substr(1))
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("malformed Cartan type '" + std::string(text) + "'");
  if (text.size() > 4) throw ParseError("rank too large in '" + std::string(text) + "'");
  SimpleFactor f;
  f.series = text[0];
  f.rank = std::stoi(std::string(text.substr(1)));
  if (!valid_factor(f.series, f.rank))
    throw ParseError("unknown Cartan type '" + std::string(text) + "'");
  return f;
}

// Inverse of a nonsingular integer matrix over the rationals.
inline std::vector<std::vector<Rational>> rational_inverse(std::vector<std::vector<int>> const& m) {
  std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[c], a[p]);
    Rational pv = a[c][c];
    for (auto& x : a[c]) x /= pv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

// Closure of the simple roots under the root-string rule.  For a positive
// root beta and simple alpha_i, beta + alpha_i is a root iff q > 0 where
// q = p - <beta, alpha_i^vee> and p is the length of the downward string.
inline std::vector<std::vector<int>> positive_roots_in_simple_coords(
    std::vector<std::vector<int>> const& cartan) {
  int n = static_cast<int>(cartan.size());
  std::set<std::vector<int>> roots;
  std::vector<std::vector<int>> frontier;
  for (int j = 0; j < n; ++j) {
    std::vector<int> e(n, 0);
    e[j] = 1;
    roots.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (auto const& c : frontier) {
      for (int i = 0; i < n; ++i) {
        int pairing = 0;
        for (int j = 0; j < n; ++j) pairing += cartan[i][j] * c[j];
        int p = 0;
        auto down = c;
        while (true) {
          --down[i];
          if (!roots.contains(down)) break;
          ++p;
        }
        if (p - pairing > 0) {
          auto up = c;
          ++up[i];
          if (roots.insert(up).second) next.push_back(up);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> out(roots.begin(), roots.end());
  std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a > b;  // alpha_1 before alpha_2 at height one
  });
  return out;
}

}  // namespace detail

/// Builds the root datum of the simply connected group of the given type.
/// Accepts simple labels ("A2", "G2") and products ("A1xA1", "B2xG2").
inline RootDatum build_root_datum(std::string_view type_label) {
  RootDatum rd;
  rd.type_label = std::string(type_label);
  std::size_t start = 0;
  while (true) {
    auto x = type_label.find('x', start);
    auto part = type_label.substr(start, x == std::string_view::npos ? std::string_view::npos : x - start);
    SimpleFactor f = detail::parse_factor(part);
    f.offset = rd.rank;
    rd.rank += f.rank;
    rd.factors.push_back(f);
    if (rd.rank > kMaxRank) throw ParseError("total rank exceeds " + std::to_string(kMaxRank));
    if (x == std::string_view::npos) break;
    start = x + 1;
  }

  int n = rd.rank;
  rd.cartan.assign(n, std::vector<int>(n, 0));
  rd.symmetrizer.assign(n, 1);
  for (auto const& f : rd.factors) {
    auto a = detail::simple_cartan(f.series, f.rank);
    auto d = detail::simple_symmetrizer(f.series, f.rank);
    for (int i = 0; i < f.rank; ++i) {
      rd.symmetrizer[f.offset + i] = d[i];
      for (int j = 0; j < f.rank; ++j) rd.cartan[f.offset + i][f.offset + j] = a[i][j];
    }
  }

  rd.positive_roots_simple = detail::positive_roots_in_simple_coords(rd.cartan);
  rd.simple_root_indices.assign(n, 0);
  for (std::size_t k = 0; k < rd.positive_roots_simple.size(); ++k) {
    auto const& c = rd.positive_roots_simple[k];
    Weight w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[i] += static_cast<std::int64_t>(rd.cartan[i][j]) * c[j];
    rd.positive_roots.push_back(std::move(w));
    if (std::accumulate(c.begin(), c.end(), 0) == 1)
      rd.simple_root_indices[std::find(c.begin(), c.end(), 1) - c.begin()] = k;
  }

  // <omega_i, omega_k> = (D A^{-1})_{ik}; scale to integers.
  auto inv = detail::rational_inverse(rd.cartan);
  std::vector<std::vector<Rational>> form(n, std::vector<Rational>(n));
  Integer scale = 1;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      form[i][k] = rd.symmetrizer[i] * inv[i][k];
      Integer den = boost::multiprecision::denominator(form[i][k]);
      scale = boost::multiprecision::lcm(scale, den);
    }
  rd.form_scale = static_cast<std::int64_t>(scale);
  rd.form_int.assign(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Rational v = form[i][k] * Rational(scale);
      rd.form_int[i][k] = static_cast<std::int64_t>(boost::multiprecision::numerator(v));
    }
  return rd;
}

/// Scaled inner product: form_scale * <a, b>, an exact integer.
inline std::int64_t scaled_pairing(RootDatum const& rd, Weight const& a, Weight const& b) {
  std::int64_t s = 0;
  for (int i = 0; i < rd.rank; ++i) {
    if (a[i] == 0) continue;
    std::int64_t row = 0;
    for (int k = 0; k < rd.rank; ++k) row += rd.form_int[i][k] * b[k];
    s += a[i] * row;
  }
  return s;
}

inline Rational inner_product(RootDatum const& rd, Weight const& a, Weight const& b) {
  return Rational(scaled_pairing(rd, a, b), rd.form_scale);
}

/// Squared length under the invariant form; short roots have squared length 2.
inline Rational weight_norm_sq(RootDatum const& rd, Weight const& lambda) {
  return inner_product(rd, lambda, lambda);
}

/// Is `lambda` in the closed dominant chamber?
inline bool is_dominant(Weight const& lambda) {
  return std::all_of(lambda.coords.begin(), lambda.coords.end(), [](auto c) { return c >= 0; });
}

/// Dominant for the Levi subalgebra generated by the given simple roots.
inline bool is_levi_dominant(Weight const& lambda, std::span<const int> levi_simple) {
  return std::all_of(levi_simple.begin(), levi_simple.end(), [&](int i) { return lambda[i] >= 0; });
}

/// s_i(lambda) = lambda - lambda_i alpha_i
inline Weight simple_reflection(RootDatum const& rd, Weight lambda, int i) {
  std::int64_t c = lambda[i];
  if (c == 0) return lambda;
  for (int k = 0; k < rd.rank; ++k) lambda[k] -= c * rd.cartan[k][i];
  return lambda;
}

/// The unique dominant weight on the Weyl orbit of lambda.
inline Weight dominant_conjugate(RootDatum const& rd, Weight lambda) {
  while (true) {
    int i = 0;
    while (i < rd.rank && lambda[i] >= 0) ++i;
    if (i == rd.rank) return lambda;
    lambda = simple_reflection(rd, std::move(lambda), i);
  }
}

/// Sum of the roots selected by `subset` (2 rho(A) for a set A of roots).
inline Weight subset_root_sum(std::span<const Weight> roots, boost::dynamic_bitset<> const& subset,
                              std::size_t rank) {
  Weight sum(rank);
  for (auto i = subset.find_first(); i != subset.npos; i = subset.find_next(i)) {
    if (i >= roots.size()) throw std::out_of_range("subset_root_sum: index beyond root list");
    sum += roots[i];
  }
  return sum;
}

/// Expansion of lambda over the simple roots (rational in general).
inline std::vector<Rational> simple_root_coordinates(RootDatum const& rd, Weight const& lambda) {
  auto inv = detail::rational_inverse(rd.cartan);
  std::vector<Rational> c(rd.rank);
  for (int i = 0; i < rd.rank; ++i)
    for (int k = 0; k < rd.rank; ++k) c[i] += inv[i][k] * lambda[k];
  return c;
}

/// Total order used everywhere a canonical listing of weights is needed:
/// by squared norm, then lexicographically.
struct NormOrder {
  RootDatum const* rd;
  bool operator()(Weight const& a, Weight const& b) const {
    auto na = scaled_pairing(*rd, a, a);
    auto nb = scaled_pairing(*rd, b, b);
    if (na != nb) return na < nb;
    return a < b;
  }
};

namespace detail {

// Box bounding the ellipsoid <x,x> <= level: |x_i| <= sqrt(level * 2 / d_i).
inline std::vector<std::int64_t> ellipsoid_box(RootDatum const& rd, Rational const& level) {
  std::vector<std::int64_t> b(rd.rank);
  for (int i = 0; i < rd.rank; ++i) {
    Rational q = level * 2 / rd.symmetrizer[i];
    Integer ceil_q = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q) + 1;
    b[i] = static_cast<std::int64_t>(boost::multiprecision::sqrt(ceil_q)) + 1;
  }
  return b;
}

}  // namespace detail

/// All weights lambda with lambda_i >= 0 for i in `levi_simple` and
/// |lambda|^2 <= level, sorted by NormOrder.
inline std::vector<Weight> levi_dominant_weights_in_ball(RootDatum const& rd, std::span<const int> levi_simple,
                                                         Rational const& level) {
  std::vector<Weight> out;
  if (level < 0) return out;
  auto box = detail::ellipsoid_box(rd, level);
  std::vector<std::int64_t> lo(rd.rank);
  for (int i = 0; i < rd.rank; ++i) lo[i] = -box[i];
  for (int i : levi_simple) lo[i] = 0;
  // level * scale, rounded down, as an integer threshold
  Rational scaled = level * rd.form_scale;
  Integer limit_big = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  auto limit = static_cast<std::int64_t>(limit_big);

  Weight w(lo);
  if (rd.rank == 0) return {w};
  while (true) {
    if (scaled_pairing(rd, w, w) <= limit) out.push_back(w);
    int i = 0;
    while (i < rd.rank) {
      if (++w[i] <= box[i]) break;
      w[i] = lo[i];
      ++i;
    }
    if (i == rd.rank) break;
  }
  std::sort(out.begin(), out.end(), NormOrder{&rd});
  return out;
}

/// Dominant weights with |lambda|^2 <= level, sorted by NormOrder.
inline std::vector<Weight> dominant_weights_in_ball(RootDatum const& rd, Rational const& level) {
  std::vector<int> all(rd.rank);
  std::iota(all.begin(), all.end(), 0);
  return levi_dominant_weights_in_ball(rd, all, level);
}

}  // namespace kcone
