#pragma once

#include "kcone/rootdata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace kcone {

/*
 * Nilpotent adjoint orbits, recorded by their weighted Dynkin diagrams:
 * dynkin_marks[i] = alpha_i(D) for the neutral element D of a
 * Jacobson-Morozov triple, normalized to be dominant.  Marks determine the
 * orbit.
 *
 * Classical factors are generated from partitions; exceptional factors come
 * from built-in tables.
 */
struct NilpotentOrbit {
  int id = 0;
  std::string label;
  std::vector<int> dynkin_marks;
  int dimension = 0;
  // One entry per simple factor: the partition for classical factors,
  // empty for exceptional ones.
  std::vector<std::vector<int>> partitions;
  // Position of the factor orbit within factor_orbits(), per factor.
  std::vector<int> factor_index;
};

struct GradingData {
  std::vector<int> marks;
  // grade_of_root[k] = alpha_k(D) for the k-th positive root
  std::vector<int> grade_of_root;
  std::vector<Weight> degree1_roots;        // Delta(g[1])
  std::vector<Weight> levi_positive_roots;  // Delta+(l) = {alpha > 0 : alpha(D) = 0}
  std::vector<int> levi_simple;             // simple roots with mark 0
  std::vector<Weight> ge2_roots;            // {alpha : alpha(D) >= 2}
};

/// Closure order on orbits, stored as covering relations plus the full order.
struct ClosurePoset {
  // covers[y] = orbit ids directly below y
  std::vector<std::vector<int>> covers;
  // leq[z][y] iff closure(O_z) is contained in closure(O_y)
  std::vector<std::vector<bool>> leq;

  bool below(int z, int y) const { return z != y && leq[z][y]; }
  std::size_t size() const { return covers.size(); }

  /// Orbits strictly below y.
  std::vector<int> boundary(int y) const {
    std::vector<int> out;
    for (int z = 0; z < static_cast<int>(size()); ++z)
      if (below(z, y)) out.push_back(z);
    return out;
  }
};

namespace detail {

struct FactorOrbit {
  std::string label;
  std::vector<int> marks;
  std::vector<int> partition;  // empty for exceptional
  int variant = 0;             // 1, 2 for the two very even classes in type D
  std::vector<int> below;      // exceptional only: factor orbits strictly below
};

inline void partitions_of(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions_of(n - k, k, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_of(n, n, cur, out);
  return out;
}

inline int multiplicity_of(std::vector<int> const& p, int part) {
  return static_cast<int>(std::count(p.begin(), p.end(), part));
}

// Parts of the given parity must occur with even multiplicity.
inline bool parity_admissible(std::vector<int> const& p, int parity) {
  for (int part : p)
    if (part % 2 == parity && multiplicity_of(p, part) % 2 != 0) return false;
  return true;
}

inline bool very_even(std::vector<int> const& p) {
  return std::all_of(p.begin(), p.end(), [&](int part) { return part % 2 == 0 && multiplicity_of(p, part) % 2 == 0; });
}

// Eigenvalues of D on the natural representation, largest first.
inline std::vector<int> sl2_weights(std::vector<int> const& p) {
  std::vector<int> h;
  for (int k : p)
    for (int j = k - 1; j >= 1 - k; j -= 2) h.push_back(j);
  std::sort(h.rbegin(), h.rend());
  return h;
}

inline std::vector<int> classical_marks(char series, int n, std::vector<int> const& p) {
  auto h = sl2_weights(p);
  std::vector<int> m(n);
  if (series == 'A') {
    for (int i = 0; i < n; ++i) m[i] = h[i] - h[i + 1];
    return m;
  }
  for (int i = 0; i + 1 < n; ++i) m[i] = h[i] - h[i + 1];
  switch (series) {
    case 'B': m[n - 1] = h[n - 1]; break;
    case 'C': m[n - 1] = 2 * h[n - 1]; break;
    case 'D': m[n - 1] = h[n - 2] + h[n - 1]; break;
  }
  return m;
}

inline std::string partition_label(std::vector<int> const& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ']';
  return os.str();
}

inline std::vector<FactorOrbit> g2_table() {
  // Marks on (alpha_1 short, alpha_2 long); the closure order is a chain.
  return {
      {"0", {0, 0}, {}, 0, {}},
      {"A1", {0, 1}, {}, 0, {0}},
      {"~A1", {1, 0}, {}, 0, {0, 1}},
      {"G2(a1)", {0, 2}, {}, 0, {0, 1, 2}},
      {"G2", {2, 2}, {}, 0, {0, 1, 2, 3}},
  };
}

inline std::vector<FactorOrbit> factor_orbits(SimpleFactor const& f) {
  std::vector<FactorOrbit> out;
  int n = f.rank;
  switch (f.series) {
    case 'A':
      for (auto& p : partitions_of(n + 1)) out.push_back({partition_label(p), classical_marks('A', n, p), p, 0, {}});
      break;
    case 'B':
      for (auto& p : partitions_of(2 * n + 1))
        if (parity_admissible(p, 0)) out.push_back({partition_label(p), classical_marks('B', n, p), p, 0, {}});
      break;
    case 'C':
      for (auto& p : partitions_of(2 * n))
        if (parity_admissible(p, 1)) out.push_back({partition_label(p), classical_marks('C', n, p), p, 0, {}});
      break;
    case 'D':
      for (auto& p : partitions_of(2 * n)) {
        if (!parity_admissible(p, 0)) continue;
        auto m = classical_marks('D', n, p);
        if (very_even(p)) {
          out.push_back({partition_label(p) + "^I", m, p, 1, {}});
          std::swap(m[n - 2], m[n - 1]);
          out.push_back({partition_label(p) + "^II", m, p, 2, {}});
        } else {
          out.push_back({partition_label(p), m, p, 0, {}});
        }
      }
      break;
    case 'G':
      out = g2_table();
      break;
    default:
      throw TableUnavailable("nilpotent orbit table unavailable for type " + f.label());
  }
  return out;
}

// Dominance order on partitions: partial sums of a never exceed those of b.
inline bool dominated_by(std::vector<int> const& a, std::vector<int> const& b) {
  int sa = 0, sb = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    sa += i < a.size() ? a[i] : 0;
    sb += i < b.size() ? b[i] : 0;
    if (sa > sb) return false;
  }
  return true;
}

inline bool factor_leq(std::vector<FactorOrbit> const& table, int a, int b) {
  if (a == b) return true;
  auto const& x = table[a];
  auto const& y = table[b];
  if (x.partition.empty()) return std::find(y.below.begin(), y.below.end(), a) != y.below.end();
  // Distinct very even classes with the same partition are incomparable.
  if (x.partition == y.partition) return false;
  return dominated_by(x.partition, y.partition);
}

}  // namespace detail

/// dim g^e for the neutral element with these marks: dim g[0] + dim g[1].
inline int grading_centralizer_dimension(RootDatum const& rd, std::vector<int> const& marks) {
  int g0 = rd.rank, g1 = 0;
  for (auto const& c : rd.positive_roots_simple) {
    int grade = 0;
    for (int i = 0; i < rd.rank; ++i) grade += c[i] * marks[i];
    if (grade == 0) g0 += 2;
    if (grade == 1) ++g1;
  }
  return g0 + g1;
}

/// Orbit dimension from the Jacobson-Morozov grading.
inline int grading_orbit_dimension(RootDatum const& rd, std::vector<int> const& marks) {
  return rd.dimension() - grading_centralizer_dimension(rd, marks);
}

/// Orbit dimension from the partition via the centralizer formulas for
/// sl(n), so(N) and sp(2n).
inline int partition_orbit_dimension(char series, int rank, std::vector<int> const& p) {
  std::vector<int> dual;
  for (int k = 1; !p.empty() && k <= p.front(); ++k)
    dual.push_back(static_cast<int>(std::count_if(p.begin(), p.end(), [&](int x) { return x >= k; })));
  int sq = 0;
  for (int d : dual) sq += d * d;
  int odd = static_cast<int>(std::count_if(p.begin(), p.end(), [](int x) { return x % 2 == 1; }));
  switch (series) {
    case 'A': {
      int n = rank + 1;
      return n * n - sq;
    }
    case 'B':
    case 'D': {
      int n = series == 'B' ? 2 * rank + 1 : 2 * rank;
      return n * (n - 1) / 2 - (sq - odd) / 2;
    }
    case 'C': {
      int n = 2 * rank;
      return n * (n + 1) / 2 - (sq + odd) / 2;
    }
  }
  throw InconsistentInput("partition_orbit_dimension: not a classical series");
}

/// All nilpotent orbits, ordered by dimension then marks; ids are positions.
inline std::vector<NilpotentOrbit> classify_orbits(RootDatum const& rd) {
  std::vector<std::vector<detail::FactorOrbit>> tables;
  for (auto const& f : rd.factors) tables.push_back(detail::factor_orbits(f));

  std::vector<NilpotentOrbit> out;
  std::vector<int> pick(tables.size(), 0);
  while (true) {
    NilpotentOrbit o;
    o.dynkin_marks.assign(rd.rank, 0);
    for (std::size_t k = 0; k < tables.size(); ++k) {
      auto const& fo = tables[k][pick[k]];
      auto const& f = rd.factors[k];
      o.label += (k ? "x" : "") + fo.label;
      std::copy(fo.marks.begin(), fo.marks.end(), o.dynkin_marks.begin() + f.offset);
      o.partitions.push_back(fo.partition);
      o.factor_index.push_back(pick[k]);
    }
    o.dimension = grading_orbit_dimension(rd, o.dynkin_marks);
    out.push_back(std::move(o));
    std::size_t k = 0;
    while (k < tables.size()) {
      if (++pick[k] < static_cast<int>(tables[k].size())) break;
      pick[k] = 0;
      ++k;
    }
    if (k == tables.size()) break;
  }
  std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.dynkin_marks < b.dynkin_marks;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

inline GradingData grading_data(RootDatum const& rd, NilpotentOrbit const& orbit) {
  GradingData gd;
  gd.marks = orbit.dynkin_marks;
  if (static_cast<int>(gd.marks.size()) != rd.rank) throw InconsistentInput("grading_data: orbit of a different type");
  for (int i = 0; i < rd.rank; ++i)
    if (gd.marks[i] == 0) gd.levi_simple.push_back(i);
  for (std::size_t k = 0; k < rd.positive_roots.size(); ++k) {
    int grade = 0;
    for (int i = 0; i < rd.rank; ++i) grade += rd.positive_roots_simple[k][i] * gd.marks[i];
    gd.grade_of_root.push_back(grade);
    auto const& alpha = rd.positive_roots[k];
    if (grade == 0) gd.levi_positive_roots.push_back(alpha);
    else if (grade == 1) gd.degree1_roots.push_back(alpha);
    else gd.ge2_roots.push_back(alpha);
  }
  return gd;
}

inline ClosurePoset closure_poset(RootDatum const& rd, std::vector<NilpotentOrbit> const& orbits) {
  std::vector<std::vector<detail::FactorOrbit>> tables;
  for (auto const& f : rd.factors) tables.push_back(detail::factor_orbits(f));

  std::size_t n = orbits.size();
  ClosurePoset poset;
  poset.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    if (orbits[a].factor_index.size() != tables.size())
      throw InconsistentInput("closure_poset: orbit list does not match the root datum");
    for (std::size_t b = 0; b < n; ++b) {
      bool le = true;
      for (std::size_t k = 0; k < tables.size() && le; ++k)
        le = detail::factor_leq(tables[k], orbits[a].factor_index[k], orbits[b].factor_index[k]);
      poset.leq[a][b] = le;
    }
  }
  poset.covers.assign(n, {});
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z) {
      if (!poset.below(static_cast<int>(z), static_cast<int>(y))) continue;
      bool direct = true;
      for (std::size_t m = 0; m < n && direct; ++m)
        if (poset.below(static_cast<int>(z), static_cast<int>(m)) && poset.below(static_cast<int>(m), static_cast<int>(y)))
          direct = false;
      if (direct) poset.covers[y].push_back(static_cast<int>(z));
    }
  return poset;
}

}  // namespace kcone
