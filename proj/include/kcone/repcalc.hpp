#pragma once

// Finite-dimensional representation calculators.  These serve as
// independent oracles for the K-theory code: nothing in ktheory.hpp or
// orbitalg.hpp depends on them except weyl_dim (fiber ranks).

#include "kcone/rootdata.hpp"

#include <map>
#include <optional>
#include <queue>
#include <span>
#include <vector>

namespace kcone {

/// Indices of positive roots lying in the Levi subalgebra spanned by
/// `levi_simple` (every positive root when `levi_simple` is nullopt).
inline std::vector<std::size_t> levi_positive_root_indices(RootDatum const& rd,
                                                           std::optional<std::span<const int>> levi_simple) {
  std::vector<std::size_t> out;
  std::vector<bool> in_levi(rd.rank, !levi_simple.has_value());
  if (levi_simple)
    for (int i : *levi_simple) in_levi[i] = true;
  for (std::size_t k = 0; k < rd.positive_roots.size(); ++k) {
    auto const& c = rd.positive_roots_simple[k];
    bool inside = true;
    for (int i = 0; i < rd.rank; ++i)
      if (c[i] != 0 && !in_levi[i]) inside = false;
    if (inside) out.push_back(k);
  }
  return out;
}

/// Dimension of the irreducible representation of the Levi factor (the
/// whole group when `levi_simple` is nullopt) with highest weight phi.
inline Integer weyl_dim(RootDatum const& rd, std::optional<std::span<const int>> levi_simple, Weight const& phi) {
  if (levi_simple) {
    if (!is_levi_dominant(phi, *levi_simple))
      throw InconsistentInput("weyl_dim: highest weight is not dominant for the Levi factor");
  } else if (!is_dominant(phi)) {
    throw InconsistentInput("weyl_dim: highest weight is not dominant");
  }
  auto roots = levi_positive_root_indices(rd, levi_simple);
  Weight two_rho(static_cast<std::size_t>(rd.rank));
  for (auto k : roots) two_rho += rd.positive_roots[k];
  Weight shifted = 2 * phi + two_rho;
  Integer num = 1, den = 1;
  for (auto k : roots) {
    auto const& alpha = rd.positive_roots[k];
    num *= scaled_pairing(rd, shifted, alpha);
    den *= scaled_pairing(rd, two_rho, alpha);
  }
  return exact_div(num, den);
}

/*
 * Weight multiplicities of one irreducible representation by Freudenthal's
 * recursion
 *
 *   (|lambda+rho|^2 - |mu+rho|^2) m(mu) = 2 sum_{alpha>0} sum_{k>=1} <mu+k alpha, alpha> m(mu+k alpha)
 *
 * evaluated on dominant weights only (m is Weyl invariant).  Every quotient
 * is checked to be an exact integer.
 */
class CharacterTable {
 public:
  CharacterTable(RootDatum const& rd, Weight highest) : rd_(&rd), highest_(std::move(highest)) {
    if (!is_dominant(highest_)) throw InconsistentInput("CharacterTable: highest weight must be dominant");
    build();
  }

  Weight const& highest_weight() const { return highest_; }

  /// Multiplicity of an arbitrary weight.
  Integer multiplicity(Weight const& mu) const {
    auto it = mult_.find(dominant_conjugate(*rd_, mu));
    return it == mult_.end() ? Integer(0) : it->second;
  }

  /// Dominant weights with their multiplicities.
  std::map<Weight, Integer> const& dominant_multiplicities() const { return mult_; }

 private:
  void build() {
    auto const& rd = *rd_;
    std::vector<int> heights(rd.positive_roots.size());
    for (std::size_t k = 0; k < heights.size(); ++k)
      for (int c : rd.positive_roots_simple[k]) heights[k] += c;

    // Dominant weights below the highest weight, by depth.
    std::map<Weight, int> depth{{highest_, 0}};
    std::queue<Weight> todo;
    todo.push(highest_);
    while (!todo.empty()) {
      Weight mu = todo.front();
      todo.pop();
      int d = depth[mu];
      for (std::size_t k = 0; k < rd.positive_roots.size(); ++k) {
        Weight nu = mu - rd.positive_roots[k];
        if (!is_dominant(nu) || depth.contains(nu)) continue;
        depth.emplace(nu, d + heights[k]);
        todo.push(nu);
      }
    }
    std::vector<std::pair<int, Weight>> order;
    for (auto const& [mu, d] : depth) order.emplace_back(d, mu);
    std::sort(order.begin(), order.end());

    Weight rho = rd.rho();
    std::int64_t top = scaled_pairing(rd, highest_ + rho, highest_ + rho);
    mult_[highest_] = 1;
    for (auto const& [d, mu] : order) {
      if (d == 0) continue;
      Integer num = 0;
      for (auto const& alpha : rd.positive_roots) {
        Weight nu = mu + alpha;
        while (true) {
          auto it = mult_.find(dominant_conjugate(rd, nu));
          if (it == mult_.end() || it->second == 0) break;
          num += Integer(scaled_pairing(rd, nu, alpha)) * it->second;
          nu += alpha;
        }
      }
      std::int64_t den = top - scaled_pairing(rd, mu + rho, mu + rho);
      if (den <= 0) throw InternalError("Freudenthal: non-positive denominator");
      Integer m = exact_div(2 * num, Integer(den));
      if (m < 0) throw InternalError("Freudenthal: negative multiplicity");
      mult_[mu] = m;
    }
    std::erase_if(mult_, [](auto const& kv) { return kv.second == 0; });
  }

  RootDatum const* rd_;
  Weight highest_;
  std::map<Weight, Integer> mult_;
};

/// Multiplicity of mu in the irreducible of highest weight `highest`.
inline Integer weight_multiplicity(RootDatum const& rd, Weight const& highest, Weight const& mu) {
  return CharacterTable(rd, highest).multiplicity(mu);
}

/// A virtual representation of the compact group, truncated to highest
/// weights of squared norm <= level.
struct MultiplicityVector {
  std::map<Weight, Integer> entries;
  Rational level;

  friend bool operator==(MultiplicityVector const&, MultiplicityVector const&) = default;
};

/// Restriction to the compact group of sum_gamma c_gamma [gamma], i.e.
/// sum_gamma c_gamma Ind_T^K(gamma), truncated at `level`.
inline MultiplicityVector restrict_to_compact(RootDatum const& rd, std::map<Weight, Integer> const& coeffs,
                                              Rational const& level) {
  MultiplicityVector out{{}, level};
  for (auto const& rho : dominant_weights_in_ball(rd, level)) {
    CharacterTable table(rd, rho);
    Integer total = 0;
    for (auto const& [gamma, c] : coeffs) total += c * table.multiplicity(gamma);
    if (total != 0) out.entries.emplace(rho, total);
  }
  return out;
}

/// [gamma]_theta as a representation of the compact group, truncated.
inline MultiplicityVector restrict_gamma_class(RootDatum const& rd, Weight const& gamma, Rational const& level) {
  if (level < 0) throw InconsistentInput("restrict_gamma_class: negative level");
  return restrict_to_compact(rd, {{dominant_conjugate(rd, gamma), Integer(1)}}, level);
}

}  // namespace kcone
