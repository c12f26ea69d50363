#pragma once

// Associated varieties and cycles of virtual modules, read off from the
// coordinates of their K-classes in the geometric basis.

#include "kcone/orbitalg.hpp"

#include <map>
#include <utility>
#include <vector>

namespace kcone {

/// One standard module X(lambda_L, lambda_R) with an integer coefficient.
struct StandardTerm {
  Integer coef = 1;
  Weight lambda_l;
  Weight lambda_r;
};

/// A virtual module, given either by standard modules or by a raw class.
struct VirtualModule {
  std::vector<StandardTerm> standards;
  std::optional<KClass> kclass;
};

inline KClass module_to_kclass(RootDatum const& rd, VirtualModule const& m) {
  KClass out;
  if (m.kclass) out += *m.kclass;
  for (auto const& t : m.standards) out += t.coef * std_to_class(rd, t.lambda_l, t.lambda_r);
  out.rank.reset();
  return out;
}

/// (orbit id, index within the stratum) -> integer coordinate; zeros omitted.
using BasisCoordinates = std::map<std::pair<int, int>, Integer>;

/*
 * Coordinates of `k` in the certified part of the basis.  Fails with
 * BoundTooSmall when the support of k leaves the certified ball or when k
 * is not in the span of the certified vectors.
 */
inline BasisCoordinates express_in_geometric_basis(RootDatum const& rd, KClass const& k,
                                                   GeometricBasis const& basis) {
  for (auto const& [w, c] : k.coeffs)
    if (weight_norm_sq(rd, w) > basis.bound_sq)
      throw BoundTooSmall("weight " + to_string(w) + " has squared norm " + to_string(weight_norm_sq(rd, w)) +
                          " > bound " + to_string(basis.bound_sq));

  auto cert = basis.certified();
  std::vector<KClass> classes;
  for (auto const* v : cert) classes.push_back(v->kclass);
  classes.push_back(k);
  CoordinateIndex index = CoordinateIndex::spanning(rd, classes);

  LatticeEchelon ech;
  for (std::size_t i = 0; i < cert.size(); ++i)
    if (!ech.insert(index.flatten(cert[i]->kclass), {{i, Integer(1)}}))
      throw InternalError("certified basis vectors are linearly dependent");

  auto red = ech.reduce(index.flatten(k));
  if (!red.residual.empty())
    throw BoundTooSmall("class is not in the span of the certified basis at bound " + to_string(basis.bound_sq));
  if (red.scale != 1) throw InternalError("class has non-integral coordinates in the geometric basis");

  BasisCoordinates out;
  for (auto const& [i, c] : red.combination)
    if (c != 0) out[{cert[i]->orbit_id, cert[i]->index}] = c;
  return out;
}

struct CycleComponent {
  int orbit_id = 0;
  Integer multiplicity = 0;
};

struct AssociatedCycle {
  std::vector<int> variety;                // maximal orbits, ascending id
  std::vector<CycleComponent> components;  // one per orbit in `variety`
};

/*
 * The orbits carrying a nonzero coordinate; the maximal ones form the
 * associated variety, and over each the multiplicity is the total fiber
 * rank sum n * rank(v) of its coordinates.
 */
inline AssociatedCycle associated_cycle(BasisCoordinates const& coords, GeometricBasis const& basis) {
  std::map<int, Integer> mult;
  for (auto const& [key, n] : coords) {
    auto const& [orbit, idx] = key;
    if (orbit < 0 || orbit >= static_cast<int>(basis.strata.size()) ||
        idx < 0 || idx >= static_cast<int>(basis.strata[orbit].vectors.size()))
      throw InconsistentInput("coordinate refers to a missing basis vector");
    mult[orbit] += n * basis.strata[orbit].vectors[idx].rank;
  }
  std::vector<int> support;
  for (auto const& [key, n] : coords)
    if (n != 0 && (support.empty() || support.back() != key.first)) support.push_back(key.first);

  AssociatedCycle out;
  for (int y : support) {
    bool maximal = std::none_of(support.begin(), support.end(), [&](int z) { return basis.poset.below(y, z); });
    if (!maximal) continue;
    out.variety.push_back(y);
    out.components.push_back({y, mult[y]});
  }
  return out;
}

}  // namespace kcone
