#pragma once

#include "kcone/ktheory.hpp"
#include "kcone/nilpotent.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

namespace kcone {

/*
 * The constant C bounding the drift |2rho(A) - 2rho(B)| of the pushforward
 * formula: the sum of the lengths of all positive roots.  Kept exact as
 * sum_k count_k * sqrt(sq_len_k); only conservative rational bounds are
 * ever derived from it.
 */
struct RootLengthSum {
  std::map<Rational, int> terms;  // squared root length -> number of positive roots

  double approx() const {
    double c = 0;
    for (auto const& [sq, n] : terms) c += n * std::sqrt(static_cast<double>(sq));
    return c;
  }

  /// Smallest integer >= (sqrt(bound_sq) + C)^2 (up to 1e-30), i.e. a
  /// conservative squared-norm window for |phi| <= bound + C.
  Integer window_sq(Rational const& bound_sq, int multiple = 1) const {
    using Float = boost::multiprecision::cpp_bin_float_50;
    Float r = boost::multiprecision::sqrt(Float(bound_sq));
    for (auto const& [sq, n] : terms) r += Float(multiple * n) * boost::multiprecision::sqrt(Float(sq));
    Float r2 = r * r - Float("1e-30");
    Float c = boost::multiprecision::ceil(r2);
    if (c < 0) c = 0;
    return Integer(c.convert_to<Integer>());
  }
};

inline RootLengthSum norm_constant(RootDatum const& rd) {
  RootLengthSum c;
  for (auto const& alpha : rd.positive_roots) ++c.terms[weight_norm_sq(rd, alpha)];
  return c;
}

struct ExecutionOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
  ResourceLimits limits = {};

  unsigned resolved_threads() const {
    if (threads != 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

namespace detail {

// Runs body(i) for i in [0, n) on up to `threads` workers; rethrows the
// first exception.  Results must be written to per-index slots.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body const& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next++;
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

struct SpanningEntry {
  Weight phi;  // highest weight of the Levi representation
  KClass kclass;
};

/// (phi, [mu_* S(phi)]) for every Levi-dominant phi with |phi| <= bound + C,
/// in NormOrder of phi.
inline std::vector<SpanningEntry> spanning_set(RootDatum const& rd, GradingData const& gd, Rational const& bound_sq,
                                               ExecutionOptions const& opts = {}) {
  if (bound_sq < 0) throw InconsistentInput("spanning_set: negative bound");
  Rational window(norm_constant(rd).window_sq(bound_sq));
  auto phis = levi_dominant_weights_in_ball(rd, gd.levi_simple, window);
  if (phis.size() > opts.limits.max_spanning_weights)
    throw ResourceError("spanning set has " + std::to_string(phis.size()) + " Levi highest weights, cap is " +
                        std::to_string(opts.limits.max_spanning_weights));
  std::vector<SpanningEntry> out(phis.size());
  detail::parallel_for(phis.size(), opts.resolved_threads(), [&](std::size_t i) {
    out[i] = {phis[i], pushforward(rd, gd, phis[i], opts.limits)};
  });
  return out;
}

struct GeometricBasisVector {
  int orbit_id = 0;
  int index = 0;
  KClass kclass;
  Integer rank = 0;
  // kclass = sum coef * pushforward(orbit, phi)
  std::vector<std::pair<Weight, Integer>> combination;
  bool certified = false;
};

/// The basis vectors attached to one orbit, computed at a fixed bound.
struct OrbitStratum {
  int orbit_id = 0;
  Rational bound_sq;
  std::vector<GeometricBasisVector> vectors;

  std::size_t certified_count() const {
    return static_cast<std::size_t>(
        std::count_if(vectors.begin(), vectors.end(), [](auto const& v) { return v.certified; }));
  }
};

/*
 * Basis of K(closure Y) / K(boundary Y) for Y = `orbit`, truncated.
 *
 * The pushforwards of the spanning set are first brought to integer echelon
 * form with leading term = largest weight, so that the lattice of their
 * combinations supported in any ball is spanned by an initial segment.
 * Echelon vectors are then taken in order of leading weight and kept when
 * independent modulo the boundary strata and the vectors already kept.
 * Vectors whose support lies within bound_sq are certified.
 */
inline OrbitStratum orbital_basis(RootDatum const& rd, NilpotentOrbit const& orbit,
                                  std::span<const OrbitStratum> boundary, Rational const& bound_sq,
                                  ExecutionOptions const& opts = {}) {
  for (auto const& s : boundary)
    if (s.bound_sq != bound_sq)
      throw InconsistentInput("orbital_basis: boundary computed with bound " + to_string(s.bound_sq) +
                              ", current bound " + to_string(bound_sq));

  GradingData gd = grading_data(rd, orbit);
  std::vector<SpanningEntry> span;
  try {
    span = spanning_set(rd, gd, bound_sq, opts);
  } catch (ResourceError const& e) {
    throw ResourceError("orbit " + std::to_string(orbit.id) + " (" + orbit.label + "): " + e.what());
  }

  std::vector<KClass> pushed;
  pushed.reserve(span.size());
  for (auto const& e : span) pushed.push_back(e.kclass);
  auto echelon = echelon_basis(rd, pushed);

  std::vector<KClass> all;
  for (auto const& s : boundary)
    for (auto const& v : s.vectors) all.push_back(v.kclass);
  std::size_t n_boundary = all.size();
  for (auto const& e : echelon) all.push_back(e.kclass);
  CoordinateIndex index = CoordinateIndex::spanning(rd, all);

  LatticeEchelon quotient;
  for (std::size_t i = 0; i < n_boundary; ++i) quotient.insert(index.flatten(all[i]));

  OrbitStratum out{orbit.id, bound_sq, {}};
  for (auto const& e : echelon) {
    if (!quotient.insert(index.flatten(e.kclass))) continue;
    GeometricBasisVector v;
    v.orbit_id = orbit.id;
    v.index = static_cast<int>(out.vectors.size());
    v.kclass = e.kclass;
    for (auto const& [i, c] : e.combination) {
      v.combination.emplace_back(span[i].phi, c);
      v.rank += c * *span[i].kclass.rank;
    }
    v.kclass.rank = v.rank;
    v.certified = std::all_of(v.kclass.coeffs.begin(), v.kclass.coeffs.end(),
                              [&](auto const& kv) { return weight_norm_sq(rd, kv.first) <= bound_sq; });
    out.vectors.push_back(std::move(v));
  }
  return out;
}

struct GeometricBasis {
  std::string type_label;
  std::vector<NilpotentOrbit> orbits;
  ClosurePoset poset;
  Rational bound_sq;
  RootLengthSum norm_constant;
  Integer window_sq;  // squared-norm window for Levi highest weights
  std::vector<OrbitStratum> strata;  // indexed by orbit id

  std::vector<GeometricBasisVector const*> certified() const {
    std::vector<GeometricBasisVector const*> out;
    for (auto const& s : strata)
      for (auto const& v : s.vectors)
        if (v.certified) out.push_back(&v);
    return out;
  }
};

/// Runs the orbital algorithm over all orbits in increasing dimension.
inline GeometricBasis full_basis(RootDatum const& rd, Rational const& bound_sq, ExecutionOptions const& opts = {}) {
  if (bound_sq < 0) throw InconsistentInput("full_basis: negative bound");
  GeometricBasis basis;
  basis.type_label = rd.type_label;
  basis.orbits = classify_orbits(rd);
  basis.poset = closure_poset(rd, basis.orbits);
  basis.bound_sq = bound_sq;
  basis.norm_constant = norm_constant(rd);
  basis.window_sq = basis.norm_constant.window_sq(bound_sq);
  basis.strata.resize(basis.orbits.size());

  std::vector<int> order(basis.orbits.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return basis.orbits[a].dimension < basis.orbits[b].dimension; });
  for (int y : order) {
    std::vector<OrbitStratum> below;
    for (int z : basis.poset.boundary(y)) below.push_back(basis.strata[z]);
    basis.strata[y] = orbital_basis(rd, basis.orbits[y], below, bound_sq, opts);
  }
  return basis;
}

}  // namespace kcone
