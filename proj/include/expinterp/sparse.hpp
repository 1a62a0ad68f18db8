#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "expinterp/expsum.hpp"
#include "expinterp/geometry.hpp"

namespace expinterp {

/// Lacunary selection lambda_1, ..., lambda_N from an exponent set with
/// |lambda_{n+1}| > 2 |lambda_n|. Exponents are stored exactly as their family
/// evaluates them, so identity tests against them are exact.
struct SparseSequence {
  std::vector<Exponent> exponents;
  DirectionSet targets;
  std::vector<int> source_family;
  std::vector<std::int64_t> source_index;

  std::size_t size() const { return exponents.size(); }
  bool contains(const Exponent& e) const;
};

inline constexpr std::int64_t kSparseIndexBound = std::int64_t{1} << 40;

/// Greedy round-robin over the families of `exponents` whose direction is a
/// target; each pick is the first index after the family's cursor whose
/// modulus exceeds twice the previous pick.
SparseSequence extract_sparse(const FamilySet& exponents, const DirectionSet& targets,
                              std::size_t count);

struct G1Value {
  Complex value{};
  /// The full product equals value * exp(t), |t| <= tail_bound.
  double tail_bound = 0.0;
};

/// Partial product prod (1 - z / lambda_n) with a tail bound that uses only
/// the doubling invariant.
G1Value g1_eval(const SparseSequence& seq, Complex z);

struct TypeProbe {
  double radius;
  double slope;  // max over 64 angles of log|G1(r e^{i theta})| / r
};

std::vector<TypeProbe> minimal_type_probe(const SparseSequence& seq, std::span<const double> radii);

/// Action of the convolution operator with characteristic function G1 on an
/// exponential sum: (lambda, c) -> (lambda, G1(lambda) c). Terms on the
/// sequence map to exactly zero.
ExpSum apply_convolution(const SparseSequence& seq, const ExpSum& u);

}  // namespace expinterp
