#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "expinterp/geometry.hpp"
#include "expinterp/linalg.hpp"
#include "expinterp/sparse.hpp"

namespace expinterp {

inline constexpr double kDefectTol = 1e-10;

struct DefectMember {
  Complex node{};
  int multiplicity = 1;
};

/// Nodes not controlled by any coupled direction:
/// D_M = { mu : Re(omega mu) <= kappa(omega) for every coupled omega }.
struct DefectSet {
  std::vector<DefectMember> members;

  std::size_t column_count() const;
};

/// Throws NotFinite when some family stays at or below every threshold
/// forever.
DefectSet defect_set(const FamilySet& nodes, const ConditionReport& report, std::int64_t horizon);

/// Rows lambda_n, columns (mu_k, j) with entries lambda_n^j e^{mu_k lambda_n},
/// each row divided by its largest magnitude (computed in log space).
struct QuasiPolyMatrix {
  CMatrix scaled;
  std::vector<double> row_log_scales;
  std::vector<std::pair<std::size_t, int>> columns;  // (member, derivative order)
};

QuasiPolyMatrix build_quasi_poly_matrix(const DefectSet& defect, std::span<const Exponent> rows);

struct DefectDimension {
  std::size_t dimension = 0;
  /// Orthonormal null vectors over the monomials, as columns.
  CMatrix null_basis;
  std::size_t rows_used = 0;
  std::vector<std::size_t> null_dims;  // one per probed row count
};

/// Numerical null dimension of the quasi-polynomial evaluations on the
/// sequence, probed at column count + p rows for p = 4, 8, 16 and accepted
/// at the first two consecutive probes that agree.
DefectDimension defect_dimension(const DefectSet& defect, const SparseSequence& seq,
                                 double tol = kDefectTol);

/// Node-evaluation system of D_M: rows (mu_k, j), columns the sequence
/// exponents followed by `extra`, each column normalized by its largest entry.
CMatrix defect_evaluation_matrix(const DefectSet& defect, std::span<const Exponent> exponents,
                                 std::span<const Complex> extra);

/// Seeded rejection sampling of xi_1..xi_d such that each e^{xi z} raises the
/// rank of the defect evaluation system by one.
std::vector<Complex> exceptional_exponentials(std::size_t d, const DefectSet& defect,
                                              const SparseSequence& seq, std::uint64_t seed,
                                              double tol = kDefectTol);

}  // namespace expinterp
