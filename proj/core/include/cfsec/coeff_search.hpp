#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace cfsec {

/// Default cap on the candidate enumeration (exceeding it throws).
inline constexpr std::size_t kDefaultCandidateCap = 100000;

/// Flips the sign so the first nonzero entry is positive.
Eigen::VectorXi canonicalize(Eigen::VectorXi a);

/// Exact rank over the rationals (fraction-free elimination on int64).
int integer_rank(Eigen::MatrixXi M);

/// Full-recovery feasibility of a coefficient matrix: no zero or +-unit
/// rows, and for every l the matrix stacked with e_l has rank L.
bool coefficient_matrix_valid(const Eigen::MatrixXi& A);

struct SearchResult {
  /// (L-1) x L, canonical rows sorted lexicographically; 0 x L when infeasible.
  Eigen::MatrixXi coefficients;
  double rate = 0.0;
  std::size_t candidates_examined = 0;
  bool feasible = false;
};

/// All integer vectors a != 0 (canonical sign, first nonzero positive) with
/// a^T M a < 1 where M = rate_gram_matrix(H, P) -- exactly the vectors with
/// strictly positive computation rate. Fincke-Pohst walk on the Cholesky
/// factor of M. Sorted by rate descending, ties lexicographic.
std::vector<Eigen::VectorXi> enumerate_candidates(const Eigen::MatrixXd& H, double P,
                                                  std::size_t max_candidates = kDefaultCandidateCap);

/// Coefficient matrix maximizing the minimum row computation rate subject
/// to the full-recovery constraints. Ties: lexicographically smallest row
/// set. Infeasible inputs give rate 0 with feasible = false.
SearchResult best_coefficient_matrix(const Eigen::MatrixXd& H, double P);

/// Exhaustive ground-truth oracle over rows from [-box_radius, box_radius]^L.
/// Guards: L <= 3 and L * (2 box_radius + 1)^L <= 1e8.
SearchResult brute_force_best(const Eigen::MatrixXd& H, double P, int box_radius);

/// Smallest integer box that contains the positive-rate ellipsoid
/// {a : a^T M a < 1}: radius = max_i ceil(sqrt((M^{-1})_ii)).
int ellipsoid_box_radius(const Eigen::MatrixXd& H, double P);

}  // namespace cfsec
