#pragma once

#include <Eigen/Dense>

namespace cfsec {

/// Achievable computation rate in bits per real channel use for decoding
/// the integer combination a from y = Hx + z with preprocessing vector b:
///
///   R = 1/2 log2^+( P / (||b||^2 + P ||H^T b - a||^2) )
///
/// Unit noise variance. Throws if a and b are both zero (the denominator
/// would vanish) or on dimension mismatch.
double computation_rate_with_b(const Eigen::MatrixXd& H, const Eigen::VectorXi& a,
                               const Eigen::VectorXd& b, double P);

/// MMSE-optimal preprocessing matrix B = A H^T (H H^T + (1/P) I)^{-1}.
/// The inverse exists for every P > 0.
Eigen::MatrixXd optimal_preprocessing(const Eigen::MatrixXd& H, const Eigen::MatrixXi& A, double P);

/// Gram matrix M = V D V^T = (I + P H^T H)^{-1} of the rate quadratic form:
/// R(H, a) = 1/2 log2^+(1 / (a^T M a)) and a has positive rate iff
/// a^T M a < 1. V holds the eigenvectors of H^T H and
/// D_ii = 1/(P lambda_i + 1) on the numerical rank of H, 1 elsewhere.
Eigen::MatrixXd rate_gram_matrix(const Eigen::MatrixXd& H, double P);

/// Rate of combination a under the quadratic form M (see rate_gram_matrix).
double computation_rate_from_gram(const Eigen::MatrixXd& M, const Eigen::VectorXi& a);

/// Computation rate at the MMSE-optimal preprocessing, computed through the
/// eigendecomposition of H^T H. Equals the maximum of
/// computation_rate_with_b over b. Throws when a = 0.
double computation_rate(const Eigen::MatrixXd& H, const Eigen::VectorXi& a, double P);

/// Single-relay-antenna closed form on the effective channel h_eff (powers
/// already folded in):
///
///   log2^+( (||a||^2 - (h^T a)^2 / (1 + ||h||^2))^{-1} )
///
/// times 1/2 when half_prefactor is set. The prefactor variant exists only
/// to reproduce rate expressions printed without it; every other code path
/// uses the 1/2 convention.
double siso_computation_rate(const Eigen::VectorXd& h_eff, const Eigen::VectorXi& a,
                             bool half_prefactor = true);

}  // namespace cfsec
