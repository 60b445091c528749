#include "cfsec/cf_rate.hpp"

#include <cmath>
#include <stdexcept>

namespace cfsec {

namespace {

constexpr double kRankEps = 1e-12;

void check_power(double P) {
  if (!(P > 0.0) || !std::isfinite(P)) throw std::invalid_argument("P must be positive");
}

double log2_clamped(double x) { return x > 1.0 ? 0.5 * std::log2(x) : 0.0; }

}  // namespace

double computation_rate_with_b(const Eigen::MatrixXd& H, const Eigen::VectorXi& a,
                               const Eigen::VectorXd& b, double P) {
  check_power(P);
  if (a.size() != H.cols()) throw std::invalid_argument("coefficient vector length mismatch");
  if (b.size() != H.rows()) throw std::invalid_argument("preprocessing vector length mismatch");
  const Eigen::VectorXd ad = a.cast<double>();
  const double denom = b.squaredNorm() + P * (H.transpose() * b - ad).squaredNorm();
  if (denom == 0.0)
    throw std::invalid_argument("a = 0 and b = 0 leave the rate undefined");
  return log2_clamped(P / denom);
}

Eigen::MatrixXd optimal_preprocessing(const Eigen::MatrixXd& H, const Eigen::MatrixXi& A, double P) {
  check_power(P);
  if (A.cols() != H.cols()) throw std::invalid_argument("coefficient matrix width mismatch");
  Eigen::MatrixXd G = H * H.transpose();
  G.diagonal().array() += 1.0 / P;
  // G is positive definite, solve instead of forming the inverse
  return G.llt().solve(H * A.cast<double>().transpose()).transpose();
}

Eigen::MatrixXd rate_gram_matrix(const Eigen::MatrixXd& H, double P) {
  check_power(P);
  const Eigen::MatrixXd gram = H.transpose() * H;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i)
    d[i] = d[i] > kRankEps ? 1.0 / (P * d[i] + 1.0) : 1.0;
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

double computation_rate_from_gram(const Eigen::MatrixXd& M, const Eigen::VectorXi& a) {
  if (a.size() != M.rows()) throw std::invalid_argument("coefficient vector length mismatch");
  if (a.isZero()) throw std::invalid_argument("coefficient vector must be nonzero");
  const Eigen::VectorXd ad = a.cast<double>();
  const double q = ad.dot(M * ad);
  return log2_clamped(1.0 / q);
}

double computation_rate(const Eigen::MatrixXd& H, const Eigen::VectorXi& a, double P) {
  return computation_rate_from_gram(rate_gram_matrix(H, P), a);
}

double siso_computation_rate(const Eigen::VectorXd& h_eff, const Eigen::VectorXi& a,
                             bool half_prefactor) {
  if (a.size() != h_eff.size()) throw std::invalid_argument("coefficient vector length mismatch");
  if (a.isZero()) throw std::invalid_argument("coefficient vector must be nonzero");
  const Eigen::VectorXd ad = a.cast<double>();
  const double q = ad.squaredNorm() -
                   std::pow(h_eff.dot(ad), 2) / (1.0 + h_eff.squaredNorm());
  const double bits = q < 1.0 ? std::log2(1.0 / q) : 0.0;
  return half_prefactor ? 0.5 * bits : bits;
}

}  // namespace cfsec
