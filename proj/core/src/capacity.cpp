#include "cfsec/capacity.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "cfsec/rng.hpp"

namespace cfsec {

double mac_sum_capacity(const Eigen::MatrixXd& H_eff) {
  Eigen::MatrixXd G = H_eff * H_eff.transpose();
  G.diagonal().array() += 1.0;
  // log-det through Cholesky; G = I + HH^T is positive definite
  const Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) throw std::runtime_error("Gram matrix not positive definite");
  double logdet = 0.0;
  const Eigen::MatrixXd L = llt.matrixL();
  for (Eigen::Index i = 0; i < L.rows(); ++i) logdet += 2.0 * std::log2(L(i, i));
  return 0.5 * logdet;
}

RegionBoundary mac_region_2user(const Eigen::MatrixXd& h_eff) {
  if (h_eff.rows() != 1 || h_eff.cols() != 2)
    throw std::invalid_argument("two-user region needs a 1x2 effective channel");
  const double g1 = h_eff(0, 0) * h_eff(0, 0);
  const double g2 = h_eff(0, 1) * h_eff(0, 1);
  const double c1 = 0.5 * std::log2(1.0 + g1);
  const double c2 = 0.5 * std::log2(1.0 + g2);
  const double cs = 0.5 * std::log2(1.0 + g1 + g2);

  RegionBoundary region;
  region.sum_rate = cs;
  const std::array<std::array<double, 2>, 4> corners = {{
      {0.0, c2}, {cs - c2, c2}, {c1, cs - c1}, {c1, 0.0}}};
  for (const auto& v : corners) {
    if (!region.vertices.empty() && region.vertices.back() == v) continue;
    region.vertices.push_back(v);
  }
  return region;
}

void write_region_csv(const RegionBoundary& region, std::ostream& out) {
  out << "R1,R2\n";
  out.precision(12);
  for (const auto& v : region.vertices) out << v[0] << ',' << v[1] << '\n';
}

namespace {

double min_gain_sq(const Eigen::MatrixXd& H, const Eigen::VectorXd& w) {
  double worst = std::numeric_limits<double>::infinity();
  for (Eigen::Index l = 0; l < H.cols(); ++l) {
    const double g = w.dot(H.col(l));
    worst = std::min(worst, g * g);
  }
  return worst;
}

double multicast_gain_multistart(const Eigen::MatrixXd& H) {
  constexpr int kStarts = 64;
  constexpr int kIterations = 200;
  const Eigen::Index m = H.rows();
  Rng rng(0x6d756c7469ULL);  // fixed seed: deterministic output
  double best = 0.0;
  for (int s = 0; s < kStarts; ++s) {
    Eigen::VectorXd w(m);
    for (Eigen::Index i = 0; i < m; ++i) w[i] = rng.normal();
    if (w.norm() == 0.0) continue;
    w.normalize();
    double value = min_gain_sq(H, w);
    for (int it = 0; it < kIterations; ++it) {
      // subgradient of the active (worst) user
      Eigen::Index worst_l = 0;
      double worst = std::numeric_limits<double>::infinity();
      for (Eigen::Index l = 0; l < H.cols(); ++l) {
        const double g = w.dot(H.col(l));
        if (g * g < worst) {
          worst = g * g;
          worst_l = l;
        }
      }
      const double inner = w.dot(H.col(worst_l));
      Eigen::VectorXd grad = 2.0 * inner * H.col(worst_l);
      if (grad.norm() < 1e-14) grad = H.col(worst_l);  // push off the null direction
      if (grad.norm() < 1e-14) break;                  // user with zero channel
      double step = 0.5;
      bool improved = false;
      for (int back = 0; back < 24; ++back) {
        Eigen::VectorXd cand = w + step * grad;
        if (cand.norm() == 0.0) {
          step *= 0.5;
          continue;
        }
        cand.normalize();
        const double cand_value = min_gain_sq(H, cand);
        if (cand_value > value) {
          w = cand;
          value = cand_value;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace

double downlink_multicast_rate(const Eigen::MatrixXd& H, double P) {
  if (!(P > 0.0)) throw std::invalid_argument("P must be positive");
  if (H.rows() == 1) {
    double worst = std::numeric_limits<double>::infinity();
    for (Eigen::Index l = 0; l < H.cols(); ++l)
      worst = std::min(worst, H(0, l) * H(0, l));
    return 0.5 * std::log2(1.0 + P * worst);
  }
  return 0.5 * std::log2(1.0 + P * multicast_gain_multistart(H));
}

}  // namespace cfsec
