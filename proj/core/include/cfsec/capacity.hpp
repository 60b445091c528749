#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <vector>

namespace cfsec {

/// MAC sum capacity 1/2 log2 det(I + H_eff H_eff^T) for an effective
/// channel with per-user powers already folded in; unit noise.
double mac_sum_capacity(const Eigen::MatrixXd& H_eff);

/// Pentagon boundary of the two-user MAC region.
struct RegionBoundary {
  /// (R1, R2) vertices sorted by R1 ascending.
  std::vector<std::array<double, 2>> vertices;
  double sum_rate = 0.0;
};

/// Two users, single relay antenna: R_l <= 1/2 log2(1 + g_l^2),
/// R1 + R2 <= 1/2 log2(1 + g1^2 + g2^2).
RegionBoundary mac_region_2user(const Eigen::MatrixXd& h_eff);

/// CSV rows "R1,R2" with a header line.
void write_region_csv(const RegionBoundary& region, std::ostream& out);

/// Relay downlink multicast rate
///   max_{||w|| <= 1} min_l 1/2 log2(1 + P (w^T h_l)^2),
/// h_l the l-th column of H. Exact for a single relay antenna; for more
/// antennas a deterministic multi-start projected ascent on the unit
/// sphere (64 fixed-seed starts) supplies a desk-scale solution.
double downlink_multicast_rate(const Eigen::MatrixXd& H, double P);

}  // namespace cfsec
