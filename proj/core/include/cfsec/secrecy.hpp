#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "cfsec/channel.hpp"

namespace cfsec {

/// Rates of one channel instance under compute-and-forward with an
/// untrusted relay. All values in bits per real channel use.
struct RateReport {
  double r_cf = 0.0;            ///< common computation rate of the worst combination
  double mac_sum = 0.0;         ///< relay's MAC sum capacity at the chosen powers
  double per_user_secrecy = 0.0;///< max{0, (L r_cf - mac_sum)}/L
  Eigen::MatrixXi coefficient_matrix;  ///< (L-1) x L; empty when infeasible
  Eigen::VectorXd allocation;   ///< per-user transmit powers (Watt)
  double downlink_rate = 0.0;   ///< relay multicast rate of the later phases
  bool feasible = false;        ///< a positive-rate coefficient matrix exists
};

nlohmann::json to_json(const RateReport& report);

/// Achievable weak-secrecy rate per user: folds the powers into the
/// channel, searches the best coefficient matrix, and applies
///   L R_s <= max{0, L R_CF - 1/2 log2 det(I + H~ H~^T)}.
RateReport secrecy_rate(const ChannelMatrix& H, const PowerBudget& budget,
                        const PowerAllocation& alloc);

/// Two-way relay channel with a cooperative jammer: user 1's secrecy rate
///   max{0, R_CF - 1/2 log2(1 + h1^2 P / (1 + h2^2 P))}
/// with R_CF the best computation rate on the effective channel
/// (h1 sqrt(P), h2 sqrt(P)). With h1 = h2 = 1 this is
/// 1/2 log2(1/2 + P) - 1/2 log2(1 + P/(1+P)).
double twoway_jammer_rate(double h1, double h2, double P);

/// Two-way secrecy rates of this scheme and the literature baselines at
/// h = (1,1). The chain r_cf_total >= r_s_cf >= r_s_hs >= r_s_ks >= r_s_kp
/// holds for every P.
struct TwoWayBaselines {
  double r_cf_total;  ///< max{0, 1/2 log2(1/2 + P)}
  double r_s_cf;      ///< this scheme (weak secrecy)
  double r_s_hs;      ///< He-Yener jamming (weak secrecy)
  double r_s_ks;      ///< Kashyap et al. (strong secrecy)
  double r_s_kp;      ///< Kashyap et al. (perfect secrecy)
};

TwoWayBaselines baseline_rates(double P);

}  // namespace cfsec
