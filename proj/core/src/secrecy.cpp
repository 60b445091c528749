#include "cfsec/secrecy.hpp"

#include <cmath>
#include <stdexcept>

#include "cfsec/capacity.hpp"
#include "cfsec/coeff_search.hpp"

namespace cfsec {

nlohmann::json to_json(const RateReport& report) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index r = 0; r < report.coefficient_matrix.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < report.coefficient_matrix.cols(); ++c)
      row.push_back(report.coefficient_matrix(r, c));
    a.push_back(row);
  }
  nlohmann::json alloc = nlohmann::json::array();
  for (Eigen::Index i = 0; i < report.allocation.size(); ++i)
    alloc.push_back(report.allocation[i]);
  return nlohmann::json{{"r_cf", report.r_cf},
                        {"mac_sum", report.mac_sum},
                        {"per_user_secrecy", report.per_user_secrecy},
                        {"coefficient_matrix", a},
                        {"allocation", alloc},
                        {"downlink_rate", report.downlink_rate},
                        {"feasible", report.feasible}};
}

RateReport secrecy_rate(const ChannelMatrix& H, const PowerBudget& budget,
                        const PowerAllocation& alloc) {
  alloc.validate_against(budget.max_power, H.user_count());

  // normalize to unit noise, then fold the transmit powers into the channel
  const double sigma = std::sqrt(budget.noise_variance);
  const ChannelMatrix H_unit(H.entries() / sigma);
  const ChannelMatrix H_eff = effective_channel(H_unit, alloc);

  const SearchResult search = best_coefficient_matrix(H_eff.entries(), 1.0);
  const double mac = mac_sum_capacity(H_eff.entries());
  const double users = static_cast<double>(H.user_count());

  RateReport report;
  report.r_cf = search.rate;
  report.mac_sum = mac;
  report.per_user_secrecy = std::max(0.0, (users * search.rate - mac) / users);
  report.coefficient_matrix = search.coefficients;
  report.allocation = alloc.powers();
  report.feasible = search.feasible;
  report.downlink_rate = downlink_multicast_rate(H_unit.entries(), budget.max_power);
  return report;
}

double twoway_jammer_rate(double h1, double h2, double P) {
  if (!(P > 0.0)) throw std::invalid_argument("P must be positive");
  Eigen::MatrixXd h_eff(1, 2);
  h_eff << h1 * std::sqrt(P), h2 * std::sqrt(P);
  const SearchResult search = best_coefficient_matrix(h_eff, 1.0);
  const double leak = 0.5 * std::log2(1.0 + h1 * h1 * P / (1.0 + h2 * h2 * P));
  return std::max(0.0, search.rate - leak);
}

TwoWayBaselines baseline_rates(double P) {
  if (!(P > 0.0)) throw std::invalid_argument("P must be positive");
  const double r_cf = 0.5 * std::log2(0.5 + P);
  const double log2e = std::log2(std::exp(1.0));
  TwoWayBaselines b;
  b.r_cf_total = std::max(0.0, r_cf);
  b.r_s_cf = twoway_jammer_rate(1.0, 1.0, P);
  b.r_s_hs = std::max(0.0, r_cf - 1.0);
  b.r_s_ks = std::max(0.0, r_cf - std::log2(2.0 * std::exp(1.0)));
  b.r_s_kp = std::max(0.0, 0.5 * std::log2(P) - 1.0 - log2e);
  return b;
}

}  // namespace cfsec
