#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <vector>

namespace cfsec {

/// Real fading matrix of an uplink phase: eta_R rows (relay antennas) by
/// L columns (users). Entries are dimensionless gains.
class ChannelMatrix {
 public:
  /// Throws std::invalid_argument unless all entries are finite,
  /// the matrix has at least one row and at least two columns.
  explicit ChannelMatrix(Eigen::MatrixXd entries);

  /// 1 x L channel from a gain vector (single relay antenna).
  static ChannelMatrix siso(const Eigen::VectorXd& gains);

  const Eigen::MatrixXd& entries() const { return entries_; }
  Eigen::Index antenna_count() const { return entries_.rows(); }
  Eigen::Index user_count() const { return entries_.cols(); }

 private:
  Eigen::MatrixXd entries_;
};

/// Per-node power constraint P (Watt) and receiver noise variance.
struct PowerBudget {
  double max_power;
  double noise_variance;

  explicit PowerBudget(double max_power_watt, double noise_var = 1.0);
};

/// P = sigma^2 * 10^(dB/10)
double power_from_snr_db(double snr_db, double noise_variance = 1.0);

/// Per-user transmit powers, each strictly positive.
class PowerAllocation {
 public:
  explicit PowerAllocation(Eigen::VectorXd powers);

  /// Every user at the budget cap.
  static PowerAllocation full(double max_power, Eigen::Index users);

  const Eigen::VectorXd& powers() const { return powers_; }
  Eigen::Index size() const { return powers_.size(); }

  /// Throws unless the allocation has `users` entries, all <= max_power.
  void validate_against(double max_power, Eigen::Index users) const;

 private:
  Eigen::VectorXd powers_;
};

/// Per-user antenna vectors h_l (length eta_T) for the MISO configuration.
struct MisoUserChannels {
  std::vector<Eigen::VectorXd> users;
};

/// Scales column l of H by sqrt(P_l); the noise statistics are untouched.
ChannelMatrix effective_channel(const ChannelMatrix& H, const PowerAllocation& alloc);

/// MRT beamforming collapses each user's antenna vector to its Euclidean
/// norm, giving an equivalent 1 x L channel.
ChannelMatrix miso_collapse(const MisoUserChannels& users);

struct ChannelInstance {
  ChannelMatrix channel;
  PowerBudget budget;
};

/// Parses {"H": [[...], ...], "P": <float>, "noise_var": <float>} with H in
/// row-major layout; "noise_var" defaults to 1.
ChannelInstance parse_channel_json(const nlohmann::json& j);
ChannelInstance parse_channel_json_text(const std::string& text);

}  // namespace cfsec
