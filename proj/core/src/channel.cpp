#include "cfsec/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cfsec {

ChannelMatrix::ChannelMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1) throw std::invalid_argument("channel needs at least one relay antenna");
  if (entries_.cols() < 2) throw std::invalid_argument("channel needs at least two users");
  if (!entries_.allFinite()) throw std::invalid_argument("channel entries must be finite");
}

ChannelMatrix ChannelMatrix::siso(const Eigen::VectorXd& gains) {
  Eigen::MatrixXd m(1, gains.size());
  m.row(0) = gains.transpose();
  return ChannelMatrix(std::move(m));
}

PowerBudget::PowerBudget(double max_power_watt, double noise_var)
    : max_power(max_power_watt), noise_variance(noise_var) {
  if (!(max_power > 0.0) || !std::isfinite(max_power))
    throw std::invalid_argument("max power must be positive");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
    throw std::invalid_argument("noise variance must be positive");
}

double power_from_snr_db(double snr_db, double noise_variance) {
  return noise_variance * std::pow(10.0, snr_db / 10.0);
}

PowerAllocation::PowerAllocation(Eigen::VectorXd powers) : powers_(std::move(powers)) {
  if (powers_.size() == 0) throw std::invalid_argument("empty power allocation");
  for (Eigen::Index i = 0; i < powers_.size(); ++i) {
    if (!(powers_[i] > 0.0) || !std::isfinite(powers_[i]))
      throw std::invalid_argument("transmit powers must be positive and finite");
  }
}

PowerAllocation PowerAllocation::full(double max_power, Eigen::Index users) {
  return PowerAllocation(Eigen::VectorXd::Constant(users, max_power));
}

void PowerAllocation::validate_against(double max_power, Eigen::Index users) const {
  if (powers_.size() != users)
    throw std::invalid_argument("power allocation length does not match user count");
  for (Eigen::Index i = 0; i < powers_.size(); ++i) {
    if (powers_[i] > max_power * (1.0 + 1e-12))
      throw std::invalid_argument("transmit power exceeds the budget");
  }
}

ChannelMatrix effective_channel(const ChannelMatrix& H, const PowerAllocation& alloc) {
  if (alloc.size() != H.user_count())
    throw std::invalid_argument("power allocation length does not match user count");
  Eigen::MatrixXd scaled = H.entries();
  for (Eigen::Index l = 0; l < scaled.cols(); ++l) scaled.col(l) *= std::sqrt(alloc.powers()[l]);
  return ChannelMatrix(std::move(scaled));
}

ChannelMatrix miso_collapse(const MisoUserChannels& users) {
  if (users.users.size() < 2) throw std::invalid_argument("need at least two users");
  Eigen::MatrixXd row(1, static_cast<Eigen::Index>(users.users.size()));
  for (std::size_t l = 0; l < users.users.size(); ++l) {
    const auto& h = users.users[l];
    if (h.size() < 1) throw std::invalid_argument("user channel vector is empty");
    if (!h.allFinite()) throw std::invalid_argument("user channel vector must be finite");
    row(0, static_cast<Eigen::Index>(l)) = h.norm();
  }
  return ChannelMatrix(std::move(row));
}

ChannelInstance parse_channel_json(const nlohmann::json& j) {
  try {
    if (!j.contains("H")) throw std::invalid_argument("channel JSON lacks \"H\"");
    const auto& rows = j.at("H");
    if (!rows.is_array() || rows.empty() || !rows.front().is_array())
      throw std::invalid_argument("\"H\" must be a non-empty array of rows");
    const std::size_t cols = rows.front().size();
    Eigen::MatrixXd H(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].is_array() || rows[r].size() != cols)
        throw std::invalid_argument("\"H\" rows must all have the same length");
      for (std::size_t c = 0; c < cols; ++c)
        H(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
    }
    const double P = j.value("P", 1.0);
    const double noise = j.value("noise_var", 1.0);
    return ChannelInstance{ChannelMatrix(std::move(H)), PowerBudget(P, noise)};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed channel JSON: ") + e.what());
  }
}

ChannelInstance parse_channel_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed channel JSON: ") + e.what());
  }
  return parse_channel_json(j);
}

}  // namespace cfsec
