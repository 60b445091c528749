#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>
#include <nlohmann/json.hpp>

#include "cfsec/capacity.hpp"
#include "cfsec/channel.hpp"
#include "cfsec/power_alloc.hpp"
#include "cfsec/secrecy.hpp"

namespace cfsec {

enum class AntennaConfig { siso, miso, simo };

std::string to_string(AntennaConfig c);
AntennaConfig antenna_config_from_string(const std::string& s);

struct MonteCarloConfig {
  std::size_t trials = 1000;
  double snr_db = 5.0;
  int users = 2;
  AntennaConfig config = AntennaConfig::siso;
  int antennas = 1;  ///< eta_T per user for miso, eta_R for simo
  bool power_opt = false;
  std::uint64_t base_seed = 0;
  /// grid for power_opt; when unset, GridSpec::defaults(P) is used
  std::optional<GridSpec> grid;
};

MonteCarloConfig monte_carlo_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MonteCarloConfig& cfg);

struct MonteCarloResult {
  double positive_fraction = 0.0;
  double mean_secrecy_rate = 0.0;  ///< over all trials, zeros included
  std::vector<double> per_trial;   ///< per-trial per-user secrecy rates
};

/// Draws i.i.d. N(0,1) channels (per-trial seed = base_seed XOR index),
/// evaluates the per-user secrecy rate (with optimized powers when
/// power_opt), and aggregates the fraction of positive trials.
MonteCarloResult monte_carlo_positive_fraction(const MonteCarloConfig& cfg);

nlohmann::json monte_carlo_manifest(const MonteCarloConfig& cfg, const MonteCarloResult& result);

struct CurveRow {
  double power;
  double r_cf_total;
  double r_s_cf;
  double r_s_hs;
  double r_s_ks;
  double r_s_kp;
};

/// Two-way power-rate rows via baseline_rates.
std::vector<CurveRow> power_rate_curve(const std::vector<double>& powers);
void write_curve_csv(const std::vector<CurveRow>& rows, std::ostream& out);

/// One rate point (R, R) of a candidate coefficient vector.
struct RatePoint {
  Eigen::VectorXi a;
  double rate;
};

struct RegionSweep {
  RegionBoundary boundary;          ///< MAC pentagon at the allocation used
  std::vector<RatePoint> points;    ///< all positive-rate candidate vectors
  Eigen::VectorXd allocation;
};

/// MAC region boundary plus the compute-and-forward rate points of every
/// positive-rate candidate, at full power or at a given allocation.
RegionSweep rate_region_sweep(const Eigen::VectorXd& h, double P,
                              const std::optional<PowerAllocation>& alloc = std::nullopt);
void write_region_sweep_csv(const RegionSweep& sweep, std::ostream& out);

struct HistogramRow {
  int users;
  double snr_db;
  AntennaConfig config;
  int antennas;
  bool power_opt;
  double positive_fraction;
  double mean_secrecy_rate;
};

struct HistogramCase {
  AntennaConfig config;
  int antennas;
  bool power_opt;
};

/// Positive-secrecy fraction per (L, SNR, antenna case).
std::vector<HistogramRow> histogram_sweep(const std::vector<int>& user_counts,
                                          const std::vector<double>& snr_dbs,
                                          const std::vector<HistogramCase>& cases,
                                          std::size_t trials, std::uint64_t base_seed);
void write_histogram_csv(const std::vector<HistogramRow>& rows, std::ostream& out);

struct CodecTrialConfig {
  int q = 4;
  int dimension = 8;
  int users = 2;
  double snr_db = 20.0;
  std::size_t trials = 1000;
  std::uint64_t base_seed = 0;
};

struct CodecTrialResult {
  CodecTrialConfig config;
  Eigen::VectorXi a;
  double error_rate;  ///< combination decoding failures / trials
};

/// Monte Carlo error rate of relay combination decoding on the all-ones
/// channel with a = (1, ..., 1).
CodecTrialResult codec_error_rate(const CodecTrialConfig& cfg);
void write_codec_csv(const CodecTrialResult& result, std::ostream& out);

}  // namespace cfsec
