#include "cfsec/experiments.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cfsec/cf_rate.hpp"
#include "cfsec/coeff_search.hpp"
#include "cfsec/lattice_codec.hpp"
#include "cfsec/parallel.hpp"
#include "cfsec/rng.hpp"
#include "cfsec/version.hpp"

namespace cfsec {

std::string to_string(AntennaConfig c) {
  switch (c) {
    case AntennaConfig::siso: return "siso";
    case AntennaConfig::miso: return "miso";
    case AntennaConfig::simo: return "simo";
  }
  return "siso";
}

AntennaConfig antenna_config_from_string(const std::string& s) {
  if (s == "siso") return AntennaConfig::siso;
  if (s == "miso") return AntennaConfig::miso;
  if (s == "simo") return AntennaConfig::simo;
  throw std::invalid_argument("unknown antenna config: " + s);
}

MonteCarloConfig monte_carlo_config_from_json(const nlohmann::json& j) {
  try {
    MonteCarloConfig cfg;
    cfg.trials = j.value("trials", cfg.trials);
    cfg.snr_db = j.value("snr_db", cfg.snr_db);
    cfg.users = j.value("L", cfg.users);
    cfg.config = antenna_config_from_string(j.value("antenna_config", std::string("siso")));
    cfg.antennas = j.value("antennas", cfg.config == AntennaConfig::siso ? 1 : 2);
    cfg.power_opt = j.value("power_opt", false);
    cfg.base_seed = j.value("base_seed", std::uint64_t{0});
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      const double P = power_from_snr_db(cfg.snr_db);
      GridSpec spec = GridSpec::defaults(P);
      spec.coarse_step = g.value("coarse_step", spec.coarse_step);
      spec.refine_levels = g.value("refine_levels", spec.refine_levels);
      spec.min_power = g.value("min_power", spec.min_power);
      cfg.grid = spec;
    }
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (cfg.users < 2) throw std::invalid_argument("L must be >= 2");
    if (cfg.antennas < 1) throw std::invalid_argument("antennas must be >= 1");
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed monte-carlo config: ") + e.what());
  }
}

nlohmann::json to_json(const MonteCarloConfig& cfg) {
  nlohmann::json j{{"trials", cfg.trials},
                   {"snr_db", cfg.snr_db},
                   {"L", cfg.users},
                   {"antenna_config", to_string(cfg.config)},
                   {"antennas", cfg.antennas},
                   {"power_opt", cfg.power_opt},
                   {"base_seed", cfg.base_seed}};
  if (cfg.grid) {
    j["grid"] = {{"coarse_step", cfg.grid->coarse_step},
                 {"refine_levels", cfg.grid->refine_levels},
                 {"min_power", cfg.grid->min_power}};
  }
  return j;
}

namespace {

ChannelMatrix draw_channel(const MonteCarloConfig& cfg, Rng& rng) {
  switch (cfg.config) {
    case AntennaConfig::miso: {
      MisoUserChannels users;
      users.users.reserve(static_cast<std::size_t>(cfg.users));
      for (int l = 0; l < cfg.users; ++l) {
        Eigen::VectorXd h(cfg.antennas);
        for (int i = 0; i < cfg.antennas; ++i) h[i] = rng.normal();
        users.users.push_back(std::move(h));
      }
      return miso_collapse(users);
    }
    case AntennaConfig::simo: {
      Eigen::MatrixXd H(cfg.antennas, cfg.users);
      for (Eigen::Index i = 0; i < H.size(); ++i) H(i) = rng.normal();
      return ChannelMatrix(std::move(H));
    }
    case AntennaConfig::siso:
    default: {
      Eigen::MatrixXd H(1, cfg.users);
      for (Eigen::Index i = 0; i < H.size(); ++i) H(i) = rng.normal();
      return ChannelMatrix(std::move(H));
    }
  }
}

double trial_secrecy(const MonteCarloConfig& cfg, std::size_t index) {
  Rng rng = Rng::for_trial(cfg.base_seed, index);
  const double P = power_from_snr_db(cfg.snr_db);
  const PowerBudget budget(P);
  const ChannelMatrix H = draw_channel(cfg, rng);
  if (cfg.power_opt) {
    const GridSpec grid = cfg.grid.value_or(GridSpec::defaults(P));
    return optimize_power(H, budget, grid).second.per_user_secrecy;
  }
  return secrecy_rate(H, budget, PowerAllocation::full(P, H.user_count())).per_user_secrecy;
}

}  // namespace

MonteCarloResult monte_carlo_positive_fraction(const MonteCarloConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  MonteCarloResult result;
  result.per_trial.assign(cfg.trials, 0.0);
  parallel_for(cfg.trials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) result.per_trial[i] = trial_secrecy(cfg, i);
  });
  std::size_t positives = 0;
  double sum = 0.0;
  for (double r : result.per_trial) {
    if (r > 0.0) ++positives;
    sum += r;
  }
  result.positive_fraction = static_cast<double>(positives) / static_cast<double>(cfg.trials);
  result.mean_secrecy_rate = sum / static_cast<double>(cfg.trials);
  return result;
}

nlohmann::json monte_carlo_manifest(const MonteCarloConfig& cfg, const MonteCarloResult& result) {
  return nlohmann::json{{"config", to_json(cfg)},
                        {"version", std::string(kVersion)},
                        {"positive_fraction", result.positive_fraction},
                        {"mean_secrecy_rate", result.mean_secrecy_rate}};
}

std::vector<CurveRow> power_rate_curve(const std::vector<double>& powers) {
  if (powers.empty()) throw std::invalid_argument("power grid must be non-empty");
  std::vector<CurveRow> rows;
  rows.reserve(powers.size());
  for (double P : powers) {
    const TwoWayBaselines b = baseline_rates(P);
    rows.push_back({P, b.r_cf_total, b.r_s_cf, b.r_s_hs, b.r_s_ks, b.r_s_kp});
  }
  return rows;
}

void write_curve_csv(const std::vector<CurveRow>& rows, std::ostream& out) {
  out << "P,R_CF_total,R_s_CF,R_s_HS,R_s_KS,R_s_KP\n";
  out.precision(12);
  for (const auto& r : rows)
    out << r.power << ',' << r.r_cf_total << ',' << r.r_s_cf << ',' << r.r_s_hs << ','
        << r.r_s_ks << ',' << r.r_s_kp << '\n';
}

RegionSweep rate_region_sweep(const Eigen::VectorXd& h, double P,
                              const std::optional<PowerAllocation>& alloc) {
  if (h.size() != 2) throw std::invalid_argument("region sweep is a two-user figure");
  const PowerAllocation powers = alloc.value_or(PowerAllocation::full(P, 2));
  powers.validate_against(P, 2);

  Eigen::MatrixXd h_eff(1, 2);
  h_eff << h[0] * std::sqrt(powers.powers()[0]), h[1] * std::sqrt(powers.powers()[1]);

  RegionSweep sweep;
  sweep.allocation = powers.powers();
  sweep.boundary = mac_region_2user(h_eff);
  const Eigen::MatrixXd M = rate_gram_matrix(h_eff, 1.0);
  for (const auto& a : enumerate_candidates(h_eff, 1.0))
    sweep.points.push_back({a, computation_rate_from_gram(M, a)});
  return sweep;
}

void write_region_sweep_csv(const RegionSweep& sweep, std::ostream& out) {
  out << "kind,R1,R2,a1,a2\n";
  out.precision(12);
  for (const auto& v : sweep.boundary.vertices)
    out << "boundary," << v[0] << ',' << v[1] << ",,\n";
  for (const auto& p : sweep.points)
    out << "cf_point," << p.rate << ',' << p.rate << ',' << p.a[0] << ',' << p.a[1] << '\n';
}

std::vector<HistogramRow> histogram_sweep(const std::vector<int>& user_counts,
                                          const std::vector<double>& snr_dbs,
                                          const std::vector<HistogramCase>& cases,
                                          std::size_t trials, std::uint64_t base_seed) {
  std::vector<HistogramRow> rows;
  std::uint64_t stream = 0;
  for (int L : user_counts) {
    for (double snr : snr_dbs) {
      for (const auto& c : cases) {
        MonteCarloConfig cfg;
        cfg.trials = trials;
        cfg.snr_db = snr;
        cfg.users = L;
        cfg.config = c.config;
        cfg.antennas = c.antennas;
        cfg.power_opt = c.power_opt;
        // decorrelate the sweep cells
        cfg.base_seed = base_seed + 0x9e3779b97f4a7c15ULL * ++stream;
        const MonteCarloResult r = monte_carlo_positive_fraction(cfg);
        rows.push_back({L, snr, c.config, c.antennas, c.power_opt, r.positive_fraction,
                        r.mean_secrecy_rate});
      }
    }
  }
  return rows;
}

void write_histogram_csv(const std::vector<HistogramRow>& rows, std::ostream& out) {
  out << "L,snr_db,config,antennas,power_opt,positive_fraction,mean_secrecy_rate\n";
  out.precision(12);
  for (const auto& r : rows)
    out << r.users << ',' << r.snr_db << ',' << to_string(r.config) << ',' << r.antennas << ','
        << (r.power_opt ? 1 : 0) << ',' << r.positive_fraction << ',' << r.mean_secrecy_rate
        << '\n';
}

CodecTrialResult codec_error_rate(const CodecTrialConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.users < 2) throw std::invalid_argument("L must be >= 2");
  const double P = power_from_snr_db(cfg.snr_db);
  const LatticeChain chain(cfg.dimension, cfg.q, P);
  const Eigen::VectorXi a = Eigen::VectorXi::Ones(cfg.users);
  const Eigen::VectorXd ones_channel = Eigen::VectorXd::Ones(cfg.users);
  const Eigen::VectorXd powers = Eigen::VectorXd::Constant(cfg.users, P);
  const BinnedCodebook bins(chain, 0.0, cfg.base_seed ^ 0xb1a5ULL);

  std::vector<char> failed(cfg.trials, 0);
  parallel_for(cfg.trials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng = Rng::for_trial(cfg.base_seed, t);
      std::vector<DitherVector> dithers;
      std::vector<EncodeResult> enc;
      dithers.reserve(static_cast<std::size_t>(cfg.users));
      enc.reserve(static_cast<std::size_t>(cfg.users));
      Eigen::VectorXd y = Eigen::VectorXd::Zero(cfg.dimension);
      Eigen::VectorXi target = Eigen::VectorXi::Zero(cfg.dimension);
      for (int l = 0; l < cfg.users; ++l) {
        dithers.push_back(draw_dither(chain, rng));
        enc.push_back(encode(0, chain, bins, dithers.back(), rng));
        y += enc.back().x;  // unit gains, full power
        target += enc.back().codeword_digits;
      }
      for (int i = 0; i < cfg.dimension; ++i) y[i] += rng.normal();
      for (int i = 0; i < cfg.dimension; ++i) target[i] %= cfg.q;
      const Eigen::VectorXi decoded =
          relay_decode_combination(y, a, chain, dithers, powers, ones_channel, 1.0);
      failed[t] = decoded != target ? 1 : 0;
    }
  });
  std::size_t failures = 0;
  for (char f : failed) failures += f;
  return {cfg, a, static_cast<double>(failures) / static_cast<double>(cfg.trials)};
}

void write_codec_csv(const CodecTrialResult& result, std::ostream& out) {
  out << "snr_db,q,n,L,a,error_rate\n";
  out.precision(12);
  out << result.config.snr_db << ',' << result.config.q << ',' << result.config.dimension << ','
      << result.config.users << ',';
  for (Eigen::Index i = 0; i < result.a.size(); ++i) {
    if (i) out << ' ';
    out << result.a[i];
  }
  out << ',' << result.error_rate << '\n';
}

}  // namespace cfsec
