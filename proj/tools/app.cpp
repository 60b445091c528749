#include "app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "cfsec/channel.hpp"
#include "cfsec/experiments.hpp"
#include "cfsec/power_alloc.hpp"
#include "cfsec/secrecy.hpp"
#include "cfsec/version.hpp"

namespace cfsec::cli {

namespace {

Eigen::MatrixXd parse_inline_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream row_stream(text);
  std::string row_text;
  while (std::getline(row_stream, row_text, ';')) {
    std::vector<double> row;
    std::stringstream cell_stream(row_text);
    std::string cell;
    while (std::getline(cell_stream, cell, ',')) {
      double v = 0.0;
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse matrix entry '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  const std::size_t cols = rows.front().size();
  Eigen::MatrixXd H(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      H(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return H;
}

Eigen::VectorXd parse_inline_vector(const std::string& text) {
  const Eigen::MatrixXd m = parse_inline_matrix(text);
  if (m.rows() != 1) throw std::invalid_argument("expected a single comma-separated row");
  return m.row(0);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ChannelArgs {
  std::string inline_h;
  std::string h_file;
  double power = 0.0;
  double snr_db = std::numeric_limits<double>::quiet_NaN();
  double noise_var = 1.0;

  void attach(CLI::App* cmd) {
    cmd->set_help_flag("--help", "print help");  // frees -h for the gains flag
    cmd->add_option("--h", inline_h, "channel gains inline, rows ';', entries ','");
    cmd->add_option("--H-file", h_file, "channel JSON file {\"H\": [[...]], \"P\":, \"noise_var\":}");
    cmd->add_option("--power", power, "per-node power budget P (Watt)");
    cmd->add_option("--snr-db", snr_db, "budget as P/sigma^2 in dB (alternative to --power)");
    cmd->add_option("--noise-var", noise_var, "noise variance (default 1)");
  }

  ChannelInstance build() const {
    if (!inline_h.empty() && !h_file.empty())
      throw std::invalid_argument("--h and --H-file are mutually exclusive");
    std::optional<ChannelInstance> from_file;
    if (!h_file.empty()) from_file = parse_channel_json_text(slurp(h_file));

    double noise = from_file ? from_file->budget.noise_variance : noise_var;
    double P = from_file ? from_file->budget.max_power : power;
    if (!std::isnan(snr_db)) P = power_from_snr_db(snr_db, noise);
    else if (power > 0.0) P = power;
    if (!(P > 0.0)) throw std::invalid_argument("need --power or --snr-db (or P in the file)");

    if (from_file) return ChannelInstance{from_file->channel, PowerBudget(P, noise)};
    if (inline_h.empty()) throw std::invalid_argument("need --h or --H-file");
    return ChannelInstance{ChannelMatrix(parse_inline_matrix(inline_h)), PowerBudget(P, noise)};
  }
};

/// Writes to the --out path when set, else to the default stream.
void deliver(const std::string& out_path, std::ostream& fallback,
             const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty()) {
    writer(fallback);
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  writer(f);
}

void write_report(const RateReport& report, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    os << "r_cf,mac_sum,per_user_secrecy,downlink_rate,feasible\n";
    os.precision(12);
    os << report.r_cf << ',' << report.mac_sum << ',' << report.per_user_secrecy << ','
       << report.downlink_rate << ',' << (report.feasible ? 1 : 0) << '\n';
  } else {
    os << to_json(report).dump(2) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"compute-and-forward secrecy rates for the multi-way untrusted relay channel"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "json";

  // rate
  auto* rate_cmd = app.add_subcommand("rate", "secrecy rate of one channel instance");
  ChannelArgs rate_ch;
  rate_ch.attach(rate_cmd);
  std::string rate_alloc;
  rate_cmd->add_option("--alloc", rate_alloc, "per-user powers, comma separated (default full)");
  rate_cmd->add_option("--out", out_path, "output path (default stdout)");
  rate_cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // optimize-power
  auto* opt_cmd = app.add_subcommand("optimize-power", "grid search over transmit powers");
  ChannelArgs opt_ch;
  opt_ch.attach(opt_cmd);
  double grid_step = 0.0, min_power = 0.0;
  int refine_levels = -1;
  std::string objective = "secrecy";
  opt_cmd->add_option("--grid-step", grid_step, "coarse grid step (Watt, default P/10)");
  opt_cmd->add_option("--refine-levels", refine_levels, "refinement levels (default 1)");
  opt_cmd->add_option("--min-power", min_power, "grid floor (default P/10)");
  opt_cmd->add_option("--objective", objective, "secrecy|rcf")
      ->check(CLI::IsMember({"secrecy", "rcf"}));
  opt_cmd->add_option("--out", out_path, "output path (default stdout)");

  // region
  auto* region_cmd = app.add_subcommand("region", "two-user MAC region and CF rate points");
  ChannelArgs region_ch;
  region_ch.attach(region_cmd);
  std::string region_alloc;
  region_cmd->add_option("--alloc", region_alloc, "per-user powers (default full)");
  region_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "two-way power-rate baselines");
  double pmin = 0.1, pmax = 1000.0;
  std::size_t points = 50;
  curve_cmd->add_option("--pmin", pmin, "smallest power (Watt)");
  curve_cmd->add_option("--pmax", pmax, "largest power (Watt)");
  curve_cmd->add_option("--points", points, "log-spaced point count");
  curve_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

  // monte-carlo
  auto* mc_cmd = app.add_subcommand("monte-carlo", "positive-secrecy fraction over fading draws");
  std::string mc_config_path;
  std::int64_t mc_trials = -1, mc_seed = -1;
  mc_cmd->add_option("--config", mc_config_path, "config JSON path")->required();
  mc_cmd->add_option("--trials", mc_trials, "override trial count");
  mc_cmd->add_option("--seed", mc_seed, "override base seed");
  mc_cmd->add_option("--out", out_path, "manifest JSON path (default stdout)");

  // codec-demo
  auto* codec_cmd = app.add_subcommand("codec-demo", "nested-lattice relay decoding error rate");
  CodecTrialConfig codec_cfg;
  std::int64_t codec_seed = 0;
  codec_cmd->add_option("--q", codec_cfg.q, "nesting ratio (codebook q^n)");
  codec_cmd->add_option("--n", codec_cfg.dimension, "lattice dimension");
  codec_cmd->add_option("--users", codec_cfg.users, "user count L");
  codec_cmd->add_option("--snr-db", codec_cfg.snr_db, "P/sigma^2 in dB");
  codec_cmd->add_option("--trials", codec_cfg.trials, "Monte Carlo trials");
  codec_cmd->add_option("--seed", codec_seed, "base seed");
  codec_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (rate_cmd->parsed()) {
      const ChannelInstance inst = rate_ch.build();
      const PowerAllocation alloc =
          rate_alloc.empty()
              ? PowerAllocation::full(inst.budget.max_power, inst.channel.user_count())
              : PowerAllocation(parse_inline_vector(rate_alloc));
      const RateReport report = secrecy_rate(inst.channel, inst.budget, alloc);
      deliver(out_path, out, [&](std::ostream& os) { write_report(report, format, os); });
    } else if (opt_cmd->parsed()) {
      const ChannelInstance inst = opt_ch.build();
      GridSpec grid = GridSpec::defaults(inst.budget.max_power);
      if (grid_step > 0.0) grid.coarse_step = grid_step;
      if (refine_levels >= 0) grid.refine_levels = refine_levels;
      if (min_power > 0.0) grid.min_power = min_power;
      const PowerObjective obj = objective == "rcf" ? PowerObjective::computation_rate
                                                    : PowerObjective::secrecy_rate;
      const RateReport report = optimize_power(inst.channel, inst.budget, grid, obj).second;
      nlohmann::json j{{"objective", objective}, {"report", to_json(report)}};
      deliver(out_path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    } else if (region_cmd->parsed()) {
      const ChannelInstance inst = region_ch.build();
      if (inst.channel.antenna_count() != 1 || inst.channel.user_count() != 2)
        throw std::invalid_argument("region needs a 1x2 channel");
      std::optional<PowerAllocation> alloc;
      if (!region_alloc.empty()) alloc = PowerAllocation(parse_inline_vector(region_alloc));
      const RegionSweep sweep =
          rate_region_sweep(inst.channel.entries().row(0), inst.budget.max_power, alloc);
      deliver(out_path, out, [&](std::ostream& os) { write_region_sweep_csv(sweep, os); });
    } else if (curve_cmd->parsed()) {
      if (!(pmin > 0.0) || !(pmax >= pmin) || points < 1)
        throw std::invalid_argument("need 0 < pmin <= pmax and points >= 1");
      std::vector<double> powers;
      for (std::size_t i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        powers.push_back(pmin * std::pow(pmax / pmin, t));
      }
      const auto rows = power_rate_curve(powers);
      deliver(out_path, out, [&](std::ostream& os) { write_curve_csv(rows, os); });
    } else if (mc_cmd->parsed()) {
      nlohmann::json config_json;
      try {
        config_json = nlohmann::json::parse(slurp(mc_config_path));
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed config JSON: ") + e.what());
      }
      MonteCarloConfig cfg = monte_carlo_config_from_json(config_json);
      if (mc_trials >= 1) cfg.trials = static_cast<std::size_t>(mc_trials);
      if (mc_seed >= 0) cfg.base_seed = static_cast<std::uint64_t>(mc_seed);
      const MonteCarloResult result = monte_carlo_positive_fraction(cfg);
      const nlohmann::json manifest = monte_carlo_manifest(cfg, result);
      deliver(out_path, out, [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
    } else if (codec_cmd->parsed()) {
      codec_cfg.base_seed = static_cast<std::uint64_t>(codec_seed);
      const CodecTrialResult result = codec_error_rate(codec_cfg);
      deliver(out_path, out, [&](std::ostream& os) { write_codec_csv(result, os); });
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace cfsec::cli
