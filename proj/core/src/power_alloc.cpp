#include "cfsec/power_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "cfsec/capacity.hpp"
#include "cfsec/coeff_search.hpp"

namespace cfsec {

namespace {

struct Objectives {
  double secrecy;  // L * R_CF - C_sum (not clamped)
  double rcf;
};

/// Memoization key: effective channel quantized to ~1e-9 absolute.
std::vector<std::int64_t> channel_key(const Eigen::MatrixXd& H_eff) {
  std::vector<std::int64_t> key;
  key.reserve(static_cast<std::size_t>(H_eff.size()));
  for (Eigen::Index i = 0; i < H_eff.size(); ++i)
    key.push_back(static_cast<std::int64_t>(std::llround(H_eff(i) * 1e9)));
  return key;
}

std::vector<double> level_values(double center, double span, double step, double lo, double hi) {
  std::vector<double> vals;
  for (double v = center - span; v <= center + span + step * 0.5; v += step)
    vals.push_back(std::clamp(v, lo, hi));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             vals.end());
  return vals;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

std::pair<PowerAllocation, RateReport> optimize_power(const ChannelMatrix& H,
                                                      const PowerBudget& budget,
                                                      const GridSpec& grid,
                                                      PowerObjective objective) {
  const Eigen::Index users = H.user_count();
  if (users > 4) throw std::invalid_argument("grid search is limited to at most 4 users");
  if (!(grid.coarse_step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (!(grid.min_power > 0.0) || grid.min_power > budget.max_power)
    throw std::invalid_argument("min power must lie in (0, P]");
  if (grid.refine_levels < 0) throw std::invalid_argument("refine levels must be >= 0");

  const double sigma = std::sqrt(budget.noise_variance);
  const Eigen::MatrixXd H_unit = H.entries() / sigma;
  const double P = budget.max_power;

  std::map<std::vector<std::int64_t>, Objectives> cache;
  auto evaluate = [&](const Eigen::VectorXd& powers) -> Objectives {
    Eigen::MatrixXd H_eff = H_unit;
    for (Eigen::Index l = 0; l < users; ++l) H_eff.col(l) *= std::sqrt(powers[l]);
    auto key = channel_key(H_eff);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const SearchResult search = best_coefficient_matrix(H_eff, 1.0);
    const double mac = mac_sum_capacity(H_eff);
    const Objectives obj{static_cast<double>(users) * search.rate - mac, search.rate};
    cache.emplace(std::move(key), obj);
    return obj;
  };
  auto score = [&](const Objectives& o) {
    // clamped like the reported rate, so rate-0 allocations tie and the
    // total-power tie-break hands back full power
    return objective == PowerObjective::secrecy_rate ? std::max(0.0, o.secrecy) : o.rcf;
  };

  // base grid: min_power upward by coarse_step, full power always present
  std::vector<double> base;
  for (double v = grid.min_power; v < P - grid.coarse_step * 0.5; v += grid.coarse_step)
    base.push_back(v);
  base.push_back(P);

  Eigen::VectorXd best_alloc;
  double best_score = 0.0;
  bool have_best = false;

  auto scan_level = [&](const std::vector<std::vector<double>>& axes) {
    double points = 1.0;
    for (const auto& ax : axes) points *= static_cast<double>(ax.size());
    if (points > 1e7) throw std::invalid_argument("power grid exceeds 1e7 points");

    std::vector<std::size_t> idx(axes.size(), 0);
    Eigen::VectorXd p(users);
    while (true) {
      for (Eigen::Index l = 0; l < users; ++l) p[l] = axes[static_cast<std::size_t>(l)][idx[static_cast<std::size_t>(l)]];
      const double s = score(evaluate(p));
      if (!have_best || s > best_score ||
          (s == best_score && (p.sum() > best_alloc.sum() ||
                               (p.sum() == best_alloc.sum() && lex_less(p, best_alloc))))) {
        have_best = true;
        best_score = s;
        best_alloc = p;
      }
      // odometer increment
      Eigen::Index carry = users - 1;
      while (carry >= 0) {
        if (++idx[static_cast<std::size_t>(carry)] < axes[static_cast<std::size_t>(carry)].size()) break;
        idx[static_cast<std::size_t>(carry)] = 0;
        --carry;
      }
      if (carry < 0) break;
    }
  };

  scan_level(std::vector<std::vector<double>>(static_cast<std::size_t>(users), base));

  double step = grid.coarse_step;
  for (int level = 0; level < grid.refine_levels; ++level) {
    const double fine = step / 10.0;
    std::vector<std::vector<double>> axes;
    axes.reserve(static_cast<std::size_t>(users));
    for (Eigen::Index l = 0; l < users; ++l)
      axes.push_back(level_values(best_alloc[l], step, fine, grid.min_power, P));
    scan_level(axes);
    step = fine;
  }

  const PowerAllocation alloc{best_alloc};
  return {alloc, secrecy_rate(H, budget, alloc)};
}

}  // namespace cfsec
