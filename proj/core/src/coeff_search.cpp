#include "cfsec/coeff_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "cfsec/cf_rate.hpp"

namespace cfsec {

namespace {

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

bool is_unit_vector(const Eigen::VectorXi& a) {
  int nonzero = 0;
  bool unit = true;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != 0) {
      ++nonzero;
      if (std::abs(a[i]) != 1) unit = false;
    }
  }
  return nonzero == 1 && unit;
}

/// Rows of a set sorted lexicographically, as a matrix.
Eigen::MatrixXi sorted_row_matrix(std::vector<Eigen::VectorXi> rows) {
  std::sort(rows.begin(), rows.end(), lex_less);
  Eigen::MatrixXi A(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) A.row(static_cast<Eigen::Index>(r)) = rows[r];
  return A;
}

bool row_matrix_lex_less(const Eigen::MatrixXi& A, const Eigen::MatrixXi& B) {
  for (Eigen::Index r = 0; r < std::min(A.rows(), B.rows()); ++r) {
    const Eigen::VectorXi a = A.row(r), b = B.row(r);
    if (lex_less(a, b)) return true;
    if (lex_less(b, a)) return false;
  }
  return A.rows() < B.rows();
}

/// Shared max-min row-subset selection. Candidates must be sorted by rate
/// descending (ties lexicographic). Returns the SearchResult with the
/// spec tie-break: highest min rate, then lexicographically smallest
/// sorted row set.
SearchResult select_rows(const std::vector<Eigen::VectorXi>& cand,
                         const std::vector<double>& rate, Eigen::Index users) {
  const std::size_t need = static_cast<std::size_t>(users - 1);
  SearchResult best;
  best.coefficients.resize(0, users);
  best.rate = 0.0;
  best.feasible = false;

  std::vector<std::size_t> chosen;
  Eigen::MatrixXi best_sorted;

  auto consider = [&](double min_rate) {
    std::vector<Eigen::VectorXi> rows;
    rows.reserve(need);
    for (std::size_t idx : chosen) rows.push_back(cand[idx]);
    Eigen::MatrixXi A = sorted_row_matrix(std::move(rows));
    if (!coefficient_matrix_valid(A)) return;
    if (!best.feasible || min_rate > best.rate ||
        (min_rate == best.rate && row_matrix_lex_less(A, best_sorted))) {
      best.feasible = true;
      best.rate = min_rate;
      best_sorted = A;
      best.coefficients = std::move(A);
    }
  };

  // depth-first over sorted candidates; a subset's min rate is its last
  // (worst) member, so once rate[i] drops below the incumbent nothing
  // beyond i can win and equal rates are still scanned for the lex tie
  std::function<void(std::size_t)> recurse = [&](std::size_t start) {
    if (chosen.size() == need) return;
    for (std::size_t i = start; i < cand.size(); ++i) {
      if (best.feasible && rate[i] < best.rate) break;
      // partial independence pruning
      Eigen::MatrixXi part(static_cast<Eigen::Index>(chosen.size()) + 1, users);
      for (std::size_t r = 0; r < chosen.size(); ++r)
        part.row(static_cast<Eigen::Index>(r)) = cand[chosen[r]];
      part.row(static_cast<Eigen::Index>(chosen.size())) = cand[i];
      if (integer_rank(part) != part.rows()) continue;
      chosen.push_back(i);
      if (chosen.size() == need)
        consider(rate[i]);
      else
        recurse(i + 1);
      chosen.pop_back();
    }
  };
  recurse(0);
  return best;
}

}  // namespace

Eigen::VectorXi canonicalize(Eigen::VectorXi a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != 0) {
      if (a[i] < 0) a = -a;
      return a;
    }
  }
  return a;
}

int integer_rank(Eigen::MatrixXi M) {
  using Mat64 = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
  Mat64 A = M.cast<std::int64_t>();
  const Eigen::Index rows = A.rows(), cols = A.cols();
  Eigen::Index rank = 0;
  std::int64_t prev_pivot = 1;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r) {
      if (A(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    A.row(pivot).swap(A.row(rank));
    // Bareiss: exact division keeps intermediates bounded
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      for (Eigen::Index c = col + 1; c < cols; ++c)
        A(r, c) = (A(rank, col) * A(r, c) - A(r, col) * A(rank, c)) / prev_pivot;
      A(r, col) = 0;
    }
    prev_pivot = A(rank, col);
    ++rank;
  }
  return static_cast<int>(rank);
}

bool coefficient_matrix_valid(const Eigen::MatrixXi& A) {
  const Eigen::Index users = A.cols();
  if (A.rows() != users - 1 || users < 2) return false;
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    const Eigen::VectorXi row = A.row(r);
    if (row.isZero()) return false;
    if (is_unit_vector(row)) return false;
  }
  Eigen::MatrixXi stacked(users, users);
  stacked.topRows(users - 1) = A;
  for (Eigen::Index l = 0; l < users; ++l) {
    stacked.row(users - 1).setZero();
    stacked(users - 1, l) = 1;
    if (integer_rank(stacked) != users) return false;
  }
  return true;
}

std::vector<Eigen::VectorXi> enumerate_candidates(const Eigen::MatrixXd& H, double P,
                                                  std::size_t max_candidates) {
  const Eigen::Index n = H.cols();
  const Eigen::MatrixXd M = rate_gram_matrix(H, P);
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("rate quadratic form is not positive definite");
  // Q(a) = ||U a||^2 with U upper triangular
  const Eigen::MatrixXd U = llt.matrixU();

  struct Item {
    double q;
    Eigen::VectorXi a;
  };
  std::vector<Item> found;
  Eigen::VectorXi x = Eigen::VectorXi::Zero(n);

  // Fincke-Pohst walk from the last coordinate down; `partial` carries the
  // accumulated sum of squares of the levels below
  std::function<void(Eigen::Index, double)> descend = [&](Eigen::Index level, double partial) {
    const double room = 1.0 - partial;
    if (room <= 0.0) return;
    double center = 0.0;
    for (Eigen::Index j = level + 1; j < n; ++j) center += U(level, j) * x[j];
    const double half_width = std::sqrt(room);
    const double d = U(level, level);
    const double flo = std::ceil((-half_width - center) / d);
    const double fhi = std::floor((half_width - center) / d);
    if (fhi - flo > 2.0 * static_cast<double>(max_candidates))
      throw std::invalid_argument("candidate enumeration exceeded the cap");
    const int lo = static_cast<int>(flo);
    const int hi = static_cast<int>(fhi);
    for (int v = lo; v <= hi; ++v) {
      x[level] = v;
      const double term = d * v + center;
      const double next = partial + term * term;
      if (next >= 1.0) continue;
      if (level == 0) {
        if (x.isZero()) continue;
        // keep the canonical representative of each +-pair
        Eigen::Index first = 0;
        while (x[first] == 0) ++first;
        if (x[first] < 0) continue;
        if (found.size() >= max_candidates)
          throw std::invalid_argument("candidate enumeration exceeded the cap");
        found.push_back({next, x});
      } else {
        descend(level - 1, next);
      }
    }
    x[level] = 0;
  };
  descend(n - 1, 0.0);

  std::sort(found.begin(), found.end(), [](const Item& l, const Item& r) {
    if (l.q != r.q) return l.q < r.q;
    return lex_less(l.a, r.a);
  });
  std::vector<Eigen::VectorXi> out;
  out.reserve(found.size());
  for (auto& it : found) out.push_back(std::move(it.a));
  return out;
}

SearchResult best_coefficient_matrix(const Eigen::MatrixXd& H, double P) {
  const Eigen::Index users = H.cols();
  if (users < 2) throw std::invalid_argument("need at least two users");
  const std::vector<Eigen::VectorXi> all = enumerate_candidates(H, P);

  const Eigen::MatrixXd M = rate_gram_matrix(H, P);
  std::vector<Eigen::VectorXi> cand;
  std::vector<double> rate;
  cand.reserve(all.size());
  rate.reserve(all.size());
  for (const auto& a : all) {
    if (is_unit_vector(a)) continue;  // can never appear in a valid matrix
    cand.push_back(a);
    rate.push_back(computation_rate_from_gram(M, a));
  }
  SearchResult result = select_rows(cand, rate, users);
  result.candidates_examined = all.size();
  return result;
}

SearchResult brute_force_best(const Eigen::MatrixXd& H, double P, int box_radius) {
  const Eigen::Index users = H.cols();
  if (users < 2) throw std::invalid_argument("need at least two users");
  if (box_radius < 1) throw std::invalid_argument("box radius must be >= 1");
  if (users > 3) throw std::invalid_argument("brute force oracle is limited to L <= 3");
  const double box = std::pow(2.0 * box_radius + 1.0, static_cast<double>(users));
  if (static_cast<double>(users) * box > 1e8)
    throw std::invalid_argument("brute force box too large");

  const Eigen::MatrixXd M = rate_gram_matrix(H, P);
  std::vector<Eigen::VectorXi> cand;
  std::vector<double> rate;

  Eigen::VectorXi a = Eigen::VectorXi::Zero(users);
  std::function<void(Eigen::Index)> fill = [&](Eigen::Index pos) {
    if (pos == users) {
      if (a.isZero()) return;
      Eigen::Index first = 0;
      while (a[first] == 0) ++first;
      if (a[first] < 0) return;  // canonical representatives only
      if (is_unit_vector(a)) return;
      const double r = computation_rate_from_gram(M, a);
      if (r > 0.0) {
        cand.push_back(a);
        rate.push_back(r);
      }
      return;
    }
    for (int v = -box_radius; v <= box_radius; ++v) {
      a[pos] = v;
      fill(pos + 1);
    }
    a[pos] = 0;
  };
  fill(0);

  // sort to the shared order: rate descending, ties lexicographic
  std::vector<std::size_t> order(cand.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (rate[l] != rate[r]) return rate[l] > rate[r];
    return lex_less(cand[l], cand[r]);
  });
  std::vector<Eigen::VectorXi> sorted_cand;
  std::vector<double> sorted_rate;
  sorted_cand.reserve(cand.size());
  for (std::size_t i : order) {
    sorted_cand.push_back(cand[i]);
    sorted_rate.push_back(rate[i]);
  }
  SearchResult result = select_rows(sorted_cand, sorted_rate, users);
  result.candidates_examined = sorted_cand.size();
  return result;
}

int ellipsoid_box_radius(const Eigen::MatrixXd& H, double P) {
  // (M^{-1})_ii = 1 + P ||column i||^2
  int radius = 1;
  for (Eigen::Index i = 0; i < H.cols(); ++i) {
    const double half = std::sqrt(1.0 + P * H.col(i).squaredNorm());
    radius = std::max(radius, static_cast<int>(std::ceil(half)));
  }
  return radius;
}

}  // namespace cfsec
