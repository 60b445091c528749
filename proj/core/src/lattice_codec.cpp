#include "cfsec/lattice_codec.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cfsec {

namespace {

std::int64_t det_int(const Eigen::MatrixXi& A) {
  const Eigen::Index n = A.rows();
  if (n == 1) return A(0, 0);
  if (n == 2) return static_cast<std::int64_t>(A(0, 0)) * A(1, 1) -
                     static_cast<std::int64_t>(A(0, 1)) * A(1, 0);
  std::int64_t det = 0;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (A(0, c) == 0) continue;
    Eigen::MatrixXi minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index mc = 0;
      for (Eigen::Index cc = 0; cc < n; ++cc) {
        if (cc == c) continue;
        minor(r - 1, mc++) = A(r, cc);
      }
    }
    const std::int64_t cof = det_int(minor);
    det += (c % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(A(0, c)) * cof;
  }
  return det;
}

int mod_q(std::int64_t v, int q) {
  const int r = static_cast<int>(v % q);
  return r < 0 ? r + q : r;
}

int mod_inverse(int a, int q) {
  // extended Euclid; caller guarantees gcd(a, q) == 1
  int t = 0, new_t = 1;
  int r = q, new_r = a % q;
  while (new_r != 0) {
    const int quot = r / new_r;
    const int tmp_t = t - quot * new_t;
    t = new_t;
    new_t = tmp_t;
    const int tmp_r = r - quot * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  return t < 0 ? t + q : t;
}

}  // namespace

Eigen::VectorXd lattice_quantize(const Eigen::VectorXd& x, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("lattice scale must be positive");
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[i] = scale * std::nearbyint(x[i] / scale);  // round half to even
  return out;
}

Eigen::VectorXd lattice_mod(const Eigen::VectorXd& x, double scale) {
  return x - lattice_quantize(x, scale);
}

LatticeChain::LatticeChain(int dimension, int q, double power)
    : n_(dimension), q_(q), power_(power) {
  if (n_ < 1) throw std::invalid_argument("lattice dimension must be >= 1");
  if (q_ < 2) throw std::invalid_argument("nesting ratio q must be >= 2");
  if (!(power_ > 0.0)) throw std::invalid_argument("power must be positive");
  beta_ = std::sqrt(12.0 * power_) / q_;
  if (codebook_size() > (std::int64_t{1} << 24))
    throw std::invalid_argument("codebook q^n too large for the desk-scale codec");
}

std::int64_t LatticeChain::codebook_size() const {
  std::int64_t size = 1;
  for (int i = 0; i < n_; ++i) {
    if (size > (std::int64_t{1} << 40)) return std::int64_t{1} << 62;
    size *= q_;
  }
  return size;
}

double LatticeChain::code_rate() const { return std::log2(static_cast<double>(q_)); }

Eigen::VectorXd LatticeChain::codeword(const Eigen::VectorXi& digits) const {
  if (digits.size() != n_) throw std::invalid_argument("digit vector length mismatch");
  Eigen::VectorXd t(n_);
  for (int i = 0; i < n_; ++i) {
    if (digits[i] < 0 || digits[i] >= q_) throw std::invalid_argument("digit out of range");
    t[i] = beta_ * digits[i];
  }
  return lattice_mod(t, coarse_scale());
}

Eigen::VectorXi LatticeChain::digits_of(const Eigen::VectorXd& point) const {
  if (point.size() != n_) throw std::invalid_argument("point dimension mismatch");
  Eigen::VectorXi digits(n_);
  for (int i = 0; i < n_; ++i) {
    const auto k = static_cast<std::int64_t>(std::nearbyint(point[i] / beta_));
    digits[i] = mod_q(k, q_);
  }
  return digits;
}

Eigen::VectorXi LatticeChain::index_to_digits(std::int64_t index) const {
  if (index < 0 || index >= codebook_size()) throw std::invalid_argument("codeword index out of range");
  Eigen::VectorXi digits(n_);
  for (int i = 0; i < n_; ++i) {
    digits[i] = static_cast<int>(index % q_);
    index /= q_;
  }
  return digits;
}

std::int64_t LatticeChain::digits_to_index(const Eigen::VectorXi& digits) const {
  if (digits.size() != n_) throw std::invalid_argument("digit vector length mismatch");
  std::int64_t index = 0;
  for (int i = n_ - 1; i >= 0; --i) {
    if (digits[i] < 0 || digits[i] >= q_) throw std::invalid_argument("digit out of range");
    index = index * q_ + digits[i];
  }
  return index;
}

BinnedCodebook::BinnedCodebook(const LatticeChain& chain, double secret_rate_bits_per_dim,
                               std::uint64_t seed)
    : n_(chain.dimension()), q_(chain.q()) {
  if (secret_rate_bits_per_dim < 0.0)
    throw std::invalid_argument("secret rate must be nonnegative");
  // floor the requested rate to whole base-q digits
  const double digits = n_ * secret_rate_bits_per_dim / std::log2(static_cast<double>(q_));
  secret_digits_ = std::min(n_, static_cast<int>(std::floor(digits + 1e-12)));
  bins_ = 1;
  for (int i = 0; i < secret_digits_; ++i) bins_ *= q_;
  bin_size_ = chain.codebook_size() / bins_;

  perm_.resize(static_cast<std::size_t>(chain.codebook_size()));
  for (std::size_t i = 0; i < perm_.size(); ++i) perm_[i] = static_cast<std::int64_t>(i);
  Rng rng(seed);
  for (std::size_t i = perm_.size(); i > 1; --i)
    std::swap(perm_[i - 1], perm_[rng.uniform_index(i)]);
  inverse_.resize(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i)
    inverse_[static_cast<std::size_t>(perm_[i])] = static_cast<std::int64_t>(i);
}

double BinnedCodebook::secret_rate() const {
  return secret_digits_ * std::log2(static_cast<double>(q_)) / n_;
}

double BinnedCodebook::random_rate() const {
  return (n_ - secret_digits_) * std::log2(static_cast<double>(q_)) / n_;
}

std::int64_t BinnedCodebook::codeword_index(std::int64_t bin, std::int64_t member) const {
  if (bin < 0 || bin >= bins_) throw std::invalid_argument("bin index out of range");
  if (member < 0 || member >= bin_size_) throw std::invalid_argument("bin member out of range");
  return perm_[static_cast<std::size_t>(bin * bin_size_ + member)];
}

std::pair<std::int64_t, std::int64_t> BinnedCodebook::locate(std::int64_t index) const {
  if (index < 0 || index >= static_cast<std::int64_t>(inverse_.size()))
    throw std::invalid_argument("codeword index out of range");
  const std::int64_t slot = inverse_[static_cast<std::size_t>(index)];
  return {slot / bin_size_, slot % bin_size_};
}

DitherVector draw_dither(const LatticeChain& chain, Rng& rng) {
  const double c = chain.coarse_scale();
  Eigen::VectorXd u(chain.dimension());
  for (int i = 0; i < chain.dimension(); ++i) u[i] = rng.uniform(-c / 2.0, c / 2.0);
  return DitherVector{std::move(u)};
}

EncodeResult encode(std::int64_t w, const LatticeChain& chain, const BinnedCodebook& bins,
                    const DitherVector& dither, Rng& rng) {
  if (w < 0 || w >= bins.bin_count()) throw std::invalid_argument("message index out of range");
  if (dither.u.size() != chain.dimension()) throw std::invalid_argument("dither dimension mismatch");
  const std::int64_t member = static_cast<std::int64_t>(
      rng.uniform_index(static_cast<std::uint64_t>(bins.bin_size())));
  const std::int64_t index = bins.codeword_index(w, member);
  const Eigen::VectorXi digits = chain.index_to_digits(index);
  const Eigen::VectorXd t = chain.codeword(digits);
  EncodeResult res;
  res.x = lattice_mod(t + dither.u, chain.coarse_scale());
  res.codeword_digits = digits;
  res.codeword_index = index;
  return res;
}

Eigen::VectorXi relay_decode_combination(const Eigen::VectorXd& y, const Eigen::VectorXi& a,
                                         const LatticeChain& chain,
                                         const std::vector<DitherVector>& dithers,
                                         const Eigen::VectorXd& transmit_powers,
                                         const Eigen::VectorXd& channel_row,
                                         double noise_variance) {
  const Eigen::Index users = a.size();
  if (static_cast<Eigen::Index>(dithers.size()) != users ||
      transmit_powers.size() != users || channel_row.size() != users)
    throw std::invalid_argument("per-user argument lengths mismatch");
  if (y.size() != chain.dimension()) throw std::invalid_argument("received vector length mismatch");
  if (noise_variance < 0.0) throw std::invalid_argument("noise variance must be >= 0");

  const double P = chain.power();
  Eigen::VectorXd g(users);
  for (Eigen::Index l = 0; l < users; ++l)
    g[l] = channel_row[l] * std::sqrt(transmit_powers[l] / P);

  const Eigen::VectorXd ad = a.cast<double>();
  const double num = P * g.dot(ad);
  const double den = noise_variance + P * g.dot(g);
  const double alpha = den > 0.0 ? num / den : 0.0;

  Eigen::VectorXd s = alpha * y;
  for (Eigen::Index l = 0; l < users; ++l) s -= ad[l] * dithers[static_cast<std::size_t>(l)].u;
  const Eigen::VectorXd fine = lattice_quantize(s, chain.beta());
  return chain.digits_of(lattice_mod(fine, chain.coarse_scale()));
}

Eigen::MatrixXi user_recover(const Eigen::MatrixXi& A_stacked, const Eigen::MatrixXi& rhs_digits,
                             int q) {
  const Eigen::Index L = A_stacked.rows();
  if (A_stacked.cols() != L) throw std::invalid_argument("stacked matrix must be square");
  if (rhs_digits.rows() != L) throw std::invalid_argument("right-hand side row count mismatch");
  if (q < 2) throw std::invalid_argument("q must be >= 2");

  const std::int64_t det = det_int(A_stacked);
  const int d = mod_q(det, q);
  if (std::gcd(d, q) != 1)
    throw std::invalid_argument("stacked coefficient matrix is singular mod q");
  const int dinv = mod_inverse(d, q);

  // adjugate: adj(A)_{ij} = (-1)^{i+j} minor_{ji}
  Eigen::MatrixXi adj(L, L);
  for (Eigen::Index i = 0; i < L; ++i) {
    for (Eigen::Index j = 0; j < L; ++j) {
      Eigen::MatrixXi minor(L - 1, L - 1);
      Eigen::Index mr = 0;
      for (Eigen::Index r = 0; r < L; ++r) {
        if (r == j) continue;
        Eigen::Index mc = 0;
        for (Eigen::Index c = 0; c < L; ++c) {
          if (c == i) continue;
          minor(mr, mc++) = A_stacked(r, c);
        }
        ++mr;
      }
      const std::int64_t cof = (L == 1) ? 1 : det_int(minor);
      adj(i, j) = mod_q(((i + j) % 2 == 0 ? cof : -cof), q);
    }
  }

  Eigen::MatrixXi result(L, rhs_digits.cols());
  for (Eigen::Index r = 0; r < L; ++r) {
    for (Eigen::Index c = 0; c < rhs_digits.cols(); ++c) {
      std::int64_t acc = 0;
      for (Eigen::Index k = 0; k < L; ++k)
        acc += static_cast<std::int64_t>(adj(r, k)) * mod_q(rhs_digits(k, c), q);
      result(r, c) = mod_q(acc * dinv, q);
    }
  }
  return result;
}

bool invertible_mod_q(const Eigen::MatrixXi& A, int q) {
  if (A.rows() != A.cols()) return false;
  return std::gcd(mod_q(det_int(A), q), q) == 1;
}

}  // namespace cfsec
