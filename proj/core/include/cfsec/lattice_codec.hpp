#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cfsec/rng.hpp"

namespace cfsec {

/// Nearest point of the scaled integer lattice (scale Z)^n, componentwise
/// round-half-to-even.
Eigen::VectorXd lattice_quantize(const Eigen::VectorXd& x, double scale);

/// x mod (scale Z)^n = x - Q(x); lands in the fundamental Voronoi cell
/// [-scale/2, scale/2)^n (up to the tie rule) and is idempotent.
Eigen::VectorXd lattice_mod(const Eigen::VectorXd& x, double scale);

/// Self-similar nested pair: fine lattice beta Z^n, coarse lattice
/// q beta Z^n. beta = sqrt(12 P) / q makes the coarse cell's second moment
/// per dimension equal the transmit power P. The codebook is the set of
/// fine points in the coarse cell, q^n codewords indexed by base-q digit
/// vectors.
class LatticeChain {
 public:
  LatticeChain(int dimension, int q, double power);

  int dimension() const { return n_; }
  int q() const { return q_; }
  double beta() const { return beta_; }
  double coarse_scale() const { return beta_ * q_; }
  double power() const { return power_; }
  std::int64_t codebook_size() const;          // q^n
  double code_rate() const;                    // log2 q bits per dimension

  /// Codeword of a digit vector c in {0..q-1}^n: [beta c] mod coarse.
  Eigen::VectorXd codeword(const Eigen::VectorXi& digits) const;
  /// Inverse digit map of a fine point reduced mod coarse.
  Eigen::VectorXi digits_of(const Eigen::VectorXd& point) const;

  /// index <-> digit vector (little-endian base q)
  Eigen::VectorXi index_to_digits(std::int64_t index) const;
  std::int64_t digits_to_index(const Eigen::VectorXi& digits) const;

 private:
  int n_;
  int q_;
  double power_;
  double beta_;
};

/// Codebook split into equal bins by a seeded random permutation: q^k bins
/// of q^(n-k) codewords. The requested secret rate is floored to
/// k = floor(n R_s / log2 q) secret digits, so R_s + R_d = log2 q holds
/// exactly per dimension.
class BinnedCodebook {
 public:
  BinnedCodebook(const LatticeChain& chain, double secret_rate_bits_per_dim,
                 std::uint64_t seed);

  std::int64_t bin_count() const { return bins_; }
  std::int64_t bin_size() const { return bin_size_; }
  double secret_rate() const;   // bits per dimension
  double random_rate() const;   // bits per dimension

  /// Codebook index of member m of bin w.
  std::int64_t codeword_index(std::int64_t bin, std::int64_t member) const;
  /// (bin, member) of a codebook index.
  std::pair<std::int64_t, std::int64_t> locate(std::int64_t index) const;

 private:
  int n_;
  int q_;
  int secret_digits_;
  std::int64_t bins_;
  std::int64_t bin_size_;
  std::vector<std::int64_t> perm_;     // bin/member slot -> codebook index
  std::vector<std::int64_t> inverse_;  // codebook index -> slot
};

/// Dither uniform over the coarse Voronoi cell.
struct DitherVector {
  Eigen::VectorXd u;
};

DitherVector draw_dither(const LatticeChain& chain, Rng& rng);

struct EncodeResult {
  Eigen::VectorXd x;              ///< transmit vector [t + u] mod coarse
  Eigen::VectorXi codeword_digits;///< digits of the chosen codeword t
  std::int64_t codeword_index;    ///< codebook index of t
};

/// Picks a codeword uniformly from bin w and dithers it.
EncodeResult encode(std::int64_t w, const LatticeChain& chain, const BinnedCodebook& bins,
                    const DitherVector& dither, Rng& rng);

/// Relay-side decoding of one integer combination: MMSE-scales y, removes
/// the dithers, quantizes to the fine lattice and reduces mod coarse.
/// Returns the digit vector of [sum_l a_l t_l] mod coarse (exact whenever
/// the effective noise stays inside the fine cell). transmit_powers scales
/// user l's signal by sqrt(P_l / chain.power()). noise_variance = 0 gives
/// the noiseless unity gain when the channel row equals a.
Eigen::VectorXi relay_decode_combination(const Eigen::VectorXd& y, const Eigen::VectorXi& a,
                                         const LatticeChain& chain,
                                         const std::vector<DitherVector>& dithers,
                                         const Eigen::VectorXd& transmit_powers,
                                         const Eigen::VectorXd& channel_row,
                                         double noise_variance = 1.0);

/// Solves A_stacked T = Y over Z_q: the first L-1 rows of `rhs_digits` are
/// decoded combinations, the last row the user's own codeword digits.
/// Returns all users' digit vectors (L x n). Throws when det(A_stacked) is
/// not invertible mod q.
Eigen::MatrixXi user_recover(const Eigen::MatrixXi& A_stacked, const Eigen::MatrixXi& rhs_digits,
                             int q);

/// gcd(det A mod q, q) == 1
bool invertible_mod_q(const Eigen::MatrixXi& A, int q);

}  // namespace cfsec
