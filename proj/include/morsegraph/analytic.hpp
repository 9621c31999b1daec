#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "morsegraph/error.hpp"

// Closed-form first-moment quantities for G(n,p). Everything with a large
// exponent is evaluated in log space (lgamma / log1p); (1 - 5p^2)^(n-5)
// underflows a direct product long before the experiment sizes.

namespace morsegraph::analytic {

inline constexpr double kPentagonCoefficient = 0.70710678118654752440;  // sqrt(1/2)
inline constexpr double kSquareCoefficient = 1.0;
inline constexpr double kCfsCoefficient = 0.67043996210188582269;  // sqrt(sqrt(6) - 2)

inline double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// a * log(x) with the convention 0 * log(0) = 0.
inline double xlogy(double a, double x) { return a == 0.0 ? 0.0 : a * std::log(x); }

// a * log1p(-x) with the convention 0 * log(0) = 0.
inline double xlog1m(double a, double x) { return a == 0.0 ? 0.0 : a * std::log1p(-x); }

enum class LinkEvent { AdjacentGivenTwoExclusions = 1, CommonGivenOneExclusion = 2, CommonGivenTwoExclusions = 3 };

/// Conditional link probabilities for a vertex v against w1..w4:
///   1: P[v~w1 | v not in N(w1)&N(w2), v not in N(w1)&N(w3)] = p(1-p)/(1+p-p^2)
///   2: P[v in N(w1)&N(w2) | v not in N(w2)&N(w3)]            = p^2/(1+p)
///   3: P[v in N(w1)&N(w2) | v not in N(w1)&N(w3), not in N(w2)&N(w4)] = p^2/(1+p)^2
/// Form 1 is the sign-normalised version of p(p-1)/(p^2-p-1).
inline double conditional_link_probability(double p, int which) {
  if (!(p >= 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidParameter, "conditional link probability needs 0 <= p < 1");
  switch (which) {
    case 1: return p * (1.0 - p) / (1.0 + p - p * p);
    case 2: return p * p / (1.0 + p);
    case 3: return p * p / ((1.0 + p) * (1.0 + p));
    default: throw Error(ErrorKind::InvalidParameter, "conditional link selector must be 1, 2 or 3");
  }
}

inline double conditional_link_probability(double p, LinkEvent which) {
  return conditional_link_probability(p, static_cast<int>(which));
}

/// mu5(n,p) = C(n,5) * 12 * p^5 (1-p)^5 (1-5p^2)^(n-5).
///
/// Uses the sufficient exclusion event "no outside vertex has two
/// non-adjacent neighbours on the pentagon", so it undercounts the Morse
/// pentagons of the graph-level definition.
inline double expected_morse_pentagons(std::size_t n, double p) {
  if (n < 5) throw Error(ErrorKind::InvalidParameter, "mu5 needs n >= 5");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidParameter, "p must lie in [0,1]");
  if (5.0 * p * p >= 1.0) throw Error(ErrorKind::OutOfDomain, "mu5 needs 5p^2 < 1");
  if (p == 0.0) return 0.0;
  const double nd = static_cast<double>(n);
  const double log_mu = log_binomial(nd, 5.0) + std::log(12.0) + 5.0 * std::log(p) + xlog1m(5.0, p) +
                        xlog1m(nd - 5.0, 5.0 * p * p);
  return std::exp(log_mu);
}

/// mu4(n,p) = C(n,4) * 3 * p^4 (1-p)^2 (1-2p^2)^(n-4).
///
/// The exclusion factor is (1-2p^2)^(n-4): each of the two diagonals must
/// avoid an outside common neighbour, which is what the asymptotic
/// O((np)^4 e^{-2p^2 n}) requires; a factor (1-2p)^(n-4) would decay like
/// e^{-2pn} instead.
inline double expected_morse_squares(std::size_t n, double p) {
  if (n < 4) throw Error(ErrorKind::InvalidParameter, "mu4 needs n >= 4");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidParameter, "p must lie in [0,1]");
  if (2.0 * p * p >= 1.0) throw Error(ErrorKind::OutOfDomain, "mu4 needs 2p^2 < 1");
  if (p == 0.0) return 0.0;
  const double nd = static_cast<double>(n);
  const double log_mu = log_binomial(nd, 4.0) + std::log(3.0) + 4.0 * std::log(p) + xlog1m(2.0, p) +
                        xlog1m(nd - 4.0, 2.0 * p * p);
  return std::exp(log_mu);
}

/// Probability that two vertices at distance two on an induced k-cycle have
/// a clique as common neighbourhood, assuming no clique on 6 or more vertices:
///   sum_{l=0}^{4} C(n-k,l) p^{2l} (1-p^2)^{n-k-l} p^{C(l+1,2)}.
inline double clique_link_probability(std::size_t n, std::size_t k, double p) {
  if (k < 5) throw Error(ErrorKind::InvalidParameter, "clique-link sum needs k >= 5");
  if (k > n) throw Error(ErrorKind::InvalidParameter, "clique-link sum needs k <= n");
  if (!(p >= 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidParameter, "clique-link sum needs 0 <= p < 1");
  const double outside = static_cast<double>(n - k);
  double total = 0.0;
  for (std::size_t l = 0; l <= 4 && l <= n - k; ++l) {
    const double ld = static_cast<double>(l);
    if (l > 0 && p == 0.0) break;
    const double log_term = log_binomial(outside, ld) + xlogy(2.0 * ld, p) + xlog1m(outside - ld, p * p) +
                            xlogy(ld * (ld + 1.0) / 2.0, p);
    total += std::exp(log_term);
  }
  return total;
}

/// Markov bound on the probability of an induced k-cycle:
///   C(n,k) * k!/(2k) * p^k * (1-p)^(C(k,2)-k).
/// Returned as-is; it exceeds 1 whenever the expectation does.
inline double long_cycle_bound(std::size_t n, double p, std::size_t k) {
  if (k < 3 || k > n) throw Error(ErrorKind::InvalidParameter, "long-cycle bound needs 3 <= k <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidParameter, "p must lie in [0,1]");
  if (p == 0.0) return 0.0;
  const double kd = static_cast<double>(k);
  const double chords = kd * (kd - 1.0) / 2.0 - kd;
  if (p == 1.0 && chords > 0.0) return 0.0;
  const double log_bound = log_binomial(static_cast<double>(n), kd) + std::lgamma(kd + 1.0) -
                           std::log(2.0 * kd) + kd * std::log(p) + xlog1m(chords, p);
  return std::exp(log_bound);
}

struct ThresholdSet {
  double pentagon = 0.0;  // sqrt(1/2) * sqrt(ln n / n)
  double square = 0.0;    // sqrt(ln n / n)
  double cfs = 0.0;       // sqrt(sqrt(6) - 2) / sqrt(n)
};

inline ThresholdSet thresholds(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::InvalidParameter, "thresholds need n >= 3");
  const double nd = static_cast<double>(n);
  const double scale = std::sqrt(std::log(nd) / nd);
  return {kPentagonCoefficient * scale, kSquareCoefficient * scale, kCfsCoefficient / std::sqrt(nd)};
}

}  // namespace morsegraph::analytic
