/*
Achievable-rate estimation for the modulated channel: symbol-metric
mutual information, its dispersion, and the finite-blocklength normal
approximation.
*/

#pragma once

#include "nbpolar/ccsk.hpp"

#include <cstdint>

namespace nbpolar {

struct RatePoint {
	double snr_db = 0.0;
	double rate = 0.0;       // symbols per channel use, base-q information
	double dispersion = 0.0; // variance of the conditional information density
	std::uint64_t trials = 0;
};

// Monte-Carlo estimate: rate = 1 - E[H(U|Y)], dispersion = the variance
// of the posterior entropy terms, both in base-q logs.
RatePoint estimate_rate_point(const CcskModem& modem, double snr_db,
	std::uint64_t trials, std::uint64_t seed, int threads,
	std::uint32_t snr_index = 0);

// inverse Gaussian tail function, |Q(result) - eps| <= 1e-9 * eps
double q_func_inv(double eps);

// R - sqrt(V/N) Q^{-1}(eps)
double normal_approximation(double rate, double dispersion,
	std::uint64_t block_length, double eps);

// bits per chip: rate * p / 2^p
double effective_rate(double rate, int p);

} // namespace nbpolar
