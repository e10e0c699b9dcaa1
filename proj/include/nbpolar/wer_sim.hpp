/*
Word error rate simulation of a constructed code under SC decoding.
*/

#pragma once

#include "nbpolar/ccsk.hpp"
#include "nbpolar/polar.hpp"

#include <cstdint>

namespace nbpolar {

struct WerPoint {
	double snr_db = 0.0;
	std::uint64_t trials = 0;
	std::uint64_t word_errors = 0;

	double wer() const
	{
		return trials ? static_cast<double>(word_errors)
				/ static_cast<double>(trials)
			      : 0.0;
	}
};

// Runs up to max_trials transmissions at the given SNR, stopping early
// once max_errors word errors have accumulated (0 = never stop early).
// A word error is any wrong info symbol. The early-stop check runs at a
// fixed trial granularity so results do not depend on thread count.
WerPoint simulate_wer_point(const PolarCode& code, const CcskModem& modem,
	double snr_db, std::uint64_t max_trials, std::uint64_t max_errors,
	std::uint64_t seed, int threads, std::uint32_t snr_index = 0);

} // namespace nbpolar
