/*
Cyclic code-shift keying over the real AWGN channel.

A GF(q) symbol u selects the cyclic left shift by u of a fixed +-1
pseudo-noise sequence of length q. The demodulator scales observations
to LLRs, correlates against all q shifts at once through the FFT and
softmaxes the scores into a symbol posterior.
*/

#pragma once

#include "nbpolar/gf.hpp"
#include "nbpolar/pdist.hpp"
#include "nbpolar/rng.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace nbpolar {

struct PnSequence {
	int p = 0;
	std::uint32_t feedback_poly = 0;
	std::vector<double> chips; // +-1.0, length 2^p

	unsigned size() const { return static_cast<unsigned>(chips.size()); }
};

// m-sequence from a Fibonacci LFSR with the given primitive feedback
// polynomial, all-ones start state, bits mapped 0 -> +1, 1 -> -1, plus
// one trailing +1 chip to reach length 2^p. Throws std::invalid_argument
// if the polynomial is not primitive (LFSR period short of 2^p - 1).
PnSequence pn_generate(int p, std::uint32_t feedback_poly);

struct ChannelObservation {
	std::vector<double> y;
	double sigma2 = 1.0;
};

ChannelObservation awgn_transmit(std::span<const double> chips, double sigma2,
	RngStream& rng);

// per-chip LLR scaling (2/sigma2) y
std::vector<double> llr_chips(const ChannelObservation& obs);

// reference O(q^2) circular correlation of the LLR vector with every shift
std::vector<double> correlate_direct(std::span<const double> llr,
	const PnSequence& pn);

double sigma2_from_snr_db(double snr_db);
double snr_db_from_sigma2(double sigma2);

namespace detail {
class Fft;
}

class CcskModem {
public:
	explicit CcskModem(PnSequence pn);
	CcskModem(const CcskModem&);
	CcskModem& operator=(const CcskModem&);
	CcskModem(CcskModem&&) noexcept;
	CcskModem& operator=(CcskModem&&) noexcept;
	~CcskModem();

	const PnSequence& pn() const { return pn_; }
	unsigned q() const { return pn_.size(); }

	std::vector<double> modulate(gf_elem u) const;

	// circular correlations of llr with all shifts, FFT path
	std::vector<double> correlations(std::span<const double> llr) const;

	// symbol posterior from per-chip LLRs
	SymbolDist demodulate(std::span<const double> llr) const;
	SymbolDist demodulate(const ChannelObservation& obs) const;

	// modulate, add noise, demodulate; the Monte-Carlo hot path.
	// Appends the posterior (q entries) to `out`.
	void transmit_symbol(gf_elem u, double sigma2, RngStream& rng,
		double* out) const;

private:
	PnSequence pn_;
	std::unique_ptr<detail::Fft> fft_;
	std::vector<std::complex<double>> pn_spectrum_; // DFT of the base sequence
	mutable std::vector<std::complex<double>> work_;
};

} // namespace nbpolar
