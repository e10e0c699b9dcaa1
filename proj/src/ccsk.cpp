#include "nbpolar/ccsk.hpp"

#include "fft.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace nbpolar {

PnSequence pn_generate(int p, std::uint32_t feedback_poly)
{
	if (p < 1 || p > 12)
		throw std::invalid_argument("sequence degree must be in 1..12");
	unsigned q = 1u << p;
	if (feedback_poly >> (p + 1) || !(feedback_poly >> p & 1))
		throw std::invalid_argument("feedback polynomial degree mismatch");

	std::uint32_t taps = feedback_poly & (q - 1);
	std::uint32_t start = q - 1; // all ones
	std::uint32_t s = start;
	PnSequence pn;
	pn.p = p;
	pn.feedback_poly = feedback_poly;
	pn.chips.reserve(q);
	for (unsigned i = 0; i < q - 1; ++i) {
		pn.chips.push_back((s & 1) ? -1.0 : 1.0);
		std::uint32_t f = std::popcount(s & taps) & 1;
		s = (s >> 1) | (f << (p - 1));
		if (s == start && i + 2 < q)
			throw std::invalid_argument("feedback polynomial is not primitive");
	}
	if (s != start)
		throw std::invalid_argument("feedback polynomial is not primitive");
	pn.chips.push_back(1.0);
	return pn;
}

ChannelObservation awgn_transmit(std::span<const double> chips, double sigma2,
	RngStream& rng)
{
	ChannelObservation obs;
	obs.sigma2 = sigma2;
	obs.y.resize(chips.size());
	double sigma = std::sqrt(sigma2);
	for (std::size_t i = 0; i < chips.size(); ++i)
		obs.y[i] = chips[i] + sigma * rng.gaussian();
	return obs;
}

std::vector<double> llr_chips(const ChannelObservation& obs)
{
	std::vector<double> llr(obs.y.size());
	double scale = 2.0 / obs.sigma2;
	for (std::size_t i = 0; i < llr.size(); ++i)
		llr[i] = scale * obs.y[i];
	return llr;
}

std::vector<double> correlate_direct(std::span<const double> llr,
	const PnSequence& pn)
{
	unsigned q = pn.size();
	std::vector<double> c(q, 0.0);
	for (unsigned u = 0; u < q; ++u)
		for (unsigned i = 0; i < q; ++i)
			c[u] += llr[i] * pn.chips[(i + u) & (q - 1)];
	return c;
}

double sigma2_from_snr_db(double snr_db)
{
	return std::pow(10.0, -snr_db / 10.0);
}

double snr_db_from_sigma2(double sigma2)
{
	return -10.0 * std::log10(sigma2);
}

CcskModem::CcskModem(PnSequence pn)
	: pn_(std::move(pn)), fft_(std::make_unique<detail::Fft>(pn_.size())),
	  pn_spectrum_(pn_.size()), work_(pn_.size())
{
	for (unsigned i = 0; i < pn_.size(); ++i)
		pn_spectrum_[i] = pn_.chips[i];
	fft_->forward(pn_spectrum_.data());
}

CcskModem::CcskModem(const CcskModem& o)
	: pn_(o.pn_), fft_(std::make_unique<detail::Fft>(pn_.size())),
	  pn_spectrum_(o.pn_spectrum_), work_(pn_.size())
{
}

CcskModem& CcskModem::operator=(const CcskModem& o)
{
	if (this != &o) {
		pn_ = o.pn_;
		fft_ = std::make_unique<detail::Fft>(pn_.size());
		pn_spectrum_ = o.pn_spectrum_;
		work_.assign(pn_.size(), {});
	}
	return *this;
}

CcskModem::CcskModem(CcskModem&&) noexcept = default;
CcskModem& CcskModem::operator=(CcskModem&&) noexcept = default;
CcskModem::~CcskModem() = default;

std::vector<double> CcskModem::modulate(gf_elem u) const
{
	unsigned q = pn_.size();
	std::vector<double> out(q);
	for (unsigned i = 0; i < q; ++i)
		out[i] = pn_.chips[(i + u) & (q - 1)];
	return out;
}

std::vector<double> CcskModem::correlations(std::span<const double> llr) const
{
	unsigned q = pn_.size();
	for (unsigned i = 0; i < q; ++i)
		work_[i] = llr[i];
	fft_->forward(work_.data());
	for (unsigned k = 0; k < q; ++k)
		work_[k] = std::conj(work_[k]) * pn_spectrum_[k];
	fft_->inverse(work_.data());
	std::vector<double> c(q);
	double inv_q = 1.0 / static_cast<double>(q);
	for (unsigned u = 0; u < q; ++u)
		c[u] = work_[u].real() * inv_q;
	return c;
}

namespace {

// softmax of half the correlation scores, peak-anchored for stability
void scores_to_posterior(const std::vector<double>& c, double* out)
{
	unsigned q = static_cast<unsigned>(c.size());
	double m = c[0];
	for (unsigned u = 1; u < q; ++u)
		if (c[u] > m)
			m = c[u];
	for (unsigned u = 0; u < q; ++u)
		out[u] = std::exp(0.5 * (c[u] - m));
	floor_and_normalize({out, q});
}

} // namespace

SymbolDist CcskModem::demodulate(std::span<const double> llr) const
{
	SymbolDist d(pn_.size());
	auto c = correlations(llr);
	scores_to_posterior(c, d.data());
	return d;
}

SymbolDist CcskModem::demodulate(const ChannelObservation& obs) const
{
	return demodulate(llr_chips(obs));
}

void CcskModem::transmit_symbol(gf_elem u, double sigma2, RngStream& rng,
	double* out) const
{
	unsigned q = pn_.size();
	double sigma = std::sqrt(sigma2);
	double scale = 2.0 / sigma2;
	for (unsigned i = 0; i < q; ++i) {
		double y = pn_.chips[(i + u) & (q - 1)] + sigma * rng.gaussian();
		work_[i] = scale * y;
	}
	fft_->forward(work_.data());
	for (unsigned k = 0; k < q; ++k)
		work_[k] = std::conj(work_[k]) * pn_spectrum_[k];
	fft_->inverse(work_.data());
	double inv_q = 1.0 / static_cast<double>(q);
	double m = work_[0].real() * inv_q;
	for (unsigned v = 1; v < q; ++v)
		m = std::max(m, work_[v].real() * inv_q);
	for (unsigned v = 0; v < q; ++v)
		out[v] = std::exp(0.5 * (work_[v].real() * inv_q - m));
	floor_and_normalize({out, q});
}

} // namespace nbpolar
