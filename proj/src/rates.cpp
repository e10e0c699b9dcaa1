#include "nbpolar/rates.hpp"

#include "nbpolar/parallel.hpp"
#include "nbpolar/pdist.hpp"
#include "nbpolar/rng.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace nbpolar {

namespace {
constexpr std::uint64_t kChunk = 512;
}

RatePoint estimate_rate_point(const CcskModem& modem, double snr_db,
	std::uint64_t trials, std::uint64_t seed, int threads,
	std::uint32_t snr_index)
{
	if (trials < 1)
		throw std::invalid_argument("trial budget must be positive");
	unsigned q = modem.q();
	double sigma2 = sigma2_from_snr_db(snr_db);
	std::uint64_t n_chunks = (trials + kChunk - 1) / kChunk;
	std::vector<std::array<double, 2>> slots(n_chunks);

	struct Worker {
		CcskModem modem;
		std::vector<double> dist;
	};

	run_tasks(
		n_chunks, threads,
		[&] { return Worker{modem, std::vector<double>(q)}; },
		[&](Worker& w, std::uint64_t c) {
			auto range = trial_chunk(c, kChunk, trials);
			double s1 = 0.0, s2 = 0.0;
			for (std::uint64_t t = range.begin; t < range.end; ++t) {
				RngStream rng(seed, stream_tag::rates
					| (static_cast<std::uint64_t>(snr_index) << 40) | t);
				gf_elem u = rng.symbol(q);
				w.modem.transmit_symbol(u, sigma2, rng, w.dist.data());
				auto [h1, h2] = entropy_terms({w.dist.data(), q}, q);
				s1 += h1;
				s2 += h2;
			}
			slots[c] = {s1, s2};
		});

	double sum1 = 0.0, sum2 = 0.0;
	for (const auto& s : slots) {
		sum1 += s[0];
		sum2 += s[1];
	}
	double m1 = sum1 / static_cast<double>(trials);
	double m2 = sum2 / static_cast<double>(trials);

	RatePoint pt;
	pt.snr_db = snr_db;
	pt.rate = 1.0 - m1;
	pt.dispersion = m2 - m1 * m1;
	pt.trials = trials;
	return pt;
}

double q_func_inv(double eps)
{
	if (!(eps > 0.0) || !(eps < 0.5))
		throw std::invalid_argument("tail probability must be in (0, 0.5)");
	auto q_func = [](double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); };
	double lo = 0.0, hi = 40.0;
	for (int it = 0; it < 200; ++it) {
		double mid = 0.5 * (lo + hi);
		double v = q_func(mid);
		if (std::fabs(v - eps) <= 1e-9 * eps)
			return mid;
		if (v > eps)
			lo = mid;
		else
			hi = mid;
	}
	return 0.5 * (lo + hi);
}

double normal_approximation(double rate, double dispersion,
	std::uint64_t block_length, double eps)
{
	if (block_length < 1)
		throw std::invalid_argument("block length must be positive");
	double v = dispersion < 0.0 ? 0.0 : dispersion;
	return rate
		- std::sqrt(v / static_cast<double>(block_length)) * q_func_inv(eps);
}

double effective_rate(double rate, int p)
{
	return rate * static_cast<double>(p) / static_cast<double>(1u << p);
}

} // namespace nbpolar
