#include "nbpolar/wer_sim.hpp"

#include "nbpolar/parallel.hpp"
#include "nbpolar/rng.hpp"

#include <stdexcept>

namespace nbpolar {

namespace {
constexpr std::uint64_t kChunk = 256;
constexpr std::uint64_t kChunksPerGroup = 8;
}

WerPoint simulate_wer_point(const PolarCode& code, const CcskModem& modem,
	double snr_db, std::uint64_t max_trials, std::uint64_t max_errors,
	std::uint64_t seed, int threads, std::uint32_t snr_index)
{
	if (max_trials < 1)
		throw std::invalid_argument("trial budget must be positive");
	if (modem.q() != code.gf().size())
		throw std::invalid_argument("modem and code field size mismatch");
	unsigned N = code.block_length();
	unsigned q = code.gf().size();
	double sigma2 = sigma2_from_snr_db(snr_db);

	struct Worker {
		CcskModem modem;
		ScWorkspace ws;
		std::vector<gf_elem> u, x, u_hat;
		std::vector<double> chan;
	};
	auto make_worker = [&] {
		return Worker{modem, {}, std::vector<gf_elem>(N),
			std::vector<gf_elem>(N), std::vector<gf_elem>(N),
			std::vector<double>(std::size_t{N} * q)};
	};

	std::uint64_t n_chunks = (max_trials + kChunk - 1) / kChunk;
	std::vector<std::uint64_t> chunk_errors(n_chunks, 0);

	// per-chunk error counts are integers, so accumulation order does not
	// matter; the early-stop decision runs between whole groups of chunks
	WerPoint pt;
	pt.snr_db = snr_db;
	for (std::uint64_t g = 0; g * kChunksPerGroup < n_chunks; ++g) {
		std::uint64_t first = g * kChunksPerGroup;
		std::uint64_t count = std::min(kChunksPerGroup, n_chunks - first);
		run_tasks(
			count, threads, make_worker,
			[&](Worker& w, std::uint64_t ci) {
				std::uint64_t c = first + ci;
				auto range = trial_chunk(c, kChunk, max_trials);
				std::uint64_t errors = 0;
				for (std::uint64_t t = range.begin; t < range.end; ++t) {
					RngStream rng(seed, stream_tag::simulate
						| (static_cast<std::uint64_t>(snr_index) << 40) | t);
					for (std::uint32_t j : code.info_set())
						w.u[j] = rng.symbol(q);
					polar_transform_node(code.gf(), code.tree(), 1, w.u.data(),
						w.x.data(), N);
					for (unsigned i = 0; i < N; ++i)
						w.modem.transmit_symbol(w.x[i], sigma2, rng,
							w.chan.data() + std::size_t{i} * q);
					sc_run(code.gf(), code.tree(), w.chan.data(), w.ws, nullptr,
						&code.frozen(), w.u_hat.data(), {});
					for (std::uint32_t j : code.info_set())
						if (w.u_hat[j] != w.u[j]) {
							++errors;
							break;
						}
				}
				chunk_errors[c] = errors;
			});
		std::uint64_t last = std::min(first + count, n_chunks);
		pt.trials = trial_chunk(last - 1, kChunk, max_trials).end;
		pt.word_errors = 0;
		for (std::uint64_t c = 0; c < last; ++c)
			pt.word_errors += chunk_errors[c];
		if (max_errors && pt.word_errors >= max_errors)
			break;
	}
	return pt;
}

} // namespace nbpolar
