#include "nbpolar/construct.hpp"

#include "nbpolar/parallel.hpp"
#include "nbpolar/rng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nbpolar {

namespace {

constexpr std::uint64_t kChunk = 64;

struct GenieWorker {
	CcskModem modem;
	ScWorkspace ws;
	std::vector<gf_elem> u_true;
	std::vector<gf_elem> x;
	std::vector<double> chan;
};

// one genie pass over `tree` with fresh inputs and noise, leaf posteriors
// copied to out_dists (length * q doubles)
void sample_block(const GaloisField& gf, const CoeffTree& tree, GenieWorker& w,
	double sigma2, RngStream& rng, std::vector<gf_elem>& u, double* out_dists)
{
	unsigned L = tree.length();
	unsigned q = gf.size();
	for (unsigned i = 0; i < L; ++i)
		u[i] = rng.symbol(q);
	polar_transform_node(gf, tree, 1, u.data(), w.x.data(), L);
	for (unsigned i = 0; i < L; ++i)
		w.modem.transmit_symbol(w.x[i], sigma2, rng,
			w.chan.data() + std::size_t{i} * q);
	LeafSink sink = [&](std::uint32_t leaf, const double* dist) {
		std::copy(dist, dist + q, out_dists + std::size_t{leaf} * q);
	};
	sc_run(gf, tree, w.chan.data(), w.ws, u.data(), nullptr, nullptr, sink);
}

std::vector<gf_elem> candidate_list(unsigned q, std::uint32_t subsample)
{
	std::vector<gf_elem> c;
	if (subsample == 0 || subsample >= q - 1) {
		for (unsigned h = 1; h < q; ++h)
			c.push_back(static_cast<gf_elem>(h));
	} else {
		for (std::uint32_t k = 0; k < subsample; ++k)
			c.push_back(static_cast<gf_elem>(
				1 + static_cast<std::uint64_t>(k) * (q - 1) / subsample));
	}
	return c;
}

} // namespace

ReliabilityReport estimate_error_probs(const GaloisField& gf,
	const CcskModem& modem, const CoeffTree& tree, double sigma2,
	std::uint64_t trials, std::uint64_t seed, int threads)
{
	if (trials < 1)
		throw std::invalid_argument("trial budget must be positive");
	unsigned N = tree.length();
	unsigned q = gf.size();
	std::uint64_t n_chunks = (trials + kChunk - 1) / kChunk;
	std::vector<std::vector<double>> slots(n_chunks);

	run_tasks(
		n_chunks, threads,
		[&] {
			return GenieWorker{modem, {}, std::vector<gf_elem>(N),
				std::vector<gf_elem>(N),
				std::vector<double>(std::size_t{N} * q)};
		},
		[&](GenieWorker& w, std::uint64_t c) {
			auto range = trial_chunk(c, kChunk, trials);
			auto& acc = slots[c];
			acc.assign(N, 0.0);
			LeafSink sink = [&](std::uint32_t leaf, const double* dist) {
				acc[leaf] += 1.0 - dist[w.u_true[leaf]];
			};
			for (std::uint64_t t = range.begin; t < range.end; ++t) {
				RngStream rng(seed, stream_tag::reliability | t);
				for (unsigned i = 0; i < N; ++i)
					w.u_true[i] = rng.symbol(q);
				polar_transform_node(gf, tree, 1, w.u_true.data(), w.x.data(), N);
				for (unsigned i = 0; i < N; ++i)
					w.modem.transmit_symbol(w.x[i], sigma2, rng,
						w.chan.data() + std::size_t{i} * q);
				sc_run(gf, tree, w.chan.data(), w.ws, w.u_true.data(), nullptr,
					nullptr, sink);
			}
		});

	ReliabilityReport rep;
	rep.error_probs.assign(N, 0.0);
	rep.trials = trials;
	rep.sigma2 = sigma2;
	rep.tree = tree;
	for (const auto& s : slots)
		for (unsigned i = 0; i < N; ++i)
			rep.error_probs[i] += s[i];
	double inv = 1.0 / static_cast<double>(trials);
	for (unsigned i = 0; i < N; ++i)
		rep.error_probs[i] *= inv;
	return rep;
}

CoeffTree optimize_coefficients(const GaloisField& gf, const CcskModem& modem,
	int n, double sigma2, std::uint64_t trials_per_candidate, std::uint64_t seed,
	int threads, std::uint32_t candidate_subsample,
	std::vector<CandidateRecord>* audit)
{
	if (n < 1)
		throw std::invalid_argument("tree depth must be at least 1");
	if (trials_per_candidate < 1)
		throw std::invalid_argument("trial budget must be positive");
	unsigned q = gf.size();
	CoeffTree tree = uniform_tree(n, 1);
	if (q == 2)
		return tree; // sole nonzero coefficient

	auto cands = candidate_list(q, candidate_subsample);
	std::size_t ncand = cands.size();

	// perm[ci][w] = h_ci^{-1} * w, so the score of candidate h at true pair
	// (vA, vB) is sum_w A[u0 ^ perm[ci][w]] * B[w] with u0 = vA ^ perm[ci][vB]
	std::vector<std::vector<gf_elem>> perm(ncand, std::vector<gf_elem>(q));
	for (std::size_t ci = 0; ci < ncand; ++ci) {
		gf_elem hinv = gf.inv(cands[ci]);
		for (unsigned w = 0; w < q; ++w)
			perm[ci][w] = gf.mul(hinv, static_cast<gf_elem>(w));
	}

	const std::uint64_t T = trials_per_candidate;
	std::uint64_t n_chunks = (T + kChunk - 1) / kChunk;

	for (int s = 1; s <= n; ++s) {
		unsigned L = 1u << (s - 1);
		CoeffTree trunc = truncate_tree(tree, s - 1);
		std::vector<std::vector<double>> slots(n_chunks);

		run_tasks(
			n_chunks, threads,
			[&] {
				GenieWorker w{modem, {}, std::vector<gf_elem>(L),
					std::vector<gf_elem>(L),
					std::vector<double>(std::size_t{L} * q)};
				return std::tuple<GenieWorker, std::vector<gf_elem>,
					std::vector<double>, std::vector<double>>(std::move(w),
					std::vector<gf_elem>(L),
					std::vector<double>(std::size_t{L} * q),
					std::vector<double>(std::size_t{L} * q));
			},
			[&](auto& state, std::uint64_t c) {
				auto& [w, uB, distsA, distsB] = state;
				auto range = trial_chunk(c, kChunk, T);
				auto& acc = slots[c];
				acc.assign(std::size_t{L} * ncand * 2, 0.0);
				for (std::uint64_t t = range.begin; t < range.end; ++t) {
					RngStream rng(seed, stream_tag::optimize
						| (static_cast<std::uint64_t>(s) << 40) | t);
					sample_block(gf, trunc, w, sigma2, rng, w.u_true,
						distsA.data());
					sample_block(gf, trunc, w, sigma2, rng, uB, distsB.data());
					for (unsigned j = 0; j < L; ++j) {
						const double* A = distsA.data() + std::size_t{j} * q;
						const double* B = distsB.data() + std::size_t{j} * q;
						gf_elem vA = w.u_true[j];
						gf_elem vB = uB[j];
						double joint = A[vA] * B[vB];
						double* out = acc.data() + std::size_t{j} * ncand * 2;
						for (std::size_t ci = 0; ci < ncand; ++ci) {
							const gf_elem* pm = perm[ci].data();
							gf_elem u0 = vA ^ pm[vB];
							double score = 0.0;
							for (unsigned wv = 0; wv < q; ++wv)
								score += A[u0 ^ pm[wv]] * B[wv];
							double pa, pg;
							if (score > 0.0) {
								pa = 1.0 - score;
								pg = 1.0 - joint / score;
							} else {
								pa = 1.0;
								pg = 1.0 - 1.0 / q;
							}
							out[2 * ci] += pa;
							out[2 * ci + 1] += pg;
						}
					}
				}
			});

		// ordered reduction, then pick per node
		std::vector<double> total(std::size_t{L} * ncand * 2, 0.0);
		for (const auto& sl : slots)
			for (std::size_t i = 0; i < total.size(); ++i)
				total[i] += sl[i];

		double inv_t = 1.0 / static_cast<double>(T);
		for (unsigned j = 0; j < L; ++j) {
			const double* row = total.data() + std::size_t{j} * ncand * 2;
			std::size_t best = 0;
			double best_gap = -1.0;
			for (std::size_t ci = 0; ci < ncand; ++ci) {
				double gap = std::fabs(row[2 * ci] - row[2 * ci + 1]);
				if (gap > best_gap) {
					best_gap = gap;
					best = ci;
				}
			}
			tree.coeff(L + j) = cands[best];
			if (audit)
				for (std::size_t ci = 0; ci < ncand; ++ci)
					audit->push_back({L + j, s, cands[ci],
						row[2 * ci] * inv_t, row[2 * ci + 1] * inv_t,
						ci == best});
		}
	}
	return tree;
}

std::vector<std::uint32_t> select_info_set(const ReliabilityReport& report,
	unsigned K)
{
	unsigned N = static_cast<unsigned>(report.error_probs.size());
	if (K > N)
		throw std::invalid_argument("dimension exceeds block length");
	std::vector<std::uint32_t> idx(N);
	std::iota(idx.begin(), idx.end(), 0u);
	std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
		return report.error_probs[a] < report.error_probs[b];
	});
	idx.resize(K);
	std::sort(idx.begin(), idx.end());
	return idx;
}

double wer_bound(const ReliabilityReport& report,
	std::span<const std::uint32_t> info_set)
{
	double prod = 1.0;
	for (std::uint32_t j : info_set)
		prod *= 1.0 - report.error_probs[j];
	return 1.0 - prod;
}

Construction construct_code(const ConstructParams& params, int threads,
	bool keep_candidates)
{
	if (params.n < 1 || params.n > 16)
		throw std::invalid_argument("tree depth out of range");
	GaloisField gf(params.p,
		params.gf_poly ? params.gf_poly : default_primitive_poly(params.p));
	PnSequence pn = pn_generate(params.p,
		params.pn_poly ? params.pn_poly : default_primitive_poly(params.p));
	CcskModem modem(pn);
	unsigned N = 1u << params.n;
	if (params.k > N)
		throw std::invalid_argument("dimension exceeds block length");
	double sigma2 = sigma2_from_snr_db(params.snr_db);

	std::vector<CandidateRecord> audit;
	CoeffTree tree = optimize_coefficients(gf, modem, params.n, sigma2,
		params.budgets.opt_trials, params.seed, threads,
		params.budgets.candidate_subsample, keep_candidates ? &audit : nullptr);
	ReliabilityReport rep = estimate_error_probs(gf, modem, tree, sigma2,
		params.budgets.rel_trials, params.seed, threads);
	auto info = select_info_set(rep, params.k);
	double bound = wer_bound(rep, info);

	return Construction{PolarCode(gf, std::move(tree), std::move(info),
							params.snr_db),
		std::move(pn), std::move(rep), bound, std::move(audit)};
}

} // namespace nbpolar
