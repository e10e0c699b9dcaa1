#include "nbpolar/construct.hpp"

#include "nbpolar/rng.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <random>

using namespace nbpolar;

TEST_SUITE("construct") {

TEST_CASE("info set selection takes the most reliable positions")
{
	ReliabilityReport rep;
	rep.error_probs = {0.5, 0.1, 0.1, 0.3};
	CHECK(select_info_set(rep, 0).empty());
	CHECK(select_info_set(rep, 2) == std::vector<std::uint32_t>{1, 2});
	CHECK(select_info_set(rep, 3) == std::vector<std::uint32_t>{1, 2, 3});
	CHECK(select_info_set(rep, 4) == std::vector<std::uint32_t>{0, 1, 2, 3});
	CHECK_THROWS_AS(select_info_set(rep, 5), std::invalid_argument);

	ReliabilityReport ties;
	ties.error_probs = {0.2, 0.2, 0.2, 0.2};
	CHECK(select_info_set(ties, 2) == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("union bound over the info set")
{
	ReliabilityReport rep;
	rep.error_probs = {0.1, 0.2, 0.5, 0.0};
	std::vector<std::uint32_t> info{0, 1};
	CHECK(wer_bound(rep, info) == doctest::Approx(1.0 - 0.9 * 0.8).epsilon(1e-12));
	std::vector<std::uint32_t> none;
	CHECK(wer_bound(rep, none) == 0.0);
	std::vector<std::uint32_t> sure{2, 3};
	CHECK(wer_bound(rep, sure) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("binary field optimization degenerates to the all-ones tree")
{
	GaloisField gf(1);
	CcskModem modem(pn_generate(1, 0x3));
	auto tree = optimize_coefficients(gf, modem, 3, 1.0, 10, 1, 1);
	CHECK(tree.coeffs == std::vector<gf_elem>(7, 1));
}

TEST_CASE("genie error estimates degrade with noise and order by type")
{
	GaloisField gf(2);
	CcskModem modem(pn_generate(2, 0x7));
	CoeffTree tree = uniform_tree(1, 2);

	auto clean = estimate_error_probs(gf, modem, tree,
		sigma2_from_snr_db(4.0), 3000, 11, 1);
	auto noisy = estimate_error_probs(gf, modem, tree,
		sigma2_from_snr_db(-4.0), 3000, 11, 1);
	REQUIRE(clean.error_probs.size() == 2);
	CHECK(clean.error_probs[0] < noisy.error_probs[0]);
	CHECK(clean.error_probs[1] < noisy.error_probs[1]);
	// combined branch is degraded, conditioned branch upgraded
	CHECK(noisy.error_probs[0] > noisy.error_probs[1]);
	CHECK(noisy.trials == 3000);
	CHECK(noisy.sigma2 == doctest::Approx(sigma2_from_snr_db(-4.0)));
}

TEST_CASE("depth-zero reliability matches the bare channel symbol error rate")
{
	GaloisField gf(3);
	CcskModem modem(pn_generate(3, 0xB));
	CoeffTree t;
	t.n = 0;
	double sigma2 = sigma2_from_snr_db(-2.0);
	auto rep = estimate_error_probs(gf, modem, t, sigma2, 20000, 3, 1);
	REQUIRE(rep.error_probs.size() == 1);

	// independent direct estimate of 1 - E[posterior at the truth]
	double acc = 0.0;
	unsigned q = gf.size();
	std::vector<double> d(q);
	std::uint64_t trials = 20000;
	for (std::uint64_t t2 = 0; t2 < trials; ++t2) {
		RngStream rng(777, t2);
		gf_elem u = rng.symbol(q);
		modem.transmit_symbol(u, sigma2, rng, d.data());
		acc += 1.0 - d[u];
	}
	double direct = acc / static_cast<double>(trials);
	CHECK(std::fabs(rep.error_probs[0] - direct) < 0.02);
}

TEST_CASE("optimizer scoring matches the canonical combine rules")
{
	// the stage search scores candidates through a closed form; verify it
	// against bad_combine / good_combine on random posteriors
	std::mt19937 mt(55);
	GaloisField gf(3);
	unsigned q = gf.size();
	std::uniform_real_distribution<double> uni(0.0, 1.0);
	for (int it = 0; it < 200; ++it) {
		SymbolDist A(q), B(q);
		for (auto& x : A)
			x = uni(mt) + 1e-9;
		for (auto& x : B)
			x = uni(mt) + 1e-9;
		floor_and_normalize(A);
		floor_and_normalize(B);
		gf_elem vA = static_cast<gf_elem>(mt() % q);
		gf_elem vB = static_cast<gf_elem>(mt() % q);
		gf_elem h = static_cast<gf_elem>(1 + mt() % (q - 1));
		gf_elem hinv = gf.inv(h);
		gf_elem u1 = gf.mul(hinv, vB);
		gf_elem u0 = GaloisField::add(vA, u1);

		double score = 0.0;
		for (unsigned w = 0; w < q; ++w)
			score += A[u0 ^ gf.mul(hinv, static_cast<gf_elem>(w))] * B[w];
		double p_bad = 1.0 - score;
		double p_good = 1.0 - A[vA] * B[vB] / score;

		auto du0 = bad_combine(gf, A, B, h);
		auto du1 = good_combine(gf, A, B, h, u0);
		CHECK(std::fabs(p_bad - (1.0 - du0[u0])) < 1e-9);
		CHECK(std::fabs(p_good - (1.0 - du1[u1])) < 1e-9);
	}
}

TEST_CASE("optimization is deterministic for a fixed seed")
{
	GaloisField gf(2);
	CcskModem modem(pn_generate(2, 0x7));
	auto t1 = optimize_coefficients(gf, modem, 3, 1.0, 200, 42, 1);
	auto t2 = optimize_coefficients(gf, modem, 3, 1.0, 200, 42, 2);
	CHECK(t1.coeffs == t2.coeffs);
}

TEST_CASE("selected coefficient maximizes the recorded child spread")
{
	GaloisField gf(3);
	CcskModem modem(pn_generate(3, 0xB));
	std::vector<CandidateRecord> audit;
	auto tree = optimize_coefficients(gf, modem, 2, sigma2_from_snr_db(-4.0),
		300, 9, 1, 0, &audit);
	REQUIRE(audit.size() == 3 * 7);
	for (std::size_t base = 0; base < audit.size(); base += 7) {
		double best_gap = -1.0;
		gf_elem best_h = 0;
		gf_elem chosen = 0;
		for (std::size_t i = base; i < base + 7; ++i) {
			double gap = std::fabs(audit[i].p_bad - audit[i].p_good);
			if (gap > best_gap) {
				best_gap = gap;
				best_h = audit[i].h;
			}
			if (audit[i].selected)
				chosen = audit[i].h;
		}
		CHECK(chosen == best_h);
		CHECK(tree.coeff(audit[base].node) == chosen);
	}
}

TEST_CASE("stage search never picks a clearly inferior coefficient")
{
	// depth-1 tree over GF(4) at -3 dB: h=2 and h=3 separate the channels
	// equally well (a genuine tie at any budget) while h=1 trails by ~0.045,
	// so the contract is near-optimality of the pick, not argmax identity.
	// Brute-force gaps use an independent larger budget; 0.02 sits between
	// the Monte-Carlo noise of both estimates and the h=1 deficit.
	GaloisField gf(2);
	CcskModem modem(pn_generate(2, 0x7));
	unsigned q = gf.size();
	double sigma2 = sigma2_from_snr_db(-3.0);
	const int seeds = 20;
	for (int s = 0; s < seeds; ++s) {
		auto tree = optimize_coefficients(gf, modem, 1, sigma2, 4000,
			1000 + s, 1);
		gf_elem picked = tree.coeff(1);

		std::uint64_t T = 6000;
		std::vector<double> gaps(q, 0.0);
		for (gf_elem h = 1; h < q; ++h) {
			double pb = 0.0, pg = 0.0;
			std::vector<double> dA(q), dB(q);
			for (std::uint64_t t = 0; t < T; ++t) {
				RngStream rng(5000 + s, t);
				gf_elem u0 = rng.symbol(q);
				gf_elem u1 = rng.symbol(q);
				gf_elem v0 = GaloisField::add(u0, u1);
				gf_elem v1 = gf.mul(h, u1);
				modem.transmit_symbol(v0, sigma2, rng, dA.data());
				modem.transmit_symbol(v1, sigma2, rng, dB.data());
				auto du0 = bad_combine(gf, dA, dB, h);
				pb += 1.0 - du0[u0];
				auto du1 = good_combine(gf, dA, dB, h, u0);
				pg += 1.0 - du1[u1];
			}
			gaps[h] = std::fabs(pb - pg) / static_cast<double>(T);
		}
		double best_gap = *std::max_element(gaps.begin(), gaps.end());
		CAPTURE(s);
		CAPTURE(picked);
		CHECK(gaps[picked] >= best_gap - 0.02);
	}
}

TEST_CASE("construct produces a consistent code")
{
	ConstructParams params;
	params.p = 2;
	params.n = 3;
	params.k = 4;
	params.snr_db = -2.0;
	params.seed = 3;
	params.budgets.opt_trials = 300;
	params.budgets.rel_trials = 2000;
	auto built = construct_code(params, 1, true);

	CHECK(built.code.block_length() == 8);
	CHECK(built.code.dimension() == 4);
	CHECK(std::is_sorted(built.code.info_set().begin(),
		built.code.info_set().end()));
	CHECK(built.report.error_probs.size() == 8);
	CHECK(built.report.trials == 2000);
	CHECK(built.wer_bound_value >= 0.0);
	CHECK(built.wer_bound_value <= 1.0);
	CHECK(!built.candidates.empty());
	CHECK(built.wer_bound_value
		== doctest::Approx(wer_bound(built.report, built.code.info_set())));

	// the bound over the selected set never exceeds the bound over any
	// other set of the same size
	std::vector<std::uint32_t> worst{4, 5, 6, 7};
	std::vector<std::uint32_t> best = select_info_set(built.report, 4);
	CHECK(wer_bound(built.report, best) <= wer_bound(built.report, worst) + 1e-12);
}

TEST_CASE("candidate subsampling caps the scan")
{
	GaloisField gf(4);
	CcskModem modem(pn_generate(4, 0x13));
	std::vector<CandidateRecord> audit;
	optimize_coefficients(gf, modem, 1, 1.0, 50, 2, 1, 5, &audit);
	CHECK(audit.size() == 5);
	for (const auto& r : audit) {
		CHECK(r.h >= 1);
		CHECK(r.h < 16);
	}
}

} // TEST_SUITE
