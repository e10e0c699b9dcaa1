/*
Monte-Carlo code construction: kernel coefficient optimization,
per-position error probabilities from the genie-aided decoder, info set
selection and the union bound on SC word error rate.
*/

#pragma once

#include "nbpolar/ccsk.hpp"
#include "nbpolar/gf.hpp"
#include "nbpolar/polar.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nbpolar {

struct Budgets {
	std::uint64_t opt_trials = 2000;   // trials per candidate coefficient
	std::uint64_t rel_trials = 100000; // trials for the reliability pass
	std::uint32_t candidate_subsample = 0; // 0 = try every nonzero h
};

struct ReliabilityReport {
	std::vector<double> error_probs; // per leaf, 1 - posterior at the truth
	std::uint64_t trials = 0;
	double sigma2 = 1.0;
	CoeffTree tree;
};

// one row of the coefficient search audit trail
struct CandidateRecord {
	std::uint32_t node = 0; // heap index
	int level = 0;
	gf_elem h = 0;
	double p_bad = 0.0;
	double p_good = 0.0;
	bool selected = false;
};

ReliabilityReport estimate_error_probs(const GaloisField& gf,
	const CcskModem& modem, const CoeffTree& tree, double sigma2,
	std::uint64_t trials, std::uint64_t seed, int threads);

// Chooses every kernel coefficient stage by stage from the channel side.
// Each node's candidates are scored on the same trials (common random
// numbers); the winner maximizes the spread between its two child error
// probabilities, smallest h on ties.
CoeffTree optimize_coefficients(const GaloisField& gf, const CcskModem& modem,
	int n, double sigma2, std::uint64_t trials_per_candidate, std::uint64_t seed,
	int threads, std::uint32_t candidate_subsample = 0,
	std::vector<CandidateRecord>* audit = nullptr);

// K most reliable positions, smaller index on ties, ascending
std::vector<std::uint32_t> select_info_set(const ReliabilityReport& report,
	unsigned K);

// union bound 1 - prod_{j in info set} (1 - P_j)
double wer_bound(const ReliabilityReport& report,
	std::span<const std::uint32_t> info_set);

struct ConstructParams {
	int p = 0;
	int n = 0;
	unsigned k = 0;
	double snr_db = 0.0;
	std::uint64_t seed = 1;
	Budgets budgets;
	std::uint32_t gf_poly = 0; // 0 = default primitive polynomial
	std::uint32_t pn_poly = 0;
};

struct Construction {
	PolarCode code;
	PnSequence pn;
	ReliabilityReport report;
	double wer_bound_value = 0.0;
	std::vector<CandidateRecord> candidates;
};

Construction construct_code(const ConstructParams& params, int threads,
	bool keep_candidates = false);

} // namespace nbpolar
