/*
Non-binary polar codes built from the two-symbol kernel
(u0, u1) -> (u0 + u1, h * u1) with a per-node coefficient h.

Coefficients live in a binary heap: node 1 is the channel-side kernel
stage, node m has children 2m (combined branch) and 2m+1 (conditioned
branch). Leaf j of a depth-n tree sits under the path spelled by the
MSB-first binary expansion of j, which is also the leaf's virtual
channel type.
*/

#pragma once

#include "nbpolar/gf.hpp"
#include "nbpolar/pdist.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nbpolar {

struct CoeffTree {
	int n = 0;
	std::vector<gf_elem> coeffs; // heap order, size 2^n - 1

	unsigned length() const { return 1u << n; }
	gf_elem coeff(std::size_t node) const { return coeffs[node - 1]; }
	gf_elem& coeff(std::size_t node) { return coeffs[node - 1]; }
};

// all-ones tree (binary kernel everywhere)
CoeffTree uniform_tree(int n, gf_elem h = 1);

// top `levels` stages of a deeper tree
CoeffTree truncate_tree(const CoeffTree& tree, int levels);

// MSB-first bits of `index`, i.e. the polarization choices leading to it
std::vector<int> channel_type_of_index(int n, std::uint32_t index);

// subtree transform: out = T_node(in), `in` and `out` must not alias
void polar_transform_node(const GaloisField& gf, const CoeffTree& tree,
	std::size_t node, const gf_elem* in, gf_elem* out, std::size_t len);

std::vector<gf_elem> polar_transform(const GaloisField& gf, const CoeffTree& tree,
	std::span<const gf_elem> in);

std::vector<gf_elem> polar_inverse_transform(const GaloisField& gf,
	const CoeffTree& tree, std::span<const gf_elem> codeword);

class PolarCode {
public:
	PolarCode(GaloisField gf, CoeffTree tree, std::vector<std::uint32_t> info_set,
		double design_snr_db);

	const GaloisField& gf() const { return gf_; }
	const CoeffTree& tree() const { return tree_; }
	const std::vector<std::uint32_t>& info_set() const { return info_set_; }
	const std::vector<bool>& frozen() const { return frozen_; }
	double design_snr_db() const { return design_snr_db_; }
	unsigned block_length() const { return tree_.length(); }
	unsigned dimension() const { return static_cast<unsigned>(info_set_.size()); }

private:
	GaloisField gf_;
	CoeffTree tree_;
	std::vector<std::uint32_t> info_set_;
	std::vector<bool> frozen_;
	double design_snr_db_;
};

// message vector with info symbols placed on the info set, zeros elsewhere
std::vector<gf_elem> assemble_message(const PolarCode& code,
	std::span<const gf_elem> info_symbols);

std::vector<gf_elem> encode(const PolarCode& code, std::span<const gf_elem> u);

// reusable buffers for one decoder instance
struct ScWorkspace {
	void resize(int n, unsigned q);

	std::vector<std::vector<double>> level_dists; // [depth] (N>>depth)*q
	std::vector<std::vector<gf_elem>> partial;    // [depth] re-encoded left halves
	std::vector<double> scratch;                  // q
	std::vector<gf_elem> decisions;               // N
	int n = -1;
	unsigned q = 0;
};

using LeafSink = std::function<void(std::uint32_t leaf, const double* dist)>;

// One successive-cancellation pass. `channel` holds N*q doubles, the
// posterior of every codeword position. With `true_u` set the partial
// sums come from the true inputs (genie mode); otherwise from decisions,
// where `frozen` positions decode to zero. `sink` sees every leaf
// posterior before the decision.
void sc_run(const GaloisField& gf, const CoeffTree& tree, const double* channel,
	ScWorkspace& ws, const gf_elem* true_u, const std::vector<bool>* frozen,
	gf_elem* decisions_out, const LeafSink& sink);

struct ScResult {
	std::vector<gf_elem> info_symbols;
	std::vector<gf_elem> u_hat;
};

ScResult sc_decode(const PolarCode& code, const std::vector<SymbolDist>& channel,
	ScWorkspace& ws, const LeafSink& sink = {});

struct LeafPosterior {
	std::uint32_t index = 0;
	SymbolDist dist;
	gf_elem true_symbol = 0;
};

std::vector<LeafPosterior> sc_decode_genie(const PolarCode& code,
	const std::vector<SymbolDist>& channel, std::span<const gf_elem> true_u,
	ScWorkspace& ws);

} // namespace nbpolar
