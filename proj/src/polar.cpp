#include "nbpolar/polar.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbpolar {

CoeffTree uniform_tree(int n, gf_elem h)
{
	CoeffTree t;
	t.n = n;
	t.coeffs.assign((std::size_t{1} << n) - 1, h);
	return t;
}

CoeffTree truncate_tree(const CoeffTree& tree, int levels)
{
	CoeffTree t;
	t.n = levels;
	t.coeffs.assign(tree.coeffs.begin(),
		tree.coeffs.begin() + ((std::ptrdiff_t{1} << levels) - 1));
	return t;
}

std::vector<int> channel_type_of_index(int n, std::uint32_t index)
{
	std::vector<int> bits(n);
	for (int t = 0; t < n; ++t)
		bits[t] = index >> (n - 1 - t) & 1;
	return bits;
}

namespace {

// Children write their outputs pre-interleaved via a doubled stride, so the
// butterfly at each node touches only its own pair of slots and the whole
// transform runs in place with no scratch.
void transform_strided(const GaloisField& gf, const CoeffTree& tree,
	std::size_t node, const gf_elem* in, gf_elem* out, std::size_t len,
	std::size_t stride)
{
	if (len == 1) {
		out[0] = in[0];
		return;
	}
	std::size_t half = len / 2;
	transform_strided(gf, tree, 2 * node, in, out, half, 2 * stride);
	transform_strided(gf, tree, 2 * node + 1, in + half, out + stride, half,
		2 * stride);
	gf_elem h = tree.coeff(node);
	for (std::size_t k = 0; k < half; ++k) {
		gf_elem* lo = out + 2 * k * stride;
		gf_elem d = lo[stride];
		lo[0] = GaloisField::add(lo[0], d);
		lo[stride] = gf.mul(h, d);
	}
}

} // namespace

void polar_transform_node(const GaloisField& gf, const CoeffTree& tree,
	std::size_t node, const gf_elem* in, gf_elem* out, std::size_t len)
{
	transform_strided(gf, tree, node, in, out, len, 1);
}

std::vector<gf_elem> polar_transform(const GaloisField& gf, const CoeffTree& tree,
	std::span<const gf_elem> in)
{
	std::vector<gf_elem> out(in.size());
	polar_transform_node(gf, tree, 1, in.data(), out.data(), in.size());
	return out;
}

namespace {

void inverse_node(const GaloisField& gf, const CoeffTree& tree, std::size_t node,
	std::span<const gf_elem> x, std::span<gf_elem> out)
{
	std::size_t len = x.size();
	if (len == 1) {
		out[0] = x[0];
		return;
	}
	std::size_t half = len / 2;
	gf_elem h_inv = gf.inv(tree.coeff(node));
	std::vector<gf_elem> c(half), d(half);
	for (std::size_t k = 0; k < half; ++k) {
		d[k] = gf.mul(h_inv, x[2 * k + 1]);
		c[k] = GaloisField::add(x[2 * k], d[k]);
	}
	inverse_node(gf, tree, 2 * node, c, out.subspan(0, half));
	inverse_node(gf, tree, 2 * node + 1, d, out.subspan(half));
}

} // namespace

std::vector<gf_elem> polar_inverse_transform(const GaloisField& gf,
	const CoeffTree& tree, std::span<const gf_elem> codeword)
{
	std::vector<gf_elem> out(codeword.size());
	inverse_node(gf, tree, 1, codeword, out);
	return out;
}

PolarCode::PolarCode(GaloisField gf, CoeffTree tree,
	std::vector<std::uint32_t> info_set, double design_snr_db)
	: gf_(std::move(gf)), tree_(std::move(tree)), info_set_(std::move(info_set)),
	  design_snr_db_(design_snr_db)
{
	if (tree_.n < 0 || tree_.n > 20)
		throw std::invalid_argument("tree depth out of range");
	unsigned N = tree_.length();
	if (tree_.coeffs.size() != std::size_t{N} - 1)
		throw std::invalid_argument("coefficient tree size mismatch");
	for (gf_elem h : tree_.coeffs)
		if (h == 0 || h >= gf_.size())
			throw std::invalid_argument("kernel coefficient out of range");
	std::sort(info_set_.begin(), info_set_.end());
	if (std::adjacent_find(info_set_.begin(), info_set_.end()) != info_set_.end())
		throw std::invalid_argument("duplicate info position");
	if (!info_set_.empty() && info_set_.back() >= N)
		throw std::invalid_argument("info position out of range");
	frozen_.assign(N, true);
	for (std::uint32_t j : info_set_)
		frozen_[j] = false;
}

std::vector<gf_elem> assemble_message(const PolarCode& code,
	std::span<const gf_elem> info_symbols)
{
	if (info_symbols.size() != code.dimension())
		throw std::invalid_argument("info symbol count mismatch");
	std::vector<gf_elem> u(code.block_length(), 0);
	for (std::size_t i = 0; i < info_symbols.size(); ++i)
		u[code.info_set()[i]] = info_symbols[i];
	return u;
}

std::vector<gf_elem> encode(const PolarCode& code, std::span<const gf_elem> u)
{
	if (u.size() != code.block_length())
		throw std::invalid_argument("message length mismatch");
	return polar_transform(code.gf(), code.tree(), u);
}

void ScWorkspace::resize(int n_new, unsigned q_new)
{
	if (n == n_new && q == q_new)
		return;
	n = n_new;
	q = q_new;
	unsigned N = 1u << n;
	level_dists.assign(n + 1, {});
	partial.assign(n + 1, {});
	for (int d = 0; d <= n; ++d) {
		level_dists[d].assign(std::size_t{N >> d} * q, 0.0);
		partial[d].assign(std::size_t{1} << (n - d), 0);
	}
	scratch.assign(q, 0.0);
	decisions.assign(N, 0);
}

namespace {

struct ScPass {
	const GaloisField* gf;
	const CoeffTree* tree;
	ScWorkspace* ws;
	const gf_elem* true_u;
	const std::vector<bool>* frozen;
	gf_elem* decisions;
	const LeafSink* sink;
	unsigned q;
	int n;

	void recurse(std::size_t node, int depth, std::uint32_t leaf_base,
		const double* dists)
	{
		if (depth == n) {
			if (*sink)
				(*sink)(leaf_base, dists);
			gf_elem dec;
			if (frozen && (*frozen)[leaf_base])
				dec = 0;
			else
				dec = dist_argmax({dists, q});
			decisions[leaf_base] = dec;
			return;
		}
		std::size_t half = std::size_t{1} << (n - depth - 1);
		gf_elem h = tree->coeff(node);
		double* child = ws->level_dists[depth + 1].data();
		for (std::size_t k = 0; k < half; ++k)
			bad_combine_into(*gf, dists + 2 * k * q, dists + (2 * k + 1) * q, h,
				child + k * q, ws->scratch.data());
		recurse(2 * node, depth + 1, leaf_base, child);

		const gf_elem* inputs = true_u ? true_u : decisions;
		gf_elem* enc = ws->partial[depth + 1].data();
		polar_transform_node(*gf, *tree, 2 * node, inputs + leaf_base, enc, half);
		for (std::size_t k = 0; k < half; ++k)
			good_combine_into(*gf, dists + 2 * k * q, dists + (2 * k + 1) * q, h,
				enc[k], child + k * q);
		recurse(2 * node + 1, depth + 1,
			leaf_base + static_cast<std::uint32_t>(half), child);
	}
};

} // namespace

void sc_run(const GaloisField& gf, const CoeffTree& tree, const double* channel,
	ScWorkspace& ws, const gf_elem* true_u, const std::vector<bool>* frozen,
	gf_elem* decisions_out, const LeafSink& sink)
{
	ws.resize(tree.n, gf.size());
	gf_elem* dec = decisions_out ? decisions_out : ws.decisions.data();
	ScPass pass{&gf, &tree, &ws, true_u, frozen, dec, &sink, gf.size(), tree.n};
	pass.recurse(1, 0, 0, channel);
}

namespace {

std::vector<double> flatten_channel(const std::vector<SymbolDist>& channel,
	unsigned q)
{
	std::vector<double> flat(channel.size() * q);
	for (std::size_t i = 0; i < channel.size(); ++i)
		std::copy(channel[i].begin(), channel[i].end(), flat.begin() + i * q);
	return flat;
}

} // namespace

ScResult sc_decode(const PolarCode& code, const std::vector<SymbolDist>& channel,
	ScWorkspace& ws, const LeafSink& sink)
{
	unsigned q = code.gf().size();
	if (channel.size() != code.block_length())
		throw std::invalid_argument("channel distribution count mismatch");
	auto flat = flatten_channel(channel, q);
	ScResult res;
	res.u_hat.assign(code.block_length(), 0);
	sc_run(code.gf(), code.tree(), flat.data(), ws, nullptr, &code.frozen(),
		res.u_hat.data(), sink);
	res.info_symbols.reserve(code.dimension());
	for (std::uint32_t j : code.info_set())
		res.info_symbols.push_back(res.u_hat[j]);
	return res;
}

std::vector<LeafPosterior> sc_decode_genie(const PolarCode& code,
	const std::vector<SymbolDist>& channel, std::span<const gf_elem> true_u,
	ScWorkspace& ws)
{
	unsigned q = code.gf().size();
	if (channel.size() != code.block_length() || true_u.size() != channel.size())
		throw std::invalid_argument("genie input size mismatch");
	auto flat = flatten_channel(channel, q);
	std::vector<LeafPosterior> out(code.block_length());
	LeafSink sink = [&](std::uint32_t leaf, const double* dist) {
		out[leaf].index = leaf;
		out[leaf].dist.assign(dist, dist + q);
		out[leaf].true_symbol = true_u[leaf];
	};
	sc_run(code.gf(), code.tree(), flat.data(), ws, true_u.data(), nullptr,
		nullptr, sink);
	return out;
}

} // namespace nbpolar
