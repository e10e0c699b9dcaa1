#include "nbpolar/pdist.hpp"

#include <cmath>

namespace nbpolar {

namespace {
thread_local std::uint64_t g_combine_ops = 0;
}

std::uint64_t combine_op_count() { return g_combine_ops; }
void reset_combine_op_count() { g_combine_ops = 0; }

void wht_inplace(std::span<double> v)
{
	std::size_t q = v.size();
	for (std::size_t len = 1; len < q; len <<= 1) {
		for (std::size_t i = 0; i < q; i += len << 1) {
			for (std::size_t j = i; j < i + len; ++j) {
				double a = v[j];
				double b = v[j + len];
				v[j] = a + b;
				v[j + len] = a - b;
			}
		}
	}
}

SymbolDist xor_conv_naive(std::span<const double> a, std::span<const double> b)
{
	std::size_t q = a.size();
	SymbolDist c(q, 0.0);
	for (std::size_t u = 0; u < q; ++u)
		for (std::size_t w = 0; w < q; ++w)
			c[u] += a[w] * b[u ^ w];
	return c;
}

SymbolDist xor_conv_fast(std::span<const double> a, std::span<const double> b)
{
	std::size_t q = a.size();
	SymbolDist c(a.begin(), a.end());
	SymbolDist t(b.begin(), b.end());
	wht_inplace(c);
	wht_inplace(t);
	double inv_q = 1.0 / static_cast<double>(q);
	for (std::size_t i = 0; i < q; ++i)
		c[i] *= t[i] * inv_q;
	wht_inplace(c);
	return c;
}

SymbolDist permute_by_multiplier(const GaloisField& gf, std::span<const double> d,
	gf_elem h)
{
	unsigned q = gf.size();
	SymbolDist out(q);
	for (unsigned u = 0; u < q; ++u)
		out[u] = d[gf.mul(h, static_cast<gf_elem>(u))];
	return out;
}

void floor_and_normalize(std::span<double> d)
{
	double sum = 0.0;
	for (double& x : d) {
		if (x < kDistFloor)
			x = kDistFloor;
		sum += x;
	}
	double inv = 1.0 / sum;
	for (double& x : d)
		x *= inv;
}

void bad_combine_into(const GaloisField& gf, const double* d0, const double* d1,
	gf_elem h, double* out, double* scratch)
{
	++g_combine_ops;
	unsigned q = gf.size();
	for (unsigned u = 0; u < q; ++u) {
		out[u] = d0[u];
		scratch[u] = d1[gf.mul(h, static_cast<gf_elem>(u))];
	}
	wht_inplace({out, q});
	wht_inplace({scratch, q});
	double inv_q = 1.0 / static_cast<double>(q);
	for (unsigned i = 0; i < q; ++i)
		out[i] *= scratch[i] * inv_q;
	wht_inplace({out, q});
	floor_and_normalize({out, q});
}

void good_combine_into(const GaloisField& gf, const double* d0, const double* d1,
	gf_elem h, gf_elem u0, double* out)
{
	++g_combine_ops;
	unsigned q = gf.size();
	double sum = 0.0;
	for (unsigned u = 0; u < q; ++u) {
		double m = d0[u0 ^ u] * d1[gf.mul(h, static_cast<gf_elem>(u))];
		out[u] = m;
		sum += m;
	}
	if (sum <= 0.0) {
		double uni = 1.0 / static_cast<double>(q);
		for (unsigned u = 0; u < q; ++u)
			out[u] = uni;
		return;
	}
	floor_and_normalize({out, q});
}

SymbolDist bad_combine(const GaloisField& gf, std::span<const double> d0,
	std::span<const double> d1, gf_elem h)
{
	unsigned q = gf.size();
	SymbolDist out(q), scratch(q);
	bad_combine_into(gf, d0.data(), d1.data(), h, out.data(), scratch.data());
	return out;
}

SymbolDist good_combine(const GaloisField& gf, std::span<const double> d0,
	std::span<const double> d1, gf_elem h, gf_elem u0)
{
	unsigned q = gf.size();
	SymbolDist out(q);
	good_combine_into(gf, d0.data(), d1.data(), h, u0, out.data());
	return out;
}

gf_elem dist_argmax(std::span<const double> d)
{
	std::size_t best = 0;
	for (std::size_t u = 1; u < d.size(); ++u)
		if (d[u] > d[best])
			best = u;
	return static_cast<gf_elem>(best);
}

EntropyTerms entropy_terms(std::span<const double> d, unsigned q_base)
{
	double lq = std::log(static_cast<double>(q_base));
	double h1 = 0.0, h2 = 0.0;
	for (double x : d) {
		if (x <= 0.0)
			continue;
		double l = std::log(x) / lq;
		h1 -= x * l;
		h2 += x * l * l;
	}
	return {h1, h2};
}

} // namespace nbpolar
