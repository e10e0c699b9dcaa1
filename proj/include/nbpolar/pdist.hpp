/*
Probability distributions over GF(q) symbols and the kernel combine rules.

All distributions live in the linear domain. Combines clamp entries below
1e-300 and renormalize, so downstream products never hit exact zeros.
*/

#pragma once

#include "nbpolar/gf.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nbpolar {

using SymbolDist = std::vector<double>;

constexpr double kDistFloor = 1e-300;

// In-place Walsh-Hadamard transform; size must be a power of two.
// Self-inverse up to a factor of the size.
void wht_inplace(std::span<double> v);

// c(u) = sum_w a(w) b(u xor w), reference O(q^2) form
SymbolDist xor_conv_naive(std::span<const double> a, std::span<const double> b);

// same convolution via pointwise product in the WHT domain
SymbolDist xor_conv_fast(std::span<const double> a, std::span<const double> b);

// out(u) = d(h*u)
SymbolDist permute_by_multiplier(const GaloisField& gf, std::span<const double> d,
	gf_elem h);

// clamp below kDistFloor and renormalize to probability mass 1
void floor_and_normalize(std::span<double> d);

// Posterior of u0 where the pair (u0, u1) was sent as (u0+u1, h*u1)
// and the two outputs were observed through channels with posteriors
// d0 and d1: the xor-convolution of d0 with the h-depermuted d1.
SymbolDist bad_combine(const GaloisField& gf, std::span<const double> d0,
	std::span<const double> d1, gf_elem h);

// Posterior of u1 given the decoded (or true) u0. Falls back to uniform
// if the conditioning mass vanishes.
SymbolDist good_combine(const GaloisField& gf, std::span<const double> d0,
	std::span<const double> d1, gf_elem h, gf_elem u0);

// In-place forms for the decoder hot path. `scratch` must not alias the rest.
void bad_combine_into(const GaloisField& gf, const double* d0, const double* d1,
	gf_elem h, double* out, double* scratch);
void good_combine_into(const GaloisField& gf, const double* d0, const double* d1,
	gf_elem h, gf_elem u0, double* out);

// smallest index among maxima
gf_elem dist_argmax(std::span<const double> d);

struct EntropyTerms {
	double h1; // -sum p log_q p
	double h2; // +sum p (log_q p)^2
};

// Entropy and second log-moment in base-q logs; 0 log 0 = 0.
EntropyTerms entropy_terms(std::span<const double> d, unsigned q_base);

// combine-call counter, for complexity assertions in tests
std::uint64_t combine_op_count();
void reset_combine_op_count();

} // namespace nbpolar
