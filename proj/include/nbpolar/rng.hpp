/*
Deterministic per-stream random numbers.

Every Monte-Carlo trial draws from its own stream, identified by
(seed, stream_id). Stream ids are logical (derived from trial and pass
indices, never from scheduling), so results are independent of thread
count and identical across runs.
*/

#pragma once

#include "nbpolar/gf.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace nbpolar {

class RngStream {
public:
	RngStream(std::uint64_t seed, std::uint64_t stream_id)
	{
		std::seed_seq seq{
			static_cast<std::uint32_t>(seed),
			static_cast<std::uint32_t>(seed >> 32),
			static_cast<std::uint32_t>(stream_id),
			static_cast<std::uint32_t>(stream_id >> 32),
		};
		eng_.seed(seq);
	}

	std::uint64_t next_u64() { return eng_(); }

	// uniform on [0,1), 53-bit resolution
	double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }

	// standard normal via Box-Muller; explicit so the draw sequence is pinned
	double gaussian()
	{
		if (has_spare_) {
			has_spare_ = false;
			return spare_;
		}
		double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1p-53; // (0,1]
		double u2 = static_cast<double>(eng_() >> 11) * 0x1p-53;
		double r = std::sqrt(-2.0 * std::log(u1));
		double t = 2.0 * std::numbers::pi * u2;
		spare_ = r * std::sin(t);
		has_spare_ = true;
		return r * std::cos(t);
	}

	// uniform symbol in [0,q); q must be a power of two
	gf_elem symbol(unsigned q)
	{
		return static_cast<gf_elem>(eng_() & (q - 1));
	}

private:
	std::mt19937_64 eng_;
	double spare_ = 0.0;
	bool has_spare_ = false;
};

// Stream-id tags keep the id spaces of different passes disjoint
// even when they share a file-level seed.
namespace stream_tag {
constexpr std::uint64_t optimize = 1ull << 56;
constexpr std::uint64_t reliability = 2ull << 56;
constexpr std::uint64_t simulate = 3ull << 56;
constexpr std::uint64_t rates = 4ull << 56;
} // namespace stream_tag

} // namespace nbpolar
