/*
Galois field GF(2^p) arithmetic via log/antilog tables.
*/

#pragma once

#include <cstdint>
#include <vector>

namespace nbpolar {

using gf_elem = std::uint16_t;

// Lexicographically smallest primitive polynomial of each degree 1..12,
// including the leading term (e.g. degree 4: 0x13 = x^4 + x + 1).
std::uint32_t default_primitive_poly(int degree);

class GaloisField {
public:
	explicit GaloisField(int degree);
	GaloisField(int degree, std::uint32_t prim_poly);

	int degree() const { return p_; }
	unsigned size() const { return q_; }
	std::uint32_t primitive_poly() const { return poly_; }

	static gf_elem add(gf_elem a, gf_elem b) { return a ^ b; }

	gf_elem mul(gf_elem a, gf_elem b) const
	{
		if (!a || !b)
			return 0;
		unsigned s = log_[a] + log_[b];
		if (s >= q_ - 1)
			s -= q_ - 1;
		return alog_[s];
	}

	gf_elem inv(gf_elem a) const;

	// alog(i) = alpha^i for the root alpha of the primitive polynomial
	gf_elem alog(unsigned i) const { return alog_[i % (q_ - 1)]; }
	unsigned log(gf_elem a) const { return log_[a]; }

private:
	int p_;
	unsigned q_;
	std::uint32_t poly_;
	std::vector<gf_elem> alog_;
	std::vector<std::uint16_t> log_;
};

} // namespace nbpolar
