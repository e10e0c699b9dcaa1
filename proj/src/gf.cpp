#include "nbpolar/gf.hpp"

#include <stdexcept>

namespace nbpolar {

std::uint32_t default_primitive_poly(int degree)
{
	static const std::uint32_t table[13] = {
		0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83,
		0x11D, 0x211, 0x409, 0x805, 0x1053,
	};
	if (degree < 1 || degree > 12)
		throw std::invalid_argument("field degree must be in 1..12");
	return table[degree];
}

GaloisField::GaloisField(int degree)
	: GaloisField(degree, default_primitive_poly(degree))
{
}

GaloisField::GaloisField(int degree, std::uint32_t prim_poly)
	: p_(degree), q_(1u << degree), poly_(prim_poly)
{
	if (degree < 1 || degree > 12)
		throw std::invalid_argument("field degree must be in 1..12");
	if (prim_poly >> (degree + 1) || !(prim_poly >> degree & 1) || !(prim_poly & 1))
		throw std::invalid_argument("polynomial degree mismatch");

	alog_.assign(q_ - 1, 0);
	log_.assign(q_, 0);
	std::uint32_t b = 1;
	for (unsigned i = 0; i < q_ - 1; ++i) {
		if (b == 1 && i > 0)
			throw std::invalid_argument("polynomial is not primitive (short period)");
		alog_[i] = static_cast<gf_elem>(b);
		log_[b] = static_cast<std::uint16_t>(i);
		b <<= 1;
		if (b & q_)
			b ^= prim_poly;
	}
	if (b != 1)
		throw std::invalid_argument("polynomial is not primitive");
}

gf_elem GaloisField::inv(gf_elem a) const
{
	if (!a)
		throw std::domain_error("zero has no inverse");
	return alog_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

} // namespace nbpolar
