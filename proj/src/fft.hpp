/*
Minimal iterative radix-2 complex FFT, sizes a power of two.
Used for circular correlation; precomputed twiddles per size.
*/

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace nbpolar::detail {

class Fft {
public:
	explicit Fft(std::size_t n) : n_(n), rev_(n), tw_(n / 2)
	{
		int bits = 0;
		while ((std::size_t{1} << bits) < n)
			++bits;
		for (std::size_t i = 0; i < n; ++i) {
			std::size_t r = 0;
			for (int b = 0; b < bits; ++b)
				r |= ((i >> b) & 1) << (bits - 1 - b);
			rev_[i] = r;
		}
		for (std::size_t k = 0; k < n / 2; ++k) {
			double ang = -2.0 * std::numbers::pi * static_cast<double>(k)
				/ static_cast<double>(n);
			tw_[k] = {std::cos(ang), std::sin(ang)};
		}
	}

	std::size_t size() const { return n_; }

	void forward(std::complex<double>* a) const { run(a, false); }
	void inverse(std::complex<double>* a) const // unscaled
	{
		run(a, true);
	}

private:
	void run(std::complex<double>* a, bool inv) const
	{
		for (std::size_t i = 0; i < n_; ++i)
			if (i < rev_[i])
				std::swap(a[i], a[rev_[i]]);
		for (std::size_t len = 2; len <= n_; len <<= 1) {
			std::size_t step = n_ / len;
			for (std::size_t i = 0; i < n_; i += len) {
				for (std::size_t j = 0; j < len / 2; ++j) {
					std::complex<double> w = tw_[j * step];
					if (inv)
						w = std::conj(w);
					std::complex<double> u = a[i + j];
					std::complex<double> v = a[i + j + len / 2] * w;
					a[i + j] = u + v;
					a[i + j + len / 2] = u - v;
				}
			}
		}
	}

	std::size_t n_;
	std::vector<std::size_t> rev_;
	std::vector<std::complex<double>> tw_;
};

} // namespace nbpolar::detail
