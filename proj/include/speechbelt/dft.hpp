#pragma once

#include <complex>
#include <span>
#include <vector>

namespace speechbelt {

// Discrete Fourier transform of a real sequence at its native length.
// Mixed-radix Cooley-Tukey, so non-power-of-two lengths (48 = 6 s x 8 Hz)
// are transformed without zero padding; prime factors fall back to a
// direct DFT of that factor's size.
std::vector<std::complex<double>> fourier_transform(std::span<const double> samples);

} // namespace speechbelt
