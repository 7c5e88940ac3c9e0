#include "speechbelt/dft.hpp"

#include <cmath>

namespace speechbelt {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

using cvec = std::vector<std::complex<double>>;

std::size_t smallest_factor(std::size_t n) {
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

// Recursive decimation in time over the smallest prime factor p:
//   x_r[j] = x[j*p + r],  Y_r = DFT_m(x_r),  m = n/p
//   X[k]   = sum_r exp(-2*pi*i*r*k/n) * Y_r[k mod m]
cvec transform(const cvec& x) {
    const std::size_t n = x.size();
    if (n == 1) return x;

    const std::size_t p = smallest_factor(n);
    const std::size_t m = n / p;

    std::vector<cvec> parts(p);
    if (p < n) {
        for (std::size_t r = 0; r < p; ++r) {
            cvec sub(m);
            for (std::size_t j = 0; j < m; ++j) sub[j] = x[j * p + r];
            parts[r] = transform(sub);
        }
    } else {
        // n prime: direct transform of the single remaining block
        cvec out(n);
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                const double angle = -kTwoPi * static_cast<double>(j * k % n) / static_cast<double>(n);
                acc += x[j] * std::complex<double>(std::cos(angle), std::sin(angle));
            }
            out[k] = acc;
        }
        return out;
    }

    cvec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t r = 0; r < p; ++r) {
            const double angle = -kTwoPi * static_cast<double>(r * k % n) / static_cast<double>(n);
            acc += std::complex<double>(std::cos(angle), std::sin(angle)) * parts[r][k % m];
        }
        out[k] = acc;
    }
    return out;
}

} // namespace

std::vector<std::complex<double>> fourier_transform(std::span<const double> samples) {
    cvec x(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) x[i] = {samples[i], 0.0};
    if (x.empty()) return x;
    return transform(x);
}

} // namespace speechbelt
