#ifndef IMQFT_FFT_HPP
#define IMQFT_FFT_HPP

#include <complex>
#include <vector>

namespace imqft {

// In-place radix-2 complex FFT on a periodic lattice with L sites per axis,
// L a power of two.  Data is stored row-major: site index = sum_mu n_mu * L^(d-1-mu).
class LatticeFft {
public:
    LatticeFft(int d, int L);

    // sign = -1: forward (e^{-ikx}), sign = +1: inverse without the 1/V factor.
    void transform(std::vector<std::complex<double>>& data, int sign) const;

    void forward(std::vector<std::complex<double>>& data) const { transform(data, -1); }
    // Inverse including the 1/V normalization.
    void inverse(std::vector<std::complex<double>>& data) const;

    int dim() const { return d_; }
    int extent() const { return L_; }
    std::size_t volume() const { return volume_; }

private:
    void fft1d(std::complex<double>* line) const;

    int d_;
    int L_;
    std::size_t volume_;
    std::vector<std::complex<double>> twiddle_;  // e^{-2 pi i j / L}, j < L/2
    std::vector<int> bitrev_;
};

}  // namespace imqft

#endif
