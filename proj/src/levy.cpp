#include "imqft/levy.hpp"

#include <cmath>
#include <stdexcept>

namespace imqft {

std::size_t CumulantTensor::flat(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (int i : idx) f = f * static_cast<std::size_t>(N) + static_cast<std::size_t>(i);
    return f;
}

double CumulantTensor::at(const std::vector<int>& idx) const { return entries[flat(idx)]; }
double& CumulantTensor::at(const std::vector<int>& idx) { return entries[flat(idx)]; }

std::complex<double> levy_psi(const Eigen::VectorXd& t, const LevySpec& levy) {
    std::complex<double> out(0.0, levy.a.dot(t));
    out -= 0.5 * t.dot(levy.sigma2 * t);
    for (const auto& atom : levy.atoms) {
        double phase = t.dot(atom.s);
        out += levy.z * atom.w *
               (std::complex<double>(std::cos(phase) - 1.0, std::sin(phase)));
    }
    return out;
}

CumulantTensor cumulant_tensor(int order, const LevySpec& levy) {
    if (order < 1) throw std::domain_error("cumulant_tensor: order must be >= 1");
    const int N = static_cast<int>(levy.a.size());
    CumulantTensor C;
    C.order = order;
    C.N = N;
    std::size_t size = 1;
    for (int i = 0; i < order; ++i) size *= static_cast<std::size_t>(N);
    C.entries.assign(size, 0.0);

    std::vector<int> idx(order, 0);
    for (std::size_t f = 0; f < size; ++f) {
        // Decode the flat index.
        std::size_t rem = f;
        for (int i = order - 1; i >= 0; --i) {
            idx[i] = static_cast<int>(rem % static_cast<std::size_t>(N));
            rem /= static_cast<std::size_t>(N);
        }
        double val = 0.0;
        if (order == 1) {
            val = levy.a[idx[0]];
            for (const auto& atom : levy.atoms) val += levy.z * atom.w * atom.s[idx[0]];
        } else {
            if (order == 2) val = levy.sigma2(idx[0], idx[1]);
            for (const auto& atom : levy.atoms) {
                double prod = levy.z * atom.w;
                for (int i = 0; i < order; ++i) prod *= atom.s[idx[i]];
                val += prod;
            }
        }
        C.entries[f] = val;
    }
    return C;
}

double scalar_cumulant(int order, const LevySpec& levy) {
    return cumulant_tensor(order, levy).entries.at(0);
}

}  // namespace imqft
