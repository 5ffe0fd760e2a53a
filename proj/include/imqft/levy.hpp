#ifndef IMQFT_LEVY_HPP
#define IMQFT_LEVY_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "imqft/model.hpp"

namespace imqft {

// Fully symmetric real tensor of shape N^order holding the noise cumulants
// C_{beta_1...beta_n}.
struct CumulantTensor {
    int order = 0;
    int N = 0;
    std::vector<double> entries;  // row-major over the index tuple

    double at(const std::vector<int>& idx) const;
    double& at(const std::vector<int>& idx);
    std::size_t flat(const std::vector<int>& idx) const;
};

// psi(t) = i a.t - t.sigma2 t / 2 + z sum_i w_i (e^{i t.s_i} - 1)
std::complex<double> levy_psi(const Eigen::VectorXd& t, const LevySpec& levy);

// Closed-form cumulants: order 1: a + z sum w s; order 2: sigma2 + z sum w s s;
// order n >= 3: z sum_i w_i s_i^{otimes n}.
CumulantTensor cumulant_tensor(int order, const LevySpec& levy);

// Scalar convenience for N = 1 models.
double scalar_cumulant(int order, const LevySpec& levy);

}  // namespace imqft

#endif
