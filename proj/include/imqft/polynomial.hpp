#ifndef IMQFT_POLYNOMIAL_HPP
#define IMQFT_POLYNOMIAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace imqft {

// One monomial entry of an N x N matrix polynomial in a d-vector k.
struct MonoTerm {
    int row = 0;
    int col = 0;
    std::vector<int> powers;  // exponent per spacetime component, size d
    std::complex<double> coeff;
};

// Q(k): N x N matrix with polynomial entries (the covariant polynomial of a
// single momentum argument).
class MatrixPolynomial {
public:
    MatrixPolynomial() = default;
    MatrixPolynomial(int d, int N, std::vector<MonoTerm> terms);

    static MatrixPolynomial identity(int d, int N);

    Eigen::MatrixXcd eval(const Eigen::VectorXd& k) const;

    // Analytic continuation k^0 -> i k^0: multiply each coefficient by i^r with
    // r the time-component degree.
    MatrixPolynomial continued() const;

    int dim() const { return d_; }
    int components() const { return N_; }
    int degree() const;
    bool is_constant() const { return degree() == 0; }
    bool is_identity() const;
    const std::vector<MonoTerm>& terms() const { return terms_; }

private:
    int d_ = 0;
    int N_ = 0;
    std::vector<MonoTerm> terms_;
};

// Symmetric multi-argument polynomial used as a user-supplied Q^M_n: each term
// carries a component index per argument and exponents per (argument,
// spacetime component).
struct NPolyTerm {
    std::vector<int> alphas;               // field index per argument
    std::vector<std::vector<int>> powers;  // [argument][spacetime component]
    std::complex<double> coeff;
};

class NPolynomial {
public:
    NPolynomial() = default;
    NPolynomial(int n_args, int d, int N, std::vector<NPolyTerm> terms);

    std::complex<double> eval(const std::vector<Eigen::VectorXd>& ks,
                              const std::vector<int>& alphas) const;

    int n_args() const { return n_; }
    int degree_in_argument(int arg) const;
    int max_degree_per_argument() const;

private:
    int n_ = 0;
    int d_ = 0;
    int N_ = 0;
    std::vector<NPolyTerm> terms_;
};

}  // namespace imqft

#endif
