#include "imqft/polynomial.hpp"

#include <stdexcept>

namespace imqft {

MatrixPolynomial::MatrixPolynomial(int d, int N, std::vector<MonoTerm> terms)
    : d_(d), N_(N), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (t.row < 0 || t.row >= N || t.col < 0 || t.col >= N)
            throw std::invalid_argument("MatrixPolynomial: component index out of range");
        if (static_cast<int>(t.powers.size()) != d)
            throw std::invalid_argument("MatrixPolynomial: exponent vector size != d");
        for (int p : t.powers)
            if (p < 0) throw std::invalid_argument("MatrixPolynomial: negative exponent");
    }
}

MatrixPolynomial MatrixPolynomial::identity(int d, int N) {
    std::vector<MonoTerm> terms;
    for (int i = 0; i < N; ++i)
        terms.push_back({i, i, std::vector<int>(d, 0), {1.0, 0.0}});
    return MatrixPolynomial(d, N, std::move(terms));
}

Eigen::MatrixXcd MatrixPolynomial::eval(const Eigen::VectorXd& k) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N_, N_);
    for (const auto& t : terms_) {
        double mono = 1.0;
        for (int mu = 0; mu < d_; ++mu)
            for (int p = 0; p < t.powers[mu]; ++p) mono *= k[mu];
        out(t.row, t.col) += t.coeff * mono;
    }
    return out;
}

MatrixPolynomial MatrixPolynomial::continued() const {
    std::vector<MonoTerm> terms = terms_;
    const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (auto& t : terms) t.coeff *= ipow[t.powers[0] % 4];
    return MatrixPolynomial(d_, N_, std::move(terms));
}

int MatrixPolynomial::degree() const {
    int deg = 0;
    for (const auto& t : terms_) {
        int td = 0;
        for (int p : t.powers) td += p;
        if (td > deg) deg = td;
    }
    return deg;
}

bool MatrixPolynomial::is_identity() const {
    Eigen::MatrixXcd m = eval(Eigen::VectorXd::Zero(d_));
    if (!m.isApprox(Eigen::MatrixXcd::Identity(N_, N_), 1e-15)) return false;
    return degree() == 0;
}

NPolynomial::NPolynomial(int n_args, int d, int N, std::vector<NPolyTerm> terms)
    : n_(n_args), d_(d), N_(N), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (static_cast<int>(t.alphas.size()) != n_ ||
            static_cast<int>(t.powers.size()) != n_)
            throw std::invalid_argument("NPolynomial: term arity mismatch");
        for (int a : t.alphas)
            if (a < 0 || a >= N_) throw std::invalid_argument("NPolynomial: bad component index");
        for (const auto& pw : t.powers)
            if (static_cast<int>(pw.size()) != d_)
                throw std::invalid_argument("NPolynomial: exponent vector size != d");
    }
}

std::complex<double> NPolynomial::eval(const std::vector<Eigen::VectorXd>& ks,
                                       const std::vector<int>& alphas) const {
    if (static_cast<int>(ks.size()) != n_ || static_cast<int>(alphas.size()) != n_)
        throw std::invalid_argument("NPolynomial::eval: arity mismatch");
    std::complex<double> out = 0.0;
    for (const auto& t : terms_) {
        bool match = true;
        for (int j = 0; j < n_ && match; ++j) match = (t.alphas[j] == alphas[j]);
        if (!match) continue;
        double mono = 1.0;
        for (int j = 0; j < n_; ++j)
            for (int mu = 0; mu < d_; ++mu)
                for (int p = 0; p < t.powers[j][mu]; ++p) mono *= ks[j][mu];
        out += t.coeff * mono;
    }
    return out;
}

int NPolynomial::degree_in_argument(int arg) const {
    int deg = 0;
    for (const auto& t : terms_) {
        int td = 0;
        for (int p : t.powers[arg]) td += p;
        if (td > deg) deg = td;
    }
    return deg;
}

int NPolynomial::max_degree_per_argument() const {
    int deg = 0;
    for (int j = 0; j < n_; ++j) deg = std::max(deg, degree_in_argument(j));
    return deg;
}

}  // namespace imqft
