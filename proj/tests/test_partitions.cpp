#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "imqft/partitions.hpp"

using namespace imqft;

TEST_CASE("partition counts are Bell numbers") {
    CHECK(partitions(1).size() == 1);
    CHECK(partitions(2).size() == 2);
    CHECK(partitions(3).size() == 5);
    CHECK(partitions(4).size() == 15);
    CHECK(partitions(5).size() == 52);
    CHECK(partitions(6).size() == 203);
    for (int n = 1; n <= 8; ++n) CHECK(bell_number(n) == partitions(n).size());
}

TEST_CASE("partition blocks cover 0..n-1 disjointly") {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& part : partitions(n)) {
            std::vector<int> seen(n, 0);
            for (const auto& block : part) {
                CHECK_FALSE(block.empty());
                for (int el : block) {
                    REQUIRE(el >= 0);
                    REQUIRE(el < n);
                    ++seen[el];
                }
            }
            for (int c : seen) CHECK(c == 1);
        }
    }
}

TEST_CASE("partitions rejects out-of-range order") {
    CHECK_THROWS_AS(partitions(0), std::domain_error);
    CHECK_THROWS_AS(partitions(11), std::domain_error);
}

TEST_CASE("truncate then untruncate round-trips") {
    // Synthetic full-moment family; moments -> cumulants -> moments must be
    // the identity at every order.
    std::function<double(const std::vector<int>&)> full =
        [](const std::vector<int>& idx) {
            double v = 1.0;
            for (int i : idx) v *= 1.1 + 0.3 * i;
            return v + 0.25 * idx.size();
        };
    for (int n = 1; n <= 6; ++n) {
        std::function<double(const std::vector<int>&)> trunc =
            [&](const std::vector<int>& block) {
                // Connected value of the slots in `block`: relabel to a dense
                // 0..k-1 problem over the same underlying labels.
                std::function<double(const std::vector<int>&)> sub =
                    [&](const std::vector<int>& pos) {
                        std::vector<int> labels;
                        for (int p : pos) labels.push_back(block[p]);
                        return full(labels);
                    };
                return truncate<double>((int)block.size(), sub);
            };
        double back = untruncate<double>(n, trunc);
        std::vector<int> all;
        for (int i = 0; i < n; ++i) all.push_back(i);
        CHECK(back == doctest::Approx(full(all)).epsilon(1e-12));
    }
}

namespace {

// Moments of a centered gaussian vector: sum over Wick pairings.
double wick_moment(const Eigen::MatrixXd& K, const std::vector<int>& labels) {
    if (labels.empty()) return 1.0;
    if (labels.size() % 2 == 1) return 0.0;
    double acc = 0.0;
    for (size_t j = 1; j < labels.size(); ++j) {
        std::vector<int> rest;
        for (size_t t = 1; t < labels.size(); ++t)
            if (t != j) rest.push_back(labels[t]);
        acc += K(labels[0], labels[j]) * wick_moment(K, rest);
    }
    return acc;
}

double gauss_cumulant(const Eigen::MatrixXd& K, const std::vector<int>& labels) {
    std::function<double(const std::vector<int>&)> full =
        [&](const std::vector<int>& pos) {
            std::vector<int> lab;
            for (int p : pos) lab.push_back(labels[p]);
            return wick_moment(K, lab);
        };
    return truncate<double>((int)labels.size(), full);
}

}  // namespace

TEST_CASE("gaussian truncation: covariance survives, higher orders vanish") {
    Eigen::MatrixXd K(3, 3);
    K << 2.0, 0.5, 0.1, 0.5, 1.0, 0.3, 0.1, 0.3, 1.5;
    CHECK(gauss_cumulant(K, {0, 1}) == doctest::Approx(0.5));
    CHECK(gauss_cumulant(K, {2, 2}) == doctest::Approx(1.5));
    CHECK(gauss_cumulant(K, {0, 1, 2}) == doctest::Approx(0.0));
    CHECK(std::abs(gauss_cumulant(K, {0, 0, 1, 2})) < 1e-10);
    CHECK(std::abs(gauss_cumulant(K, {0, 1, 1, 2, 2, 0})) < 1e-9);
}

TEST_CASE("second truncated moment is moment minus product of means") {
    std::function<double(const std::vector<int>&)> full =
        [](const std::vector<int>& idx) {
            double mu = 1.0;
            for (int i : idx) mu *= (i + 1.0);
            return mu + (idx.size() == 2 ? 0.7 : 0.0);
        };
    CHECK(truncate<double>(2, full) == doctest::Approx(0.7));
}

TEST_CASE("exchangeable helpers reproduce Poisson cumulants") {
    // Poisson(2) moments via m_{k+1} = lambda sum_j binom(k,j) m_j.
    std::vector<double> m(7, 0.0);
    m[0] = 1.0;
    for (int k = 0; k < 6; ++k) {
        double acc = 0.0, binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            acc += binom * m[j];
            binom *= double(k - j) / (j + 1);
        }
        m[k + 1] = 2.0 * acc;
    }
    // Order-indexed input: position i-1 holds order i.
    std::vector<double> by_order(m.begin() + 1, m.end());
    std::vector<double> cum_by_order(6, 2.0);  // all Poisson cumulants = lambda
    for (int n = 1; n <= 6; ++n) {
        CHECK(truncate_exchangeable(by_order, n) == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(untruncate_exchangeable(cum_by_order, n) ==
              doctest::Approx(m[n]).epsilon(1e-10));
    }
}
