#ifndef IMQFT_PARTITIONS_HPP
#define IMQFT_PARTITIONS_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace imqft {

// One partition of {0,...,n-1}: disjoint nonempty blocks, elements ascending
// within each block, blocks ordered by their smallest element.
using Partition = std::vector<std::vector<int>>;

// All set partitions of {0,...,n-1}; size = Bell number B_n.  1 <= n <= 10.
std::vector<Partition> partitions(int n);

std::uint64_t bell_number(int n);

// Moment <-> cumulant conversion over the partition lattice.  Values are
// indexed by subsets of the n slots; callers supply the per-subset family as a
// callable on the sorted element list.
//
// untruncate: full moment of all n slots from truncated (connected) values.
template <typename T>
T untruncate(int n, const std::function<T(const std::vector<int>&)>& truncated) {
    T total{};
    for (const auto& part : partitions(n)) {
        T prod = T{1.0};
        for (const auto& block : part) prod *= truncated(block);
        total += prod;
    }
    return total;
}

namespace detail {

template <typename T>
T full_from_subset(std::uint32_t mask, const std::function<T(const std::vector<int>&)>& fn) {
    std::vector<int> elems;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) elems.push_back(i);
    return fn(elems);
}

// Recursion over the block containing the smallest element: every partition of
// S has a unique block A with min(S) in A, so F(S) = sum_A T(A) F(S \ A).
template <typename T>
T truncated_of_mask(std::uint32_t mask,
                    const std::function<T(const std::vector<int>&)>& full,
                    std::unordered_map<std::uint32_t, T>& memo);

template <typename T>
T full_via_truncated(std::uint32_t mask,
                     const std::function<T(const std::vector<int>&)>& full,
                     std::unordered_map<std::uint32_t, T>& memo) {
    if (mask == 0) return T{1.0};
    int lowest = 0;
    while (!(mask & (1u << lowest))) ++lowest;
    std::uint32_t rest = mask & ~(1u << lowest);
    T total{};
    // Subsets A of mask containing the lowest element.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        std::uint32_t blockA = sub | (1u << lowest);
        total += truncated_of_mask<T>(blockA, full, memo) *
                 full_via_truncated<T>(mask & ~blockA, full, memo);
        if (sub == 0) break;
    }
    return total;
}

template <typename T>
T truncated_of_mask(std::uint32_t mask,
                    const std::function<T(const std::vector<int>&)>& full,
                    std::unordered_map<std::uint32_t, T>& memo) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    // T(S) = F(S) - sum over partitions of S with more than one block.
    int lowest = 0;
    while (!(mask & (1u << lowest))) ++lowest;
    std::uint32_t rest = mask & ~(1u << lowest);
    T total = full_from_subset<T>(mask, full);
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        std::uint32_t blockA = sub | (1u << lowest);
        if (blockA != mask)
            total -= truncated_of_mask<T>(blockA, full, memo) *
                     full_via_truncated<T>(mask & ~blockA, full, memo);
        if (sub == 0) break;
    }
    memo.emplace(mask, total);
    return total;
}

}  // namespace detail

// truncate: connected value of all n slots from the full moment family.
template <typename T>
T truncate(int n, const std::function<T(const std::vector<int>&)>& full) {
    if (n < 1 || n > 16) throw std::domain_error("truncate: order out of range");
    std::unordered_map<std::uint32_t, T> memo;
    return detail::truncated_of_mask<T>((1u << n) - 1, full, memo);
}

// Exchangeable-family versions matching the order-indexed interface: value of
// a block depends only on its size; input vector is indexed by order 1..n at
// positions 0..n-1.
double untruncate_exchangeable(const std::vector<double>& truncated_by_order, int n);
double truncate_exchangeable(const std::vector<double>& full_by_order, int n);

}  // namespace imqft

#endif
