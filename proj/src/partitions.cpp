#include "imqft/partitions.hpp"

namespace imqft {

std::vector<Partition> partitions(int n) {
    if (n < 1 || n > 10) throw std::domain_error("partitions: order must be in [1, 10]");
    std::vector<Partition> out;
    Partition current;
    // Place elements 0..n-1 in order; element i goes into an existing block or
    // opens a new one.  This yields blocks ascending and ordered by minimum.
    std::function<void(int)> place = [&](int i) {
        if (i == n) {
            out.push_back(current);
            return;
        }
        // Index-based: recursion below appends/removes blocks, which would
        // invalidate range-for iterators.
        std::size_t nblocks = current.size();
        for (std::size_t b = 0; b < nblocks; ++b) {
            current[b].push_back(i);
            place(i + 1);
            current[b].pop_back();
        }
        current.push_back({i});
        place(i + 1);
        current.pop_back();
    };
    place(0);
    return out;
}

std::uint64_t bell_number(int n) {
    // Bell triangle.
    std::vector<std::vector<std::uint64_t>> tri{{1}};
    for (int r = 1; r <= n; ++r) {
        std::vector<std::uint64_t> row{tri.back().back()};
        for (std::uint64_t v : tri.back()) row.push_back(row.back() + v);
        tri.push_back(std::move(row));
    }
    return tri[n][0];
}

double untruncate_exchangeable(const std::vector<double>& truncated_by_order, int n) {
    if (static_cast<int>(truncated_by_order.size()) < n)
        throw std::invalid_argument("untruncate: truncated values missing for some order <= n");
    std::function<double(const std::vector<int>&)> fn =
        [&](const std::vector<int>& block) { return truncated_by_order[block.size() - 1]; };
    return untruncate<double>(n, fn);
}

double truncate_exchangeable(const std::vector<double>& full_by_order, int n) {
    if (static_cast<int>(full_by_order.size()) < n)
        throw std::invalid_argument("truncate: full values missing for some order <= n");
    std::function<double(const std::vector<int>&)> fn =
        [&](const std::vector<int>& block) { return full_by_order[block.size() - 1]; };
    return truncate<double>(n, fn);
}

}  // namespace imqft
