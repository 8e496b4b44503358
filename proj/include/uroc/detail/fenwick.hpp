#pragma once

#include <cstdint>
#include <vector>

namespace uroc::detail {

// Fenwick (binary indexed) tree over int64 counts, 0-based external indices.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : n_(n), tree_(n + 1, 0) {}

    void add(std::size_t i, std::int64_t delta) {
        for (std::size_t k = i + 1; k <= n_; k += k & (~k + 1))
            tree_[k] += delta;
    }

    // sum of elements [0, i]
    std::int64_t prefix(std::size_t i) const {
        std::int64_t s = 0;
        for (std::size_t k = i + 1; k > 0; k -= k & (~k + 1))
            s += tree_[k];
        return s;
    }

    // sum of elements [0, i); prefix_exclusive(0) == 0
    std::int64_t prefix_exclusive(std::size_t i) const {
        return i == 0 ? 0 : prefix(i - 1);
    }

    std::int64_t total() const { return n_ == 0 ? 0 : prefix(n_ - 1); }

private:
    std::size_t n_;
    std::vector<std::int64_t> tree_;
};

}  // namespace uroc::detail
