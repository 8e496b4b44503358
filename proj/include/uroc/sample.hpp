#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "uroc/error.hpp"

namespace uroc {

namespace detail {

struct ValueIndex {
    std::uint64_t key;  // order-preserving image of the double value
    std::uint64_t idx;
};

// Monotone bijection onto uint64; +0 and -0 collapse so key equality is
// exactly double equality for finite values.
inline std::uint64_t order_key(double d) noexcept {
    if (d == 0.0) return 0x8000000000000000ull;  // both zero signs
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(d);
    return (bits & 0x8000000000000000ull) ? ~bits : (bits | 0x8000000000000000ull);
}

// Stable LSD radix over the 8-bit digits below `top_byte`, ping-ponging
// between the two halves. Constant digits are skipped. Returns true if the
// sorted run ended up back in [first, ...).
inline bool lsd_radix_below(ValueIndex* first, ValueIndex* scratch, std::size_t n,
                            int top_byte) {
    std::array<std::array<std::uint32_t, 256>, 8> hist{};
    for (std::size_t i = 0; i < n; ++i)
        for (int pass = 0; pass < top_byte; ++pass)
            ++hist[static_cast<std::size_t>(pass)][(first[i].key >> (8 * pass)) & 0xFF];
    ValueIndex* src = first;
    ValueIndex* dst = scratch;
    for (int pass = 0; pass < top_byte; ++pass) {
        auto& count = hist[static_cast<std::size_t>(pass)];
        bool constant_digit = false;
        for (const std::uint32_t c : count)
            if (c == n) constant_digit = true;
        if (constant_digit) continue;
        std::uint32_t running = 0;
        for (std::uint32_t& c : count) {
            const std::uint32_t next = running + c;
            c = running;
            running = next;
        }
        const int shift = 8 * pass;
        for (std::size_t i = 0; i < n; ++i) dst[count[(src[i].key >> shift) & 0xFF]++] = src[i];
        std::swap(src, dst);
    }
    return src == first;
}

// Stable in-place (by key, payload carried along) sort of the entries.
// Large inputs are first partitioned on the highest key byte that actually
// varies, so the LSD passes that follow run on cache-resident buckets;
// small inputs use a plain pair sort with the payload as tiebreak. Equal
// keys keep their incoming order either way.
inline void radix_sort_entries(std::vector<ValueIndex>& a) {
    const std::size_t n = a.size();
    if (n < 4096) {
        std::stable_sort(a.begin(), a.end(), [](const ValueIndex& l, const ValueIndex& r) {
            return l.key < r.key;
        });
        return;
    }

    std::array<std::array<std::uint32_t, 256>, 8> hist{};
    for (const ValueIndex& e : a)
        for (int byte = 0; byte < 8; ++byte)
            ++hist[static_cast<std::size_t>(byte)][(e.key >> (8 * byte)) & 0xFF];
    auto digit_constant = [&](int byte) {
        for (const std::uint32_t c : hist[static_cast<std::size_t>(byte)])
            if (c == n) return true;
        return false;
    };
    int top = 7;
    while (top >= 0 && digit_constant(top)) --top;
    if (top < 0) return;  // all keys equal; incoming order is sorted order

    // stable partition on the highest varying byte
    std::vector<ValueIndex> buf(n);
    std::array<std::uint32_t, 257> offset{};
    for (std::size_t b = 0; b < 256; ++b)
        offset[b + 1] = offset[b] + hist[static_cast<std::size_t>(top)][b];
    {
        std::array<std::uint32_t, 256> fill{};
        for (std::size_t b = 0; b < 256; ++b) fill[b] = offset[b];
        const int shift = 8 * top;
        for (const ValueIndex& e : a) buf[fill[(e.key >> shift) & 0xFF]++] = e;
    }
    // per-bucket sort of the bytes below the partition byte; results land in `a`
    for (std::size_t b = 0; b < 256; ++b) {
        const std::size_t lo = offset[b], hi = offset[b + 1];
        const std::size_t len = hi - lo;
        if (len == 0) continue;
        if (top == 0) {  // no bytes left below the partition digit
            std::copy(buf.data() + lo, buf.data() + hi, a.data() + lo);
            continue;
        }
        if (len < 2048) {
            std::stable_sort(buf.data() + lo, buf.data() + hi,
                             [](const ValueIndex& l, const ValueIndex& r) {
                                 return l.key < r.key;
                             });
            std::copy(buf.data() + lo, buf.data() + hi, a.data() + lo);
            continue;
        }
        if (lsd_radix_below(buf.data() + lo, a.data() + lo, len, top))
            std::copy(buf.data() + lo, buf.data() + hi, a.data() + lo);
    }
}

// Stable ascending sort of (value, original index); downstream results
// never depend on input permutation within ties.
inline std::vector<ValueIndex> sorted_by_value(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<ValueIndex> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = {order_key(values[i]), i};
    radix_sort_entries(a);
    return a;
}

}  // namespace detail

/// Validated (feature, outcome) pairs. Immutable after construction.
class PairedSample {
public:
    PairedSample(std::vector<double> features, std::vector<double> outcomes)
        : features_(std::move(features)), outcomes_(std::move(outcomes)) {
        check();
    }

    std::span<const double> features() const noexcept { return features_; }
    std::span<const double> outcomes() const noexcept { return outcomes_; }
    std::size_t size() const noexcept { return features_.size(); }

private:
    void check() const {
        if (features_.size() != outcomes_.size())
            throw Error(ErrorCode::LengthMismatch, "features and outcomes differ in length");
        if (features_.size() < 2)
            throw Error(ErrorCode::TooFewInstances, "need at least two instances");
        for (std::size_t i = 0; i < features_.size(); ++i)
            if (!std::isfinite(features_[i]))
                throw Error(ErrorCode::NonFiniteValue, "non-finite feature value",
                            static_cast<long long>(i + 1));
        for (std::size_t i = 0; i < outcomes_.size(); ++i)
            if (!std::isfinite(outcomes_[i]))
                throw Error(ErrorCode::NonFiniteValue, "non-finite outcome value",
                            static_cast<long long>(i + 1));
        const double first = outcomes_.front();
        bool distinct = false;
        for (double v : outcomes_)
            if (v != first) { distinct = true; break; }
        if (!distinct)
            throw Error(ErrorCode::DegenerateOutcomes, "all outcomes are equal");
    }

    std::vector<double> features_;
    std::vector<double> outcomes_;
};

inline PairedSample validate(std::span<const double> features, std::span<const double> outcomes) {
    return PairedSample(std::vector<double>(features.begin(), features.end()),
                        std::vector<double>(outcomes.begin(), outcomes.end()));
}

/// Unique sorted outcome values z_1 < ... < z_m with per-class counts and
/// the 1-based class index of every instance.
struct ClassDecomposition {
    std::vector<double> unique_outcomes;     // size m
    std::vector<std::int64_t> class_counts;  // size m, each >= 1
    std::vector<std::int32_t> class_of;      // size n, values in [1, m]

    std::int32_t class_count() const noexcept {
        return static_cast<std::int32_t>(unique_outcomes.size());
    }
    std::int64_t size() const noexcept {
        return static_cast<std::int64_t>(class_of.size());
    }
};

inline ClassDecomposition decompose(const PairedSample& sample) {
    const auto y = sample.outcomes();
    const std::size_t n = y.size();
    const std::vector<detail::ValueIndex> order = detail::sorted_by_value(y);

    ClassDecomposition d;
    d.class_of.resize(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && order[j].key == order[i].key) ++j;
        d.unique_outcomes.push_back(y[order[i].idx]);
        d.class_counts.push_back(static_cast<std::int64_t>(j - i));
        const auto cls = static_cast<std::int32_t>(d.unique_outcomes.size());
        for (std::size_t k = i; k < j; ++k) d.class_of[order[k].idx] = cls;
        i = j;
    }
    return d;
}

struct TieGroup {
    double value;
    std::int64_t multiplicity;  // >= 2
};

/// Mid ranks stored exactly as half-integers scaled by two, so the rank-sum
/// identity sum mrk(x_i) = n(n+1)/2 holds without rounding.
struct RankVector {
    std::vector<std::int64_t> mid_rank_x2;  // 2 * mrk(x_i)
    std::vector<TieGroup> tie_groups;       // increasing value order
    std::size_t tie_group_count() const noexcept { return tie_groups.size(); }
    double mid_rank(std::size_t i) const { return 0.5 * static_cast<double>(mid_rank_x2[i]); }
};

inline RankVector mid_rank(std::span<const double> values) {
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(values[i]))
            throw Error(ErrorCode::NonFiniteValue, "non-finite value in rank input",
                        static_cast<long long>(i + 1));
    const std::vector<detail::ValueIndex> order = detail::sorted_by_value(values);

    RankVector r;
    r.mid_rank_x2.resize(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && order[j].key == order[i].key) ++j;
        // run occupies ranks i+1 .. j; shared mid rank is (i+1+j)/2
        const auto x2 = static_cast<std::int64_t>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) r.mid_rank_x2[order[k].idx] = x2;
        if (j - i >= 2)
            r.tie_groups.push_back({values[order[i].idx], static_cast<std::int64_t>(j - i)});
        i = j;
    }
    return r;
}

/// s(x, x') = 1{x < x'} + 1/2 * 1{x = x'}
inline double s_function(double x, double xp) noexcept {
    if (x < xp) return 1.0;
    if (x == xp) return 0.5;
    return 0.0;
}

namespace detail {
// Same comparison scaled by two, for exact integer accumulation.
inline int s2(double x, double xp) noexcept {
    if (x < xp) return 2;
    if (x == xp) return 1;
    return 0;
}
}  // namespace detail

}  // namespace uroc
