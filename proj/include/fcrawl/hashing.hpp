#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fcrawl {

// Multiplicative hash onto [0, 2^m): take the low w bits of pi*x, keep the
// top m of them. pi must be an odd prime, 0 < m < w <= 64.
struct HashParams {
    // 31-bit prime near 2^31/phi: a Fibonacci-style multiplier, so runs of
    // consecutive ids (vocabulary ids arrive in first-seen order) spread
    // across buckets instead of clustering. 2^31-1 would map ids i and i+1
    // to the same bucket 7 times out of 8 at the default w/m.
    std::uint64_t pi = 1327217909ULL;
    unsigned w = 15;
    unsigned m = 12;

    void validate() const {
        if (w == 0 || w > 64 || m == 0 || m >= w)
            throw std::invalid_argument("hash params: need 0 < m < w <= 64");
        if ((pi & 1) == 0)
            throw std::invalid_argument("hash params: pi must be odd");
    }

    std::uint32_t dims() const { return static_cast<std::uint32_t>(1) << m; }
};

inline std::uint32_t hash_index(std::uint64_t x, const HashParams& p) {
    unsigned __int128 prod = static_cast<unsigned __int128>(p.pi) * x;
    unsigned __int128 mask = (static_cast<unsigned __int128>(1) << p.w) - 1;
    std::uint64_t low = static_cast<std::uint64_t>(prod & mask);
    return static_cast<std::uint32_t>(low >> (p.w - p.m));
}

// How many ids in [0, d) land in each output bucket. Grown incrementally as
// the vocabulary grows, so projections stay O(nonzeros).
class ProjectionTable {
public:
    explicit ProjectionTable(HashParams params) : params_(params), pop_(params.dims(), 0) {
        params_.validate();
    }

    void extend(std::uint64_t new_d) {
        for (; d_ < new_d; ++d_) pop_[hash_index(d_, params_)]++;
    }

    std::uint64_t d() const { return d_; }
    const HashParams& params() const { return params_; }
    const std::vector<std::uint32_t>& populations() const { return pop_; }

private:
    HashParams params_;
    std::vector<std::uint32_t> pop_;
    std::uint64_t d_ = 0;
};

using SparseVec = std::vector<std::pair<std::uint32_t, double>>;  // sorted by id

// Mean-pooling projection: each output position averages every input
// coordinate hashed onto it (zero coordinates included via the bucket
// population); positions nothing hashes to stay exactly 0.
inline std::vector<double> project(const SparseVec& bow, const ProjectionTable& table) {
    std::vector<double> out(table.params().dims(), 0.0);
    for (const auto& [id, count] : bow) {
        if (id >= table.d())
            throw std::out_of_range("project: id outside projection table");
        out[hash_index(id, table.params())] += count;
    }
    const auto& pop = table.populations();
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = pop[j] ? out[j] / pop[j] : 0.0;
    return out;
}

}  // namespace fcrawl
