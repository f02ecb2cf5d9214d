#pragma once

// Exhaustive Maurer-Cartan scans over prime fields: count the module points
// of L^1 twice (residual evaluation and symbolic ideal evaluation, two
// independent code paths), and optionally bucket them into gauge orbits,
// whose count is the number of isomorphism classes of modules with the given
// dimension vector.

#include "mcmod/cochain.hpp"
#include "mcmod/derived.hpp"
#include "mcmod/fields.hpp"
#include "mcmod/graded_algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace mcmod {

struct ScanOptions {
    bool orbits = false;
    std::uint64_t point_budget = 1ull << 20;
    std::uint64_t group_budget = 1ull << 20;
    unsigned threads = 1;
};

struct ScanReport {
    std::uint32_t p = 0;
    long long l1_dimension = 0;
    std::uint64_t total_points = 0;
    std::uint64_t mc_count_residual = 0;
    std::uint64_t mc_count_ideal = 0;
    bool agree = false;
    std::optional<std::uint64_t> orbit_count;
    unsigned threads_used = 1;
};

namespace detail {

inline std::vector<PrimeField::Element> decode_point(std::uint64_t index, std::uint64_t p,
                                                     std::size_t n) {
    std::vector<PrimeField::Element> coords(n);
    for (std::size_t i = 0; i < n; ++i) {
        coords[i] = index % p;
        index /= p;
    }
    return coords;
}

inline std::uint64_t encode_point(const std::vector<PrimeField::Element>& coords, std::uint64_t p) {
    std::uint64_t index = 0;
    for (std::size_t i = coords.size(); i-- > 0;) index = index * p + coords[i];
    return index;
}

// All invertible n x n matrices over F_p, in counting order of the entries.
inline std::vector<Matrix<PrimeField>> invertible_matrices(const PrimeField& k, std::size_t n,
                                                           std::uint64_t budget) {
    const std::uint64_t p = k.modulus();
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < n * n; ++i) {
        cells *= p;
        if (cells > budget)
            throw std::domain_error("gauge group enumeration budget exceeded at block size " +
                                    std::to_string(n));
    }
    std::vector<Matrix<PrimeField>> out;
    for (std::uint64_t code = 0; code < cells; ++code) {
        Matrix<PrimeField> m(k, n, n);
        std::uint64_t rest = code;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                m.at(r, c) = rest % p;
                rest /= p;
            }
        if (rank(m) == n) out.push_back(std::move(m));
    }
    return out;
}

}  // namespace detail

template <class Body>
void run_chunked(std::uint64_t total, unsigned threads, Body&& body) {
    if (threads <= 1 || total < 1024) {
        body(0, total, 0);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t lo = t * chunk;
        const std::uint64_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi, t] { body(lo, hi, t); });
    }
    for (auto& th : pool) th.join();
}

inline ScanReport scan_mc(const std::shared_ptr<const GradedAlgebra<PrimeField>>& alg,
                          const DimensionVector& dims, const ScanOptions& options = {}) {
    const PrimeField& k = alg->field();
    const std::uint64_t p = k.modulus();
    ScanReport report;
    report.p = k.modulus();
    report.l1_dimension = l_dimension(*alg, dims, 1);

    BigInt total = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(report.l1_dimension));
    if (total > BigInt(options.point_budget))
        throw std::domain_error("scan budget exceeded: " + total.str() + " points of L^1 over F_" +
                                std::to_string(p));
    report.total_points = static_cast<std::uint64_t>(total);

    const std::size_t n = static_cast<std::size_t>(report.l1_dimension);
    const unsigned threads = std::max(1u, options.threads);
    report.threads_used = threads;

    const auto ideal = mc_ideal(alg, dims);

    // path 1: residual evaluation; path 2: ideal evaluation; and the MC index
    // list for the orbit pass, assembled chunk by chunk in index order
    std::vector<std::uint64_t> counts_residual(threads, 0), counts_ideal(threads, 0);
    std::vector<std::vector<std::uint64_t>> mc_lists(threads);
    run_chunked(report.total_points, threads, [&](std::uint64_t lo, std::uint64_t hi, unsigned slot) {
        for (std::uint64_t index = lo; index < hi; ++index) {
            const auto coords = detail::decode_point(index, p, n);
            const auto mu = unflatten(alg, dims, 1, coords);
            const bool residual_zero = mc_residual(mu).is_zero();
            if (residual_zero) {
                ++counts_residual[slot];
                mc_lists[slot].push_back(index);
            }
            bool ideal_zero = true;
            for (const auto& g : ideal.generators)
                if (!k.is_zero(g.evaluate(coords))) ideal_zero = false;
            if (ideal_zero) ++counts_ideal[slot];
        }
    });
    std::vector<std::uint64_t> mc_points;
    for (unsigned t = 0; t < threads; ++t) {
        report.mc_count_residual += counts_residual[t];
        report.mc_count_ideal += counts_ideal[t];
        mc_points.insert(mc_points.end(), mc_lists[t].begin(), mc_lists[t].end());
    }
    report.agree = report.mc_count_residual == report.mc_count_ideal;

    if (options.orbits) {
        // enumerate the finite gauge group blockwise, with budget checks
        std::vector<std::vector<Matrix<PrimeField>>> block_choices;
        std::uint64_t group_size = 1;
        for (int j = dims.lo; j <= dims.hi(); ++j) {
            block_choices.push_back(
                detail::invertible_matrices(k, static_cast<std::size_t>(dims.at(j)), options.group_budget));
            group_size *= block_choices.back().size();
            if (group_size > options.group_budget)
                throw std::domain_error("gauge group budget exceeded: |G| > " +
                                        std::to_string(options.group_budget));
        }

        std::vector<GaugeElement<PrimeField>> group;
        group.reserve(group_size);
        std::vector<std::size_t> pick(block_choices.size(), 0);
        for (;;) {
            std::vector<Matrix<PrimeField>> blocks;
            for (std::size_t b = 0; b < pick.size(); ++b) blocks.push_back(block_choices[b][pick[b]]);
            group.emplace_back(dims, std::move(blocks));
            std::size_t b = pick.size();
            while (b > 0 && ++pick[b - 1] == block_choices[b - 1].size()) pick[--b] = 0;
            if (b == 0) break;
        }

        std::vector<bool> visited(mc_points.size(), false);
        std::uint64_t orbits = 0;
        auto find_point = [&](std::uint64_t index) {
            auto it = std::lower_bound(mc_points.begin(), mc_points.end(), index);
            return static_cast<std::size_t>(it - mc_points.begin());
        };
        for (std::size_t start = 0; start < mc_points.size(); ++start) {
            if (visited[start]) continue;
            ++orbits;
            std::vector<std::size_t> stack{start};
            visited[start] = true;
            while (!stack.empty()) {
                const std::size_t cur = stack.back();
                stack.pop_back();
                const auto mu = unflatten(alg, dims, 1, detail::decode_point(mc_points[cur], p, n));
                for (const auto& g : group) {
                    const auto image = detail::encode_point(flatten(gauge_act(g, mu)), p);
                    const std::size_t pos = find_point(image);
                    if (pos >= mc_points.size() || mc_points[pos] != image)
                        throw std::logic_error("gauge action left the Maurer-Cartan locus");
                    if (!visited[pos]) {
                        visited[pos] = true;
                        stack.push_back(pos);
                    }
                }
            }
        }
        report.orbit_count = orbits;
    }
    return report;
}

}  // namespace mcmod
