#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evs/integrate.hpp"
#include "evs/types.hpp"

namespace evs {

/// Block-structured N-dimensional generalization: n1 economic, n2
/// environmental, n3 social factors with full N-by-N coupling and strictly
/// positive aggregation weights per block.
struct NDimSpec {
    std::array<std::size_t, 3> blocks{1, 1, 1};
    std::vector<std::string> labels;  // block-ordered E1.., V1.., S1..
    std::vector<double> r;
    std::vector<double> a;  // row-major N*N
    std::vector<double> weights_e;
    std::vector<double> weights_v;
    std::vector<double> weights_s;

    std::size_t size() const { return blocks[0] + blocks[1] + blocks[2]; }
    /// Block of factor index i (0 = economic, 1 = environmental, 2 = social).
    std::size_t block_of(std::size_t i) const;
    double a_at(std::size_t i, std::size_t j) const { return a[i * size() + j]; }

    /// Throws ContractViolation on inconsistent dimensions, non-finite
    /// entries, or non-positive weights.
    void validate() const;
};

/// Default block-ordered labels E1..En1, V1..Vn2, S1..Sn3.
std::vector<std::string> default_labels(const std::array<std::size_t, 3>& blocks);

/// Componentwise LV field over the full N-by-N coupling.
std::vector<double> vector_field_n(const NDimSpec& spec, std::span<const double> x);

/// Weighted block sums (E, V, S) with the stored weights.
Vec3 aggregate(const NDimSpec& spec, std::span<const double> x);

/// Restriction of the spec to an index subset: r, A, labels and weights are
/// sliced and the block counts recomputed from the surviving factors.
NDimSpec extract_subsystem(const NDimSpec& spec, std::span<const std::size_t> indices);

/// Deterministic pseudo-random ensemble: growth-rate signs follow the block
/// template (economic and social negative, environmental positive) with
/// magnitudes in [0.05, 0.15); off-diagonal couplings uniform in
/// [-coupling_scale, coupling_scale); zero diagonal. Reproducible from seed.
std::vector<NDimSpec> random_ensemble(const std::array<std::size_t, 3>& blocks,
                                      std::size_t count, std::uint64_t seed,
                                      double coupling_scale);

/// Integrates the N-dimensional system with the shared engine.
Trajectory simulate_n(const NDimSpec& spec, std::span<const double> x0,
                      const IntegratorConfig& cfg);

/// Applies `aggregate` to every recorded row, yielding a 3-column (E, V, S)
/// trajectory on the same time grid. persistence_check applies to it.
Trajectory aggregate_trajectory(const NDimSpec& spec, const Trajectory& traj);

}  // namespace evs
