#include "evs/ndim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace evs {

std::size_t NDimSpec::block_of(std::size_t i) const {
    if (i < blocks[0]) return 0;
    if (i < blocks[0] + blocks[1]) return 1;
    return 2;
}

void NDimSpec::validate() const {
    const std::size_t n = size();
    if (blocks[0] == 0 || blocks[1] == 0 || blocks[2] == 0)
        throw ContractViolation("ndim.blocks must all be positive");
    if (r.size() != n) throw ContractViolation("ndim.r has wrong dimension");
    if (a.size() != n * n) throw ContractViolation("ndim.A has wrong dimension");
    if (labels.size() != n) throw ContractViolation("ndim.labels has wrong dimension");
    if (weights_e.size() != blocks[0] || weights_v.size() != blocks[1] ||
        weights_s.size() != blocks[2])
        throw ContractViolation("ndim.weights have wrong dimensions");
    for (double v : r)
        if (!std::isfinite(v)) throw ContractViolation("ndim.r must be finite");
    for (double v : a)
        if (!std::isfinite(v)) throw ContractViolation("ndim.A must be finite");
    for (const auto* w : {&weights_e, &weights_v, &weights_s})
        for (double v : *w)
            if (!(v > 0.0) || !std::isfinite(v))
                throw ContractViolation("ndim.weights must be strictly positive");
}

std::vector<std::string> default_labels(const std::array<std::size_t, 3>& blocks) {
    std::vector<std::string> labels;
    labels.reserve(blocks[0] + blocks[1] + blocks[2]);
    const char* prefix[3] = {"E", "V", "S"};
    for (int b = 0; b < 3; ++b)
        for (std::size_t k = 1; k <= blocks[b]; ++k)
            labels.push_back(prefix[b] + std::to_string(k));
    return labels;
}

std::vector<double> vector_field_n(const NDimSpec& spec, std::span<const double> x) {
    const std::size_t n = spec.size();
    if (x.size() != n) throw ContractViolation("vector_field_n: state has wrong dimension");
    std::vector<double> dx(n);
    detail::LvField field{spec.r, spec.a, false};
    field(x, dx);
    return dx;
}

Vec3 aggregate(const NDimSpec& spec, std::span<const double> x) {
    if (x.size() != spec.size()) throw ContractViolation("aggregate: state has wrong dimension");
    Vec3 out{0.0, 0.0, 0.0};
    std::size_t at = 0;
    const std::vector<double>* weights[3] = {&spec.weights_e, &spec.weights_v, &spec.weights_s};
    for (int b = 0; b < 3; ++b) {
        double sum = 0.0;
        for (std::size_t k = 0; k < spec.blocks[b]; ++k) sum += (*weights[b])[k] * x[at + k];
        out[b] = sum;
        at += spec.blocks[b];
    }
    return out;
}

NDimSpec extract_subsystem(const NDimSpec& spec, std::span<const std::size_t> indices) {
    if (indices.empty()) throw ContractViolation("extract_subsystem: empty selection");
    const std::size_t n = spec.size();
    for (std::size_t i : indices)
        if (i >= n) throw ContractViolation("extract_subsystem: index out of range");

    NDimSpec out;
    out.blocks = {0, 0, 0};
    const std::size_t m = indices.size();
    out.r.reserve(m);
    out.labels.reserve(m);
    out.a.resize(m * m);
    for (std::size_t ii = 0; ii < m; ++ii) {
        const std::size_t i = indices[ii];
        out.r.push_back(spec.r[i]);
        out.labels.push_back(spec.labels[i]);
        const std::size_t b = spec.block_of(i);
        out.blocks[b] += 1;
        const std::size_t base = b == 0 ? 0 : (b == 1 ? spec.blocks[0] : spec.blocks[0] + spec.blocks[1]);
        const std::vector<double>& w =
            b == 0 ? spec.weights_e : (b == 1 ? spec.weights_v : spec.weights_s);
        (b == 0 ? out.weights_e : b == 1 ? out.weights_v : out.weights_s).push_back(w[i - base]);
        for (std::size_t jj = 0; jj < m; ++jj) out.a[ii * m + jj] = spec.a_at(i, indices[jj]);
    }
    out.validate();
    return out;
}

namespace {

// mt19937_64 output mapped to [0, 1); fully specified by the standard, so
// ensembles reproduce across platforms.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<NDimSpec> random_ensemble(const std::array<std::size_t, 3>& blocks,
                                      std::size_t count, std::uint64_t seed,
                                      double coupling_scale) {
    if (!(coupling_scale > 0.0)) throw ContractViolation("coupling_scale must be > 0");
    std::mt19937_64 rng(seed);
    const std::size_t n = blocks[0] + blocks[1] + blocks[2];

    std::vector<NDimSpec> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        NDimSpec spec;
        spec.blocks = blocks;
        spec.labels = default_labels(blocks);
        spec.weights_e.assign(blocks[0], 1.0);
        spec.weights_v.assign(blocks[1], 1.0);
        spec.weights_s.assign(blocks[2], 1.0);
        spec.r.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double magnitude = 0.05 + 0.1 * uniform01(rng);
            spec.r[i] = spec.block_of(i) == 1 ? magnitude : -magnitude;
        }
        spec.a.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) spec.a[i * n + j] = (2.0 * uniform01(rng) - 1.0) * coupling_scale;
        spec.validate();
        out.push_back(std::move(spec));
    }
    return out;
}

Trajectory simulate_n(const NDimSpec& spec, std::span<const double> x0,
                      const IntegratorConfig& cfg) {
    spec.validate();
    return detail::simulate_lv(spec.r, spec.a, x0, cfg);
}

Trajectory aggregate_trajectory(const NDimSpec& spec, const Trajectory& traj) {
    Trajectory out;
    out.dim = 3;
    out.times = traj.times;
    out.states.reserve(traj.rows() * 3);
    for (std::size_t i = 0; i < traj.rows(); ++i) {
        const Vec3 agg = aggregate(spec, traj.state(i));
        out.states.insert(out.states.end(), agg.begin(), agg.end());
    }
    return out;
}

}  // namespace evs
