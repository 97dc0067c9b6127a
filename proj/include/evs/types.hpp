#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace evs {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// The three model dimensions, in state-vector order.
enum class Dim : int { E = 0, V = 1, S = 2 };

constexpr std::array<Dim, 3> all_dims{Dim::E, Dim::V, Dim::S};

constexpr const char* dim_name(Dim d) {
    switch (d) {
        case Dim::E: return "E";
        case Dim::V: return "V";
        case Dim::S: return "S";
    }
    return "?";
}

constexpr int dim_index(Dim d) { return static_cast<int>(d); }

/// Thrown when an operation's preconditions are violated (bad dimensions,
/// non-finite inputs, invalid configuration values).
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace evs
