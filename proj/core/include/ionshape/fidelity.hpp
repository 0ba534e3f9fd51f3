#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>

#include "ionshape/gate.hpp"
#include "ionshape/thermal.hpp"

namespace ionshape {

// Two parallel gates on disjoint pairs, each pair inside one sub-crystal.
struct GateLayout {
    std::array<std::pair<int, int>, 2> pairs_1based{};

    std::array<int, 4> qubit_ions_1based() const {
        return {pairs_1based[0].first, pairs_1based[0].second,
                pairs_1based[1].first, pairs_1based[1].second};
    }
    void validate(int n_ions) const;
};

// 4-qubit sigma^z basis enumeration: slot order (m1, n1, m2, n2), +1 before
// -1, m1 most significant. Index 0 is |++++>, index 15 is |---->.
inline double spin_sign(int basis_index, int qubit_slot) {
    return ((basis_index >> (3 - qubit_slot)) & 1) ? -1.0 : 1.0;
}

// Thermal gate fidelity of the two parallel conditional phase flips.
// bare_coeffs: displacement matrix in the bare-mode frame (rows ions, columns
// bare modes). Result is clipped to [0, 1]; an imaginary residue above 1e-8
// raises ConsistencyError.
double gate_fidelity(const Eigen::MatrixXcd& bare_coeffs, const PhaseMatrix& phases,
                     const ThermalState& thermal, const GateLayout& layout);

}  // namespace ionshape
