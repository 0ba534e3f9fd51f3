#pragma once

#include <vector>

#include "ionshape/errors.hpp"

namespace ionshape {

enum class PulseShape { WindowedSine, Constant };

// One gate-laser tone on one ion. Times in units of 1/omega_s, amplitude in
// units of omega_s. For WindowedSine,
//   Omega(t) = amplitude * sin(shape_frequency * (t - start_time))
// inside [start_time, start_time + duration] and zero outside. Amplitude may
// be negative: the relative drive sign across a gate pair selects which
// localized mode carries the two-qubit phase.
struct TonePulse {
    int ion_1based = 0;
    double amplitude = 0.0;
    double shape_frequency = 0.0;
    double start_time = 0.0;
    double duration = 0.0;
    PulseShape shape = PulseShape::WindowedSine;

    double end_time() const { return start_time + duration; }
    double value_at(double t) const;
    void validate(int n_ions) const;
};

struct PulseSchedule {
    std::vector<TonePulse> pulses;

    double amplitude_at(int ion_1based, double t) const;
    double latest_end() const;
    bool drives(int ion_1based) const;
    void validate(int n_ions) const;
};

}  // namespace ionshape
