#include "ionshape/pulse.hpp"

#include <cmath>
#include <sstream>

namespace ionshape {

double TonePulse::value_at(double t) const {
    if (t < start_time || t > end_time()) return 0.0;
    if (shape == PulseShape::Constant) return amplitude;
    return amplitude * std::sin(shape_frequency * (t - start_time));
}

void TonePulse::validate(int n_ions) const {
    if (ion_1based < 1 || ion_1based > n_ions) {
        std::ostringstream msg;
        msg << "pulse ion index " << ion_1based << " outside 1.." << n_ions;
        throw ValidationError(msg.str());
    }
    if (!(duration > 0)) throw ValidationError("pulse duration must be positive");
    if (shape == PulseShape::WindowedSine && !(shape_frequency > 0)) {
        throw ValidationError("sine pulse needs a positive shape frequency");
    }
    if (start_time < 0) throw ValidationError("pulse start time must be >= 0");
}

double PulseSchedule::amplitude_at(int ion_1based, double t) const {
    double v = 0.0;
    for (const TonePulse& p : pulses) {
        if (p.ion_1based == ion_1based) v += p.value_at(t);
    }
    return v;
}

double PulseSchedule::latest_end() const {
    double t = 0.0;
    for (const TonePulse& p : pulses) t = std::max(t, p.end_time());
    return t;
}

bool PulseSchedule::drives(int ion_1based) const {
    for (const TonePulse& p : pulses) {
        if (p.ion_1based == ion_1based && p.amplitude != 0.0) return true;
    }
    return false;
}

void PulseSchedule::validate(int n_ions) const {
    for (const TonePulse& p : pulses) p.validate(n_ions);
}

}  // namespace ionshape
