#include "ionshape/phase_integrals.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ionshape {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

cd cis(double x) { return {std::cos(x), std::sin(x)}; }

// Pulse as a sum of complex exponentials c_k e^{i p_k t} over its window.
struct Carrier {
    std::array<cd, 2> coeff;
    std::array<double, 2> freq;
    int n = 0;
};

Carrier decompose(const TonePulse& p) {
    Carrier c;
    if (p.shape == PulseShape::Constant) {
        c.coeff[0] = p.amplitude;
        c.freq[0] = 0.0;
        c.n = 1;
    } else {
        // sin(nu (t-a)) = (e^{i nu (t-a)} - e^{-i nu (t-a)}) / 2i
        const cd half = p.amplitude / (2.0 * kI);
        c.coeff[0] = half * cis(-p.shape_frequency * p.start_time);
        c.freq[0] = p.shape_frequency;
        c.coeff[1] = -half * cis(p.shape_frequency * p.start_time);
        c.freq[1] = -p.shape_frequency;
        c.n = 2;
    }
    return c;
}

}  // namespace

std::complex<double> expm1_over(std::complex<double> z) {
    if (std::abs(z) < 0.25) {
        cd sum = 1.0;
        cd term = 1.0;
        for (int k = 1; k < 20; ++k) {
            term *= z / static_cast<double>(k + 1);
            sum += term;
            if (std::abs(term) < 1e-19) break;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

std::complex<double> exp_segment(double p, double a, double b) {
    if (b <= a) return 0.0;
    const double len = b - a;
    return cis(p * a) * len * expm1_over(kI * p * len);
}

std::complex<double> power_moment(double p, int k, double u0, double u1) {
    if (u1 <= u0) return 0.0;
    const double umax = std::max(std::abs(u0), std::abs(u1));
    if (std::abs(p) * umax < 4.0) {
        // sum_j (ip)^j (u1^{k+j+1} - u0^{k+j+1}) / (j! (k+j+1))
        cd sum = 0.0;
        cd ipj = 1.0;  // (ip)^j / j!
        double p0 = std::pow(u0, k + 1);
        double p1 = std::pow(u1, k + 1);
        for (int j = 0; j < 48; ++j) {
            const cd term = ipj * ((p1 - p0) / static_cast<double>(k + j + 1));
            sum += term;
            if (std::abs(term) < 1e-19 * (1.0 + std::abs(sum)) && j > 2) break;
            ipj *= kI * p / static_cast<double>(j + 1);
            p0 *= u0;
            p1 *= u1;
        }
        return sum;
    }
    // integrate by parts upward from the plain segment
    cd m = exp_segment(p, u0, u1);
    const cd ip = kI * p;
    double w0 = 1.0, w1 = 1.0;
    for (int j = 1; j <= k; ++j) {
        w0 *= u0;
        w1 *= u1;
        m = (w1 * cis(p * u1) - w0 * cis(p * u0)) / ip - (static_cast<double>(j) / ip) * m;
    }
    return m;
}

std::complex<double> ordered_exp_pair(double p, double q, double a, double b,
                                      double c, double d) {
    if (b <= a || d <= c) return 0.0;
    cd total = 0.0;

    // region with the inner upper limit at t: t in [max(a,c), min(b,d)]
    const double l1 = std::max(a, c);
    const double u1 = std::min(b, d);
    if (u1 > l1) {
        const double s0 = l1 - c;
        const double s1 = u1 - c;
        cd j;
        if (std::abs(q) * s1 >= 0.05) {
            j = (exp_segment(p + q, s0, s1) - exp_segment(p, s0, s1)) / (kI * q);
        } else {
            // (e^{iqu} - 1)/(iq) = sum_n (iq)^n u^{n+1} / (n+1)!
            j = 0.0;
            cd qn = 1.0;  // (iq)^n / (n+1)!
            for (int n = 0; n <= 6; ++n) {
                qn = (n == 0) ? cd(1.0) : qn * (kI * q) / static_cast<double>(n + 1);
                j += qn * power_moment(p, n + 1, s0, s1);
            }
        }
        total += cis((p + q) * c) * j;
    }

    // region with the inner window complete: t in [max(a,d), b]
    const double l2 = std::max(a, d);
    if (b > l2) {
        total += exp_segment(q, c, d) * exp_segment(p, l2, b);
    }
    return total;
}

std::complex<double> pulse_fourier(const TonePulse& pulse, double omega) {
    if (pulse.duration <= 0) return 0.0;
    const Carrier c = decompose(pulse);
    cd total = 0.0;
    for (int k = 0; k < c.n; ++k) {
        total += c.coeff[k] * exp_segment(omega + c.freq[k], pulse.start_time, pulse.end_time());
    }
    return total;
}

double pulse_pair_phase_kernel(const TonePulse& m, const TonePulse& n, double omega) {
    const Carrier cm = decompose(m);
    const Carrier cn = decompose(n);
    const std::array<cd, 2> s = {1.0 / (2.0 * kI), -1.0 / (2.0 * kI)};
    const std::array<double, 2> w = {omega, -omega};

    cd total = 0.0;
    // both time orderings: (outer, inner) = (m, n) and (n, m)
    const Carrier* outer[2] = {&cm, &cn};
    const Carrier* inner[2] = {&cn, &cm};
    const TonePulse* op[2] = {&m, &n};
    const TonePulse* ip[2] = {&n, &m};
    for (int o = 0; o < 2; ++o) {
        for (int k = 0; k < outer[o]->n; ++k) {
            for (int k2 = 0; k2 < inner[o]->n; ++k2) {
                for (int l = 0; l < 2; ++l) {
                    total += outer[o]->coeff[k] * inner[o]->coeff[k2] * s[l] *
                             ordered_exp_pair(outer[o]->freq[k] + w[l],
                                              inner[o]->freq[k2] - w[l],
                                              op[o]->start_time, op[o]->end_time(),
                                              ip[o]->start_time, ip[o]->end_time());
                }
            }
        }
    }
    return total.real();
}

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double abs_tol) {
    if (b <= a) return 0.0;
    struct Simpson {
        static double rule(double a, double b, double fa, double fm, double fb) {
            return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        }
        static double recurse(const std::function<double(double)>& f, double a, double m,
                              double b, double fa, double fm, double fb, double whole,
                              double tol, int depth) {
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = rule(a, m, fa, flm, fm);
            const double right = rule(m, b, fm, frm, fb);
            if (depth > 28 || std::abs(left + right - whole) < 15.0 * tol) {
                return left + right + (left + right - whole) / 15.0;
            }
            return recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
                   recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
        }
    };
    // pre-split so oscillations cannot hide from the error estimate
    const int panels = 64;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), fm = f(xm), f1 = f(x1);
        const double whole = Simpson::rule(x0, x1, f0, fm, f1);
        total += Simpson::recurse(f, x0, xm, x1, f0, fm, f1, whole, abs_tol / panels, 0);
    }
    return total;
}

std::complex<double> pulse_fourier_quadrature(const TonePulse& pulse, double omega,
                                              double abs_tol) {
    const double a = pulse.start_time, b = pulse.end_time();
    const double re = adaptive_quadrature(
        [&](double t) { return pulse.value_at(t) * std::cos(omega * t); }, a, b, abs_tol);
    const double im = adaptive_quadrature(
        [&](double t) { return pulse.value_at(t) * std::sin(omega * t); }, a, b, abs_tol);
    return {re, im};
}

double pulse_pair_phase_kernel_quadrature(const TonePulse& m, const TonePulse& n,
                                          double omega, double abs_tol) {
    const double t0 = std::min(m.start_time, n.start_time);
    const double t1 = std::max(m.end_time(), n.end_time());
    const double inner_tol = abs_tol / std::max(1.0, 4.0 * (t1 - t0));
    auto integrand = [&](double t) {
        double v = 0.0;
        const TonePulse* outer[2] = {&m, &n};
        const TonePulse* inner[2] = {&n, &m};
        for (int o = 0; o < 2; ++o) {
            if (t < outer[o]->start_time || t > outer[o]->end_time()) continue;
            const double hi = std::min(t, inner[o]->end_time());
            if (hi <= inner[o]->start_time) continue;
            v += outer[o]->value_at(t) *
                 adaptive_quadrature(
                     [&](double tp) {
                         return inner[o]->value_at(tp) * std::sin(omega * (t - tp));
                     },
                     inner[o]->start_time, hi, inner_tol);
        }
        return v;
    };
    return adaptive_quadrature(integrand, t0, t1, abs_tol);
}

}  // namespace ionshape
