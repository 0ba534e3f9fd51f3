#include "ionshape/modes.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ionshape {

ElectronicAssignment ElectronicAssignment::all_ell(int n, const StateFrequencies& freqs) {
    freqs.validate();
    ElectronicAssignment a;
    a.states.assign(n, IonState::Ell);
    a.frequencies = freqs;
    return a;
}

ElectronicAssignment ElectronicAssignment::with_rydberg(int n, const StateFrequencies& freqs,
                                                        const std::vector<int>& rydberg_1based) {
    ElectronicAssignment a = all_ell(n, freqs);
    for (int ion : rydberg_1based) {
        if (ion < 1 || ion > n) {
            std::ostringstream msg;
            msg << "Rydberg ion index " << ion << " outside 1.." << n;
            throw ValidationError(msg.str());
        }
        a.states[ion - 1] = IonState::Rydberg;
    }
    return a;
}

Eigen::MatrixXd build_hessian(const ChainConfiguration& config,
                              const ElectronicAssignment& assignment) {
    const int n = config.size();
    if (assignment.size() != n) throw ValidationError("assignment size mismatch");
    const Eigen::VectorXd& z = config.positions;
    for (int i = 1; i < n; ++i) {
        if (!(z[i] > z[i - 1])) throw SingularityError("positions must be distinct and sorted");
    }

    Eigen::MatrixXd h(n, n);
    for (int m = 0; m < n; ++m) {
        const double w = assignment.frequency_of(m);
        h(m, m) = w * w + 0.5 - 1.5 * config.quartic_ratio * z[m] * z[m];
    }
    for (int m = 0; m < n; ++m) {
        for (int k = m + 1; k < n; ++k) {
            const double inv3 = 1.0 / std::pow(z[k] - z[m], 3);
            h(m, k) = inv3;
            h(k, m) = inv3;
            h(m, m) -= inv3;
            h(k, k) -= inv3;
        }
    }
    return h;
}

ModeDecomposition diagonalize(const Eigen::MatrixXd& hessian) {
    if (hessian.rows() != hessian.cols()) throw ValidationError("hessian must be square");
    if (!hessian.isApprox(hessian.transpose(), 1e-12)) {
        throw ValidationError("hessian must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian);
    if (es.info() != Eigen::Success) {
        throw ConsistencyError("eigendecomposition failed");
    }
    const int n = static_cast<int>(hessian.rows());
    Eigen::VectorXd lam = es.eigenvalues();
    Eigen::MatrixXd vec = es.eigenvectors();
    for (int j = 0; j < n; ++j) {
        if (lam[j] <= 0) {
            std::ostringstream msg;
            msg << "mode " << j << " has non-positive squared frequency " << lam[j]
                << ": chain is structurally unstable";
            throw InstabilityError(msg.str(), j);
        }
        int imax = 0;
        vec.col(j).cwiseAbs().maxCoeff(&imax);
        if (vec(imax, j) < 0) vec.col(j) = -vec.col(j);
    }

    ModeDecomposition d;
    d.frequencies = lam.cwiseSqrt();
    d.vectors = vec;

    const double residual = (hessian * d.vectors - d.vectors * lam.asDiagonal()).cwiseAbs().maxCoeff();
    if (residual > 1e-8) {
        throw ConsistencyError("eigendecomposition residual above 1e-8");
    }
    return d;
}

LocalizedModes localized_mode_analysis(const ModeDecomposition& modes,
                                       const std::vector<int>& subcrystal_1based,
                                       double weight_threshold,
                                       double degeneracy_tolerance) {
    const int n = modes.size();
    if (subcrystal_1based.empty()) throw ValidationError("subcrystal must be nonempty");
    std::set<int> rows;
    for (int ion : subcrystal_1based) {
        if (ion < 1 || ion > n) throw ValidationError("subcrystal ion index out of range");
        rows.insert(ion - 1);
    }

    LocalizedModes out;
    struct Entry {
        double freq;
        double weight;
        int repr;
    };
    std::vector<Entry> entries;

    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n &&
               modes.frequencies[j + 1] - modes.frequencies[j] <= degeneracy_tolerance) {
            ++j;
        }
        const int c = j - i + 1;
        if (c == 1) {
            double w = 0.0;
            for (int r : rows) w += modes.vectors(r, i) * modes.vectors(r, i);
            entries.push_back({modes.frequencies[i], w, i});
        } else {
            // eigenbasis of the subcrystal overlap within the cluster span:
            // eigenvalues are the extremal weights reachable by rotation
            Eigen::MatrixXd sub(static_cast<int>(rows.size()), c);
            int rr = 0;
            for (int r : rows) {
                for (int k = 0; k < c; ++k) sub(rr, k) = modes.vectors(r, i + k);
                ++rr;
            }
            Eigen::MatrixXd gram = sub.transpose() * sub;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
            for (int a = 0; a < c; ++a) {
                const Eigen::VectorXd rot = es.eigenvectors().col(a);
                double ray = 0.0;
                int repr = i;
                double best = 0.0;
                for (int k = 0; k < c; ++k) {
                    const double lam = modes.frequencies[i + k] * modes.frequencies[i + k];
                    ray += rot[k] * rot[k] * lam;
                    if (std::abs(rot[k]) > best) {
                        best = std::abs(rot[k]);
                        repr = i + k;
                    }
                }
                entries.push_back({std::sqrt(ray), es.eigenvalues()[a], repr});
            }
        }
        i = j + 1;
    }

    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.freq < b.freq; });
    for (const Entry& e : entries) {
        if (e.weight >= weight_threshold) {
            out.mode_indices.push_back(e.repr);
            out.weights.push_back(e.weight);
            out.frequencies.push_back(e.freq);
        }
    }
    return out;
}

ModeDecomposition truncated_subcrystal_modes(const ChainConfiguration& config,
                                             const ElectronicAssignment& assignment,
                                             std::pair<int, int> subcrystal_1based_inclusive) {
    const int n = config.size();
    const int lo = subcrystal_1based_inclusive.first;
    const int hi = subcrystal_1based_inclusive.second;
    if (lo < 1 || hi > n || hi < lo) throw ValidationError("invalid subcrystal range");

    Eigen::MatrixXd full = build_hessian(config, assignment);
    const int c = hi - lo + 1;
    return diagonalize(full.block(lo - 1, lo - 1, c, c));
}

}  // namespace ionshape
