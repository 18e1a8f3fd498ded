#pragma once

// Pointwise residual bookkeeping shared by every exact-solution check.
// A residual is normalized by the largest summed magnitude of its terms
// over the grid, so static states (whose time derivative vanishes) still
// get a meaningful scale.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace wvl {

struct ResidualReport {
    double max_norm = 0.0;    ///< max |R| / scale
    double l2_norm = 0.0;     ///< RMS of |R| / scale
    double scale = 1.0;       ///< max over the grid of the summed term magnitudes
    int points = 0;           ///< evaluated (unguarded) grid points
    double dt = 0.0;
    double convergence_ratio = std::numeric_limits<double>::quiet_NaN();  ///< r(dt)/r(dt/2) when studied
};

class ResidualAccumulator {
public:
    void add(double residual_abs, double term_magnitude) {
        max_abs_ = std::max(max_abs_, residual_abs);
        sum_sq_ += residual_abs * residual_abs;
        scale_ = std::max(scale_, term_magnitude);
        ++points_;
    }

    ResidualReport report(double dt) const {
        ResidualReport r;
        r.dt = dt;
        r.points = points_;
        r.scale = scale_ > 0.0 ? scale_ : 1.0;
        r.max_norm = max_abs_ / r.scale;
        r.l2_norm = points_ > 0 ? std::sqrt(sum_sq_ / points_) / r.scale : 0.0;
        return r;
    }

private:
    double max_abs_ = 0.0;
    double sum_sq_ = 0.0;
    double scale_ = 0.0;
    int points_ = 0;
};

/// Runs a residual at dt and dt/2; returns the dt report with the max-norm ratio attached.
inline ResidualReport convergence_study(const std::function<ResidualReport(double)>& run, double dt) {
    ResidualReport coarse = run(dt);
    const ResidualReport fine = run(0.5 * dt);
    coarse.convergence_ratio = fine.max_norm > 0.0 ? coarse.max_norm / fine.max_norm
                                                   : std::numeric_limits<double>::infinity();
    return coarse;
}

}  // namespace wvl
