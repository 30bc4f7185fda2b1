// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "nrpusch/waveform/grid.hpp"

namespace nrpusch::receiver {

using waveform::PuschConfig;
using waveform::ResourceGrid;

enum class EstimatorKind { ls, mmse, genie };

/// Channel estimates on the pilot lattice: for pair (rx, tx) a matrix with one row per DMRS
/// symbol and one column per pilot of that tx port's comb.
struct PilotEstimate {
    int n_rx = 0;
    int n_tx = 0;
    EstimatorKind kind = EstimatorKind::ls;
    std::vector<int> symbols;                  ///< DMRS symbol indices
    std::vector<std::vector<int>> subcarriers; ///< per tx port
    std::vector<Eigen::MatrixXcd> values;      ///< index rx * n_tx + tx

    Eigen::MatrixXcd& at(int rx, int tx) { return values[rx * n_tx + tx]; }
    const Eigen::MatrixXcd& at(int rx, int tx) const { return values[rx * n_tx + tx]; }
};

/// Channel estimate on every RE of the slot.
struct ChannelEstimate {
    int n_rx = 0;
    int n_tx = 0;
    EstimatorKind kind = EstimatorKind::ls;
    bool linear_fallback = false;  ///< too few pilots for a spline
    std::vector<GridPlane> planes; ///< index rx * n_tx + tx

    GridPlane& at(int rx, int tx) { return planes[rx * n_tx + tx]; }
    const GridPlane& at(int rx, int tx) const { return planes[rx * n_tx + tx]; }
};

/// Per pilot: h = conj(x) * y (unit-modulus pilots).
PilotEstimate estimate_ls(const ResourceGrid& rx, const PuschConfig& cfg);

inline constexpr double kRhoMinDb = -10.0;
inline constexpr double kRhoMaxDb = 40.0;
inline constexpr int kSnrWindow = 7;

struct SnrEstimate {
    Eigen::MatrixXd pair_rho;       ///< n_rx x n_tx, channel power over noise per pair
    Eigen::MatrixXd pair_noise;     ///< n_rx x n_tx, noise variance per pilot
    double noise_var = 0.0;         ///< averaged noise variance (unit-power symbols)
    double rho = 0.0;               ///< 1 / noise_var, clamped
    bool saturated = false;         ///< clamp hit (including the noiseless case)

    double rho_db() const;
};

/// Moving-average de-noising along frequency (window W) and the RMS ratio of smoothed estimate to
/// residual. The residual power is bias-corrected by 1/(1 - 1/W) and the smoothed power by the
/// noise left in the average.
SnrEstimate estimate_snr(const PilotEstimate& ls, int window = kSnrWindow);

/// Rhh for pilots `spacing` subcarriers apart under a uniform power-delay profile of `taps` samples.
Eigen::MatrixXcd uniform_pdp_covariance(int n_pilots, int spacing, int n_fft, int taps);

/// Frequency-domain MMSE smoother R (R + beta/rho I)^-1. The eigendecomposition of R is computed
/// once, so any rho costs two matrix-vector products.
class MmseFilter {
public:
    explicit MmseFilter(const Eigen::MatrixXcd& rhh, double beta = 1.0);

    Eigen::VectorXcd apply(const Eigen::VectorXcd& h_ls, double rho) const;
    /// Dense filter matrix for one rho (tests and diagnostics).
    Eigen::MatrixXcd matrix(double rho) const;
    Eigen::Index size() const noexcept { return eigvals_.size(); }

private:
    Eigen::MatrixXcd u_;
    Eigen::VectorXd eigvals_;
    double beta_;
};

/// Applies the filter per pair and DMRS symbol with that pair's rho (clamped).
PilotEstimate estimate_mmse(const PilotEstimate& ls, const SnrEstimate& snr, const MmseFilter& filter);

/// Natural cubic spline through (x_i, y_i), evaluated at integer points 0..n_out-1; linear
/// continuation outside [x_0, x_last].
Eigen::VectorXcd spline_interpolate(const std::vector<int>& x, const Eigen::VectorXcd& y, int n_out);

/// Cubic spline across frequency (linear with < 4 pilots), linear in time between DMRS symbols.
ChannelEstimate interpolate_estimate(const PilotEstimate& est, const PuschConfig& cfg);

} // namespace nrpusch::receiver
