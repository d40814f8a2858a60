#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qcbound/rng.hpp"

namespace qcb {

/// Decaying ejection coefficients of the fiber ring.  `coefficients[k-1]`
/// holds c_k (one-based in formulas); the first coefficient is 1 and the
/// magnitudes decay strictly.
struct ConvolutionKernel {
    std::vector<double> coefficients;

    /// Seven measured coefficients extended by geometric decay (ratio equal
    /// to the second coefficient) to twelve calibrated terms.
    static ConvolutionKernel standard();

    double coeff(int k_one_based) const;
    int length() const { return static_cast<int>(coefficients.size()); }
    /// Time-indexed view for a block of `length` slots: entry m (0-based)
    /// holds c_{length-m}, the coefficient met by the pulse in slot m.
    std::vector<double> reversed(int length) const;
    void validate() const;
};

/// Ordered pulse amplitudes, one per time bin.
struct PulseTrain {
    std::vector<std::complex<double>> amplitudes;
    double bin_width = 0.0;     ///< seconds
    double carrier_scale = 1.0; ///< displacement unit multiplying the logical amplitudes
};

/// Scale a unit-or-shorter coefficient vector onto the carrier.  Rejects
/// over-normalized input (norm beyond 1 + 1e-9).
PulseTrain encode_state(const Eigen::VectorXd& a, double carrier_scale, double bin_width);

/// What the extinction floor is measured against: the drive full scale
/// (commanded amplitude v_max) or absolute unit amplitude.
enum class ExtinctionReference { drive, unit };

struct NoiseModel {
    double sigma_ring = 2.74 * kDegree;      ///< ring phase error per measure period
    double sigma_lo = 3.94 * kDegree;        ///< local-oscillator phase error
    double reject_threshold = 7.5 * kDegree; ///< trials beyond this are redrawn
    /// Residual amplitude on nominally-zero pulses, from a 28 dB power
    /// extinction ratio.
    double extinction_floor = 0.039810717055349734;
    ExtinctionReference extinction_reference = ExtinctionReference::drive;
    double visibility = 1.0; ///< per-round-trip multiplicative factor
    std::uint64_t rng_seed = 0;

    static constexpr double kDegree = 0.017453292519943295; // radians per degree

    /// All stochastic and systematic imperfections switched off.
    static NoiseModel quiet();
    void validate() const;
};

/// Partition of the ambient dimension into sequentially measured blocks,
/// together with the modulator drive limits.
struct SubspacePlan {
    std::vector<int> block_sizes{7, 7, 5, 6, 6, 6};
    double v_max = 0.24;    ///< largest commandable drive amplitude
    double headroom = 0.95; ///< autoscale target fraction of v_max
    int dimension() const;
    void validate(int ambient_dimension, const ConvolutionKernel& kernel) const;
};

/// One homodyne sample with the phase context it was taken under.
struct HomodyneRecord {
    double value = 0.0;
    double phi_ring = 0.0;
    double phi_lo = 0.0;
    bool accepted = true; ///< both phases within the rejection threshold
};

struct SortResult {
    Eigen::VectorXd o_sorted;
    Eigen::VectorXd a_sorted;
    std::vector<int> permutation; ///< o_sorted[r] = o[permutation[r]]
};

/// Sort the measurement block by descending magnitude (ties by index) and
/// carry the state entries along; inner products are invariant.
SortResult sort_basis(const Eigen::VectorXd& o, const Eigen::VectorXd& a);

/// Drive voltages for a sorted block: rank r takes a_r * o_r / c_{r+1}.
/// In the time layout the list is reversed, so the largest product meets the
/// shortest ring path.  Throws PlanError (with the offending slot and value)
/// if any magnitude exceeds v_max.
std::vector<double> modulation_plan(const Eigen::VectorXd& a_sorted,
                                    const Eigen::VectorXd& o_sorted,
                                    const ConvolutionKernel& kernel, double v_max);

/// Full output sequence of the ring: bin t (one-based) carries
/// sum_k a_{t+1-k} c_k (visibility e^{i phi})^{k-1}.
std::vector<std::complex<double>> ring_convolve(const PulseTrain& train,
                                                const ConvolutionKernel& kernel,
                                                double phi_ring, double visibility);

HomodyneRecord homodyne_read(std::complex<double> amplitude, double phi_ring, double phi_lo,
                             const NoiseModel& noise);

/// Recover (phi_ring, phi_lo) from the three calibration readouts, which
/// must be normalized to unit pulse amplitude.  The in-phase/quadrature
/// envelope h0^2 + h1^2 = |S(phi_ring)|^2 fixes the ring-phase magnitude
/// by monotone bisection (|S| decreases strictly out to pi/11, past the
/// 15-degree monitoring band), the quadrature angle atan2(-h1, h0) gives
/// the oscillator phase in closed form, and the delayed-window readout h2
/// selects the ring-phase sign.  Requires at least twelve kernel terms;
/// throws ConvergenceError when no consistent phase pair exists.
std::pair<double, double> phase_error_readout(double h0, double h1, double h2,
                                              const ConvolutionKernel& kernel);

/// Counters for the phase-rejection property: rejected draws over total
/// draws estimates the two-sided Gaussian tail beyond the threshold.
struct DrawStats {
    long long draws = 0;
    long long rejected = 0;
};

/// Estimate the inner product of a measurement ray with a prepared state by
/// the two-round scheme: per block, rank the products, divide by the kernel,
/// autoscale into the drive range, convolve with fresh phase errors and read
/// one homodyne value; then recombine the per-block readouts against a unit
/// kernel in a second round.  With quiet noise the estimate equals the inner
/// product to numerical precision.
double run_projection(const Eigen::VectorXd& a, const Eigen::VectorXd& o,
                      const SubspacePlan& plan, const ConvolutionKernel& kernel,
                      const NoiseModel& noise, Rng& rng, DrawStats* stats = nullptr);

/// Convenience overload seeding a fresh stream from noise.rng_seed.
double run_projection(const Eigen::VectorXd& a, const Eigen::VectorXd& o,
                      const SubspacePlan& plan, const ConvolutionKernel& kernel,
                      const NoiseModel& noise);

} // namespace qcb
