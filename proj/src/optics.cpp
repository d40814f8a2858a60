#include "qcbound/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qcbound/errors.hpp"

namespace qcb {

namespace {

using std::complex;

constexpr complex<double> kI{0.0, 1.0};

double draw_truncated_phase(Rng& rng, double sigma, double threshold, DrawStats* stats) {
    if (sigma <= 0.0) return 0.0;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double x = rng.normal(0.0, sigma);
        if (stats) ++stats->draws;
        if (std::abs(x) <= threshold) return x;
        if (stats) ++stats->rejected;
    }
    throw ResourceError("phase-draw retry budget exhausted");
}

} // namespace

ConvolutionKernel ConvolutionKernel::standard() {
    ConvolutionKernel k;
    k.coefficients = {1.0, 0.783, 0.606, 0.465, 0.356, 0.272, 0.208};
    const double ratio = k.coefficients[1];
    while (k.coefficients.size() < 12)
        k.coefficients.push_back(k.coefficients.back() * ratio);
    return k;
}

double ConvolutionKernel::coeff(int k_one_based) const {
    if (k_one_based < 1 || k_one_based > length())
        throw std::out_of_range("kernel coefficient index out of range");
    return coefficients[static_cast<std::size_t>(k_one_based) - 1];
}

std::vector<double> ConvolutionKernel::reversed(int len) const {
    if (len < 1 || len > length())
        throw std::out_of_range("reversed kernel view longer than the kernel");
    std::vector<double> out(static_cast<std::size_t>(len));
    for (int m = 0; m < len; ++m) out[m] = coefficients[static_cast<std::size_t>(len - 1 - m)];
    return out;
}

void ConvolutionKernel::validate() const {
    if (coefficients.empty())
        throw std::invalid_argument("kernel must have at least one coefficient");
    if (std::abs(coefficients.front() - 1.0) > 1e-12)
        throw std::invalid_argument("kernel must be normalized so the first coefficient is 1");
    for (std::size_t i = 1; i < coefficients.size(); ++i)
        if (!(std::abs(coefficients[i]) < std::abs(coefficients[i - 1])))
            throw std::invalid_argument("kernel magnitudes must decay strictly");
}

PulseTrain encode_state(const Eigen::VectorXd& a, double carrier_scale, double bin_width) {
    if (a.norm() > 1.0 + 1e-9)
        throw std::invalid_argument("encode_state requires a vector of norm at most 1");
    PulseTrain train;
    train.bin_width = bin_width;
    train.carrier_scale = carrier_scale;
    train.amplitudes.reserve(static_cast<std::size_t>(a.size()));
    for (Eigen::Index i = 0; i < a.size(); ++i)
        train.amplitudes.emplace_back(carrier_scale * a(i), 0.0);
    return train;
}

NoiseModel NoiseModel::quiet() {
    NoiseModel n;
    n.sigma_ring = 0.0;
    n.sigma_lo = 0.0;
    n.extinction_floor = 0.0;
    n.visibility = 1.0;
    return n;
}

void NoiseModel::validate() const {
    if (sigma_ring < 0.0 || sigma_lo < 0.0)
        throw std::invalid_argument("phase-noise widths must be non-negative");
    if (!(reject_threshold > 0.0))
        throw std::invalid_argument("rejection threshold must be positive");
    if (!(extinction_floor >= 0.0 && extinction_floor < 1.0))
        throw std::invalid_argument("extinction floor must lie in [0, 1)");
    if (!(visibility >= 0.0 && visibility <= 1.0))
        throw std::invalid_argument("visibility must lie in [0, 1]");
}

int SubspacePlan::dimension() const {
    return std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
}

void SubspacePlan::validate(int ambient_dimension, const ConvolutionKernel& kernel) const {
    if (block_sizes.empty())
        throw std::invalid_argument("subspace plan needs at least one block");
    for (int b : block_sizes) {
        if (b < 1) throw std::invalid_argument("block sizes must be positive");
        if (b > kernel.length())
            throw std::invalid_argument("block longer than the kernel");
    }
    if (dimension() != ambient_dimension)
        throw std::invalid_argument("block sizes do not sum to the ambient dimension");
    if (!(v_max > 0.0)) throw std::invalid_argument("v_max must be positive");
    if (!(headroom > 0.0 && headroom <= 1.0))
        throw std::invalid_argument("headroom must lie in (0, 1]");
}

SortResult sort_basis(const Eigen::VectorXd& o, const Eigen::VectorXd& a) {
    if (o.size() != a.size())
        throw std::invalid_argument("sort_basis requires vectors of equal length");
    const int n = static_cast<int>(o.size());
    SortResult r;
    r.permutation.resize(static_cast<std::size_t>(n));
    std::iota(r.permutation.begin(), r.permutation.end(), 0);
    std::stable_sort(r.permutation.begin(), r.permutation.end(),
                     [&](int x, int y) { return std::abs(o(x)) > std::abs(o(y)); });
    r.o_sorted.resize(n);
    r.a_sorted.resize(n);
    for (int i = 0; i < n; ++i) {
        r.o_sorted(i) = o(r.permutation[static_cast<std::size_t>(i)]);
        r.a_sorted(i) = a(r.permutation[static_cast<std::size_t>(i)]);
    }
    return r;
}

std::vector<double> modulation_plan(const Eigen::VectorXd& a_sorted,
                                    const Eigen::VectorXd& o_sorted,
                                    const ConvolutionKernel& kernel, double v_max) {
    if (a_sorted.size() != o_sorted.size())
        throw std::invalid_argument("modulation_plan requires vectors of equal length");
    const int d = static_cast<int>(a_sorted.size());
    if (d > kernel.length())
        throw std::invalid_argument("block longer than the kernel");
    std::vector<double> v(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
        v[static_cast<std::size_t>(r)] =
            a_sorted(r) * o_sorted(r) / kernel.coefficients[static_cast<std::size_t>(r)];
        if (std::abs(v[static_cast<std::size_t>(r)]) > v_max)
            throw PlanError("modulation voltage exceeds the drive range", r,
                            v[static_cast<std::size_t>(r)]);
    }
    return v;
}

std::vector<std::complex<double>> ring_convolve(const PulseTrain& train,
                                                const ConvolutionKernel& kernel,
                                                double phi_ring, double visibility) {
    const int n = static_cast<int>(train.amplitudes.size());
    const int kl = kernel.length();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(std::max(0, n + kl - 1)));
    const complex<double> loop = visibility * std::polar(1.0, phi_ring);
    for (int t = 1; t <= n + kl - 1; ++t) {
        complex<double> acc{0.0, 0.0};
        complex<double> loop_pow{1.0, 0.0}; // loop^(k-1), built incrementally
        for (int k = 1; k <= kl; ++k) {
            const int src = t + 1 - k;
            if (src >= 1 && src <= n)
                acc += train.amplitudes[static_cast<std::size_t>(src - 1)] *
                       kernel.coefficients[static_cast<std::size_t>(k - 1)] * loop_pow;
            loop_pow *= loop;
        }
        out[static_cast<std::size_t>(t - 1)] = acc;
    }
    return out;
}

HomodyneRecord homodyne_read(std::complex<double> amplitude, double phi_ring, double phi_lo,
                             const NoiseModel& noise) {
    HomodyneRecord rec;
    rec.phi_ring = phi_ring;
    rec.phi_lo = phi_lo;
    rec.value = (std::polar(1.0, -phi_lo) * amplitude).real();
    rec.accepted = std::abs(phi_ring) <= noise.reject_threshold &&
                   std::abs(phi_lo) <= noise.reject_threshold;
    return rec;
}

std::pair<double, double> phase_error_readout(double h0, double h1, double h2,
                                              const ConvolutionKernel& kernel) {
    if (kernel.length() < 12)
        throw std::invalid_argument("phase readout requires a kernel calibrated to 12 terms");
    if (h0 == 0.0)
        throw std::invalid_argument("phase readout is degenerate at h0 = 0");
    auto sums = [&](double pr) {
        complex<double> s{0.0, 0.0}, s4{0.0, 0.0};
        for (int k = 1; k <= kernel.length(); ++k) {
            const complex<double> term =
                kernel.coefficients[static_cast<std::size_t>(k - 1)] * std::polar(1.0, k * pr);
            s += term;
            if (k >= 4) s4 += term;
        }
        return std::make_pair(s, s4);
    };

    // The two readout ratios h1/h0 and h2/h0 alone are two-to-one on the
    // monitoring band: distinct in-band phase pairs can produce identical
    // ratios, differing only in the implied pulse amplitude.  The readouts
    // are therefore taken normalized to unit pulse amplitude, which makes
    // the envelope h0^2 + h1^2 = |S(pr)|^2 available as a third equation.
    // |S| is even in the ring phase and strictly decreasing in its
    // magnitude out to pi/11 (every pairwise beat (j - k) pr stays below
    // pi there), so the envelope fixes |pr| by monotone bisection, the
    // quadrature angle atan2(-h1, h0) = arg S - pl recovers the oscillator
    // phase in closed form, and the delayed-window readout h2 selects the
    // sign of the ring phase.
    const double env = h0 * h0 + h1 * h1;
    const double psi = std::atan2(-h1, h0);
    constexpr double kSpan = M_PI / 11.0; // strict-monotonicity bound of |S|

    auto env_excess = [&](double pr) { return std::norm(sums(pr).first) - env; };
    const double at_zero = env_excess(0.0);
    if (at_zero < -1e-9 * (1.0 + env) || env_excess(kSpan) > 0.0)
        throw ConvergenceError("phase readout found no ring phase consistent with the readouts");

    double mag = 0.0;
    if (at_zero > 0.0) {
        double lo = 0.0, hi = kSpan;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (env_excess(mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        mag = 0.5 * (lo + hi);
    }

    // Both sign candidates share the envelope; keep the one whose
    // delayed-window prediction is closer to the recorded h2.
    double best_pr = 0.0, best_pl = 0.0;
    double best_err = std::numeric_limits<double>::infinity();
    for (const double pr : {mag, -mag}) {
        const auto [s, s4] = sums(pr);
        const double pl = std::arg(s) - psi;
        const double err = std::abs((std::polar(1.0, -pl) * s4).real() - h2);
        if (err < best_err) {
            best_err = err;
            best_pr = pr;
            best_pl = pl;
        }
        if (mag == 0.0) break;
    }

    // Independent verification of all three readout equations.
    const auto [s, s4] = sums(best_pr);
    const double f0 = (std::polar(1.0, -best_pl) * s).real();
    const double f1 = (std::polar(1.0, 0.5 * M_PI - best_pl) * s).real();
    const double f2 = (std::polar(1.0, -best_pl) * s4).real();
    const double scale = 1.0 + std::abs(h0) + std::abs(h1) + std::abs(h2);
    if (std::abs(f0 - h0) > 1e-9 * scale || std::abs(f1 - h1) > 1e-9 * scale ||
        std::abs(f2 - h2) > 1e-9 * scale)
        throw ConvergenceError("phase readout solution failed verification");
    return {best_pr, best_pl};
}

double run_projection(const Eigen::VectorXd& a, const Eigen::VectorXd& o,
                      const SubspacePlan& plan, const ConvolutionKernel& kernel,
                      const NoiseModel& noise, Rng& rng, DrawStats* stats) {
    if (a.size() != o.size())
        throw std::invalid_argument("state and ray dimensions differ");
    plan.validate(static_cast<int>(a.size()), kernel);
    kernel.validate();
    noise.validate();

    const int nb = static_cast<int>(plan.block_sizes.size());
    const double floor_amp =
        noise.extinction_floor *
        (noise.extinction_reference == ExtinctionReference::drive ? plan.v_max : 1.0);

    std::vector<double> atil(static_cast<std::size_t>(nb));
    int off = 0;
    for (int bi = 0; bi < nb; ++bi) {
        const int d = plan.block_sizes[static_cast<std::size_t>(bi)];
        std::vector<double> prod(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) prod[static_cast<std::size_t>(i)] = a(off + i) * o(off + i);

        // rank products by descending magnitude, ties by index
        std::vector<int> idx(static_cast<std::size_t>(d));
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
            return std::abs(prod[static_cast<std::size_t>(x)]) >
                   std::abs(prod[static_cast<std::size_t>(y)]);
        });

        // rank r drives slot d-1-r with product over c_{r+1}
        std::vector<double> drive(static_cast<std::size_t>(d), 0.0);
        for (int r = 0; r < d; ++r)
            drive[static_cast<std::size_t>(d - 1 - r)] =
                prod[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])] /
                kernel.coefficients[static_cast<std::size_t>(r)];
        double peak = 0.0;
        for (double v : drive) peak = std::max(peak, std::abs(v));
        const double s = peak <= plan.v_max ? 1.0 : plan.headroom * plan.v_max / peak;

        for (auto& v : drive) {
            v *= s;
            if (std::abs(v) < 1e-15 && floor_amp > 0.0) v += floor_amp * rng.sign();
        }

        const double phr = draw_truncated_phase(rng, noise.sigma_ring, noise.reject_threshold, stats);
        const double plo = draw_truncated_phase(rng, noise.sigma_lo, noise.reject_threshold, stats);

        complex<double> amp{0.0, 0.0};
        for (int m = 0; m < d; ++m) {
            const int loops = d - 1 - m; // round trips before ejection at bin d
            const double ck = kernel.coefficients[static_cast<std::size_t>(d - 1 - m)];
            amp += drive[static_cast<std::size_t>(m)] * ck *
                   std::pow(noise.visibility, loops) * std::polar(1.0, loops * phr);
        }
        atil[static_cast<std::size_t>(bi)] = (std::polar(1.0, -plo) * amp).real() / s;
        off += d;
    }

    // second round: recombine the block readouts against a unit kernel
    double peak2 = 0.0;
    for (double v : atil) peak2 = std::max(peak2, std::abs(v));
    const double s2 = std::min(1.0, plan.headroom * plan.v_max / std::max(peak2, 1e-300));
    const double phr = draw_truncated_phase(rng, noise.sigma_ring, noise.reject_threshold, stats);
    const double plo = draw_truncated_phase(rng, noise.sigma_lo, noise.reject_threshold, stats);
    complex<double> amp{0.0, 0.0};
    for (int m = 0; m < nb; ++m) {
        const int loops = nb - 1 - m;
        amp += atil[static_cast<std::size_t>(m)] * s2 * std::pow(noise.visibility, loops) *
               std::polar(1.0, loops * phr);
    }
    return (std::polar(1.0, -plo) * amp).real() / s2;
}

double run_projection(const Eigen::VectorXd& a, const Eigen::VectorXd& o,
                      const SubspacePlan& plan, const ConvolutionKernel& kernel,
                      const NoiseModel& noise) {
    Rng rng(noise.rng_seed);
    return run_projection(a, o, plan, kernel, noise, rng, nullptr);
}

} // namespace qcb
