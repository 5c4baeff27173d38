#include "mledca/ccdf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mledca {

namespace {

// Neumaier's variant of compensated summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Coefficient x-1 of (1 - D(z)) / (1 - z) from D on the 2N-point contour.
// `eval(n)` returns D(z_n) and `point(n)` returns z_n. The series has real
// coefficients, so Q(z_{2N-n}) is the conjugate of Q(z_n) and only n = 0..N
// are needed.
template <class Eval, class Point>
double contour_tail(long x, long half, double radius, const Lattice& lattice, const Eval& eval,
                    const Point& point) {
    const long m = x - 1;
    const auto q = [&](long n) {
        const cplx z = point(n);
        return (1.0 - eval(n)) / (1.0 - z);
    };
    CompensatedSum sum;
    sum.add(q(0).real());
    sum.add((m % 2 == 0 ? 1.0 : -1.0) * q(half).real());
    for (long n = 1; n < half; ++n) {
        const cplx term = q(n) * std::conj(lattice.root(static_cast<long long>(n) * m));
        sum.add(2.0 * term.real());
    }
    const double scale = 1.0 / (2.0 * half) * std::exp(-m * std::log(radius));
    return sum.value() * scale;
}

template <class Run>
CcdfResult invert_with_retry(long x, const InversionOptions& options, const Run& run) {
    if (x < 1) {
        throw std::invalid_argument("invert_ccdf: threshold must be at least one lattice step");
    }
    if (options.l < 1) {
        throw std::invalid_argument("invert_ccdf: l must be at least one");
    }
    CcdfResult res;
    res.x_slots = x;
    res.lattice_size = x * options.l;
    res.radius = options.radius.value_or(default_radius(x, options.gamma));
    double prob = 0.0;
    try {
        prob = run(res.radius, res.lattice_size);
    } catch (const GfEvaluationError&) {
        res.radius *= res.radius;
        prob = run(res.radius, res.lattice_size);
    }
    res.probability = std::clamp(prob, 0.0, 1.0);
    res.theta = reliability_index(res.probability, options.theta_cap);
    return res;
}

}  // namespace

double default_radius(long x, double gamma) {
    return std::pow(10.0, -gamma / (2.0 * static_cast<double>(x)));
}

CcdfResult invert_ccdf(const std::function<cplx(cplx)>& gf, long x,
                       const InversionOptions& options) {
    return invert_with_retry(x, options, [&](double radius, long half) {
        const Lattice lattice(radius, 2 * half);
        const auto point = [&](long n) { return lattice.point(n); };
        const auto eval = [&](long n) { return gf(lattice.point(n)); };
        return contour_tail(x, half, radius, lattice, eval, point);
    });
}

CcdfResult invert_ccdf(const DelayGf& gf, long x, const InversionOptions& options) {
    return invert_with_retry(x, options, [&](double radius, long half) {
        const Lattice lattice(radius, 2 * half);
        const auto on = gf.on(lattice);
        const auto point = [&](long n) { return lattice.point(n); };
        const auto eval = [&](long n) { return on.total(n); };
        return contour_tail(x, half, radius, lattice, eval, point);
    });
}

long delay_slots(double delay_ms, const PhyProfile& phy) {
    return std::max(1L, std::lround(delay_ms * 1000.0 / phy.delta_us));
}

CcdfResult delay_violation(const DelayGf& gf, double delay_ms, const PhyProfile& phy,
                           const InversionOptions& options) {
    return invert_ccdf(gf, delay_slots(delay_ms, phy), options);
}

double reliability_index(double prob, double cap) {
    if (!(prob > 0.0)) {
        return cap;
    }
    return std::min(cap, std::max(0.0, -std::log10(prob)));
}

}  // namespace mledca
