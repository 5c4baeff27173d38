#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mledca/airtime.hpp"
#include "mledca/fixed_point.hpp"
#include "mledca/scenario.hpp"
#include "mledca/zone_model.hpp"

namespace mledca {

using cplx = std::complex<double>;

/// Raised when a generating function is evaluated too close to one of its poles.
class GfEvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// c * z^exponent, exponent in lattice steps.
struct GfTerm {
    double coef = 0.0;
    int exponent = 0;
};

/// The points z_n = r * exp(2 pi i n / M), n = 0..M-1, plus a table of the
/// unit roots so that z_n^e can be formed without trigonometry.
class Lattice {
public:
    Lattice(double radius, long size);

    double radius() const { return radius_; }
    long size() const { return size_; }
    /// exp(2 pi i m / M) for any integer m.
    cplx root(long long m) const;
    cplx point(long n) const { return radius_ * root(n); }

private:
    double radius_;
    long size_;
    std::shared_ptr<const std::vector<cplx>> roots_;
};

/// Delay generating function of one tagged AC on a link, built from a converged
/// fixed point. Immutable once built; every evaluation is independent.
///
/// Delay is measured on the lattice of step delta: one unit per delta microseconds.
/// The total delay of a packet mixes the first packet of a TXOP (AIFS defer,
/// backoff with collisions, data airtime) with the N-1 follow-up packets that
/// each cost one DATA/ACK exchange.
class DelayGf {
public:
    DelayGf(const LinkScenario& link, const ZoneModel& zm, const FixedPointSolution& sol,
            std::size_t ac);

    std::size_t ac() const { return ac_; }

    cplx defer(cplx z) const;                 // AIFS defer, restarted by interruptions
    cplx occupancy(cplx z) const;             // one backoff slot as seen by the tagged station
    cplx collision(cplx z) const;             // own RTS collision plus the defer that follows
    cplx blocked_collision(cplx z) const { return collision(z); }
    cplx blocked_success(cplx z, std::size_t other_ac) const;
    cplx backoff(cplx z) const;               // all backoff stages up to the successful attempt
    cplx transmission(cplx z) const;          // data airtime
    cplx total(cplx z) const;

    /// Probability that the tagged station is blocked by a successful TXOP of AC `other_ac`.
    double gamma(std::size_t other_ac) const { return gamma_[other_ac]; }
    /// Probability of a slot lost to a collision among other stations.
    double nu() const { return nu_; }
    double collision_probability() const { return c_; }
    int txop_packets() const { return n_txop_; }

    /// Idle probability over the whole AIFS defer (1 when the AC has the smallest AIFS).
    double defer_idle_probability() const { return defer_s_; }
    const std::vector<GfTerm>& defer_interruptions() const { return defer_terms_; }

    /// Evaluates D(z_n) on a lattice. Cheaper than total() because every power
    /// of z_n is a table lookup.
    class LatticeEvaluator {
    public:
        LatticeEvaluator(const DelayGf& gf, const Lattice& lattice);
        cplx total(long n) const;

    private:
        const DelayGf& gf_;
        const Lattice& lattice_;
        std::vector<double> magnitude_;  // r^e for every exponent 0..max used
    };

    LatticeEvaluator on(const Lattice& lattice) const { return LatticeEvaluator(*this, lattice); }

    /// Largest exponent appearing anywhere in the function.
    int max_exponent() const;

private:
    struct Parts {
        cplx defer;
        cplx occupancy;
        cplx collision;
        cplx backoff;
        cplx total;
    };

    template <class Power>
    Parts evaluate(const Power& zpow) const;

    template <class Power>
    cplx eval_defer(const Power& zpow) const;

    std::size_t ac_;
    double c_ = 0.0;
    int n_txop_ = 1;

    // defer
    int aifs_exp_ = 0;
    double defer_s_ = 1.0;
    std::vector<GfTerm> defer_terms_;

    // occupancy: (1 - c) z^slot + defer(z) * sum(busy terms)
    int slot_exp_ = 0;
    std::vector<GfTerm> busy_terms_;
    std::vector<double> gamma_;
    std::vector<int> success_exp_;
    double nu_ = 0.0;
    int collision_exp_ = 0;

    // backoff
    std::vector<int> windows_;
    std::vector<double> stage_weight_;  // eta * c^i

    int data_exp_ = 0;
    int delta_exp_ = 0;
};

/// Uniform backoff window: (1 - y^f) / (f (1 - y)), the mean of y^b over b = 0..f-1.
cplx uniform_window(cplx y, int f);

/// y^k for k >= 0 by repeated squaring.
cplx ipow(cplx y, int k);

}  // namespace mledca
