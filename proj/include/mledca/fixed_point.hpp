#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "mledca/scenario.hpp"
#include "mledca/zone_model.hpp"

namespace mledca {

/// Collision probabilities are kept below one by this margin before the
/// transmission-probability update, which is singular at c = 1.
inline constexpr double kCollisionClamp = 1.0 - 1e-12;

struct SolverOptions {
    double damping = 0.5;   // lambda in p <- (1 - lambda) p + lambda p_new
    double tolerance = 1e-10;
    int max_iter = 10000;
};

/// Thrown when the damped iteration does not settle within max_iter.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(double residual, int iterations);
    double residual() const { return residual_; }
    int iterations() const { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// Stationary law of the AIFS zone chain for fixed per-station transmission
/// probabilities. Zone vectors are 0-based storage for 1-based zones.
struct ZoneStationary {
    std::vector<double> pi;      // probability of each zone
    std::vector<double> q;       // probability that no eligible station transmits in a slot of the zone
    std::vector<double> alpha;   // alpha[j] = probability of crossing zones 1..j idle; alpha[0] = 1
    double pi00 = 0.0;           // probability of the first post-busy slot
    bool degenerate = false;     // q_J == 1: the channel never leaves the last zone
};

ZoneStationary zone_stationary(const LinkScenario& link, const ZoneModel& zm,
                               std::span<const double> p);

/// Conditional distribution over zones first_zone..J given that the chain has
/// reached `first_zone`. Returned vector has J entries (zeros before first_zone).
std::vector<double> conditional_zone_weights(const ZoneStationary& zs, const ZoneModel& zm,
                                             int first_zone);

/// Probability that, in zone `zone`, no station other than one tagged station of
/// AC `ac` transmits.
double others_silent(const LinkScenario& link, const ZoneModel& zm, std::span<const double> p,
                     std::size_t ac, int zone);

/// Conditional collision probability of a transmission by AC `ac`.
double collision_prob(const LinkScenario& link, const ZoneModel& zm, const ZoneStationary& zs,
                      std::span<const double> p, std::size_t ac);

/// Mean-value transmission probability for collision probability c, clamped to [0, 1].
double tx_prob(double c, const AcEdcaConfig& ac);

struct FixedPointSolution {
    std::vector<double> p;       // per AC, original order
    std::vector<double> c;
    std::vector<double> r;       // 1 - p
    std::vector<double> loss;    // c^R
    ZoneStationary zones;
    int iterations = 0;
    double residual = 0.0;
};

/// Solves the coupled zone-chain / collision / transmission system of one link.
/// Throws ConvergenceError if the iteration does not settle.
FixedPointSolution solve(const LinkScenario& link, const SolverOptions& options = {});

/// Same, reusing an already built zone model.
FixedPointSolution solve(const LinkScenario& link, const ZoneModel& zm,
                         const SolverOptions& options);

}  // namespace mledca
