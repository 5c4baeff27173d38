#include "mledca/fixed_point.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace mledca {

namespace {

// 1 + q + ... + q^(width-1)
double geometric_run(double q, int width) {
    double sum = 0.0;
    double term = 1.0;
    for (int t = 0; t < width; ++t) {
        sum += term;
        term *= q;
    }
    return sum;
}

double silent_eligible(const LinkScenario& link, const ZoneModel& zm, std::span<const double> p,
                       int zone) {
    double q = 1.0;
    for (std::size_t i = 0; i < link.acs.size(); ++i) {
        if (zm.eligible(i, zone)) {
            q *= std::pow(1.0 - p[i], link.acs[i].n_stations);
        }
    }
    return q;
}

}  // namespace

ConvergenceError::ConvergenceError(double residual, int iterations)
    : std::runtime_error("fixed point did not converge after " + std::to_string(iterations) +
                         " iterations (residual " + std::to_string(residual) + ")"),
      residual_(residual),
      iterations_(iterations) {}

ZoneStationary zone_stationary(const LinkScenario& link, const ZoneModel& zm,
                               std::span<const double> p) {
    assert(p.size() == link.acs.size());
    const int zones = zm.num_zones();
    ZoneStationary zs;
    zs.q.resize(static_cast<std::size_t>(zones));
    for (int z = 1; z <= zones; ++z) {
        zs.q[z - 1] = silent_eligible(link, zm, p, z);
    }
    zs.alpha.assign(static_cast<std::size_t>(zones), 1.0);
    for (int z = 1; z < zones; ++z) {
        zs.alpha[z] = zs.alpha[z - 1] * std::pow(zs.q[z - 1], zm.zone_width(z));
    }

    zs.pi.assign(static_cast<std::size_t>(zones), 0.0);
    const double q_last = zs.q.back();
    if (q_last >= 1.0) {
        // Nobody ever transmits: the idle run never ends and all mass sits in the last zone.
        zs.degenerate = true;
        zs.pi.back() = 1.0;
        zs.pi00 = 0.0;
        return zs;
    }

    double total = 0.0;
    for (int z = 1; z < zones; ++z) {
        zs.pi[z - 1] = zs.alpha[z - 1] * geometric_run(zs.q[z - 1], zm.zone_width(z));
        total += zs.pi[z - 1];
    }
    zs.pi.back() = zs.alpha.back() / (1.0 - q_last);
    total += zs.pi.back();

    zs.pi00 = 1.0 / total;
    for (double& v : zs.pi) {
        v *= zs.pi00;
    }
    return zs;
}

std::vector<double> conditional_zone_weights(const ZoneStationary& zs, const ZoneModel& zm,
                                             int first_zone) {
    const int zones = zm.num_zones();
    std::vector<double> w(static_cast<std::size_t>(zones), 0.0);
    if (zs.degenerate) {
        w.back() = 1.0;
        return w;
    }
    // Masses relative to the probability of reaching first_zone, so that a
    // vanishing alpha (starved low-priority AC) still yields a proper law.
    double reach = 1.0;
    double total = 0.0;
    for (int z = first_zone; z <= zones; ++z) {
        const double q = zs.q[z - 1];
        double mass = 0.0;
        if (z < zones) {
            mass = reach * geometric_run(q, zm.zone_width(z));
            reach *= std::pow(q, zm.zone_width(z));
        } else {
            mass = reach / (1.0 - q);
        }
        w[z - 1] = mass;
        total += mass;
    }
    for (double& v : w) {
        v /= total;
    }
    return w;
}

double others_silent(const LinkScenario& link, const ZoneModel& zm, std::span<const double> p,
                     std::size_t ac, int zone) {
    double silent = 1.0;
    for (std::size_t i = 0; i < link.acs.size(); ++i) {
        if (!zm.eligible(i, zone)) {
            continue;
        }
        const int others = link.acs[i].n_stations - (i == ac ? 1 : 0);
        silent *= std::pow(1.0 - p[i], others);
    }
    return silent;
}

double collision_prob(const LinkScenario& link, const ZoneModel& zm, const ZoneStationary& zs,
                      std::span<const double> p, std::size_t ac) {
    const int z0 = zm.first_zone[ac];
    const auto w = conditional_zone_weights(zs, zm, z0);
    double c = 0.0;
    for (int z = z0; z <= zm.num_zones(); ++z) {
        c += w[z - 1] * (1.0 - others_silent(link, zm, p, ac, z));
    }
    return std::clamp(c, 0.0, 1.0);
}

double tx_prob(double c, const AcEdcaConfig& ac) {
    c = std::clamp(c, 0.0, kCollisionClamp);
    const int stages = ac.max_backoff_stage();
    double series = 0.0;
    double ck = 1.0;
    for (int j = 0; j < ac.retry_limit; ++j) {
        const double window = std::ldexp(static_cast<double>(ac.cw_min), std::min(j, stages));
        series += ck * (window - 1.0);
        ck *= c;
    }
    // ck == c^R here
    const double eta = (1.0 - c) / (1.0 - ck);
    const double p = 2.0 / (eta * series);
    return std::clamp(p, 0.0, 1.0);
}

FixedPointSolution solve(const LinkScenario& link, const SolverOptions& options) {
    return solve(link, build_zones(link), options);
}

FixedPointSolution solve(const LinkScenario& link, const ZoneModel& zm,
                         const SolverOptions& options) {
    const std::size_t n = link.acs.size();
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = std::min(1.0, 2.0 / (link.acs[i].cw_min + 1.0));
    }
    std::vector<double> c(n, 0.0);
    std::vector<double> next(n);

    const double lambda = options.damping;
    double residual = 0.0;
    int it = 0;
    bool converged = false;
    while (it < options.max_iter) {
        ++it;
        const auto zs = zone_stationary(link, zm, p);
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = collision_prob(link, zm, zs, p, i);
            next[i] = tx_prob(c[i], link.acs[i]);
            residual = std::max(residual, std::abs(next[i] - p[i]));
        }
        if (residual < options.tolerance) {
            converged = true;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = (1.0 - lambda) * p[i] + lambda * next[i];
        }
    }
    if (!converged) {
        throw ConvergenceError(residual, it);
    }

    FixedPointSolution sol;
    sol.p = p;
    sol.zones = zone_stationary(link, zm, p);
    sol.c.resize(n);
    sol.r.resize(n);
    sol.loss.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sol.c[i] = std::min(collision_prob(link, zm, sol.zones, p, i), kCollisionClamp);
        sol.r[i] = 1.0 - p[i];
        sol.loss[i] = std::pow(sol.c[i], link.acs[i].retry_limit);
    }
    sol.iterations = it;
    sol.residual = residual;
    return sol;
}

}  // namespace mledca
