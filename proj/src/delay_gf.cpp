#include "mledca/delay_gf.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <numbers>

namespace mledca {

namespace {

constexpr double kPoleGuard = 1e-14;

// Below this distance from 1 the closed form of the uniform window loses
// digits to cancellation; the explicit power sum is used instead.
constexpr double kWindowSeriesThreshold = 1e-4;

struct GenericPower {
    cplx z;
    cplx operator()(int e) const {
        if (e == 0) {
            return {1.0, 0.0};
        }
        const double mag = std::abs(z);
        if (mag == 0.0) {
            return {0.0, 0.0};
        }
        return std::polar(std::pow(mag, e), e * std::arg(z));
    }
};

// a / b without the inf/nan recovery of the library operator; every divisor
// here is bounded away from zero by the callers.
inline cplx divide(cplx a, cplx b) {
    const double norm = b.real() * b.real() + b.imag() * b.imag();
    return a * cplx{b.real() / norm, -b.imag() / norm};
}

}  // namespace

cplx ipow(cplx y, int k) {
    cplx result{1.0, 0.0};
    while (k > 0) {
        if (k & 1) {
            result *= y;
        }
        y *= y;
        k >>= 1;
    }
    return result;
}

cplx uniform_window(cplx y, int f) {
    if (f <= 1) {
        return {1.0, 0.0};
    }
    const cplx one_minus = 1.0 - y;
    if (std::abs(one_minus) < kWindowSeriesThreshold) {
        cplx sum{0.0, 0.0};
        for (int b = f - 1; b >= 0; --b) {
            sum = sum * y + 1.0;
        }
        return sum / static_cast<double>(f);
    }
    return (1.0 - ipow(y, f)) / (static_cast<double>(f) * one_minus);
}

namespace {

constexpr std::size_t kRootCacheSize = 16;

std::vector<cplx> make_roots(long size) {
    std::vector<cplx> roots(static_cast<std::size_t>(size));
    for (long m = 0; m < size; ++m) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / size;
        roots[static_cast<std::size_t>(m)] = {std::cos(angle), std::sin(angle)};
    }
    return roots;
}

// Inversions at the same threshold reuse one table; the optimizer asks for
// the same handful of sizes over and over.
std::shared_ptr<const std::vector<cplx>> unit_roots(long size) {
    thread_local std::deque<std::pair<long, std::shared_ptr<const std::vector<cplx>>>> cache;
    for (const auto& [n, table] : cache) {
        if (n == size) {
            return table;
        }
    }
    auto table = std::make_shared<const std::vector<cplx>>(make_roots(size));
    cache.emplace_front(size, table);
    if (cache.size() > kRootCacheSize) {
        cache.pop_back();
    }
    return table;
}

}  // namespace

Lattice::Lattice(double radius, long size)
    : radius_(radius), size_(size), roots_(unit_roots(size)) {}

cplx Lattice::root(long long m) const {
    long long idx = m % size_;
    if (idx < 0) {
        idx += size_;
    }
    return (*roots_)[static_cast<std::size_t>(idx)];
}

DelayGf::DelayGf(const LinkScenario& link, const ZoneModel& zm, const FixedPointSolution& sol,
                 std::size_t ac)
    : ac_(ac) {
    const auto& phy = link.phy;
    const std::size_t count = link.acs.size();
    std::vector<AcTiming> timing(count);
    for (std::size_t i = 0; i < count; ++i) {
        timing[i] = ac_timing(link.acs[i], phy);
    }
    const auto& cfg = link.acs[ac];
    const auto& p = sol.p;
    const auto& r = sol.r;
    c_ = sol.c[ac];
    n_txop_ = timing[ac].n_txop;

    const double aifs_k = aifs_of(cfg, phy);
    const double aifs_min = aifs_of(link.acs[zm.sorted_acs.front()], phy);
    aifs_exp_ = to_lattice(aifs_k, phy);

    // AIFS defer: every slot of the h_k-slot gap may be taken by a higher-priority AC.
    const int h_k = zm.offset_of(ac);
    std::map<int, double> interruptions;
    double idle = 1.0;
    for (int slot = 1; slot <= h_k; ++slot) {
        const int zone = zm.zone_of_slot(slot);
        double silent = 1.0;
        for (std::size_t i = 0; i < count; ++i) {
            if (zm.eligible(i, zone)) {
                silent *= std::pow(r[i], link.acs[i].n_stations);
            }
        }
        const double busy = 1.0 - silent;
        const double mu = idle * busy;
        idle *= silent;
        if (mu <= 0.0) {
            continue;
        }
        const double start = aifs_min + (slot - 1) * phy.slot_us;
        double success_mass = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            if (!zm.eligible(i, zone)) {
                continue;
            }
            const int n_i = link.acs[i].n_stations;
            double alone = n_i * p[i] * std::pow(r[i], n_i - 1);
            for (std::size_t j = 0; j < count; ++j) {
                if (j != i && zm.eligible(j, zone)) {
                    alone *= std::pow(r[j], link.acs[j].n_stations);
                }
            }
            const double rho = alone / busy;
            success_mass += rho;
            const double xi = timing[i].n_txop * timing[i].delta - phy.sifs_us;
            interruptions[to_lattice(start + xi, phy)] += mu * rho;
        }
        // Collision branch: T_C - AIFS = RTS airtime, whoever collided.
        const double collided = std::max(0.0, 1.0 - success_mass);
        interruptions[to_lattice(start + timing[ac].t_rts, phy)] += mu * collided;
    }
    defer_s_ = idle;
    for (const auto& [e, coef] : interruptions) {
        if (coef > 0.0) {
            defer_terms_.push_back({coef, e});
        }
    }

    // Slot occupancy seen by a backing-off station of this AC.
    const int z0 = zm.first_zone[ac];
    const auto weights = conditional_zone_weights(sol.zones, zm, z0);
    const int n_k = cfg.n_stations;
    gamma_.assign(count, 0.0);
    for (std::size_t l = 0; l < count; ++l) {
        const int from = std::max(z0, zm.first_zone[l]);
        double g = 0.0;
        for (int zone = from; zone <= zm.num_zones(); ++zone) {
            double term = 0.0;
            if (l != ac) {
                const int n_l = link.acs[l].n_stations;
                term = std::pow(r[ac], n_k - 1) * n_l * p[l] * std::pow(r[l], n_l - 1);
                for (std::size_t i = 0; i < count; ++i) {
                    if (i != ac && i != l && zm.eligible(i, zone)) {
                        term *= std::pow(r[i], link.acs[i].n_stations);
                    }
                }
            } else if (n_k >= 2) {
                term = (n_k - 1) * p[ac] * std::pow(r[ac], n_k - 2);
                for (std::size_t i = 0; i < count; ++i) {
                    if (i != ac && zm.eligible(i, zone)) {
                        term *= std::pow(r[i], link.acs[i].n_stations);
                    }
                }
            }
            g += weights[zone - 1] * term;
        }
        gamma_[l] = g;
    }
    double gamma_sum = 0.0;
    for (double g : gamma_) {
        gamma_sum += g;
    }
    nu_ = std::max(0.0, c_ - gamma_sum);

    slot_exp_ = to_lattice(phy.slot_us, phy);
    collision_exp_ = to_lattice(timing[ac].t_collision, phy);
    success_exp_.assign(count, 0);
    for (std::size_t l = 0; l < count; ++l) {
        // Clamped at zero for AIFS_k larger than the blocking TXOP.
        success_exp_[l] = to_lattice(timing[l].t_success - aifs_k - phy.sifs_us, phy);
        if (gamma_[l] > 0.0) {
            busy_terms_.push_back({gamma_[l], success_exp_[l]});
        }
    }
    if (nu_ > 0.0) {
        busy_terms_.push_back({nu_, collision_exp_});
    }

    const int stages = cfg.max_backoff_stage();
    double c_pow = 1.0;
    for (int j = 0; j < cfg.retry_limit; ++j) {
        windows_.push_back(cfg.cw_min << std::min(j, stages));
        c_pow *= c_;
    }
    const double eta = (1.0 - c_) / (1.0 - c_pow);
    double w = eta;
    for (int j = 0; j < cfg.retry_limit; ++j) {
        stage_weight_.push_back(w);
        w *= c_;
    }

    data_exp_ = to_lattice(timing[ac].t_data, phy);
    delta_exp_ = to_lattice(timing[ac].delta, phy);
}

template <class Power>
cplx DelayGf::eval_defer(const Power& zpow) const {
    const cplx head = zpow(aifs_exp_);
    if (defer_terms_.empty()) {
        return defer_s_ * head;
    }
    if (defer_s_ < std::numeric_limits<double>::min()) {
        return {0.0, 0.0};  // the AIFS gap is (numerically) never idle: starved
    }
    // The coefficients sum to 1 - S, so (1 - sum coef z^e) / S = 1 + sum coef (1 - z^e) / S.
    // This form keeps full precision near z = 1 and does not underflow when S is tiny.
    cplx denom{1.0, 0.0};
    for (const auto& t : defer_terms_) {
        denom += t.coef / defer_s_ * (1.0 - zpow(t.exponent));
    }
    // Re(denom) >= 1 on the closed unit disk; smaller values only arise outside it.
    if (!(std::abs(denom) >= kPoleGuard)) {
        throw GfEvaluationError("defer generating function evaluated at a pole");
    }
    return head * divide(1.0, denom);
}

template <class Power>
DelayGf::Parts DelayGf::evaluate(const Power& zpow) const {
    Parts out;
    out.defer = eval_defer(zpow);
    cplx busy{0.0, 0.0};
    for (const auto& t : busy_terms_) {
        busy += t.coef * zpow(t.exponent);
    }
    const cplx y = (1.0 - c_) * zpow(slot_exp_) + out.defer * busy;
    out.occupancy = y;
    out.collision = out.defer * zpow(collision_exp_);

    // Window sizes double from stage to stage (or stay at the cap), so each
    // y^f follows from the previous one by at most one squaring.
    const cplx one_minus = 1.0 - y;
    const bool near_one = std::norm(one_minus) < kWindowSeriesThreshold * kWindowSeriesThreshold;
    const cplx inv = near_one ? cplx{} : divide(1.0, one_minus);
    cplx y_pow{};
    cplx backoff{0.0, 0.0};
    cplx windows{1.0, 0.0};
    cplx retries{1.0, 0.0};
    for (std::size_t i = 0; i < windows_.size(); ++i) {
        const int f = windows_[i];
        cplx u;
        if (near_one) {
            u = uniform_window(y, f);
        } else {
            if (i == 0) {
                y_pow = ipow(y, f);
            } else if (f != windows_[i - 1]) {
                y_pow *= y_pow;
            }
            u = (1.0 - y_pow) * inv / static_cast<double>(f);
        }
        windows *= u;
        backoff += stage_weight_[i] * retries * windows;
        retries *= out.collision;
    }
    out.backoff = backoff;

    const double n = static_cast<double>(n_txop_);
    out.total = backoff * zpow(data_exp_) * out.defer / n;
    if (n_txop_ > 1) {
        out.total += (n - 1.0) / n * zpow(delta_exp_);
    }
    return out;
}

cplx DelayGf::defer(cplx z) const { return eval_defer(GenericPower{z}); }
cplx DelayGf::occupancy(cplx z) const { return evaluate(GenericPower{z}).occupancy; }
cplx DelayGf::collision(cplx z) const { return evaluate(GenericPower{z}).collision; }
cplx DelayGf::backoff(cplx z) const { return evaluate(GenericPower{z}).backoff; }
cplx DelayGf::total(cplx z) const { return evaluate(GenericPower{z}).total; }
cplx DelayGf::transmission(cplx z) const { return GenericPower{z}(data_exp_); }

cplx DelayGf::blocked_success(cplx z, std::size_t other_ac) const {
    const GenericPower zpow{z};
    return eval_defer(zpow) * zpow(success_exp_.at(other_ac));
}

int DelayGf::max_exponent() const {
    int m = std::max({aifs_exp_, slot_exp_, collision_exp_, data_exp_, delta_exp_});
    for (const auto& t : defer_terms_) {
        m = std::max(m, t.exponent);
    }
    for (const auto& t : busy_terms_) {
        m = std::max(m, t.exponent);
    }
    return m;
}

DelayGf::LatticeEvaluator::LatticeEvaluator(const DelayGf& gf, const Lattice& lattice)
    : gf_(gf), lattice_(lattice) {
    const int top = gf.max_exponent();
    magnitude_.resize(static_cast<std::size_t>(top) + 1);
    const double log_r = std::log(lattice.radius());
    for (int e = 0; e <= top; ++e) {
        magnitude_[static_cast<std::size_t>(e)] = std::exp(e * log_r);
    }
}

cplx DelayGf::LatticeEvaluator::total(long n) const {
    const auto zpow = [this, n](int e) {
        return magnitude_[static_cast<std::size_t>(e)] *
               lattice_.root(static_cast<long long>(n) * e);
    };
    return gf_.evaluate(zpow).total;
}

}  // namespace mledca
