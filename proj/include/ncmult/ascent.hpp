#pragma once

#include "ncmult/rng.hpp"

#include <cmath>
#include <future>
#include <stdexcept>
#include <vector>

namespace ncmult {

struct NormBudget {
    int restarts = 4;
    int iterations = 60;
    double tol = 1e-9;
    std::uint64_t seed = 1;
};

inline double conjugate_exponent(double p) {
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

template <class V>
struct AscentOutcome {
    double value = 0.0;
    V witness{};
    bool converged = false;
};

// Nonlinear power iteration for certified lower bounds of ||T||_{p->p}:
// w <- dual of T*(dual of T w), all duals through polar + fractional powers.
// Every reported value is ||T w||_p for a unit witness, so it never exceeds
// the true norm. A Space supplies:
//   Vec apply(Vec), Vec apply_adjoint(Vec)
//   double norm(Vec, p)
//   Vec dual(Vec, p)        unit L_{p'} element norming the input
//   Vec scale(Vec, double)
//   Vec random_start(Rng&)
template <class Space>
AscentOutcome<typename Space::Vec> power_ascent(
    const Space& space, double p, const NormBudget& budget,
    std::vector<typename Space::Vec> warm_starts = {}) {
    using V = typename Space::Vec;
    if (budget.restarts <= 0 || budget.iterations <= 0)
        throw std::invalid_argument("power_ascent: zero budget");
    const double pc = conjugate_exponent(p);

    auto run_one = [&](V start) {
        AscentOutcome<V> out;
        const double wn = space.norm(start, p);
        if (!(wn > 0.0)) return out;
        V w = space.scale(start, 1.0 / wn);
        double prev = -1.0;
        for (int it = 0; it < budget.iterations; ++it) {
            V z = space.apply(w);
            const double v = space.norm(z, p);
            if (v > out.value) {
                out.value = v;
                out.witness = w;
            }
            if (!(v > 0.0)) break;
            if (prev >= 0.0 && std::abs(v - prev) <= budget.tol * std::max(1.0, v)) {
                out.converged = true;
                break;
            }
            prev = v;
            V y = space.dual(z, p);
            V g = space.apply_adjoint(y);
            if (!(space.norm(g, pc) > 0.0)) break;
            w = space.dual(g, pc);
        }
        // report the exact quotient for the recorded witness
        const double nw = space.norm(out.witness, p);
        if (nw > 0.0) out.value = space.norm(space.apply(out.witness), p) / nw;
        return out;
    };

    std::vector<V> starts = std::move(warm_starts);
    Rng rng(budget.seed);
    for (int r = 0; r < budget.restarts; ++r) {
        Rng sub = rng.substream(std::uint64_t(r));
        starts.push_back(space.random_start(sub));
    }

    std::vector<std::future<AscentOutcome<V>>> jobs;
    jobs.reserve(starts.size());
    for (auto& s : starts)
        jobs.push_back(std::async(std::launch::async, run_one, std::move(s)));

    AscentOutcome<V> best;
    for (auto& j : jobs) {
        AscentOutcome<V> o = j.get();
        if (o.value > best.value || (o.value == best.value && o.converged && !best.converged)) {
            const bool conv = o.converged;
            best = std::move(o);
            best.converged = conv;
        }
    }
    return best;
}

} // namespace ncmult
