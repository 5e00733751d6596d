#include "hospt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hospt/errors.hpp"
#include "hospt/io.hpp"
#include "hospt/rng.hpp"

namespace hospt {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    std::optional<Clock::time_point> at;

    explicit Deadline(std::optional<double> budget_seconds) {
        if (budget_seconds)
            at = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(
                                        *budget_seconds));
    }
    void check(const char* what) const {
        if (at && Clock::now() > *at)
            throw BudgetError(std::string("wall-clock budget exceeded in ") +
                              what);
    }
};

std::vector<double> draw_xi(std::uint64_t seed, int n_sites) {
    SplitMix64 rng(seed);
    std::vector<double> xi(n_sites);
    for (auto& x : xi)
        x = rng.next_pm1();
    return xi;
}

void finalize_point(EnsemblePoint& pt) {
    std::vector<double> ok;
    for (double v : pt.values)
        if (std::isfinite(v))
            ok.push_back(v);
    if (ok.empty()) {
        pt.mean = pt.stddev = pt.median = std::nan("");
        return;
    }
    pt.mean = std::accumulate(ok.begin(), ok.end(), 0.0) / ok.size();
    double ss = 0.0;
    for (double v : ok)
        ss += (v - pt.mean) * (v - pt.mean);
    pt.stddev = ok.size() > 1 ? std::sqrt(ss / (ok.size() - 1)) : 0.0;
    std::sort(ok.begin(), ok.end());
    const std::size_t mid = ok.size() / 2;
    pt.median = ok.size() % 2 ? ok[mid] : 0.5 * (ok[mid - 1] + ok[mid]);
}

void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0)
        omp_set_num_threads(n);
#else
    (void)n;
#endif
}

// E0(k+1; lambda) - E0(k; lambda) minimized over the pump path, hard-core
// model under CPBC at half filling
double charge_gap(const LatticeSpec& lat, const PumpSchedule& schedule,
                  int n_lambda, const std::vector<double>* xi, double w_mhz,
                  const EigsConfig& eigs, double* argmin_lambda = nullptr) {
    const int k = lat.n_sites() / 2;
    const Sector lower = Sector::enumerate(lat.n_sites(), k);
    const Sector upper = Sector::enumerate(lat.n_sites(), k + 1);

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::complex<double>> warm_lo, warm_up;
    for (int m = 0; m < n_lambda; ++m) {
        const double lambda = 2.0 * M_PI * m / n_lambda;
        HamiltonianTerms terms = build_obc(lat, schedule.j_of_lambda(lambda),
                                           schedule.j_total());
        add_onsite(terms, lat, schedule.h_of_lambda(lambda),
                   schedule.variant);
        add_corner_links(terms, lat, schedule.j_of_lambda(lambda), -1);
        if (xi)
            add_disorder(terms, *xi, w_mhz);

        GroundState lo = ground_state(assemble(terms, lower), eigs,
                                      warm_lo.empty() ? nullptr : &warm_lo);
        GroundState up = ground_state(assemble(terms, upper), eigs,
                                      warm_up.empty() ? nullptr : &warm_up);
        warm_lo = lo.psi;
        warm_up = up.psi;
        if (up.energy - lo.energy < best) {
            best = up.energy - lo.energy;
            if (argmin_lambda)
                *argmin_lambda = lambda;
        }
    }
    return best;
}

EnsembleResult run_ensemble(const LatticeSpec& lat, const SweepConfig& cfg,
                            const std::string& kind,
                            double (*job)(const LatticeSpec&,
                                          const SweepConfig&, double,
                                          const std::vector<double>&)) {
    if (cfg.realizations < 1)
        throw ConfigError("realizations must be >= 1");
    if (!std::is_sorted(cfg.grid.begin(), cfg.grid.end()) ||
        std::adjacent_find(cfg.grid.begin(), cfg.grid.end()) !=
            cfg.grid.end())
        throw ConfigError("sweep grid must be strictly increasing");

    set_threads(cfg.threads);
    Deadline deadline(cfg.budget_seconds);

    EnsembleResult out;
    out.kind = kind;
    out.base_seed = cfg.base_seed;
    out.realizations = cfg.realizations;
    out.version_tag = kVersionTag;
    out.points.resize(cfg.grid.size());

    const int n_jobs =
        static_cast<int>(cfg.grid.size()) * cfg.realizations;
    for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
        auto& pt = out.points[g];
        pt.grid_value = cfg.grid[g];
        pt.values.assign(cfg.realizations, std::nan(""));
        pt.seeds.assign(cfg.realizations, 0);
        for (int r = 0; r < cfg.realizations; ++r)
            pt.seeds[r] = stream_seed(cfg.base_seed, cfg.grid[g], r);
    }

    std::atomic<int> failures{0};
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < n_jobs; ++idx) {
        const int g = idx / cfg.realizations;
        const int r = idx % cfg.realizations;
        auto& pt = out.points[g];
        try {
            deadline.check(kind.c_str());
            const auto xi = draw_xi(pt.seeds[r], lat.n_sites());
            pt.values[r] = job(lat, cfg, pt.grid_value, xi);
        } catch (const BudgetError&) {
            ++failures;
#pragma omp critical
            {
                if (out.valid) {
                    out.valid = false;
                }
            }
        } catch (const Error&) {
            ++failures;
#pragma omp critical
            {
                ++pt.failures;
            }
        }
    }
    deadline.check(kind.c_str());

    for (auto& pt : out.points)
        finalize_point(pt);
    if (failures.load() * 10 > n_jobs)
        out.valid = false;
    return out;
}

double disorder_job(const LatticeSpec& lat, const SweepConfig& cfg, double w,
                    const std::vector<double>& xi) {
    PumpOptions opt;
    opt.half_cycle = true;
    opt.sample_every_ns = cfg.schedule.t0_ns / 2.0;
    opt.disorder = DisorderSpec{xi, w};
    const Sector sector =
        Sector::enumerate(lat.n_sites(), lat.n_sites() / 2);
    PumpRecord rec = run_pump(lat, cfg.schedule, sector, cfg.prop, opt,
                              cfg.eigs);
    if (!rec.valid)
        throw NumericalError("pump realization failed: " + rec.error);
    return rec.delta_q;
}

double gap_job(const LatticeSpec& lat, const SweepConfig& cfg, double w,
               const std::vector<double>& xi) {
    return charge_gap(lat, cfg.schedule, cfg.n_lambda, &xi, w, cfg.eigs);
}

} // namespace

EnsembleResult disorder_sweep(const LatticeSpec& lat, const SweepConfig& cfg) {
    if (cfg.schedule.variant != Variant::diag)
        throw ConfigError("the disorder sweep is defined for the diagonal "
                          "pump");
    return run_ensemble(lat, cfg, "disorder_delta_q", disorder_job);
}

EnsembleResult gap_vs_disorder(const LatticeSpec& lat,
                               const SweepConfig& cfg) {
    return run_ensemble(lat, cfg, "gap_vs_disorder", gap_job);
}

std::vector<GapCurvePoint> gap_vs_h0(const LatticeSpec& lat, Variant variant,
                                     const std::vector<double>& h0_grid,
                                     double j0_mhz, int n_lambda,
                                     const EigsConfig& eigs) {
    if (h0_grid.empty())
        throw ConfigError("empty h0 grid");
    std::vector<GapCurvePoint> out(h0_grid.size());
    for (std::size_t i = 0; i < h0_grid.size(); ++i) {
        PumpSchedule sched;
        sched.variant = variant;
        sched.j0_mhz = j0_mhz;
        sched.h0_mhz = h0_grid[i];
        out[i].h0_mhz = h0_grid[i];
        out[i].gap_mhz = charge_gap(lat, sched, n_lambda, nullptr, 0.0, eigs,
                                    &out[i].argmin_lambda);
    }
    return out;
}

std::vector<PeriodScanPoint> period_scan(const LatticeSpec& lat,
                                         const PumpSchedule& base,
                                         const std::vector<double>& t0_grid_ns,
                                         const PropagatorConfig& prop,
                                         std::optional<double> budget_seconds,
                                         const EigsConfig& eigs) {
    if (t0_grid_ns.empty())
        throw ConfigError("empty T0 grid");
    Deadline deadline(budget_seconds);

    const Sector sector =
        Sector::enumerate(lat.n_sites(), lat.n_sites() / 2);
    const int corner = lat.corners()[0];
    const int adj = lat.site(0, 1); // y neighbor of c1

    std::vector<PeriodScanPoint> out;
    out.reserve(t0_grid_ns.size());
    for (double t0 : t0_grid_ns) {
        deadline.check("period_scan");
        PumpSchedule sched = base;
        sched.t0_ns = t0;

        PumpOptions opt;
        opt.half_cycle = true;
        opt.sample_every_ns = t0 / 2.0;
        PropagatorConfig step = prop;
        // long periods do not need sub-ns steps; keep ~4000 per half cycle
        step.dt_ns = std::max(prop.dt_ns, t0 / 8000.0);

        PumpRecord rec = run_pump(lat, sched, sector, step, opt, eigs);
        if (!rec.valid)
            throw NumericalError("period scan point T0 = " +
                                 std::to_string(t0) + " failed: " + rec.error);
        const auto& p1 = rec.p1.back();
        PeriodScanPoint pt;
        pt.t0_ns = t0;
        pt.delta_q = rec.delta_q;
        const double denom = p1[corner] + p1[adj];
        pt.delta_p = denom > 0.0 ? (p1[corner] - p1[adj]) / denom : 0.0;
        out.push_back(pt);
    }
    return out;
}

double effective_coupling(double g12, double g1c, double g2c, double w1,
                          double w2, double wc) {
    if (w1 == wc || w2 == wc)
        throw ConfigError("effective coupling diverges at qubit-coupler "
                          "resonance");
    return g12 + 0.5 * g1c * g2c * (1.0 / (w1 - wc) + 1.0 / (w2 - wc));
}

} // namespace hospt
