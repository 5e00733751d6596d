#ifndef HOSPT_EXPERIMENTS_HPP
#define HOSPT_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hospt/pump.hpp"
#include "hospt/solver.hpp"

namespace hospt {

struct SweepConfig {
    PumpSchedule schedule;
    std::vector<double> grid;      // W in MHz, T0 in ns, or h0 in MHz
    int realizations = 40;
    std::uint64_t base_seed = 0;
    PropagatorConfig prop;
    EigsConfig eigs;
    int n_lambda = 48;             // gap sweeps
    int threads = 0;               // 0 = library default
    std::optional<double> budget_seconds;
};

struct EnsemblePoint {
    double grid_value = 0.0;
    std::vector<double> values;    // per realization, indexed by r
    std::vector<std::uint64_t> seeds;
    int failures = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
};

struct EnsembleResult {
    std::string kind;
    std::vector<EnsemblePoint> points;
    std::uint64_t base_seed = 0;
    int realizations = 0;
    bool valid = true;             // false if > 10% of realizations failed
    std::string version_tag;
};

// Mean transport charge of the half-period diagonal pump versus disorder
// strength; one independent xi stream per (W, r).
EnsembleResult disorder_sweep(const LatticeSpec& lat, const SweepConfig& cfg);

// Minimal charge gap min_l [E0(k+1; l) - E0(k; l)] of the half-filled
// hard-core model under CPBC versus disorder strength.
EnsembleResult gap_vs_disorder(const LatticeSpec& lat, const SweepConfig& cfg);

struct GapCurvePoint {
    double h0_mhz = 0.0;
    double gap_mhz = 0.0;
    double argmin_lambda = 0.0;
};

// Clean charge gap along the pump path versus the on-site amplitude h0.
std::vector<GapCurvePoint> gap_vs_h0(const LatticeSpec& lat, Variant variant,
                                     const std::vector<double>& h0_grid,
                                     double j0_mhz, int n_lambda,
                                     const EigsConfig& eigs = {});

struct PeriodScanPoint {
    double t0_ns = 0.0;
    double delta_p = 0.0;  // (P1[c1] - P1[y-adj]) / (P1[c1] + P1[y-adj])
    double delta_q = 0.0;
};

// Non-diagonal localization versus pumping period, evaluated at T0/2.
std::vector<PeriodScanPoint> period_scan(const LatticeSpec& lat,
                                         const PumpSchedule& base,
                                         const std::vector<double>& t0_grid_ns,
                                         const PropagatorConfig& prop,
                                         std::optional<double> budget_seconds = {},
                                         const EigsConfig& eigs = {});

// Effective qubit-qubit coupling through a coupler,
// J = g12 + g1c g2c / 2 * (1/(w1-wc) + 1/(w2-wc)), all in MHz.
double effective_coupling(double g12, double g1c, double g2c, double w1,
                          double w2, double wc);

} // namespace hospt

#endif
