#ifndef HOSPT_TOPOLOGY_HPP
#define HOSPT_TOPOLOGY_HPP

#include <array>
#include <vector>

#include "hospt/fock.hpp"
#include "hospt/hamiltonian.hpp"
#include "hospt/lattice.hpp"
#include "hospt/pump.hpp"
#include "hospt/solver.hpp"

namespace hospt {

struct ZakGrid {
    int n_theta = 32;   // flux points per Wilson loop
    int n_lambda = 48;  // schedule points per pump cycle
    EigsConfig eigs{.tol = 1e-9};
    int corner_link_sign = -1;
    double min_overlap = 0.5; // Wilson-product guard
};

// Discrete Berry phase of the ground state of H(lambda) + H_c(theta) around
// the flux loop at one corner (0-based), in (-pi, pi]. Gauge invariant by
// construction (Wilson-loop product of overlaps).
double zak_phase(const LatticeSpec& lat, const Sector& sector,
                 const PumpSchedule& schedule, double lambda, int corner,
                 const ZakGrid& grid, double* min_overlap = nullptr,
                 std::vector<std::complex<double>>* warm = nullptr);

struct ZakProfile {
    std::vector<double> lambda;             // ascending grid over [0, 2pi)
    std::array<std::vector<double>, 4> gamma; // unwrapped, one per corner
    std::array<double, 4> winding{};        // cycle winding / 2pi, pump direction
    double min_overlap = 1.0;
    double min_gap_estimate = 0.0;
    bool gap_flag = false;
};

ZakProfile zak_profile(const LatticeSpec& lat, const Sector& sector,
                       const PumpSchedule& schedule, const ZakGrid& grid);

struct ChernResult {
    std::array<int, 4> c{};
    std::array<double, 4> residual{};
    double min_overlap = 1.0;
};

// Chern numbers as the winding of each corner Zak phase over one pump cycle,
// traversed in the pump direction (descending lambda).
ChernResult chern_numbers(const ZakProfile& profile);
ChernResult chern_numbers(const LatticeSpec& lat, const Sector& sector,
                          const PumpSchedule& schedule, const ZakGrid& grid);

// delta_q_i = -(gamma_i(l_end) - gamma_i(l_start)) / 2pi on the unwrapped
// branch; both endpoints must lie on the profile grid. The pump half cycle
// runs from l_start = pi down to l_end = 0.
std::array<double, 4> delta_q_from_zak(const ZakProfile& profile,
                                       double lambda_start, double lambda_end);

// J_i = -i [n_i, H^C]: transport current through the two links at corner i
// (0-based), for links of strength sign*J. Hermitian and traceless, with
// purely imaginary off-diagonal elements.
SparseOperator transport_current(const LatticeSpec& lat, const Sector& sector,
                                 int corner, double j_mhz, int sign = -1);

} // namespace hospt

#endif
