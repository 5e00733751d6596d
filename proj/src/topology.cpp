#include "hospt/topology.hpp"

#include <cmath>
#include <string>

#include "hospt/errors.hpp"

namespace hospt {

namespace {

double wrap_angle(double x) {
    x = std::fmod(x + M_PI, 2.0 * M_PI);
    if (x < 0)
        x += 2.0 * M_PI;
    return x - M_PI;
}

SparseOperator twisted_hamiltonian(const LatticeSpec& lat,
                                   const Sector& sector,
                                   const PumpSchedule& schedule, double lambda,
                                   int corner, double theta, int sign) {
    HamiltonianTerms terms = build_obc(lat, schedule.j_of_lambda(lambda),
                                       schedule.j_total());
    add_onsite(terms, lat, schedule.h_of_lambda(lambda), schedule.variant);
    add_corner_links(terms, lat, schedule.j_of_lambda(lambda), sign,
                     FluxSpec{corner + 1, theta});
    return assemble(terms, sector);
}

} // namespace

double zak_phase(const LatticeSpec& lat, const Sector& sector,
                 const PumpSchedule& schedule, double lambda, int corner,
                 const ZakGrid& grid, double* min_overlap,
                 std::vector<std::complex<double>>* warm) {
    if (grid.n_theta < 8)
        throw ConfigError("n_theta must be at least 8");
    if (corner < 0 || corner > 3)
        throw ConfigError("corner index must be 0..3");

    std::vector<std::vector<std::complex<double>>> states;
    states.reserve(grid.n_theta);
    std::vector<std::complex<double>> start;
    if (warm && !warm->empty())
        start = *warm;

    for (int m = 0; m < grid.n_theta; ++m) {
        const double theta = 2.0 * M_PI * m / grid.n_theta;
        SparseOperator h = twisted_hamiltonian(lat, sector, schedule, lambda,
                                               corner, theta, grid.corner_link_sign);
        GroundState gs =
            ground_state(h, grid.eigs, start.empty() ? nullptr : &start);
        start = gs.psi;
        states.push_back(std::move(gs.psi));
    }
    if (warm)
        *warm = states.front();

    // gauge-invariant Wilson loop of overlaps around the closed theta cycle
    std::complex<double> loop = 1.0;
    double overlap_min = 1.0;
    for (int m = 0; m < grid.n_theta; ++m) {
        const auto& bra = states[m];
        const auto& ket = states[(m + 1) % grid.n_theta];
        std::complex<double> o = 0.0;
        for (std::size_t i = 0; i < bra.size(); ++i)
            o += std::conj(bra[i]) * ket[i];
        overlap_min = std::min(overlap_min, std::abs(o));
        loop *= o;
    }
    if (min_overlap)
        *min_overlap = overlap_min;
    if (overlap_min < grid.min_overlap)
        throw NumericalError(
            "Wilson overlap " + std::to_string(overlap_min) +
            " below " + std::to_string(grid.min_overlap) +
            " at lambda = " + std::to_string(lambda) +
            "; refine the theta grid or check for a gap closure");
    return -std::arg(loop);
}

ZakProfile zak_profile(const LatticeSpec& lat, const Sector& sector,
                       const PumpSchedule& schedule, const ZakGrid& grid) {
    if (grid.n_lambda < 12)
        throw ConfigError("n_lambda must be at least 12");

    ZakProfile prof;
    prof.lambda.resize(grid.n_lambda);
    for (int m = 0; m < grid.n_lambda; ++m)
        prof.lambda[m] = 2.0 * M_PI * m / grid.n_lambda;

    for (int c = 0; c < 4; ++c) {
        std::vector<double> raw(grid.n_lambda);
        std::vector<std::complex<double>> warm;
        for (int m = 0; m < grid.n_lambda; ++m) {
            double omin = 1.0;
            try {
                raw[m] = zak_phase(lat, sector, schedule, prof.lambda[m], c,
                                   grid, &omin, &warm);
            } catch (const NumericalError&) {
                prof.gap_flag = true;
                throw;
            }
            prof.min_overlap = std::min(prof.min_overlap, omin);
        }
        // continuity unwrap along ascending lambda
        auto& gamma = prof.gamma[c];
        gamma.resize(grid.n_lambda);
        gamma[0] = raw[0];
        for (int m = 1; m < grid.n_lambda; ++m)
            gamma[m] = gamma[m - 1] + wrap_angle(raw[m] - raw[m - 1]);
        // closing step: the lambda = 2pi point repeats the first Hamiltonian
        const double closure =
            gamma[grid.n_lambda - 1] +
            wrap_angle(raw[0] - raw[grid.n_lambda - 1]) - gamma[0];
        // pump direction is descending lambda, so the pump-cycle winding is
        // the negative of the ascending one
        prof.winding[c] = -closure / (2.0 * M_PI);
    }
    return prof;
}

ChernResult chern_numbers(const ZakProfile& profile) {
    ChernResult out;
    out.min_overlap = profile.min_overlap;
    for (int c = 0; c < 4; ++c) {
        const double w = profile.winding[c];
        out.c[c] = static_cast<int>(std::lround(w));
        out.residual[c] = std::abs(w - out.c[c]);
        if (out.residual[c] >= 0.05)
            throw NumericalError(
                "winding residual " + std::to_string(out.residual[c]) +
                " at corner " + std::to_string(c + 1) +
                "; refine the lambda grid or check for a gap closure");
    }
    return out;
}

ChernResult chern_numbers(const LatticeSpec& lat, const Sector& sector,
                          const PumpSchedule& schedule, const ZakGrid& grid) {
    return chern_numbers(zak_profile(lat, sector, schedule, grid));
}

std::array<double, 4> delta_q_from_zak(const ZakProfile& profile,
                                       double lambda_start,
                                       double lambda_end) {
    auto index_of = [&](double lambda) -> std::size_t {
        for (std::size_t m = 0; m < profile.lambda.size(); ++m)
            if (std::abs(profile.lambda[m] - lambda) < 1e-9)
                return m;
        throw UsageError("lambda = " + std::to_string(lambda) +
                         " is not on the profile grid");
    };
    const std::size_t a = index_of(lambda_start);
    const std::size_t b = index_of(lambda_end);
    std::array<double, 4> dq{};
    for (int c = 0; c < 4; ++c)
        dq[c] = -(profile.gamma[c][b] - profile.gamma[c][a]) / (2.0 * M_PI);
    return dq;
}

SparseOperator transport_current(const LatticeSpec& lat, const Sector& sector,
                                 int corner, double j_mhz, int sign) {
    if (corner < 0 || corner > 3)
        throw ConfigError("corner index must be 0..3");
    HamiltonianTerms terms;
    terms.n_sites = lat.n_sites();
    terms.potential.assign(lat.n_sites(), 0.0);
    const int c_site = lat.corners()[corner];
    // d/dtheta at theta = 0 of the twisted links: -i t a+_c a_nbr + h.c.
    for (const Bond& link : lat.corner_links()) {
        if (link.a != c_site && link.b != c_site)
            continue;
        const double t = sign * j_mhz;
        const int nbr = link.a == c_site ? link.b : link.a;
        terms.hoppings.push_back(
            {c_site, nbr, std::complex<double>(0.0, -t)});
    }
    return assemble(terms, sector);
}

} // namespace hospt
