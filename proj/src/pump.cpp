#include "hospt/pump.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "hospt/errors.hpp"
#include "hospt/rng.hpp"
#include "hospt/topology.hpp"

namespace hospt {

double PumpSchedule::lambda_of_t(double t_ns) const {
    if (t0_ns <= 0.0)
        throw ConfigError("pump period T0 must be positive");
    return M_PI - 2.0 * M_PI * t_ns / t0_ns;
}

double PumpSchedule::j_of_lambda(double lambda) const {
    return j0_mhz * (1.0 + std::cos(lambda));
}

double PumpSchedule::h_of_lambda(double lambda) const {
    return h0_mhz * std::sin(lambda);
}

namespace {

// H(lambda) = -J_intra * A_intra - J_inter * (A_inter + s * A_corner)
//             + h * D_sign + W * D_xi
// with the structure operators fixed along the pump; only the four scalars
// move, so a step costs two sparse applies plus a diagonal.
class ScheduledHamiltonian final : public LinearOperator {
  public:
    ScheduledHamiltonian(const LatticeSpec& lat, const PumpSchedule& sched,
                         const Sector& sector, const PumpOptions& opt)
        : schedule_(sched) {
        HamiltonianTerms intra, inter;
        intra.n_sites = inter.n_sites = lat.n_sites();
        intra.potential.assign(lat.n_sites(), 0.0);
        inter.potential.assign(lat.n_sites(), 0.0);
        for (const Bond& b : lat.bonds())
            (b.cls == BondClass::intra ? intra : inter)
                .hoppings.push_back({b.a, b.b, 1.0});
        if (opt.corner_links) {
            for (const Bond& link : lat.corner_links())
                inter.hoppings.push_back(
                    {link.a, link.b,
                     static_cast<double>(opt.corner_link_sign)});
        }
        a_intra_ = assemble(intra, sector);
        a_inter_ = assemble(inter, sector);

        const auto& states = sector.states();
        d_sign_.resize(states.size());
        d_xi_.assign(states.size(), 0.0);
        for (std::size_t m = 0; m < states.size(); ++m) {
            double s = 0.0, x = 0.0;
            std::uint64_t bits = states[m];
            while (bits) {
                const int site = std::countr_zero(bits);
                s += lat.site_sign(site, sched.variant);
                if (opt.disorder)
                    x += opt.disorder->xi[site];
                bits &= bits - 1;
            }
            d_sign_[m] = s;
            d_xi_[m] = opt.disorder ? opt.disorder->w_mhz * x : 0.0;
        }
    }

    void set_lambda(double lambda) {
        j_inter_ = schedule_.j_of_lambda(lambda);
        j_intra_ = schedule_.j_total() - j_inter_;
        h_ = schedule_.h_of_lambda(lambda);
    }

    std::size_t dim() const override { return d_sign_.size(); }

    void apply(const std::complex<double>* x,
               std::complex<double>* y) const override {
        const std::size_t n = dim();
        a_intra_.apply(x, y);
        scratch_.resize(n);
        a_inter_.apply(x, scratch_.data());
        for (std::size_t m = 0; m < n; ++m)
            y[m] = -j_intra_ * y[m] - j_inter_ * scratch_[m] +
                   (h_ * d_sign_[m] + d_xi_[m]) * x[m];
    }

  private:
    PumpSchedule schedule_;
    SparseOperator a_intra_, a_inter_;
    std::vector<double> d_sign_, d_xi_;
    double j_intra_ = 0.0, j_inter_ = 0.0, h_ = 0.0;
    mutable std::vector<std::complex<double>> scratch_;
};

std::vector<double> sampled_p1(const std::vector<double>& exact,
                               std::uint64_t shots, SplitMix64& rng) {
    std::vector<double> out(exact.size());
    for (std::size_t s = 0; s < exact.size(); ++s) {
        std::uint64_t hits = 0;
        for (std::uint64_t n = 0; n < shots; ++n)
            hits += rng.next_unit() < exact[s] ? 1 : 0;
        out[s] = static_cast<double>(hits) / static_cast<double>(shots);
    }
    return out;
}

} // namespace

StateVector initial_ground_state(const LatticeSpec& lat,
                                 const PumpSchedule& schedule,
                                 const Sector& sector,
                                 const EigsConfig& eigs) {
    // t = 0 is lambda = pi: J_inter = 0, h = 0, decoupled plaquettes
    HamiltonianTerms terms =
        build_obc(lat, schedule.j_of_lambda(M_PI), schedule.j_total());
    SparseOperator h = assemble(terms, sector);
    GroundState gs = ground_state(h, eigs);
    StateVector psi;
    psi.sector = &sector;
    psi.amp = std::move(gs.psi);
    psi.normalize();
    return psi;
}

PumpRecord run_pump(const LatticeSpec& lat, const PumpSchedule& schedule,
                    const Sector& sector, const PropagatorConfig& prop,
                    const PumpOptions& opt, const EigsConfig& eigs) {
    if (opt.sample_every_ns <= 0.0)
        throw ConfigError("sample_every must be positive");
    const double horizon =
        opt.half_cycle ? schedule.t0_ns / 2.0 : schedule.t0_ns;
    const double n_samples_f = horizon / opt.sample_every_ns;
    const long n_samples = std::lround(n_samples_f);
    if (std::abs(n_samples_f - n_samples) > 1e-9 ||
        std::abs(schedule.t0_ns / opt.sample_every_ns -
                 std::lround(schedule.t0_ns / opt.sample_every_ns)) > 1e-9)
        throw ConfigError("sample_every must divide the pump period");
    if (opt.disorder &&
        static_cast<int>(opt.disorder->xi.size()) != lat.n_sites())
        throw ConfigError("disorder vector has wrong length");

    PumpRecord rec;
    rec.schedule = schedule;
    rec.seed = opt.seed;
    rec.disorder = opt.disorder;
    rec.shots = opt.shots;
    rec.half_cycle = opt.half_cycle;

    ScheduledHamiltonian h(lat, schedule, sector, opt);

    std::array<SparseOperator, 4> currents;
    if (opt.record_currents) {
        if (!opt.corner_links)
            throw UsageError("transport currents require corner links");
        for (int c = 0; c < 4; ++c)
            currents[c] = transport_current(lat, sector, c, 1.0,
                                            opt.corner_link_sign);
    }

    StateVector psi = initial_ground_state(lat, schedule, sector, eigs);
    SplitMix64 shot_rng(splitmix_once(opt.seed ^ 0x5ca1ab1eULL));

    const int steps_per_sample = std::max(
        1, static_cast<int>(std::ceil(opt.sample_every_ns / prop.dt_ns)));
    PropagatorConfig step_cfg = prop;
    step_cfg.dt_ns = opt.sample_every_ns / steps_per_sample;
    rec.effective_dt_ns = step_cfg.dt_ns;

    std::vector<std::complex<double>> scratch(sector.dim());
    auto record_sample = [&](double t) {
        rec.t_ns.push_back(t);
        auto p1 = occupations(psi);
        if (opt.shots > 0)
            p1 = sampled_p1(p1, opt.shots, shot_rng);
        rec.p1.push_back(std::move(p1));
        if (opt.record_currents && opt.currents_out) {
            const double j_now =
                schedule.j_of_lambda(schedule.lambda_of_t(t));
            for (int c = 0; c < 4; ++c) {
                currents[c].apply(psi.amp.data(), scratch.data());
                std::complex<double> e = 0.0;
                for (std::size_t m = 0; m < scratch.size(); ++m)
                    e += std::conj(psi.amp[m]) * scratch[m];
                (*opt.currents_out)[c].push_back(j_now * e.real());
            }
        }
    };

    try {
        record_sample(0.0);
        for (long seg = 0; seg < n_samples; ++seg) {
            const double t0 = seg * opt.sample_every_ns;
            for (int k = 0; k < steps_per_sample; ++k) {
                const double t_mid = t0 + (k + 0.5) * step_cfg.dt_ns;
                h.set_lambda(schedule.lambda_of_t(t_mid));
                const StepInfo info = propagate_step(psi, h, step_cfg);
                rec.norm_drift_max =
                    std::max(rec.norm_drift_max, info.norm_drift);
                rec.effective_dt_ns =
                    std::min(rec.effective_dt_ns, info.effective_dt_ns);
            }
            record_sample((seg + 1) * opt.sample_every_ns);
        }
        const auto [dq, q] = corner_delta_q(rec, lat);
        rec.delta_q_corners = dq;
        rec.delta_q = q;
    } catch (const NumericalError& err) {
        rec.valid = false;
        rec.error = err.what();
    }
    return rec;
}

std::pair<std::array<double, 4>, double>
corner_delta_q(const PumpRecord& record, const LatticeSpec& lat) {
    const double t_half = record.schedule.t0_ns / 2.0;
    std::size_t i0 = record.t_ns.size(), ih = record.t_ns.size();
    for (std::size_t i = 0; i < record.t_ns.size(); ++i) {
        if (std::abs(record.t_ns[i]) < 1e-9)
            i0 = i;
        if (std::abs(record.t_ns[i] - t_half) < 1e-9)
            ih = i;
    }
    if (i0 == record.t_ns.size() || ih == record.t_ns.size())
        throw UsageError("record lacks the t = 0 or t = T0/2 sample");

    std::array<double, 4> dq{};
    double sum = 0.0;
    for (int c = 0; c < 4; ++c) {
        const int s = lat.corners()[c];
        dq[c] = record.p1[ih][s] - record.p1[i0][s];
        sum += std::abs(dq[c]);
    }
    return {dq, 2.0 * sum / 4.0};
}

PrepResult simulate_preparation(const PrepProtocol& prep, double duration_ns,
                                const PropagatorConfig& prop,
                                double sample_every_ns) {
    if (prep.ramp != "linear")
        throw ConfigError("unsupported ramp shape: " + prep.ramp);

    const LatticeSpec cell = LatticeSpec::build(2);
    const Sector sector = Sector::enumerate(4, 2);

    // target: ground state of the uniform ring at the final coupling
    HamiltonianTerms tgt_terms;
    tgt_terms.n_sites = 4;
    tgt_terms.potential.assign(4, 0.0);
    for (const Bond& b : cell.bonds())
        tgt_terms.hoppings.push_back({b.a, b.b, -prep.coupling_end_mhz});
    Eigen::MatrixXcd vecs;
    dense_hermitian_eigs(assemble(tgt_terms, sector).dense(), &vecs);
    std::vector<std::complex<double>> target(sector.dim());
    for (std::size_t m = 0; m < sector.dim(); ++m)
        target[m] = vecs(static_cast<Eigen::Index>(m), 0);

    // the two off-diagonal sites of the 2x2 cell start excited
    const std::uint64_t excited =
        (std::uint64_t{1} << cell.site(1, 0)) |
        (std::uint64_t{1} << cell.site(0, 1));
    StateVector psi;
    psi.sector = &sector;
    psi.amp.assign(sector.dim(), 0.0);
    psi.amp[sector.rank(excited)] = 1.0;

    auto fidelity = [&]() {
        std::complex<double> f = 0.0;
        for (std::size_t m = 0; m < sector.dim(); ++m)
            f += std::conj(target[m]) * psi.amp[m];
        return std::abs(f);
    };

    PrepResult out;
    out.t_ns.push_back(0.0);
    out.fidelity.push_back(fidelity());
    out.max_fidelity = out.fidelity.back();
    if (duration_ns <= 0.0)
        return out;

    HamiltonianTerms terms;
    terms.n_sites = 4;
    auto hamiltonian_at = [&](double x) {
        terms.hoppings.clear();
        terms.potential.assign(4, 0.0);
        const double g = prep.coupling_start_mhz +
                         (prep.coupling_end_mhz - prep.coupling_start_mhz) * x;
        const double det = prep.detune_start_mhz +
                           (prep.detune_end_mhz - prep.detune_start_mhz) * x;
        for (const Bond& b : cell.bonds())
            terms.hoppings.push_back({b.a, b.b, -g});
        terms.potential[cell.site(1, 0)] = det;
        terms.potential[cell.site(0, 1)] = det;
        return assemble(terms, sector);
    };

    const int per_sample =
        std::max(1, static_cast<int>(std::ceil(sample_every_ns / prop.dt_ns)));
    const long n_samples =
        std::max<long>(1, std::lround(duration_ns / sample_every_ns));
    const double seg_len = duration_ns / n_samples;
    PropagatorConfig cfg = prop;
    cfg.dt_ns = seg_len / per_sample;

    for (long seg = 0; seg < n_samples; ++seg) {
        for (int k = 0; k < per_sample; ++k) {
            const double t_mid = seg * seg_len + (k + 0.5) * cfg.dt_ns;
            SparseOperator h = hamiltonian_at(t_mid / duration_ns);
            propagate_step(psi, h, cfg);
        }
        out.t_ns.push_back((seg + 1) * seg_len);
        out.fidelity.push_back(fidelity());
        out.max_fidelity = std::max(out.max_fidelity, out.fidelity.back());
    }
    return out;
}

} // namespace hospt
