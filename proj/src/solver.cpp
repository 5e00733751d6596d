#include "hospt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hospt/errors.hpp"
#include "hospt/rng.hpp"

namespace hospt {

namespace {

using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;

double nrm2(const CVec& v) {
    double s = 0.0;
    for (const auto& a : v)
        s += std::norm(a);
    return std::sqrt(s);
}

Cplx dot(const CVec& a, const CVec& b) {
    Cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

void axpy(Cplx alpha, const CVec& x, CVec& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
        y[i] += alpha * x[i];
}

void scale(CVec& v, double s) {
    for (auto& a : v)
        a *= s;
}

CVec random_start(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    CVec v(n);
    for (auto& a : v)
        a = {rng.next_pm1(), rng.next_pm1()};
    scale(v, 1.0 / nrm2(v));
    return v;
}

// deterministic gauge: largest-magnitude amplitude real positive
void fix_phase(CVec& v) {
    std::size_t imax = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double m = std::norm(v[i]);
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    const double mag = std::abs(v[imax]);
    if (mag > 0.0) {
        const Cplx rot = std::conj(v[imax]) / mag;
        for (auto& a : v)
            a *= rot;
    }
}

// Lanczos with full reorthogonalization against the stored basis, plus an
// optional level shift pushing already-converged vectors out of the way:
//     H' = H + shift * sum_d |d><d|
struct LanczosSweep {
    double theta0 = 0.0;      // lowest Ritz value (of H', matches H when
    double theta1 = 0.0;      // the deflated directions are orthogonal)
    CVec ritz0;
    double beta_bound = 0.0;  // residual estimate |beta_m * s_m|
    int matvecs = 0;
};

LanczosSweep lanczos_sweep(const LinearOperator& op, const CVec& start,
                           int max_basis, double tol,
                           const std::vector<const CVec*>& deflate,
                           double shift) {
    const std::size_t n = op.dim();
    std::vector<CVec> basis;
    std::vector<double> alpha, beta;
    basis.reserve(max_basis);

    CVec v = start;
    // keep the start vector orthogonal to the deflated directions
    for (const CVec* d : deflate)
        axpy(-dot(*d, v), *d, v);
    double vn = nrm2(v);
    if (vn < 1e-14)
        throw NumericalError("Lanczos start vector vanished after deflation");
    scale(v, 1.0 / vn);
    basis.push_back(v);

    LanczosSweep out;
    CVec w(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small;

    for (int m = 0; m < max_basis; ++m) {
        op.apply(basis[m].data(), w.data());
        ++out.matvecs;
        for (const CVec* d : deflate)
            axpy(shift * dot(*d, basis[m]), *d, w);

        const double a = dot(basis[m], w).real();
        alpha.push_back(a);
        axpy(-a, basis[m], w);
        if (m > 0)
            axpy(Cplx(-beta[m - 1]), basis[m - 1], w);
        // full reorthogonalization against the stored basis
        for (const CVec& u : basis)
            axpy(-dot(u, w), u, w);
        for (const CVec* d : deflate)
            axpy(-dot(*d, w), *d, w);

        const double b = nrm2(w);

        // Ritz values/vector of the current tridiagonal
        const int k = static_cast<int>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < k)
                t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        small.compute(t);
        out.theta0 = small.eigenvalues()(0);
        out.theta1 = k > 1 ? small.eigenvalues()(1) : out.theta0;
        out.beta_bound = b * std::abs(small.eigenvectors()(k - 1, 0));

        const bool happy = b < 1e-13 * std::max(1.0, std::abs(out.theta0));
        if (out.beta_bound <= tol || happy || m + 1 == max_basis ||
            basis.size() == n) {
            out.ritz0.assign(n, 0.0);
            for (int i = 0; i < k; ++i)
                axpy(Cplx(small.eigenvectors()(i, 0)), basis[i], out.ritz0);
            scale(out.ritz0, 1.0 / nrm2(out.ritz0));
            return out;
        }
        beta.push_back(b);
        scale(w, 1.0 / b);
        basis.push_back(w);
    }
    throw NumericalError("Lanczos sweep failed to produce a Ritz vector");
}

GroundState ground_with_deflation(const LinearOperator& op,
                                  const EigsConfig& cfg,
                                  const CVec* warm_start,
                                  const std::vector<const CVec*>& deflate,
                                  double shift) {
    if (cfg.tol <= 0.0)
        throw ConfigError("eigensolver tolerance must be positive");
    const std::size_t n = op.dim();
    if (n == 0)
        throw UsageError("empty operator");

    CVec v = warm_start && warm_start->size() == n
                 ? *warm_start
                 : random_start(n, cfg.seed);

    GroundState gs;
    int used = 0;
    const int max_basis =
        std::max(2, std::min<int>(cfg.restart_dim, static_cast<int>(n)));
    double residual = 0.0;
    while (true) {
        LanczosSweep sweep =
            lanczos_sweep(op, v, max_basis, cfg.tol, deflate, shift);
        used += sweep.matvecs;

        // true residual of the Ritz pair
        CVec hv(n);
        op.apply(sweep.ritz0.data(), hv.data());
        ++used;
        for (const CVec* d : deflate)
            axpy(shift * dot(*d, sweep.ritz0), *d, hv);
        axpy(Cplx(-sweep.theta0), sweep.ritz0, hv);
        residual = nrm2(hv);

        gs.energy = sweep.theta0;
        gs.psi = std::move(sweep.ritz0);
        gs.gap_estimate = sweep.theta1 - sweep.theta0;
        gs.iterations = used;
        if (residual <= cfg.tol || static_cast<int>(n) <= max_basis)
            break;
        if (used >= cfg.max_iterations)
            throw NumericalError(
                "eigensolver did not converge: residual " +
                std::to_string(residual) + " MHz after " +
                std::to_string(used) + " matvecs");
        v = gs.psi; // restart from the best Ritz vector
    }
    gs.residual = residual;
    gs.gap_warning = gs.gap_estimate < 10.0 * cfg.tol;
    fix_phase(gs.psi);
    return gs;
}

} // namespace

GroundState ground_state(const LinearOperator& op, const EigsConfig& cfg,
                         const CVec* warm_start) {
    return ground_with_deflation(op, cfg, warm_start, {}, 0.0);
}

std::vector<double> lowest_k(const LinearOperator& op, int k,
                             const EigsConfig& cfg) {
    if (k < 1)
        throw ConfigError("lowest_k requires k >= 1");
    if (static_cast<std::size_t>(k) > op.dim())
        throw ConfigError("k = " + std::to_string(k) +
                          " exceeds operator dimension " +
                          std::to_string(op.dim()));

    std::vector<double> evals;
    std::vector<CVec> vecs;
    std::vector<const CVec*> deflate;

    // shift converged states above the spectrum, then repeat
    double shift = 0.0;
    for (int j = 0; j < k; ++j) {
        GroundState gs = ground_with_deflation(
            op, cfg, vecs.empty() ? nullptr : &vecs.back(), deflate, shift);
        evals.push_back(gs.energy);
        vecs.push_back(std::move(gs.psi));
        deflate.clear();
        for (const auto& v : vecs)
            deflate.push_back(&v);
        // crude spectral spread from the converged part
        const double spread =
            std::abs(evals.front()) + std::abs(evals.back()) + 10.0;
        shift = 4.0 * spread;
    }
    std::sort(evals.begin(), evals.end());
    return evals;
}

Eigen::VectorXd dense_hermitian_eigs(const Eigen::MatrixXcd& m,
                                     Eigen::MatrixXcd* vectors) {
    if (m.rows() != m.cols())
        throw ConfigError("matrix must be square");
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
        throw ConfigError("matrix is not Hermitian (defect " +
                          std::to_string(defect) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(0.5 * (m + m.adjoint()),
                   vectors ? Eigen::ComputeEigenvectors
                           : Eigen::EigenvaluesOnly);
    if (vectors)
        *vectors = solver.eigenvectors();
    return solver.eigenvalues();
}

namespace {

// exp(-i c H) psi on a Lanczos subspace grown until the standard
// last-component error estimate clears the tolerance
bool expm_krylov(const LinearOperator& op, CVec& psi, double c, int max_dim,
                 double tol) {
    const std::size_t n = op.dim();
    const double psi_norm = nrm2(psi);
    if (psi_norm == 0.0)
        return true;

    std::vector<CVec> basis;
    std::vector<double> alpha, beta;
    basis.push_back(psi);
    scale(basis[0], 1.0 / psi_norm);

    CVec w(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small;
    Eigen::VectorXcd u;
    bool converged = false;

    for (int m = 0; m < max_dim; ++m) {
        op.apply(basis[m].data(), w.data());
        const double a = dot(basis[m], w).real();
        alpha.push_back(a);
        axpy(-a, basis[m], w);
        if (m > 0)
            axpy(Cplx(-beta[m - 1]), basis[m - 1], w);
        for (const CVec& uvec : basis)
            axpy(-dot(uvec, w), uvec, w);
        const double b = nrm2(w);

        const int k = static_cast<int>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < k)
                t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        small.compute(t);
        Eigen::VectorXcd phase =
            (Eigen::VectorXcd)(-Cplx(0, 1) * c * small.eigenvalues()).array().exp();
        u = small.eigenvectors().cast<Cplx>() *
            phase.cwiseProduct(small.eigenvectors().row(0).adjoint().cast<Cplx>());

        const double err = std::abs(c) * b * std::abs(u(k - 1));
        const bool happy = b < 1e-13;
        if ((k >= 3 && err <= tol) || happy || basis.size() == n) {
            converged = true;
            break;
        }
        if (m + 1 == max_dim)
            break;
        beta.push_back(b);
        scale(w, 1.0 / b);
        basis.push_back(w);
    }

    if (!converged)
        return false;
    std::fill(psi.begin(), psi.end(), Cplx(0.0));
    for (std::size_t i = 0; i < basis.size(); ++i)
        axpy(psi_norm * u(static_cast<Eigen::Index>(i)), basis[i], psi);
    return true;
}

} // namespace

StepInfo propagate_step(StateVector& psi, const LinearOperator& h,
                        const PropagatorConfig& cfg) {
    if (cfg.dt_ns <= 0.0)
        throw ConfigError("propagator dt must be positive");
    if (cfg.krylov_dim < 2)
        throw ConfigError("krylov_dim must be at least 2");
    if (psi.amp.size() != h.dim())
        throw UsageError("state and operator dimensions differ");

    StepInfo info;
    int substeps = 1;
    // phase convention: exp(-i 2pi nu t), nu in MHz, t in ns
    const double c_full = 2.0 * M_PI * 1e-3 * cfg.dt_ns;
    while (true) {
        const double c = c_full / substeps;
        CVec work = psi.amp;
        bool ok = true;
        for (int s = 0; s < substeps && ok; ++s)
            ok = expm_krylov(h, work, c, cfg.krylov_dim,
                             cfg.tol / substeps);
        if (ok) {
            psi.amp = std::move(work);
            break;
        }
        substeps *= 2;
        if (substeps > 1024)
            throw NumericalError(
                "propagator step failed to converge even with dt / 1024");
    }
    info.substeps = substeps;
    info.effective_dt_ns = cfg.dt_ns / substeps;
    info.norm_drift = std::abs(nrm2(psi.amp) - 1.0);
    psi.normalize();
    return info;
}

} // namespace hospt
