#ifndef HOSPT_SOLVER_HPP
#define HOSPT_SOLVER_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hospt/fock.hpp"
#include "hospt/hamiltonian.hpp"

namespace hospt {

struct EigsConfig {
    double tol = 1e-10;        // residual norm |H v - E v|, MHz
    int max_iterations = 20000; // total matvec budget
    int restart_dim = 120;     // Lanczos basis size between restarts
    std::uint64_t seed = 0x9b1f5eedULL; // start-vector stream
};

struct GroundState {
    double energy = 0.0;       // MHz
    std::vector<std::complex<double>> psi;
    double residual = 0.0;
    int iterations = 0;
    double gap_estimate = 0.0; // Ritz estimate of E1 - E0
    bool gap_warning = false;  // gap_estimate < 10 * tol
};

// Lowest eigenpair by restarted Lanczos with full reorthogonalization.
// The phase is fixed by making the largest-magnitude amplitude real positive.
GroundState ground_state(const LinearOperator& op, const EigsConfig& cfg,
                         const std::vector<std::complex<double>>* warm_start = nullptr);

// k smallest eigenvalues, ascending (sequential shift-deflation)
std::vector<double> lowest_k(const LinearOperator& op, int k,
                             const EigsConfig& cfg);

// full spectrum of a dense Hermitian matrix, ascending
Eigen::VectorXd dense_hermitian_eigs(const Eigen::MatrixXcd& m,
                                     Eigen::MatrixXcd* vectors = nullptr);

struct PropagatorConfig {
    double dt_ns = 0.5;
    int krylov_dim = 20;
    double tol = 1e-10;        // local error per step
};

struct StepInfo {
    double effective_dt_ns = 0.0; // smallest substep actually taken
    int substeps = 1;
    double norm_drift = 0.0;      // | |psi| - 1 | before renormalization
};

// One step of psi <- exp(-i 2pi H dt 1e-3) psi (H in MHz, dt in ns) via a
// Lanczos subspace. Splits the step internally if the error estimate misses
// the tolerance; psi is renormalized and the drift reported.
StepInfo propagate_step(StateVector& psi, const LinearOperator& h,
                        const PropagatorConfig& cfg);

} // namespace hospt

#endif
