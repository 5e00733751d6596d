#ifndef HOSPT_HAMILTONIAN_HPP
#define HOSPT_HAMILTONIAN_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hospt/fock.hpp"
#include "hospt/lattice.hpp"

namespace hospt {

// t * a+_a a_b + conj(t) * a+_b a_a, t in MHz (linear frequency nu = omega/2pi)
struct Hopping {
    int a = 0;
    int b = 0;
    std::complex<double> amp;
};

// gauge twist theta applied to the two corner links at one corner (1..4)
struct FluxSpec {
    int corner = 1;       // 1-based corner label
    double theta = 0.0;   // radians
};

struct HamiltonianTerms {
    int n_sites = 0;
    std::vector<Hopping> hoppings;   // each unordered pair stored once
    std::vector<double> potential;   // on-site energies, MHz
    bool has_corner_links = false;
};

HamiltonianTerms build_obc(const LatticeSpec& lat, double j_mhz, double j0_mhz);

void add_onsite(HamiltonianTerms& terms, const LatticeSpec& lat, double h_mhz,
                Variant variant);

// Four links c1-c2-c3-c4-c1 with amplitude sign*J. With a flux twist the
// assembled operator equals exp(-i theta n_c) H^C exp(+i theta n_c): creation
// at the twisted corner picks up exp(-i theta).
void add_corner_links(HamiltonianTerms& terms, const LatticeSpec& lat,
                      double j_mhz, int sign,
                      std::optional<FluxSpec> flux = std::nullopt);

void add_disorder(HamiltonianTerms& terms, std::span<const double> xi,
                  double w_mhz);

// Minimal interface the solvers need: dimension plus y = H x.
class LinearOperator {
  public:
    virtual ~LinearOperator() = default;
    virtual std::size_t dim() const = 0;
    virtual void apply(const std::complex<double>* x,
                       std::complex<double>* y) const = 0;
};

// Sector-restricted compressed sparse rows, Hermitian by construction,
// columns sorted within each row. The diagonal entry is always stored.
class SparseOperator final : public LinearOperator {
  public:
    std::size_t dim() const override { return row_ptr_.size() - 1; }
    void apply(const std::complex<double>* x,
               std::complex<double>* y) const override;

    const Sector& sector() const { return *sector_; }
    std::size_t nonzeros() const { return col_.size(); }
    std::size_t row_nonzeros(std::size_t r) const {
        return row_ptr_[r + 1] - row_ptr_[r];
    }

    std::complex<double> entry(std::size_t r, std::size_t c) const;
    Eigen::MatrixXcd dense() const;
    double hermiticity_defect() const;

    // text export: "%%MatrixMarket"-style header, then 1-based
    // "row col re im" triples
    void write_matrix_market(std::ostream& os) const;

    friend SparseOperator assemble(const HamiltonianTerms&, const Sector&);

  private:
    const Sector* sector_ = nullptr;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> col_;
    std::vector<std::complex<double>> val_;
};

SparseOperator assemble(const HamiltonianTerms& terms, const Sector& sector);

// Dense one-particle matrix of the same terms; equals the sector-(n,1)
// assembly up to basis ordering. Used by the free-fermion gap diagnostics.
Eigen::MatrixXcd single_particle_matrix(const LatticeSpec& lat, double j_mhz,
                                        double j0_mhz, double h_mhz,
                                        Variant variant, bool corner_links,
                                        int sign = -1,
                                        std::optional<FluxSpec> flux = std::nullopt);

} // namespace hospt

#endif
