#include "hospt/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "hospt/errors.hpp"

namespace hospt {

HamiltonianTerms build_obc(const LatticeSpec& lat, double j_mhz,
                           double j0_mhz) {
    HamiltonianTerms terms;
    terms.n_sites = lat.n_sites();
    terms.potential.assign(lat.n_sites(), 0.0);
    terms.hoppings.reserve(lat.bonds().size());
    // global minus sign of the hopping Hamiltonian
    for (const Bond& b : lat.bonds())
        terms.hoppings.push_back({b.a, b.b, -bond_amplitude(b, j_mhz, j0_mhz)});
    return terms;
}

void add_onsite(HamiltonianTerms& terms, const LatticeSpec& lat, double h_mhz,
                Variant variant) {
    for (int s = 0; s < lat.n_sites(); ++s)
        terms.potential[s] += h_mhz * lat.site_sign(s, variant);
}

void add_corner_links(HamiltonianTerms& terms, const LatticeSpec& lat,
                      double j_mhz, int sign, std::optional<FluxSpec> flux) {
    if (j_mhz < 0.0)
        throw ConfigError("corner-link strength must be non-negative");
    if (flux && (flux->corner < 1 || flux->corner > 4))
        throw ConfigError("flux corner label must be in 1..4");
    const int twisted =
        flux ? lat.corners()[flux->corner - 1] : -1;
    for (const Bond& link : lat.corner_links()) {
        std::complex<double> amp = static_cast<double>(sign) * j_mhz;
        if (flux) {
            // stored as amp * a+_a a_b + h.c.; creation at the twisted
            // corner picks up exp(-i theta)
            if (link.a == twisted)
                amp *= std::polar(1.0, -flux->theta);
            else if (link.b == twisted)
                amp *= std::polar(1.0, +flux->theta);
        }
        terms.hoppings.push_back({link.a, link.b, amp});
    }
    terms.has_corner_links = true;
}

void add_disorder(HamiltonianTerms& terms, std::span<const double> xi,
                  double w_mhz) {
    if (static_cast<int>(xi.size()) != terms.n_sites)
        throw ConfigError("disorder vector length " +
                          std::to_string(xi.size()) + " != n_sites " +
                          std::to_string(terms.n_sites));
    if (w_mhz < 0.0)
        throw ConfigError("disorder strength W must be non-negative");
    for (int s = 0; s < terms.n_sites; ++s) {
        if (std::abs(xi[s]) > 1.0)
            throw ConfigError("disorder amplitudes must lie in [-1, 1]");
        terms.potential[s] += w_mhz * xi[s];
    }
}

void SparseOperator::apply(const std::complex<double>* x,
                           std::complex<double>* y) const {
    const std::size_t n = dim();
    for (std::size_t r = 0; r < n; ++r) {
        std::complex<double> acc = 0.0;
        for (std::size_t idx = row_ptr_[r]; idx < row_ptr_[r + 1]; ++idx)
            acc += val_[idx] * x[col_[idx]];
        y[r] = acc;
    }
}

std::complex<double> SparseOperator::entry(std::size_t r, std::size_t c) const {
    for (std::size_t idx = row_ptr_[r]; idx < row_ptr_[r + 1]; ++idx)
        if (col_[idx] == c)
            return val_[idx];
    return 0.0;
}

Eigen::MatrixXcd SparseOperator::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t idx = row_ptr_[r]; idx < row_ptr_[r + 1]; ++idx)
            m(static_cast<Eigen::Index>(r), col_[idx]) = val_[idx];
    return m;
}

double SparseOperator::hermiticity_defect() const {
    double defect = 0.0;
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t idx = row_ptr_[r]; idx < row_ptr_[r + 1]; ++idx)
            defect = std::max(defect,
                              std::abs(val_[idx] -
                                       std::conj(entry(col_[idx], r))));
    return defect;
}

void SparseOperator::write_matrix_market(std::ostream& os) const {
    os << "%%MatrixMarket matrix coordinate complex general\n";
    os << dim() << " " << dim() << " " << nonzeros() << "\n";
    char buf[96];
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t idx = row_ptr_[r]; idx < row_ptr_[r + 1]; ++idx) {
            std::snprintf(buf, sizeof buf, "%zu %u %.17g %.17g\n", r + 1,
                          col_[idx] + 1, val_[idx].real(), val_[idx].imag());
            os << buf;
        }
}

SparseOperator assemble(const HamiltonianTerms& terms, const Sector& sector) {
    if (terms.n_sites != sector.n_sites())
        throw UsageError("terms and sector disagree on n_sites");

    SparseOperator op;
    op.sector_ = &sector;
    const std::size_t n = sector.dim();
    op.row_ptr_.assign(n + 1, 0);

    struct Entry {
        std::uint32_t col;
        std::complex<double> val;
    };
    std::vector<Entry> row;
    row.reserve(terms.hoppings.size() + 1);

    op.col_.reserve(n * (terms.hoppings.size() / 2 + 1));
    op.val_.reserve(n * (terms.hoppings.size() / 2 + 1));

    for (std::size_t m = 0; m < n; ++m) {
        const std::uint64_t bits = sector.state(m);
        row.clear();

        double diag = 0.0;
        std::uint64_t occ = bits;
        while (occ) {
            diag += terms.potential[std::countr_zero(occ)];
            occ &= occ - 1;
        }
        row.push_back({static_cast<std::uint32_t>(m), diag});

        // row m of a Hermitian H: <m|H|m'> = t if the a->b move connects
        // them, conj(t) for the reverse move
        for (const Hopping& h : terms.hoppings) {
            if (auto t = hop(bits, h.a, h.b))
                row.push_back({static_cast<std::uint32_t>(sector.rank(*t)),
                               h.amp});
            else if (auto u = hop(bits, h.b, h.a))
                row.push_back({static_cast<std::uint32_t>(sector.rank(*u)),
                               std::conj(h.amp)});
        }

        std::sort(row.begin(), row.end(),
                  [](const Entry& p, const Entry& q) { return p.col < q.col; });
        // merge duplicate columns (possible when links double existing bonds)
        std::size_t kept = 0;
        for (std::size_t idx = 0; idx < row.size(); ++idx) {
            if (kept > 0 && row[kept - 1].col == row[idx].col)
                row[kept - 1].val += row[idx].val;
            else
                row[kept++] = row[idx];
        }
        row.resize(kept);

        for (const Entry& e : row) {
            op.col_.push_back(e.col);
            op.val_.push_back(e.val);
        }
        op.row_ptr_[m + 1] = op.col_.size();
    }
    return op;
}

Eigen::MatrixXcd single_particle_matrix(const LatticeSpec& lat, double j_mhz,
                                        double j0_mhz, double h_mhz,
                                        Variant variant, bool corner_links,
                                        int sign,
                                        std::optional<FluxSpec> flux) {
    if (flux && !corner_links)
        throw UsageError("flux twist requires corner links");
    const int n = lat.n_sites();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (const Bond& b : lat.bonds()) {
        const double amp = -bond_amplitude(b, j_mhz, j0_mhz);
        m(b.a, b.b) += amp;
        m(b.b, b.a) += amp;
    }
    if (corner_links) {
        const int twisted = flux ? lat.corners()[flux->corner - 1] : -1;
        for (const Bond& link : lat.corner_links()) {
            std::complex<double> amp =
                static_cast<double>(sign) *
                bond_amplitude(link, j_mhz, j0_mhz);
            if (flux) {
                if (link.a == twisted)
                    amp *= std::polar(1.0, -flux->theta);
                else if (link.b == twisted)
                    amp *= std::polar(1.0, +flux->theta);
            }
            m(link.a, link.b) += amp;
            m(link.b, link.a) += std::conj(amp);
        }
    }
    for (int s = 0; s < n; ++s)
        m(s, s) += h_mhz * lat.site_sign(s, variant);
    return m;
}

} // namespace hospt
