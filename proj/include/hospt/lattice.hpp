#ifndef HOSPT_LATTICE_HPP
#define HOSPT_LATTICE_HPP

#include <array>
#include <utility>
#include <vector>

namespace hospt {

enum class Variant { diag, nondiag };

enum class Axis { x, y };

enum class BondClass { intra, inter, corner_link };

struct Bond {
    int a = 0;
    int b = 0;
    Axis axis = Axis::x;
    BondClass cls = BondClass::intra;
};

// N x N square lattice with staggered bond classes. Site index s = i + n*j.
// Bonds along x between columns i and i+1 are intra-cell for even i and
// inter-cell for odd i; same rule along y with the row index. Corners are
// ordered counterclockwise from the bottom-left: c1=(0,0), c2=(0,n-1),
// c3=(n-1,n-1), c4=(n-1,0), so c1/c3 are the diagonal pair and c1/c2 the
// left-column pair.
class LatticeSpec {
  public:
    static LatticeSpec build(int n_side);

    int n_side() const { return n_side_; }
    int n_sites() const { return n_side_ * n_side_; }

    int site(int i, int j) const { return i + n_side_ * j; }
    std::pair<int, int> coords(int s) const {
        return {s % n_side_, s / n_side_};
    }

    const std::vector<Bond>& bonds() const { return bonds_; }

    // c1..c4 as site indices
    const std::array<int, 4>& corners() const { return corners_; }

    // corner-link bonds c1-c2, c2-c3, c3-c4, c4-c1 (CPBC only)
    std::array<Bond, 4> corner_links() const;

    // On-site sign of the staggered potential (+h * sign * n). For h > 0 the
    // diag pattern lowers the diagonal corners c1, c3 and the nondiag pattern
    // lowers the even columns (left corners c1, c2).
    int site_sign(int s, Variant v) const;

    // site permutation of the C4 rotation (i,j) -> (j, n-1-i)
    std::vector<int> c4_permutation() const;

    // site permutation of the y reflection (i,j) -> (i, n-1-j)
    std::vector<int> y_reflection() const;

  private:
    int n_side_ = 0;
    std::vector<Bond> bonds_;
    std::array<int, 4> corners_{};
};

// Staggered bond strength in MHz: intra bonds carry J0 - J, inter bonds and
// corner links carry J, with 0 <= J <= J0. Signs are applied by the
// hamiltonian module.
double bond_amplitude(const Bond& bond, double j_mhz, double j0_mhz);

} // namespace hospt

#endif
