#include "hospt/lattice.hpp"

#include <string>

#include "hospt/errors.hpp"

namespace hospt {

LatticeSpec LatticeSpec::build(int n_side) {
    if (n_side < 2 || n_side % 2 != 0)
        throw ConfigError("n_side must be even and >= 2, got " +
                          std::to_string(n_side));
    if (n_side * n_side > 64)
        throw ConfigError("lattice exceeds 64 sites (bitmask basis): n_side " +
                          std::to_string(n_side));

    LatticeSpec lat;
    lat.n_side_ = n_side;
    lat.bonds_.reserve(2 * n_side * (n_side - 1));
    for (int j = 0; j < n_side; ++j)
        for (int i = 0; i + 1 < n_side; ++i)
            lat.bonds_.push_back({lat.site(i, j), lat.site(i + 1, j), Axis::x,
                                  i % 2 == 0 ? BondClass::intra
                                             : BondClass::inter});
    for (int i = 0; i < n_side; ++i)
        for (int j = 0; j + 1 < n_side; ++j)
            lat.bonds_.push_back({lat.site(i, j), lat.site(i, j + 1), Axis::y,
                                  j % 2 == 0 ? BondClass::intra
                                             : BondClass::inter});
    const int n = n_side - 1;
    lat.corners_ = {lat.site(0, 0), lat.site(0, n), lat.site(n, n),
                    lat.site(n, 0)};
    return lat;
}

std::array<Bond, 4> LatticeSpec::corner_links() const {
    std::array<Bond, 4> links;
    for (int k = 0; k < 4; ++k) {
        // axis alternates: c1-c2 and c3-c4 run along y, the others along x
        links[k] = {corners_[k], corners_[(k + 1) % 4],
                    k % 2 == 0 ? Axis::y : Axis::x, BondClass::corner_link};
    }
    return links;
}

int LatticeSpec::site_sign(int s, Variant v) const {
    const auto [i, j] = coords(s);
    if (v == Variant::diag)
        return (i + j) % 2 == 0 ? -1 : +1;
    return i % 2 == 0 ? -1 : +1;
}

std::vector<int> LatticeSpec::c4_permutation() const {
    std::vector<int> perm(n_sites());
    for (int s = 0; s < n_sites(); ++s) {
        const auto [i, j] = coords(s);
        perm[s] = site(j, n_side_ - 1 - i);
    }
    return perm;
}

std::vector<int> LatticeSpec::y_reflection() const {
    std::vector<int> perm(n_sites());
    for (int s = 0; s < n_sites(); ++s) {
        const auto [i, j] = coords(s);
        perm[s] = site(i, n_side_ - 1 - j);
    }
    return perm;
}

double bond_amplitude(const Bond& bond, double j_mhz, double j0_mhz) {
    if (j_mhz < 0.0 || j_mhz > j0_mhz)
        throw ConfigError("hopping J must satisfy 0 <= J <= J0, got J = " +
                          std::to_string(j_mhz) + ", J0 = " +
                          std::to_string(j0_mhz));
    switch (bond.cls) {
    case BondClass::intra:
        return j0_mhz - j_mhz;
    case BondClass::inter:
    case BondClass::corner_link:
        return j_mhz;
    }
    throw UsageError("unknown bond class");
}

} // namespace hospt
