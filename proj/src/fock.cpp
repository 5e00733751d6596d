#include "hospt/fock.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "hospt/errors.hpp"

namespace hospt {

Sector Sector::enumerate(int n_sites, int k) {
    if (n_sites < 0 || n_sites > 64)
        throw ConfigError("n_sites must be in [0, 64], got " +
                          std::to_string(n_sites));
    if (k < 0 || k > n_sites)
        throw ConfigError("particle count k = " + std::to_string(k) +
                          " out of range for " + std::to_string(n_sites) +
                          " sites");

    Sector sec;
    sec.n_sites_ = n_sites;
    sec.k_ = k;

    sec.binom_.assign(n_sites + 1, std::vector<std::uint64_t>(k + 1, 0));
    for (int n = 0; n <= n_sites; ++n) {
        sec.binom_[n][0] = 1;
        for (int r = 1; r <= std::min(n, k); ++r)
            sec.binom_[n][r] = (r == n) ? 1
                                        : sec.binom_[n - 1][r - 1] +
                                              sec.binom_[n - 1][r];
    }

    const std::uint64_t count = sec.binom_[n_sites][k];
    if (count > (std::uint64_t{1} << 27))
        throw ConfigError("sector dimension " + std::to_string(count) +
                          " too large to enumerate");
    sec.states_.reserve(count);
    if (k == 0) {
        sec.states_.push_back(0);
        return sec;
    }
    // Gosper's hack walks the k-subsets in increasing bitmask order
    std::uint64_t v = k == 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit =
        n_sites == 64 ? ~std::uint64_t{0}
                      : (std::uint64_t{1} << n_sites) - 1;
    while (true) {
        sec.states_.push_back(v);
        if (sec.states_.size() == sec.binom_[n_sites][k])
            break;
        const std::uint64_t c = v & -v;
        const std::uint64_t r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
        if (v > limit)
            break;
    }
    return sec;
}

std::size_t Sector::rank(std::uint64_t bits) const {
    // colex rank: sum over the i-th lowest set bit p of binom(p, i+1)
    std::size_t r = 0;
    int i = 1;
    while (bits) {
        const int p = std::countr_zero(bits);
        r += binom_[p][i++];
        bits &= bits - 1;
    }
    return r;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amp)
        s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0)
        throw NumericalError("cannot normalize a zero state vector");
    for (auto& a : amp)
        a /= n;
}

std::vector<double> occupations(const Sector& sector,
                                std::span<const std::complex<double>> amp) {
    std::vector<double> p1(sector.n_sites(), 0.0);
    const auto& states = sector.states();
    for (std::size_t m = 0; m < states.size(); ++m) {
        const double w = std::norm(amp[m]);
        std::uint64_t bits = states[m];
        while (bits) {
            p1[std::countr_zero(bits)] += w;
            bits &= bits - 1;
        }
    }
    return p1;
}

} // namespace hospt
