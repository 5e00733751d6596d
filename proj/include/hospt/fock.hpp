#ifndef HOSPT_FOCK_HPP
#define HOSPT_FOCK_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hospt {

// Fixed-particle-number basis of hard-core-boson occupation bitmasks,
// ordered lexicographically (ascending as integers).
class Sector {
  public:
    static Sector enumerate(int n_sites, int k);

    int n_sites() const { return n_sites_; }
    int particles() const { return k_; }
    std::size_t dim() const { return states_.size(); }

    const std::vector<std::uint64_t>& states() const { return states_; }
    std::uint64_t state(std::size_t m) const { return states_[m]; }

    // combinatorial rank; inverse of states()[m]
    std::size_t rank(std::uint64_t bits) const;

  private:
    int n_sites_ = 0;
    int k_ = 0;
    std::vector<std::uint64_t> states_;
    std::vector<std::vector<std::uint64_t>> binom_; // binom_[n][k]
};

// a+_to a_from |bits>: the moved bitmask, or nothing if the hop is blocked.
// Hard-core bosons commute on distinct sites, so the amplitude is always +1.
inline std::optional<std::uint64_t> hop(std::uint64_t bits, int from, int to) {
    const std::uint64_t fm = std::uint64_t{1} << from;
    const std::uint64_t tm = std::uint64_t{1} << to;
    if ((bits & fm) == 0 || (bits & tm) != 0)
        return std::nullopt;
    return (bits ^ fm) | tm;
}

struct StateVector {
    const Sector* sector = nullptr;
    std::vector<std::complex<double>> amp;

    double norm() const;
    void normalize();
};

// site-resolved occupation probabilities; sums to the particle number
std::vector<double> occupations(const Sector& sector,
                                std::span<const std::complex<double>> amp);

inline std::vector<double> occupations(const StateVector& psi) {
    return occupations(*psi.sector, psi.amp);
}

} // namespace hospt

#endif
