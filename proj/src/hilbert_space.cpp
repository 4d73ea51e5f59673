#include "ajcm/hilbert_space.hpp"

#include <stdexcept>
#include <string>

namespace ajcm {

HilbertSpec::HilbertSpec(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0, got " + std::to_string(n_max));
}

int HilbertSpec::sector_label(Eigen::Index i) const {
  const int n = fock_level(i);
  switch (atomic_index(i)) {
    case kEE: return n - 1;
    case kGG: return n + 1;
    default: return n;
  }
}

HilbertSpec build_space(int n_max) { return HilbertSpec(n_max); }

const AtomicOperators& atomic_operators() {
  static const AtomicOperators ops = [] {
    Eigen::Matrix2cd sp = Eigen::Matrix2cd::Zero();
    sp(0, 1) = 1.0;  // e = 0, g = 1
    Eigen::Matrix2cd sz = Eigen::Matrix2cd::Zero();
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    AtomicOperators o;
    o.sigma_plus_1 = kron(sp, id);
    o.sigma_plus_2 = kron(id, sp);
    o.sigma_z_1 = kron(sz, id);
    o.sigma_z_2 = kron(id, sz);
    return o;
  }();
  return ops;
}

std::vector<SectorIndex> sector_decompose(const HilbertSpec& spec) {
  const int n_max = spec.n_max();
  std::vector<SectorIndex> sectors;
  sectors.reserve(static_cast<std::size_t>(n_max) + 3);
  for (int k = -1; k <= n_max + 1; ++k) {
    SectorIndex s;
    s.k = k;
    const std::array<std::pair<int, int>, 4> nominal{{{k + 1, kEE}, {k, kEG}, {k, kGE}, {k - 1, kGG}}};
    for (auto [fock, atomic] : nominal) {
      if (fock < 0) continue;
      if (fock > n_max) {
        s.clipped = true;
        continue;
      }
      s.members.push_back(spec.index(fock, atomic));
    }
    sectors.push_back(std::move(s));
  }
  return sectors;
}

}  // namespace ajcm
