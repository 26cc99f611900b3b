#include "schur2/majorization.hpp"

#include <numeric>
#include <stdexcept>

namespace schur2 {

const char* to_string(Majorization m) {
  switch (m) {
    case Majorization::EqualSorted: return "EQUAL_SORTED";
    case Majorization::StrictMajorizes: return "STRICT_MAJORIZES";
    case Majorization::MajorizedBy: return "MAJORIZED_BY";
    case Majorization::Incomparable: return "INCOMPARABLE";
  }
  return "?";
}

GroupElement GroupElement::identity(Index k) {
  GroupElement g;
  g.perm.resize(static_cast<std::size_t>(k));
  std::iota(g.perm.begin(), g.perm.end(), Index{0});
  g.sign.assign(static_cast<std::size_t>(k), 1);
  return g;
}

GroupElement GroupElement::random(Index k, std::mt19937_64& rng) {
  GroupElement g = identity(k);
  std::shuffle(g.perm.begin(), g.perm.end(), rng);
  std::bernoulli_distribution flip(0.5);
  for (auto& s : g.sign) s = flip(rng) ? -1 : 1;
  return g;
}

std::vector<GroupElement> enumerate_group(Index k) {
  std::vector<GroupElement> out;
  GroupElement base = GroupElement::identity(k);
  do {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      GroupElement g = base;
      for (Index i = 0; i < k; ++i) g.sign[i] = (mask >> i) & 1u ? -1 : 1;
      out.push_back(std::move(g));
    }
  } while (std::next_permutation(base.perm.begin(), base.perm.end()));
  return out;
}

std::vector<RealVector> muirhead_chain(const RealVector& a, const RealVector& b) {
  require_same_dimension(a, b, "muirhead_chain");
  if (majorize_compare(a, b) != Majorization::StrictMajorizes) {
    throw std::invalid_argument("muirhead_chain: a does not strictly majorize b");
  }
  const Index k = a.size();
  const double tol = majorization_tolerance(a, b);

  // order[r] = position in `a` of its r-th largest coordinate
  std::vector<Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return a[i] > a[j]; });

  RealVector cur = sorted_descending(a);
  const RealVector target = sorted_descending(b);
  auto to_frame = [&](const RealVector& sorted) {
    RealVector v(k);
    for (Index r = 0; r < k; ++r) v[order[r]] = sorted[r];
    return v;
  };

  std::vector<RealVector> chain{a};
  for (Index step = 0; step < k; ++step) {
    // l: first rank with a deficit; j: last rank before l with a surplus.
    Index l = -1;
    for (Index r = 0; r < k; ++r) {
      if (cur[r] < target[r] - tol) {
        l = r;
        break;
      }
    }
    if (l < 0) break;
    Index j = -1;
    for (Index r = l - 1; r >= 0; --r) {
      if (cur[r] > target[r] + tol) {
        j = r;
        break;
      }
    }
    if (j < 0) throw std::logic_error("muirhead_chain: no surplus before deficit");

    const double surplus = cur[j] - target[j];
    const double deficit = target[l] - cur[l];
    if (surplus <= deficit) {
      cur[l] += surplus;
      cur[j] = target[j];
      if (std::abs(cur[l] - target[l]) <= tol) cur[l] = target[l];
    } else {
      cur[j] -= deficit;
      cur[l] = target[l];
      if (std::abs(cur[j] - target[j]) <= tol) cur[j] = target[j];
    }
    chain.push_back(to_frame(cur));
  }
  return chain;
}

}  // namespace schur2
