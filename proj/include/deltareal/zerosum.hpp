#pragma once

// Zero-sum sequences over subsets of a cyclic group Z/nZ and the atoms of the
// monoid of zero-sum sequences B(G0).

#include <map>

#include "deltareal/monoid.hpp"

namespace deltareal::zerosum {

struct CyclicGroup {
  Int modulus = 1;

  explicit CyclicGroup(Int n) : modulus(n) {
    if (n < 1) throw PreconditionError("cyclic group modulus must be >= 1");
  }
  Int reduce(Int g) const { return ((g % modulus) + modulus) % modulus; }
};

/// A finite multiset of group elements, stored as residue -> multiplicity (>= 1).
struct ZeroSumSequence {
  CyclicGroup group{1};
  std::map<Int, Int> multiplicities;

  Int size() const {
    Int s = 0;
    for (const auto& [g, k] : multiplicities) s += k;
    return s;
  }
  bool operator==(const ZeroSumSequence& o) const {
    return group.modulus == o.group.modulus && multiplicities == o.multiplicities;
  }
};

inline Int sigma(const ZeroSumSequence& s) {
  Int total = 0;
  for (const auto& [g, k] : s.multiplicities)
    total = s.group.reduce(checked::add(total, checked::mul(s.group.reduce(g), s.group.reduce(k))));
  return total;
}

/// Sorted, reduced, deduplicated support.
inline std::vector<Int> normalize_support(const CyclicGroup& group, std::span<const Int> support) {
  if (support.empty()) throw PreconditionError("support must be nonempty");
  std::vector<Int> s;
  for (Int g : support) s.push_back(group.reduce(g));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

namespace detail {

// Residues reachable as sums of nonempty subsequences of the multiset given by counts.
inline std::vector<char> subsequence_sums(const CyclicGroup& group, std::span<const Int> support,
                                          std::span<const Int> counts) {
  const auto n = static_cast<std::size_t>(group.modulus);
  std::vector<char> reach(n, 0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (Int c = 0; c < counts[i]; ++c) {
      std::vector<char> next = reach;
      const auto g = static_cast<std::size_t>(support[i]);
      next[g % n] = 1;
      for (std::size_t r = 0; r < n; ++r)
        if (reach[r]) next[(r + g) % n] = 1;
      reach = std::move(next);
    }
  }
  return reach;
}

inline bool is_minimal_zero_sum(const CyclicGroup& group, std::span<const Int> support, std::span<const Int> counts) {
  Int total = 0;
  for (std::size_t i = 0; i < support.size(); ++i) total = group.reduce(total + support[i] * counts[i]);
  if (total != 0) return false;
  // S is a minimal zero-sum sequence iff removing any single element leaves a zero-sum free sequence.
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (counts[i] == 0) continue;
    std::vector<Int> rest(counts.begin(), counts.end());
    --rest[i];
    if (subsequence_sums(group, support, rest)[0]) return false;
  }
  return true;
}

template <class Visit>
void for_each_count_vector(std::size_t dims, Int maxTotal, Visit&& visit) {
  std::vector<Int> counts(dims, 0);
  auto rec = [&](auto&& self, std::size_t i, Int left) -> void {
    if (i == dims) {
      visit(std::span<const Int>(counts));
      return;
    }
    for (Int c = 0; c <= left; ++c) {
      counts[i] = c;
      self(self, i + 1, left - c);
    }
    counts[i] = 0;
  };
  rec(rec, 0, maxTotal);
}

inline bool block_order(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int la = length(a), lb = length(b);
  if (la != lb) return la > lb;
  return a > b;
}

}  // namespace detail

/// Multiplicity vectors (over the normalized support) of all minimal zero-sum sequences,
/// ordered by length descending, then lexicographically descending.
///
/// The search runs over sequences of length <= n; a verification pass confirms that every
/// sequence of length n has a nonempty zero-sum subsequence, so no longer atom exists.
inline std::vector<std::vector<Int>> minimal_zero_sum_vectors(const CyclicGroup& group, std::span<const Int> support) {
  const std::vector<Int> s = normalize_support(group, support);
  std::vector<std::vector<Int>> atoms;
  detail::for_each_count_vector(s.size(), group.modulus, [&](std::span<const Int> counts) {
    if (length(counts) == 0) return;
    if (detail::is_minimal_zero_sum(group, s, counts)) atoms.emplace_back(counts.begin(), counts.end());
  });
  detail::for_each_count_vector(s.size(), group.modulus, [&](std::span<const Int> counts) {
    if (length(counts) != group.modulus) return;
    if (!detail::subsequence_sums(group, s, counts)[0])
      throw std::logic_error("zero-sum free sequence of length n found over Z/" + std::to_string(group.modulus));
  });
  std::sort(atoms.begin(), atoms.end(), detail::block_order);
  return atoms;
}

inline std::vector<ZeroSumSequence> minimal_zero_sum_sequences(const CyclicGroup& group, std::span<const Int> support) {
  const std::vector<Int> s = normalize_support(group, support);
  std::vector<ZeroSumSequence> out;
  for (const auto& counts : minimal_zero_sum_vectors(group, s)) {
    ZeroSumSequence seq{group, {}};
    for (std::size_t i = 0; i < s.size(); ++i)
      if (counts[i] > 0) seq.multiplicities[s[i]] = counts[i];
    out.push_back(std::move(seq));
  }
  return out;
}

inline std::string sequence_label(std::span<const Int> support, std::span<const Int> counts) {
  std::string label;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (counts[i] == 0) continue;
    if (!label.empty()) label += "*";
    label += std::to_string(support[i]);
    if (counts[i] > 1) label += "^" + std::to_string(counts[i]);
  }
  return label;
}

/// B(G0) embedded in the free monoid F(G0): rank |G0|, one atom per minimal zero-sum sequence.
inline Presentation block_monoid(const CyclicGroup& group, std::span<const Int> support) {
  const std::vector<Int> s = normalize_support(group, support);
  std::vector<ElementVec> atoms;
  std::vector<std::string> labels;
  for (auto& counts : minimal_zero_sum_vectors(group, s)) {
    labels.push_back(sequence_label(s, counts));
    atoms.push_back(std::move(counts));
  }
  return Presentation(s.size(), std::move(atoms), std::move(labels));
}

}  // namespace deltareal::zerosum
