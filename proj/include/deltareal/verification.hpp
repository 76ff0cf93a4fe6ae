#pragma once

// Desk-scale checks of a realization: witness gaps, bounded distance sets, atom
// minimality, gadget layout, max-length transfer (A1), factorization structure (A4)
// and a root-closure sweep.

#include <chrono>
#include <map>
#include <set>

#include "deltareal/realization.hpp"

namespace deltareal::verification {

using realization::RealizationResult;

/// splitmix64: state += 0x9e3779b97f4a7c15, then two xor-shift-multiply rounds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform-ish in [0, n) by reduction modulo n.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

/// The lattice spanned by integer vectors, kept as an echelon basis with positive pivots.
class Lattice {
 public:
  explicit Lattice(std::size_t dim) : dim_(dim) {}

  void add(ElementVec v) {
    if (v.size() != dim_) throw DimensionError("Lattice::add: wrong dimension");
    while (true) {
      const std::size_t lead = leading(v);
      if (lead == dim_) return;
      auto it = rows_.find(lead);
      if (it == rows_.end()) {
        if (v[lead] < 0)
          for (auto& c : v) c = -c;
        rows_.emplace(lead, std::move(v));
        return;
      }
      ElementVec& row = it->second;
      const Int a = row[lead], b = v[lead];
      auto [g, x, y] = ext_gcd(a, b);
      ElementVec combined(dim_), rest(dim_);
      for (std::size_t c = 0; c < dim_; ++c) {
        combined[c] = checked::add(checked::mul(x, row[c]), checked::mul(y, v[c]));
        rest[c] = checked::sub(checked::mul(a / g, v[c]), checked::mul(b / g, row[c]));
      }
      row = std::move(combined);
      v = std::move(rest);
    }
  }

  bool contains(ElementVec v) const {
    if (v.size() != dim_) throw DimensionError("Lattice::contains: wrong dimension");
    while (true) {
      const std::size_t lead = leading(v);
      if (lead == dim_) return true;
      auto it = rows_.find(lead);
      if (it == rows_.end() || v[lead] % it->second[lead] != 0) return false;
      checked::axpy(v, -(v[lead] / it->second[lead]), it->second);
    }
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t leading(const ElementVec& v) const {
    for (std::size_t c = 0; c < dim_; ++c)
      if (v[c] != 0) return c;
    return dim_;
  }

  // g = x*a + y*b with g = gcd(a, b) > 0.
  static std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
    Int r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (r1 != 0) {
      const Int q = r0 / r1;
      std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
      std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
      std::tie(y0, y1) = std::pair{y1, y0 - q * y1};
    }
    if (r0 < 0) return {-r0, -x0, -y0};
    return {r0, x0, y0};
  }

  std::size_t dim_;
  std::map<std::size_t, ElementVec> rows_;
};

enum class Status { Pass, Fail, Skipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "unknown";
}

struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  std::string details;
  std::optional<ElementVec> counterexample;
  /// Wall-clock seconds; kept out of serialized reports.
  double seconds = 0;
};

struct ReportConfig {
  Int deltaBound = 8;
  Int structureBound = 6;
  Int rootBound = 6;
  std::vector<Int> powers{2, 3};
  std::size_t samples = 100;
  Int atomCap = 4;
  std::uint64_t seed = 0;
  /// Restrict A4 to factorizations without a complete gadget block; off only for negative controls.
  bool structureHypothesis = true;
  /// Sweeps over more atom multisets than this are skipped.
  std::uint64_t maxMultisets = 40'000'000;
};

struct VerificationReport {
  std::vector<CheckResult> checks;  // sorted by name
  ReportConfig config;
  DeltaSet computedDelta;

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline std::string set_string(std::span<const Int> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

namespace detail {

inline CheckResult fail(std::string name, std::string details, ElementVec counterexample) {
  return {std::move(name), Status::Fail, std::move(details), std::move(counterexample)};
}

inline ElementVec padded(std::span<const Int> v, std::size_t rank) {
  ElementVec out(rank, 0);
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

// Number of multisets of size <= k over n items, saturating.
inline std::uint64_t multiset_count(std::uint64_t n, Int k) {
  long double c = 1, total = 1;
  for (Int j = 1; j <= k; ++j) {
    c = c * static_cast<long double>(n + static_cast<std::uint64_t>(j) - 1) / static_cast<long double>(j);
    total += c;
  }
  return total > 1e18L ? std::uint64_t(1e18) : static_cast<std::uint64_t>(total);
}

inline ReducedItems all_atoms(const Presentation& m) {
  ReducedItems items;
  for (std::size_t i = 0; i < m.atom_count(); ++i) {
    items.vectors.push_back(m.atom(i));
    items.cost.push_back(1);
    items.source.push_back(i);
    items.isBlock.push_back(0);
  }
  return items;
}

}  // namespace detail

/// Each level witness v1*v2 must have length set exactly {2, 2 + delta}.
inline CheckResult check_witness_gaps(const RealizationResult& r) {
  const std::string name = "witness_gaps";
  std::string realized;
  for (const auto& w : r.witnesses) {
    if (w.element.size() != r.monoid.rank()) return detail::fail(name, "witness has wrong dimension", w.element);
    const LengthSet lengths = length_set(r.monoid, w.element);
    if (lengths != w.expectedLengths)
      return detail::fail(name,
                          "distance " + std::to_string(w.delta) + ": expected lengths " +
                              set_string(w.expectedLengths) + ", found " + set_string(lengths),
                          w.element);
    realized += (realized.empty() ? "" : " ") + set_string(lengths);
  }
  return {name, Status::Pass, "length sets " + realized};
}

/// Distances of elements with a factorization of length <= k: contained in the target,
/// equal to it once the witnesses are within the bound, contained in d1*N with min = gcd.
inline CheckResult check_bounded_delta(const RealizationResult& r, Int k, DeltaSet* computed = nullptr) {
  const std::string name = "bounded_delta";
  const auto found = bounded_delta_witnesses(r.monoid, k);
  DeltaSet d;
  for (const auto& [gap, v] : found) d.push_back(gap);
  if (computed) *computed = d;
  const std::string got = "computed " + set_string(d) + " at bound " + std::to_string(k);
  const auto& target = r.targetDelta;
  for (const auto& [gap, v] : found) {
    if (!std::binary_search(target.begin(), target.end(), gap))
      return detail::fail(name, got + "; distance " + std::to_string(gap) + " is not in the target " + set_string(target), v);
    if (gap % r.d1 != 0)
      return detail::fail(name, got + "; distance " + std::to_string(gap) + " is not a multiple of d1", v);
  }
  if (!d.empty() && (d.front() != gcd_of(d) || d.front() != r.d1))
    return detail::fail(name, got + "; min != gcd or min != d1", found.begin()->second);
  if (k >= 2)
    for (const auto& w : r.witnesses)
      if (!found.count(w.delta))
        return detail::fail(name, got + "; target distance " + std::to_string(w.delta) + " missing", w.element);
  return {name, Status::Pass, got};
}

inline CheckResult check_atoms_minimal(const RealizationResult& r) {
  const std::string name = "atoms_minimal";
  auto rep = assert_atoms_minimal(r.monoid);
  if (!rep.ok) return detail::fail(name, rep.message, r.monoid.atom(rep.offendingAtom.value_or(0)));
  return {name, Status::Pass, std::to_string(r.monoid.atom_count()) + " atoms, each with length set {1}"};
}

/// Layout of every inductive level read off the atom list: p1 = pi(m) - (p2 + ... + p_ell),
/// p_nu unit vectors on fresh coordinates, ell = |m| mod d1 inside [|m| + d1, max L - d1].
inline CheckResult check_gadget_invariants(const RealizationResult& r) {
  const std::string name = "gadget_invariants";
  const Presentation& h = r.monoid;
  std::size_t blocks = 0;
  for (const auto& level : r.levels) {
    std::size_t atom = level.coreAtoms;
    std::size_t fresh = level.coreRank;
    for (const auto& e : level.omegaPrime) {
      const Int len = length(e.m);
      if ((e.ell - len) % level.d1 != 0 || e.ell < len + level.d1 || e.ell > e.maxLen - level.d1)
        return detail::fail(name, "gadget length " + std::to_string(e.ell) + " violates the admissible window", e.m);
      if (atom + static_cast<std::size_t>(e.ell) > h.atom_count())
        return detail::fail(name, "gadget block runs past the atom list", e.m);
      ElementVec expected(h.rank(), 0);
      for (std::size_t i = 0; i < e.m.size(); ++i)
        if (e.m[i]) checked::axpy(expected, e.m[i], h.atom(i));
      for (Int nu = 2; nu <= e.ell; ++nu) expected[fresh + static_cast<std::size_t>(nu) - 2] -= 1;
      if (h.atom(atom) != expected) return detail::fail(name, "p1 differs from pi(m) - (p2 ... p_ell)", h.atom(atom));
      for (Int nu = 2; nu <= e.ell; ++nu) {
        ElementVec unit(h.rank(), 0);
        unit[fresh + static_cast<std::size_t>(nu) - 2] = 1;
        if (h.atom(atom + static_cast<std::size_t>(nu) - 1) != unit)
          return detail::fail(name, "p_nu is not the fresh unit vector", h.atom(atom + static_cast<std::size_t>(nu) - 1));
      }
      atom += static_cast<std::size_t>(e.ell);
      fresh += static_cast<std::size_t>(e.ell) - 1;
      ++blocks;
    }
  }
  return {name, Status::Pass, std::to_string(blocks) + " gadget blocks checked"};
}

/// max L_H(a1 a2) = max L_{H1 x H2}(a1 a2) for a1 in H1, a2 in H2 of the top inductive level.
/// Pairs: the identity, a1 a2 = pi(m) for every gadget of the level, then seeded random
/// products of at most atomCap atoms on each side.
inline CheckResult check_A1(const RealizationResult& r, std::size_t samples, Int atomCap, std::uint64_t seed) {
  const std::string name = "A1_max_length";
  if (!r.top) return {name, Status::Skipped, "single base block, no product step"};
  const auto& h12 = *r.top;
  const std::size_t k1 = h12.h1.atom_count(), k2 = h12.h2.atom_count();

  std::vector<ExponentVec> pairs{ExponentVec(k1 + k2, 0)};
  for (const auto& e : r.levels.back().omegaPrime)
    if (pairs.back() != e.m) pairs.push_back(e.m);
  const std::size_t anchored = pairs.size();
  SplitMix64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    ExponentVec m(k1 + k2, 0);
    for (Int i = 0, n = static_cast<Int>(rng.below(static_cast<std::uint64_t>(atomCap) + 1)); i < n; ++i) ++m[rng.below(k1)];
    for (Int i = 0, n = static_cast<Int>(rng.below(static_cast<std::uint64_t>(atomCap) + 1)); i < n; ++i) ++m[k1 + rng.below(k2)];
    pairs.push_back(std::move(m));
  }
  for (const auto& m : pairs) {
    const ElementVec core = h12.product.evaluate(m);
    const Int inProduct = *max_length(h12.product, core);
    const auto inH = max_length(r.monoid, detail::padded(core, r.monoid.rank()));
    if (!inH || *inH != inProduct)
      return detail::fail(name,
                          "max L in H is " + (inH ? std::to_string(*inH) : std::string("undefined")) +
                              ", in H1 x H2 it is " + std::to_string(inProduct),
                          detail::padded(core, r.monoid.rank()));
  }
  return {name, Status::Pass,
          std::to_string(anchored) + " anchored and " + std::to_string(samples) + " seeded pairs, seed " +
              std::to_string(seed)};
}

/// Z_H(a) = Z_H(a1 a2) * z0 for a = a1 a2 * pi(z0), where z0 is a multiset of gadget atoms of
/// the top level without a complete block. Z_H(a1 a2) * z0 is always contained in Z_H(a),
/// so the sets agree exactly when their sizes do.
inline CheckResult check_factorization_structure(const RealizationResult& r, Int k, bool hypothesis = true,
                                                 std::uint64_t maxMultisets = 40'000'000) {
  const std::string name = "A4_factorization_structure";
  if (!r.top) return {name, Status::Skipped, "single base block, no gadgets"};
  const auto& level = r.levels.back();
  const Presentation& h = r.monoid;
  const std::size_t first = level.coreAtoms;
  const std::size_t gadgetAtoms = h.atom_count() - first;
  const std::uint64_t work = detail::multiset_count(gadgetAtoms, k);
  if (work > maxMultisets)
    return {name, Status::Skipped, std::to_string(work) + " gadget multisets exceed the work cap"};

  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // [begin, end) relative to first
  std::size_t at = 0;
  for (const auto& e : level.omegaPrime) {
    blocks.emplace_back(at, at + static_cast<std::size_t>(e.ell));
    at += static_cast<std::size_t>(e.ell);
  }

  std::vector<std::vector<ElementVec>> coreElements;  // by maximal factorization-length bound
  for (Int j = 0; j <= k; ++j) coreElements.push_back(enumerate_elements(r.top->product, j));
  std::map<ElementVec, std::size_t> coreCounts;
  auto count_core = [&](const ElementVec& b) {
    auto it = coreCounts.find(b);
    if (it != coreCounts.end()) return it->second;
    return coreCounts[b] = count_factorizations(h, detail::padded(b, h.rank()));
  };

  std::vector<Int> z0(gadgetAtoms, 0);
  ElementVec pz0(h.rank(), 0);
  std::uint64_t checked = 0;
  std::optional<CheckResult> failure;
  auto visit = [&](Int used) {
    if (hypothesis)
      for (const auto& [b, e] : blocks)
        if (std::all_of(z0.begin() + static_cast<std::ptrdiff_t>(b), z0.begin() + static_cast<std::ptrdiff_t>(e),
                        [](Int c) { return c > 0; }))
          return;
    for (const auto& b : coreElements[static_cast<std::size_t>(k - used)]) {
      ElementVec a = detail::padded(b, h.rank());
      checked::axpy(a, 1, pz0);
      const std::size_t lhs = count_factorizations(h, a), rhs = count_core(b);
      ++checked;
      if (lhs != rhs) {
        failure = detail::fail(name,
                               "|Z(a)| = " + std::to_string(lhs) + " but |Z(a1 a2) z0| = " + std::to_string(rhs) +
                                   ", z0 gadget exponents " + to_string(z0),
                               a);
        return;
      }
    }
  };
  auto rec = [&](auto&& self, std::size_t from, Int used) -> void {
    visit(used);
    for (std::size_t i = from; i < gadgetAtoms && used < k && !failure; ++i) {
      ++z0[i];
      checked::axpy(pz0, 1, h.atom(first + i));
      self(self, i, used + 1);
      checked::axpy(pz0, -1, h.atom(first + i));
      --z0[i];
    }
  };
  rec(rec, 0, 0);
  if (failure) return *failure;
  return {name, Status::Pass,
          std::to_string(checked) + " elements at bound " + std::to_string(k) +
              (hypothesis ? "" : " (hypothesis filter off)")};
}

/// Sampled evidence of root-closure: for every product c of at most k atoms and p in powers
/// with p | c, the vector c / p must lie in H whenever it lies in the group generated by H.
inline CheckResult check_root_closed(const RealizationResult& r, const std::vector<Int>& powers, Int k,
                                     std::uint64_t maxMultisets = 40'000'000) {
  const std::string name = "root_closed";
  const Presentation& h = r.monoid;
  const std::uint64_t work = detail::multiset_count(h.atom_count(), k);
  if (work > maxMultisets) return {name, Status::Skipped, std::to_string(work) + " atom multisets exceed the work cap"};
  Lattice lattice(h.rank());
  for (const auto& a : h.atoms()) lattice.add(a);

  std::set<ElementVec> tested;
  std::optional<CheckResult> failure;
  std::size_t candidates = 0;
  std::uint64_t visited = 0;
  visit_reduced_multisets(detail::all_atoms(h), h.rank(), k, [&](const ElementVec& c, const std::vector<Int>&) {
    ++visited;
    if (failure || is_zero(c)) return;
    for (Int p : powers) {
      if (std::any_of(c.begin(), c.end(), [&](Int x) { return x % p != 0; })) continue;
      ElementVec v(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i] / p;
      if (!tested.insert(v).second || !lattice.contains(v)) continue;
      ++candidates;
      if (!membership(h, v)) {
        failure = detail::fail(name, "p = " + std::to_string(p) + ": p*v is in H but v is not", v);
        return;
      }
    }
  });
  if (failure) return *failure;
  return {name, Status::Pass,
          "sampled evidence: " + std::to_string(candidates) + " roots in q(H) tested over " + std::to_string(visited) +
              " products at bound " + std::to_string(k)};
}

inline VerificationReport full_report(const RealizationResult& r, const ReportConfig& cfg = {}) {
  VerificationReport rep;
  rep.config = cfg;
  auto timed = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult c = fn();
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.checks.push_back(std::move(c));
  };
  timed([&] { return check_witness_gaps(r); });
  timed([&] { return check_bounded_delta(r, cfg.deltaBound, &rep.computedDelta); });
  timed([&] { return check_atoms_minimal(r); });
  timed([&] { return check_gadget_invariants(r); });
  timed([&] { return check_A1(r, cfg.samples, cfg.atomCap, cfg.seed); });
  timed([&] { return check_factorization_structure(r, cfg.structureBound, cfg.structureHypothesis, cfg.maxMultisets); });
  timed([&] { return check_root_closed(r, cfg.powers, cfg.rootBound, cfg.maxMultisets); });
  std::sort(rep.checks.begin(), rep.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return rep;
}

}  // namespace deltareal::verification
