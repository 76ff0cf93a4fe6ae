#pragma once

// Construction of a finitely generated Krull monoid with a prescribed set of distances.
//
// |Delta| = 1: the monoid of zero-sum sequences over {g, -g} with ord(g) = d + 2.
// |Delta| > 1: split off d2 = max Delta, realize the rest as H1, take H2 = base(d2),
// and adjoin one gadget block to H1 x H2 for every (m, ell) in Omega'.

#include "deltareal/monoid.hpp"
#include "deltareal/zerosum.hpp"

namespace deltareal::realization {

using diophantine::Certification;

/// Atoms (d+2, 0), (0, d+2), (1, 1): v1 = g^(d+2), v2 = (-g)^(d+2), v3 = g(-g).
inline Presentation base_monoid(Int d, const std::string& labelPrefix = "v") {
  if (d < 1) throw PreconditionError("base monoid needs d >= 1");
  return Presentation(2, {{d + 2, 0}, {0, d + 2}, {1, 1}},
                      {labelPrefix + "1", labelPrefix + "2", labelPrefix + "3"});
}

/// H1 x H2 together with its factors; atoms of H1 come first.
struct ProductPresentation {
  Presentation h1;
  Presentation h2;
  Presentation product;

  ProductPresentation(Presentation a, Presentation b)
      : h1(std::move(a)), h2(std::move(b)), product(direct_product(h1, h2)) {}

  std::size_t split() const { return h1.atom_count(); }
};

struct OmegaEntry {
  ExponentVec m;
  Int maxLen = 0;
  bool operator==(const OmegaEntry&) const = default;
};

struct OmegaPrimeEntry {
  ExponentVec m;
  Int ell = 0;
  Int maxLen = 0;
  bool operator==(const OmegaPrimeEntry&) const = default;
};

inline Int max_length_of(const Presentation& p, std::span<const Int> m) {
  auto best = max_length(p, p.evaluate(m));
  if (!best) throw std::logic_error("pi(m) has no factorization");
  return *best;
}

/// m in Omega: both blocks nonzero and |m| < max L(pi(m)) - d1.
inline bool omega_contains(const ProductPresentation& h12, Int d1, std::span<const Int> m) {
  if (m.size() != h12.product.atom_count()) throw DimensionError("omega_contains: m has wrong length");
  const auto k = static_cast<std::ptrdiff_t>(h12.split());
  if (is_zero(m.subspan(0, static_cast<std::size_t>(k))) || is_zero(m.subspan(static_cast<std::size_t>(k))))
    return false;
  return length(m) < max_length_of(h12.product, m) - d1;
}

struct MinOmegaConfig {
  /// Per-coordinate cap for frontier searches that run without a certificate.
  Int box = 6;
  diophantine::HilbertConfig hilbert{5000, 200000};
  std::size_t maxVisited = 2'000'000;
};

struct MinOmegaResult {
  std::vector<OmegaEntry> entries;
  Certification certification = Certification::Certified;
  std::string note;
};

inline Certification weaker(Certification a, Certification b) {
  auto rank = [](Certification c) {
    switch (c) {
      case Certification::Certified: return 0;
      case Certification::NotRequested: return 1;
      case Certification::Heuristic: return 2;
      case Certification::BoxTooSmall: return 3;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

/// Minimal elements of { x != 0 : gain(x) >= g } for g = 1..maxThreshold, where
/// gain(x) = max L(pi(x)) - |x| inside one factor.
struct GainMinima {
  std::vector<std::vector<ExponentVec>> byThreshold;  // index g (0 unused)
  Certification certification = Certification::Certified;
  std::string note;
};

namespace detail {

// Expands a vector over reduced items into exponents over all atoms.
inline ExponentVec expand(const Presentation& p, const ReducedItems& items, std::span<const Int> y) {
  ExponentVec x(p.atom_count(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!y[i]) continue;
    if (!items.isBlock[i]) {
      x[items.source[i]] += y[i];
    } else {
      const auto& g = p.gadgets()[items.source[i]];
      for (std::size_t a = g.p1Index; a < g.block_end(); ++a) x[a] += y[i];
    }
  }
  return x;
}

}  // namespace detail

/// Gains are computed over the reduced items of the factor (atoms outside free-standing
/// gadgets, plus one item per complete free-standing block): removing surplus gadget atoms
/// leaves the gain unchanged, so minimal elements never contain them.
///
/// Certificate: for a minimal y with witness y' (M y = M y', weight gap >= g) the supports of
/// y and y' are disjoint, since a common part could be cancelled. The pair decomposes over the
/// Hilbert basis of {(y, y') >= 0 : M y = M y'} using only support-disjoint elements inside
/// supp y + supp y'. At most g positive-gap generators already reach gap g, and their y-parts
/// sum to a vector below y with gain >= g. So every minimal element is a support-disjoint sum
/// of at most g positive-gap generators, and enumerating those sums is complete. When the basis exceeds its resource cap, a frontier search inside the box is used
/// instead and the result is flagged heuristic.
inline GainMinima gain_minima(const Presentation& p, Int maxThreshold, const MinOmegaConfig& cfg) {
  const ReducedItems items = reduced_items(p);
  const std::size_t n = items.vectors.size();
  GainMinima out;
  out.byThreshold.assign(static_cast<std::size_t>(maxThreshold) + 1, {});

  auto element_of = [&](std::span<const Int> y) {
    ElementVec v(p.rank(), 0);
    for (std::size_t i = 0; i < n; ++i)
      if (y[i]) checked::axpy(v, y[i], items.vectors[i]);
    return v;
  };
  auto weight = [&](std::span<const Int> y) {
    Int w = 0;
    for (std::size_t i = 0; i < n; ++i) w = checked::add(w, checked::mul(y[i], items.cost[i]));
    return w;
  };
  auto gain = [&](std::span<const Int> y) {
    auto best = max_length(p, element_of(y));
    if (!best) throw std::logic_error("gain_minima: item combination is not an element");
    return *best - weight(y);
  };

  std::vector<std::size_t> rows;
  for (std::size_t c = 0; c < p.rank(); ++c)
    if (std::any_of(items.vectors.begin(), items.vectors.end(), [&](const ElementVec& v) { return v[c] != 0; }))
      rows.push_back(c);
  IntMatrix coupled(rows.size(), 2 * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < rows.size(); ++r) {
      coupled(r, j) = items.vectors[j][rows[r]];
      coupled(r, n + j) = -items.vectors[j][rows[r]];
    }

  std::vector<ExponentVec> basis;
  bool haveBasis = true;
  diophantine::HilbertConfig hc = cfg.hilbert;
  hc.exclusivePartner.resize(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    hc.exclusivePartner[j] = n + j;
    hc.exclusivePartner[n + j] = j;
  }
  try {
    basis = diophantine::hilbert_basis_kernel(coupled, hc);
  } catch (const ResourceLimitError& e) {
    haveBasis = false;
    out.note = e.what();
  }

  if (haveBasis) {
    struct Gen {
      ExponentVec y, y2;
      Int gap;
    };
    std::vector<Gen> gens;
    for (const auto& b : basis) {
      ExponentVec y(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n));
      ExponentVec y2(b.begin() + static_cast<std::ptrdiff_t>(n), b.end());
      const Int gap = weight(y2) - weight(y);
      if (gap > 0) gens.push_back({std::move(y), std::move(y2), gap});
    }
    for (Int g = 1; g <= maxThreshold; ++g) {
      std::vector<ExponentVec> candidates;
      ExponentVec acc(n, 0), acc2(n, 0);
      auto rec = [&](auto&& self, std::size_t from, Int used, Int gapSum) -> void {
        if (gapSum >= g) {
          candidates.push_back(acc);
          return;
        }
        if (used == g) return;
        for (std::size_t i = from; i < gens.size(); ++i) {
          bool clash = false;
          for (std::size_t c = 0; c < n && !clash; ++c)
            clash = (acc[c] + gens[i].y[c] > 0) && (acc2[c] + gens[i].y2[c] > 0);
          if (clash) continue;
          for (std::size_t c = 0; c < n; ++c) acc[c] += gens[i].y[c], acc2[c] += gens[i].y2[c];
          self(self, i, used + 1, gapSum + gens[i].gap);
          for (std::size_t c = 0; c < n; ++c) acc[c] -= gens[i].y[c], acc2[c] -= gens[i].y2[c];
        }
      };
      rec(rec, 0, 0, 0);
      for (const auto& y : candidates)
        if (gain(y) < g) throw std::logic_error("gain_minima: certificate candidate below threshold");
      for (const auto& y : minimalize(std::move(candidates)))
        out.byThreshold[static_cast<std::size_t>(g)].push_back(detail::expand(p, items, y));
    }
    out.note = std::to_string(gens.size()) + " positive-gap generators among " + std::to_string(basis.size()) +
               " support-disjoint Hilbert basis elements";
  } else {
    out.certification = Certification::Heuristic;
    for (Int g = 1; g <= maxThreshold; ++g) {
      diophantine::FrontierConfig fc{ExponentVec(n, cfg.box), true, std::nullopt, cfg.maxVisited};
      auto r = diophantine::minimal_elements([&](std::span<const Int> y) { return gain(y) >= g; }, fc);
      out.certification = weaker(out.certification, r.certification == Certification::Certified
                                                        ? Certification::Heuristic
                                                        : r.certification);
      if (r.certification == Certification::Certified && !r.boxTruncated) out.certification = Certification::Certified;
      for (const auto& y : r.elements)
        out.byThreshold[static_cast<std::size_t>(g)].push_back(detail::expand(p, items, y));
    }
  }
  for (auto& v : out.byThreshold) std::sort(v.begin(), v.end());
  return out;
}

/// Min(Omega). Since max L on H1 x H2 is additive over the factors, the gain of (x, y) is
/// gain1(x) + gain2(y), and Omega is the union over g in [0, d1+1] of
/// {x != 0, gain1(x) >= g} x {y != 0, gain2(y) >= d1+1-g}.
inline MinOmegaResult min_omega(const ProductPresentation& h12, Int d1, const MinOmegaConfig& cfg = {}) {
  const Int top = d1 + 1;
  GainMinima side1 = gain_minima(h12.h1, top, cfg);
  GainMinima side2 = gain_minima(h12.h2, top, cfg);
  auto units = [](std::size_t n) {
    std::vector<ExponentVec> u;
    for (std::size_t i = 0; i < n; ++i) {
      ExponentVec e(n, 0);
      e[i] = 1;
      u.push_back(std::move(e));
    }
    return u;
  };
  const auto units1 = units(h12.h1.atom_count());
  const auto units2 = units(h12.h2.atom_count());

  std::vector<ExponentVec> candidates;
  for (Int g = 0; g <= top; ++g) {
    const auto& a = g == 0 ? units1 : side1.byThreshold[static_cast<std::size_t>(g)];
    const auto& b = g == top ? units2 : side2.byThreshold[static_cast<std::size_t>(top - g)];
    for (const auto& x : a)
      for (const auto& y : b) {
        ExponentVec m = x;
        m.insert(m.end(), y.begin(), y.end());
        candidates.push_back(std::move(m));
      }
  }
  MinOmegaResult out;
  for (auto& m : minimalize(std::move(candidates))) {
    if (!omega_contains(h12, d1, m)) throw std::logic_error("min_omega: candidate outside Omega " + to_string(m));
    out.entries.push_back({m, max_length_of(h12.product, m)});
  }
  out.certification = weaker(side1.certification, side2.certification);
  out.note = "H1: " + side1.note + "; H2: " + side2.note;
  return out;
}

/// Min(Omega) by a plain frontier search with the omega_contains oracle inside the box.
inline MinOmegaResult min_omega_frontier(const ProductPresentation& h12, Int d1, const diophantine::FrontierConfig& cfg) {
  auto r = diophantine::minimal_elements([&](std::span<const Int> m) { return omega_contains(h12, d1, m); }, cfg);
  MinOmegaResult out;
  for (auto& m : r.elements) out.entries.push_back({m, max_length_of(h12.product, m)});
  out.certification = r.certification;
  out.note = "frontier search, " + std::to_string(r.visited) + " vectors visited";
  return out;
}

/// All ell in [|m| + d1, maxLen - d1] with ell = |m| mod d1, sorted by (m, ell).
inline std::vector<OmegaPrimeEntry> omega_prime(const std::vector<OmegaEntry>& minOmega, Int d1) {
  if (d1 < 1) throw PreconditionError("d1 must be >= 1");
  std::vector<OmegaPrimeEntry> out;
  for (const auto& e : minOmega) {
    const Int len = length(e.m);
    for (Int ell = len + d1; ell <= e.maxLen - d1; ell += d1) out.push_back({e.m, ell, e.maxLen});
  }
  std::sort(out.begin(), out.end(), [](const OmegaPrimeEntry& a, const OmegaPrimeEntry& b) {
    return a.m != b.m ? a.m < b.m : a.ell < b.ell;
  });
  return out;
}

/// Appends, for each (m, ell), fresh coordinates for p_2..p_ell and the atoms
/// p_1 = pi(m) - (p_2 + ... + p_ell), p_2, ..., p_ell.
inline Presentation attach_gadgets(const Presentation& core, const std::vector<OmegaPrimeEntry>& omegaPrime,
                                   const std::string& labelPrefix = "p") {
  std::size_t rank = core.rank();
  for (const auto& e : omegaPrime) rank += static_cast<std::size_t>(e.ell) - 1;

  std::vector<ElementVec> atoms;
  for (const auto& a : core.atoms()) {
    ElementVec v(rank, 0);
    std::copy(a.begin(), a.end(), v.begin());
    atoms.push_back(std::move(v));
  }
  std::vector<std::string> labels = core.labels();
  std::vector<GadgetBlock> gadgets = core.gadgets();
  std::size_t fresh = core.rank();
  for (std::size_t g = 0; g < omegaPrime.size(); ++g) {
    const auto& e = omegaPrime[g];
    if (e.m.size() != core.atom_count()) throw DimensionError("attach_gadgets: m has wrong length");
    const ElementVec pi = core.evaluate(e.m);
    GadgetBlock block{e.m, e.ell, fresh, atoms.size()};
    ElementVec p1(rank, 0);
    std::copy(pi.begin(), pi.end(), p1.begin());
    for (std::size_t c = fresh; c < block.fresh_end(); ++c) p1[c] = -1;
    atoms.push_back(std::move(p1));
    for (std::size_t c = fresh; c < block.fresh_end(); ++c) {
      ElementVec unit(rank, 0);
      unit[c] = 1;
      atoms.push_back(std::move(unit));
    }
    for (Int nu = 1; nu <= e.ell; ++nu)
      labels.push_back(labelPrefix + "." + std::to_string(g + 1) + "." + std::to_string(nu));
    fresh = block.fresh_end();
    gadgets.push_back(std::move(block));
  }
  Presentation out(rank, std::move(atoms), std::move(labels), std::move(gadgets));
  auto check = assert_atoms_minimal(out);
  if (!check.ok) throw std::logic_error("attach_gadgets produced a non-atom: " + check.message);
  return out;
}

/// The element v1*v2 of one level's base block and the distance it realizes.
struct Witness {
  Int delta = 0;
  ElementVec element;
  LengthSet expectedLengths;  // {2, 2 + delta}
};

/// Data of one inductive step (levels with |Delta| >= 2).
struct LevelData {
  std::vector<Int> delta;
  Int d1 = 0;
  Int d2 = 0;
  std::size_t h1Atoms = 0;
  std::size_t h1Rank = 0;
  std::size_t coreAtoms = 0;
  std::size_t coreRank = 0;
  std::vector<OmegaEntry> minOmega;
  std::vector<OmegaPrimeEntry> omegaPrime;
  Certification certification = Certification::Certified;
  std::string note;
};

struct RealizationResult {
  Presentation monoid;
  std::vector<Int> targetDelta;
  Int d1 = 0;
  Int d2 = 0;
  std::vector<Witness> witnesses;  // innermost level first
  std::vector<LevelData> levels;   // innermost inductive step first
  /// Factors of the top inductive step (absent for |Delta| = 1).
  std::optional<ProductPresentation> top;
  Certification certification = Certification::Certified;

  const std::vector<OmegaEntry>& min_omega() const { return levels.back().minOmega; }
  const std::vector<OmegaPrimeEntry>& omega_prime() const { return levels.back().omegaPrime; }
};

inline std::vector<Int> validate_delta(std::vector<Int> delta) {
  if (delta.empty()) throw PreconditionError("Delta must be nonempty");
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  if (delta.front() < 1) throw PreconditionError("Delta must consist of positive integers");
  Int g = 0;
  for (Int d : delta) g = std::gcd(g, d);
  if (g != delta.front()) throw PreconditionError("min != gcd");
  return delta;
}

inline RealizationResult realize(std::vector<Int> delta, const MinOmegaConfig& cfg = {}) {
  delta = validate_delta(std::move(delta));
  const auto depth = delta.size();
  RealizationResult out;
  out.targetDelta = delta;
  out.d1 = delta.front();
  out.d2 = delta.back();

  if (depth == 1) {
    const Int d = delta.front();
    out.monoid = base_monoid(d, "v1.");
    out.witnesses.push_back({d, {d + 2, d + 2}, {2, 2 + d}});
    return out;
  }

  std::vector<Int> rest(delta.begin(), delta.end() - 1);
  RealizationResult inner = realize(rest, cfg);
  const Int d1 = delta.front();
  const Int d2 = delta.back();
  ProductPresentation h12(inner.monoid, base_monoid(d2, "v" + std::to_string(depth) + "."));

  MinOmegaResult mo = min_omega(h12, d1, cfg);
  auto op = omega_prime(mo.entries, d1);
  out.monoid = attach_gadgets(h12.product, op, "p" + std::to_string(depth));

  for (auto w : inner.witnesses) {
    w.element.resize(out.monoid.rank(), 0);
    out.witnesses.push_back(std::move(w));
  }
  ElementVec top(out.monoid.rank(), 0);
  top[h12.h1.rank()] = d2 + 2;
  top[h12.h1.rank() + 1] = d2 + 2;
  out.witnesses.push_back({d2, std::move(top), {2, 2 + d2}});

  out.levels = std::move(inner.levels);
  LevelData level;
  level.delta = delta;
  level.d1 = d1;
  level.d2 = d2;
  level.h1Atoms = h12.h1.atom_count();
  level.h1Rank = h12.h1.rank();
  level.coreAtoms = h12.product.atom_count();
  level.coreRank = h12.product.rank();
  level.minOmega = std::move(mo.entries);
  level.omegaPrime = std::move(op);
  level.certification = mo.certification;
  level.note = std::move(mo.note);
  out.levels.push_back(std::move(level));
  out.certification = weaker(inner.certification, out.levels.back().certification);
  out.top.emplace(std::move(h12));
  return out;
}

}  // namespace deltareal::realization
