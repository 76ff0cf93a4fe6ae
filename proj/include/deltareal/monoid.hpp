#pragma once

// Finitely generated reduced monoids embedded in Z^N, given by an ordered atom list.
// A presentation may carry gadget blocks: a family p_1..p_ell of atoms where
// p_2..p_ell are unit vectors on ell-1 fresh coordinates and
// p_1 = pi(m) - (p_2 + ... + p_ell) for a core element pi(m).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>

#include "deltareal/diophantine.hpp"

namespace deltareal {

/// Sorted set of factorization lengths. Empty means "not an element"; the identity has {0}.
using LengthSet = std::vector<Int>;
/// Sorted set of positive distances.
using DeltaSet = std::vector<Int>;

struct GadgetBlock {
  /// Exponents over the atoms [0, m.size()); pi(m) is their product.
  ExponentVec m;
  Int ell = 0;
  /// Fresh coordinates [freshBegin, freshBegin + ell - 1) house p_2..p_ell.
  std::size_t freshBegin = 0;
  /// p_nu is atom p1Index + nu - 1.
  std::size_t p1Index = 0;

  std::size_t fresh_end() const { return freshBegin + static_cast<std::size_t>(ell) - 1; }
  std::size_t block_end() const { return p1Index + static_cast<std::size_t>(ell); }
  bool operator==(const GadgetBlock&) const = default;
};

class Presentation;

namespace detail {
template <class Sink>
class FactorizationSolver;
}

class Presentation {
 public:
  Presentation() = default;

  Presentation(std::size_t rank, std::vector<ElementVec> atoms, std::vector<std::string> labels = {},
               std::vector<GadgetBlock> gadgets = {})
      : rank_(rank), atoms_(std::move(atoms)), labels_(std::move(labels)), gadgets_(std::move(gadgets)) {
    if (labels_.empty())
      for (std::size_t i = 0; i < atoms_.size(); ++i) labels_.push_back("a" + std::to_string(i + 1));
    validate_and_plan();
  }

  std::size_t rank() const { return rank_; }
  std::size_t atom_count() const { return atoms_.size(); }
  const std::vector<ElementVec>& atoms() const { return atoms_; }
  const ElementVec& atom(std::size_t i) const { return atoms_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<GadgetBlock>& gadgets() const { return gadgets_; }
  /// The element pi(m) of gadget g.
  const ElementVec& core_vector(std::size_t g) const { return coreVectors_.at(g); }
  /// A gadget is free-standing when no atom outside its block touches its fresh coordinates.
  bool free_standing(std::size_t g) const { return freeStanding_.at(g); }
  /// Index of the gadget owning atom i, if any.
  std::optional<std::size_t> gadget_of_atom(std::size_t i) const {
    if (atomGadget_.at(i) < 0) return std::nullopt;
    return static_cast<std::size_t>(atomGadget_[i]);
  }

  ElementVec evaluate(std::span<const Int> x) const {
    if (x.size() != atoms_.size()) throw DimensionError("exponent vector has wrong length");
    ElementVec v(rank_, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) checked::axpy(v, x[i], atoms_[i]);
    return v;
  }

  bool operator==(const Presentation& o) const {
    return rank_ == o.rank_ && atoms_ == o.atoms_ && labels_ == o.labels_ && gadgets_ == o.gadgets_;
  }

  /// Visits every factorization of v. visit(const Factorization&) may return false to stop.
  template <class Visit>
  void visit_factorizations(std::span<const Int> v, Visit&& visit) const;

  class Factorization {
   public:
    Int length() const;
    ExponentVec exponents() const;

   private:
    template <class>
    friend class detail::FactorizationSolver;
    const Presentation* owner_ = nullptr;
    const std::vector<Int>* t_ = nullptr;
    const ElementVec* fresh_ = nullptr;
    std::span<const Int> plain_;
    Int gadgetLength_ = 0;
  };

 private:
  template <class>
  friend class detail::FactorizationSolver;

  struct SparseEntry {
    std::size_t coord;
    Int value;
  };

  void validate_and_plan();

  std::size_t rank_ = 0;
  std::vector<ElementVec> atoms_;
  std::vector<std::string> labels_;
  std::vector<GadgetBlock> gadgets_;

  // Derived solver plan.
  std::vector<ElementVec> coreVectors_;
  std::vector<std::vector<SparseEntry>> coreSparse_;
  std::vector<std::vector<SparseEntry>> coreHardBase_;  // positive entries on hard-base coordinates
  std::vector<char> freeStanding_;
  std::vector<std::size_t> eliminationOrder_;  // gadgets by descending p1Index
  std::vector<long> atomGadget_;
  std::vector<std::size_t> plainAtoms_;
  std::vector<char> hardBase_;  // coordinate flags
  bool plainNonneg_ = true;
  std::vector<std::size_t> plainRows_;
  IntMatrix plainMatrix_;  // plain atoms restricted to plainRows_
  // Generic path (plain atoms with negative entries).
  std::vector<std::size_t> unitAtomCoord_;        // per plain atom: coordinate if it is a unit atom, else npos
  std::vector<std::size_t> nonUnitPlain_;         // positions within plainAtoms_
  std::vector<std::size_t> unitPlain_;            // positions within plainAtoms_
};

namespace diophantine::detail {
template <class Visit, class F>
bool invoke_visit_f(Visit& visit, const F& f) {
  if constexpr (std::is_same_v<std::invoke_result_t<Visit&, const F&>, bool>) {
    return visit(f);
  } else {
    visit(f);
    return true;
  }
}
}  // namespace diophantine::detail

namespace detail {

template <class Sink>
class FactorizationSolver {
 public:
  FactorizationSolver(const Presentation& p, std::span<const Int> v, Sink& sink)
      : p_(p), sink_(sink), res_(v.begin(), v.end()), t_(p.gadgets_.size(), 0), fresh_(p.rank_, 0) {}

  void run() {
    for (std::size_t c = 0; c < p_.rank_; ++c)
      if (p_.hardBase_[c] && res_[c] < 0) return;
    stage(0);
  }

 private:
  using SE = Presentation::SparseEntry;

  bool hard_base_ok(const std::vector<SE>& pos) const {
    for (const auto& e : pos)
      if (res_[e.coord] < 0) return false;
    return true;
  }

  void subtract(const std::vector<SE>& vec, Int times) {
    for (const auto& e : vec) res_[e.coord] = checked::sub(res_[e.coord], checked::mul(times, e.value));
  }

  bool stage(std::size_t k) {
    if (k == p_.eliminationOrder_.size()) return plain_stage();
    const std::size_t g = p_.eliminationOrder_[k];
    const GadgetBlock& gb = p_.gadgets_[g];
    Int lo = 0;
    Int sumF = 0;
    for (std::size_t c = gb.freshBegin; c < gb.fresh_end(); ++c) {
      fresh_[c] = res_[c];
      lo = std::max(lo, -res_[c]);
      sumF += res_[c];
      res_[c] = 0;
    }
    const auto& core = p_.coreSparse_[g];
    const auto& pos = p_.coreHardBase_[g];
    bool go = true;
    Int subtracted = lo;
    subtract(core, lo);
    if (hard_base_ok(pos)) {
      for (Int t = lo;; ++t) {
        t_[g] = t;
        const Int contrib = checked::add(checked::mul(gb.ell, t), sumF);
        gadgetLength_ += contrib;
        go = stage(k + 1);
        gadgetLength_ -= contrib;
        if (!go) break;
        subtract(core, 1);
        ++subtracted;
        if (!hard_base_ok(pos)) break;
      }
    }
    subtract(core, -subtracted);
    t_[g] = 0;
    for (std::size_t c = gb.freshBegin; c < gb.fresh_end(); ++c) res_[c] = fresh_[c];
    return go;
  }

  bool emit(std::span<const Int> plain) {
    Presentation::Factorization f;
    f.owner_ = &p_;
    f.t_ = &t_;
    f.fresh_ = &fresh_;
    f.plain_ = plain;
    f.gadgetLength_ = gadgetLength_;
    return diophantine::detail::invoke_visit_f(sink_, f);
  }

  bool plain_stage() {
    if (p_.plainNonneg_) {
      // Coordinates outside the plain support must already be zero.
      std::size_t r = 0;
      for (std::size_t c = 0; c < p_.rank_; ++c) {
        if (r < p_.plainRows_.size() && p_.plainRows_[r] == c) {
          ++r;
          continue;
        }
        if (res_[c] != 0) return true;
      }
      if (p_.plainAtoms_.empty()) return emit({});
      ElementVec b(p_.plainRows_.size());
      for (std::size_t i = 0; i < b.size(); ++i) b[i] = res_[p_.plainRows_[i]];
      bool go = true;
      diophantine::visit_nonneg_solutions(p_.plainMatrix_, b, [&](std::span<const Int> x) {
        go = emit(x);
        return go;
      });
      return go;
    }
    plainX_.assign(p_.plainAtoms_.size(), 0);
    return generic_plain(0);
  }

  // Depth-first over non-unit plain atoms bounded by the hard-base residual; unit atoms
  // absorb whatever remains on their coordinate.
  bool generic_plain(std::size_t i) {
    if (i == p_.nonUnitPlain_.size()) {
      for (std::size_t c = 0; c < p_.rank_; ++c)
        if (p_.hardBase_[c] && res_[c] != 0) return true;
      for (std::size_t u : p_.unitPlain_) {
        Int val = res_[p_.unitAtomCoord_[u]];
        if (val < 0) return true;
        plainX_[u] = val;
      }
      for (std::size_t c = 0; c < p_.rank_; ++c) {
        if (p_.hardBase_[c]) continue;
        Int expect = 0;
        for (std::size_t u : p_.unitPlain_)
          if (p_.unitAtomCoord_[u] == c) expect = plainX_[u];
        if (res_[c] != expect) return true;
      }
      return emit(plainX_);
    }
    const std::size_t pos = p_.nonUnitPlain_[i];
    const ElementVec& a = p_.atoms_[p_.plainAtoms_[pos]];
    Int tmax = -1;
    for (std::size_t c = 0; c < p_.rank_; ++c)
      if (p_.hardBase_[c] && a[c] > 0) {
        Int q = res_[c] / a[c];
        tmax = tmax < 0 ? q : std::min(tmax, q);
      }
    if (tmax < 0) tmax = 0;
    bool go = true;
    Int applied = 0;
    for (Int t = 0;; ++t) {
      plainX_[pos] = t;
      go = generic_plain(i + 1);
      if (!go || t == tmax) break;
      checked::axpy(res_, -1, a);
      ++applied;
    }
    checked::axpy(res_, applied, a);
    plainX_[pos] = 0;
    return go;
  }

  const Presentation& p_;
  Sink& sink_;
  ElementVec res_;
  std::vector<Int> t_;
  ElementVec fresh_;
  ExponentVec plainX_;
  Int gadgetLength_ = 0;
};

}  // namespace detail

inline Int Presentation::Factorization::length() const {
  return checked::add(gadgetLength_, deltareal::length(plain_));
}

inline ExponentVec Presentation::Factorization::exponents() const {
  ExponentVec x(owner_->atoms_.size(), 0);
  for (std::size_t i = 0; i < plain_.size(); ++i) x[owner_->plainAtoms_[i]] = plain_[i];
  for (std::size_t g = 0; g < owner_->gadgets_.size(); ++g) {
    const auto& gb = owner_->gadgets_[g];
    const Int t = (*t_)[g];
    x[gb.p1Index] = t;
    for (std::size_t nu = 1; nu < static_cast<std::size_t>(gb.ell); ++nu)
      x[gb.p1Index + nu] = t + (*fresh_)[gb.freshBegin + nu - 1];
  }
  return x;
}

template <class Visit>
void Presentation::visit_factorizations(std::span<const Int> v, Visit&& visit) const {
  if (v.size() != rank_)
    throw DimensionError("element has length " + std::to_string(v.size()) + ", expected rank " + std::to_string(rank_));
  using V = std::remove_reference_t<Visit>;
  detail::FactorizationSolver<V> solver(*this, v, visit);
  solver.run();
}

inline void Presentation::validate_and_plan() {
  const std::size_t n = atoms_.size();
  if (labels_.size() != n) throw DimensionError("labels and atoms differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    if (atoms_[i].size() != rank_)
      throw DimensionError("atom " + labels_[i] + " has length " + std::to_string(atoms_[i].size()) +
                           ", expected rank " + std::to_string(rank_));
    if (is_zero(atoms_[i])) throw PreconditionError("atom " + labels_[i] + " is zero");
  }
  {
    std::set<ElementVec> seen;
    for (std::size_t i = 0; i < n; ++i)
      if (!seen.insert(atoms_[i]).second) throw PreconditionError("duplicate atom " + labels_[i]);
  }

  atomGadget_.assign(n, -1);
  std::vector<long> coordGadget(rank_, -1);
  coreVectors_.clear();
  for (std::size_t g = 0; g < gadgets_.size(); ++g) {
    const auto& gb = gadgets_[g];
    const std::string name = "gadget " + std::to_string(g);
    if (gb.ell < 2) throw PreconditionError(name + ": ell must be >= 2");
    if (gb.block_end() > n || gb.fresh_end() > rank_) throw DimensionError(name + ": block out of range");
    if (gb.m.size() > gb.p1Index) throw DimensionError(name + ": m reaches into its own block");
    if (std::any_of(gb.m.begin(), gb.m.end(), [](Int c) { return c < 0; }))
      throw PreconditionError(name + ": negative exponent in m");
    for (std::size_t i = gb.p1Index; i < gb.block_end(); ++i) {
      if (atomGadget_[i] >= 0) throw PreconditionError(name + ": overlapping gadget atoms");
      atomGadget_[i] = static_cast<long>(g);
    }
    for (std::size_t c = gb.freshBegin; c < gb.fresh_end(); ++c) {
      if (coordGadget[c] >= 0) throw PreconditionError(name + ": overlapping fresh coordinates");
      coordGadget[c] = static_cast<long>(g);
    }
    ElementVec core(rank_, 0);
    for (std::size_t i = 0; i < gb.m.size(); ++i)
      if (gb.m[i]) checked::axpy(core, gb.m[i], atoms_[i]);
    ElementVec p1 = core;
    for (std::size_t nu = 1; nu < static_cast<std::size_t>(gb.ell); ++nu) {
      const std::size_t c = gb.freshBegin + nu - 1;
      ElementVec unit(rank_, 0);
      unit[c] = 1;
      if (atoms_[gb.p1Index + nu] != unit)
        throw PreconditionError(name + ": atom " + labels_[gb.p1Index + nu] + " is not the fresh unit vector");
      if (core[c] != 0) throw PreconditionError(name + ": pi(m) touches its own fresh coordinates");
      p1[c] -= 1;
    }
    if (atoms_[gb.p1Index] != p1)
      throw PreconditionError(name + ": p1 vector differs from pi(m) minus the fresh units");
    coreVectors_.push_back(std::move(core));
  }

  // Fresh coordinates of a gadget may only be touched by its own block and by p1 atoms of
  // gadgets sitting later in the atom list (eliminated earlier).
  freeStanding_.assign(gadgets_.size(), 1);
  for (std::size_t g = 0; g < gadgets_.size(); ++g) {
    const auto& gb = gadgets_[g];
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= gb.p1Index && i < gb.block_end()) continue;
      bool touches = false;
      for (std::size_t c = gb.freshBegin; c < gb.fresh_end(); ++c) touches = touches || atoms_[i][c] != 0;
      if (!touches) continue;
      freeStanding_[g] = 0;
      const long owner = atomGadget_[i];
      if (owner < 0 || gadgets_[static_cast<std::size_t>(owner)].p1Index != i || i < gb.block_end())
        throw PreconditionError("gadget " + std::to_string(g) + ": fresh coordinates touched by atom " + labels_[i]);
    }
  }
  eliminationOrder_.resize(gadgets_.size());
  std::iota(eliminationOrder_.begin(), eliminationOrder_.end(), 0);
  std::sort(eliminationOrder_.begin(), eliminationOrder_.end(),
            [&](std::size_t a, std::size_t b) { return gadgets_[a].p1Index > gadgets_[b].p1Index; });

  plainAtoms_.clear();
  for (std::size_t i = 0; i < n; ++i)
    if (atomGadget_[i] < 0) plainAtoms_.push_back(i);
  plainNonneg_ = std::all_of(plainAtoms_.begin(), plainAtoms_.end(), [&](std::size_t i) {
    return std::all_of(atoms_[i].begin(), atoms_[i].end(), [](Int c) { return c >= 0; });
  });

  hardBase_.assign(rank_, 1);
  for (std::size_t c = 0; c < rank_; ++c)
    if (coordGadget[c] >= 0) hardBase_[c] = 0;
  for (std::size_t i : plainAtoms_)
    for (std::size_t c = 0; c < rank_; ++c)
      if (atoms_[i][c] != 0 && coordGadget[c] >= 0)
        throw PreconditionError("plain atom " + labels_[i] + " touches gadget fresh coordinates");

  unitAtomCoord_.assign(plainAtoms_.size(), static_cast<std::size_t>(-1));
  nonUnitPlain_.clear();
  unitPlain_.clear();
  if (!plainNonneg_) {
    // A unit coordinate carries exactly one positive plain entry, from an atom equal to its unit vector.
    for (std::size_t c = 0; c < rank_; ++c) {
      if (!hardBase_[c]) continue;
      std::size_t positive = 0;
      std::size_t who = 0;
      for (std::size_t k = 0; k < plainAtoms_.size(); ++k)
        if (atoms_[plainAtoms_[k]][c] > 0) {
          ++positive;
          who = k;
        }
      if (positive != 1) continue;
      ElementVec unit(rank_, 0);
      unit[c] = 1;
      if (atoms_[plainAtoms_[who]] == unit) {
        unitAtomCoord_[who] = c;
        hardBase_[c] = 0;
      }
    }
    for (std::size_t k = 0; k < plainAtoms_.size(); ++k)
      (unitAtomCoord_[k] == static_cast<std::size_t>(-1) ? nonUnitPlain_ : unitPlain_).push_back(k);
  }

  auto hard_projection_ok = [&](const ElementVec& v) {
    bool nonzero = false;
    for (std::size_t c = 0; c < rank_; ++c) {
      if (!hardBase_[c]) continue;
      if (v[c] < 0) return false;
      nonzero = nonzero || v[c] > 0;
    }
    return nonzero;
  };
  if (!plainNonneg_)
    for (std::size_t k : nonUnitPlain_)
      if (!hard_projection_ok(atoms_[plainAtoms_[k]]))
        throw PreconditionError("unsupported presentation: atom " + labels_[plainAtoms_[k]] +
                                " has no nonnegative nonzero base projection");

  coreSparse_.assign(gadgets_.size(), {});
  coreHardBase_.assign(gadgets_.size(), {});
  for (std::size_t g = 0; g < gadgets_.size(); ++g) {
    if (!hard_projection_ok(coreVectors_[g]))
      throw PreconditionError("gadget " + std::to_string(g) + ": pi(m) has no nonnegative nonzero base projection");
    for (std::size_t c = 0; c < rank_; ++c) {
      const Int val = coreVectors_[g][c];
      if (val == 0) continue;
      coreSparse_[g].push_back({c, val});
      if (hardBase_[c] && val > 0) coreHardBase_[g].push_back({c, val});
    }
  }

  plainRows_.clear();
  if (plainNonneg_) {
    for (std::size_t c = 0; c < rank_; ++c)
      if (std::any_of(plainAtoms_.begin(), plainAtoms_.end(), [&](std::size_t i) { return atoms_[i][c] != 0; }))
        plainRows_.push_back(c);
    plainMatrix_ = IntMatrix(plainRows_.size(), plainAtoms_.size());
    for (std::size_t k = 0; k < plainAtoms_.size(); ++k)
      for (std::size_t r = 0; r < plainRows_.size(); ++r) plainMatrix_(r, k) = atoms_[plainAtoms_[k]][plainRows_[r]];
  }
}

// ---------------------------------------------------------------------------
// Queries

inline std::vector<ExponentVec> factorizations(const Presentation& m, std::span<const Int> v) {
  std::vector<ExponentVec> out;
  m.visit_factorizations(v, [&](const Presentation::Factorization& f) { out.push_back(f.exponents()); });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t count_factorizations(const Presentation& m, std::span<const Int> v) {
  std::size_t count = 0;
  m.visit_factorizations(v, [&](const Presentation::Factorization&) { ++count; });
  return count;
}

inline LengthSet length_set(const Presentation& m, std::span<const Int> v) {
  LengthSet out;
  m.visit_factorizations(v, [&](const Presentation::Factorization& f) { out.push_back(f.length()); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::optional<Int> max_length(const Presentation& m, std::span<const Int> v) {
  std::optional<Int> best;
  m.visit_factorizations(v, [&](const Presentation::Factorization& f) {
    Int len = f.length();
    if (!best || len > *best) best = len;
  });
  return best;
}

inline bool membership(const Presentation& m, std::span<const Int> v) {
  bool found = false;
  m.visit_factorizations(v, [&](const Presentation::Factorization&) {
    found = true;
    return false;
  });
  return found;
}

/// Successive gaps of a sorted length set.
inline DeltaSet delta_of_lengths(const LengthSet& lengths) {
  std::set<Int> gaps;
  for (std::size_t i = 1; i < lengths.size(); ++i) gaps.insert(lengths[i] - lengths[i - 1]);
  return {gaps.begin(), gaps.end()};
}

inline Int gcd_of(const DeltaSet& d) {
  Int g = 0;
  for (Int x : d) g = std::gcd(g, x);
  return g;
}

/// Block-diagonal product: coordinates and atoms of h1 first, then h2. Colliding labels
/// of h2 get a prime appended until unique.
inline Presentation direct_product(const Presentation& h1, const Presentation& h2) {
  const std::size_t r1 = h1.rank();
  const std::size_t rank = r1 + h2.rank();
  std::vector<ElementVec> atoms;
  std::vector<std::string> labels = h1.labels();
  std::set<std::string> used(labels.begin(), labels.end());
  for (const auto& a : h1.atoms()) {
    ElementVec v(rank, 0);
    std::copy(a.begin(), a.end(), v.begin());
    atoms.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < h2.atom_count(); ++i) {
    ElementVec v(rank, 0);
    std::copy(h2.atom(i).begin(), h2.atom(i).end(), v.begin() + static_cast<std::ptrdiff_t>(r1));
    atoms.push_back(std::move(v));
    std::string label = h2.labels()[i];
    while (used.count(label)) label += "'";
    used.insert(label);
    labels.push_back(std::move(label));
  }
  std::vector<GadgetBlock> gadgets = h1.gadgets();
  for (GadgetBlock g : h2.gadgets()) {
    ExponentVec m(h1.atom_count(), 0);
    m.insert(m.end(), g.m.begin(), g.m.end());
    g.m = std::move(m);
    g.freshBegin += r1;
    g.p1Index += h1.atom_count();
    gadgets.push_back(std::move(g));
  }
  return Presentation(rank, std::move(atoms), std::move(labels), std::move(gadgets));
}

/// All elements A·x with |x| <= maxLen, deduplicated and sorted.
inline std::vector<ElementVec> enumerate_elements(const Presentation& m, Int maxLen) {
  std::set<ElementVec> all{ElementVec(m.rank(), 0)};
  std::set<ElementVec> level = all;
  for (Int step = 0; step < maxLen; ++step) {
    std::set<ElementVec> next;
    for (const auto& v : level)
      for (const auto& a : m.atoms()) {
        ElementVec w = v;
        checked::axpy(w, 1, a);
        if (!all.count(w)) next.insert(std::move(w));
      }
    all.insert(next.begin(), next.end());
    level = std::move(next);
  }
  return {all.begin(), all.end()};
}

namespace detail {

inline void merge_gaps(std::set<Int>& into, const LengthSet& lengths) {
  for (std::size_t i = 1; i < lengths.size(); ++i) into.insert(lengths[i] - lengths[i - 1]);
}

}  // namespace detail

/// Union of Delta(L(a)) over all elements a that are products of at most maxLen atoms,
/// by direct enumeration of those elements. Exponential in maxLen; a reference route.
inline DeltaSet bounded_delta_set_bruteforce(const Presentation& m, Int maxLen) {
  std::set<Int> gaps;
  for (const auto& v : enumerate_elements(m, maxLen)) detail::merge_gaps(gaps, length_set(m, v));
  return {gaps.begin(), gaps.end()};
}

/// Reduced generating items for bounded enumeration: every atom outside free-standing
/// gadgets (cost 1) plus one full block per free-standing gadget (cost ell, value pi(m)).
struct ReducedItems {
  std::vector<ElementVec> vectors;
  std::vector<Int> cost;
  /// Atom index for plain items, or gadget index (with isBlock) for blocks.
  std::vector<std::size_t> source;
  std::vector<char> isBlock;
};

inline ReducedItems reduced_items(const Presentation& m) {
  ReducedItems items;
  for (std::size_t i = 0; i < m.atom_count(); ++i) {
    auto g = m.gadget_of_atom(i);
    if (g && m.free_standing(*g)) continue;
    items.vectors.push_back(m.atom(i));
    items.cost.push_back(1);
    items.source.push_back(i);
    items.isBlock.push_back(0);
  }
  for (std::size_t g = 0; g < m.gadgets().size(); ++g) {
    if (!m.free_standing(g)) continue;
    items.vectors.push_back(m.core_vector(g));
    items.cost.push_back(m.gadgets()[g].ell);
    items.source.push_back(g);
    items.isBlock.push_back(1);
  }
  return items;
}

/// Calls visit(element, itemCounts) for every multiset of reduced items with total cost <= budget.
template <class Visit>
void visit_reduced_multisets(const ReducedItems& items, std::size_t rank, Int budget, Visit&& visit) {
  ElementVec v(rank, 0);
  std::vector<Int> counts(items.vectors.size(), 0);
  auto rec = [&](auto&& self, std::size_t from, Int left) -> void {
    visit(std::as_const(v), std::as_const(counts));
    for (std::size_t i = from; i < items.vectors.size(); ++i) {
      if (items.cost[i] > left) continue;
      checked::axpy(v, 1, items.vectors[i]);
      ++counts[i];
      self(self, i, left - items.cost[i]);
      --counts[i];
      checked::axpy(v, -1, items.vectors[i]);
    }
  };
  rec(rec, 0, budget);
}

/// Union of Delta(L(a)) over all elements a that are products of at most maxLen atoms,
/// mapping each distance to the first element found exhibiting it.
///
/// For a free-standing gadget every factorization of a uses p_nu = t + f_nu times, so
/// removing the surplus atoms beyond complete blocks shifts L(a) by a constant. The
/// enumeration therefore only visits elements whose free-standing gadget atoms form
/// complete blocks (each block costing ell atoms); the resulting set is identical.
inline std::map<Int, ElementVec> bounded_delta_witnesses(const Presentation& m, Int maxLen) {
  const ReducedItems items = reduced_items(m);
  std::map<Int, ElementVec> out;
  visit_reduced_multisets(items, m.rank(), maxLen, [&](const ElementVec& v, const std::vector<Int>&) {
    const LengthSet lengths = length_set(m, v);
    for (std::size_t i = 1; i < lengths.size(); ++i) out.try_emplace(lengths[i] - lengths[i - 1], v);
  });
  return out;
}

inline DeltaSet bounded_delta_set(const Presentation& m, Int maxLen) {
  DeltaSet d;
  for (const auto& [gap, v] : bounded_delta_witnesses(m, maxLen)) d.push_back(gap);
  return d;
}

struct AtomMinimalityReport {
  bool ok = true;
  std::optional<std::size_t> offendingAtom;
  LengthSet offendingLengths;
  std::string message;
};

/// Every atom must have length set {1}.
inline AtomMinimalityReport assert_atoms_minimal(const Presentation& m) {
  AtomMinimalityReport report;
  for (std::size_t i = 0; i < m.atom_count(); ++i) {
    LengthSet l = length_set(m, m.atom(i));
    if (l != LengthSet{1}) {
      report.ok = false;
      report.offendingAtom = i;
      report.offendingLengths = l;
      report.message = "atom " + m.labels()[i] + " has length set {";
      for (std::size_t k = 0; k < l.size(); ++k) report.message += (k ? "," : "") + std::to_string(l[k]);
      report.message += "}";
      return report;
    }
  }
  report.message = "all " + std::to_string(m.atom_count()) + " atoms have length set {1}";
  return report;
}

}  // namespace deltareal
