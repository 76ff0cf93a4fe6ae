#pragma once

// Exact enumeration over the nonnegative integer solutions of linear systems:
// solution sets of A·x = b, their maximal length, Hilbert bases of A·x = 0,
// and minimal elements of upward-closed subsets of N^n.

#include <optional>
#include <set>
#include <type_traits>
#include <utility>

#include "deltareal/core.hpp"

namespace deltareal::diophantine {

namespace detail {

template <class Visit>
bool invoke_visit(Visit& visit, std::span<const Int> x) {
  if constexpr (std::is_same_v<std::invoke_result_t<Visit&, std::span<const Int>>, bool>) {
    return visit(x);
  } else {
    visit(x);
    return true;
  }
}

template <class Visit>
class SolutionWalker {
 public:
  SolutionWalker(const IntMatrix& a, std::span<const Int> b, Visit& visit)
      : a_(a), visit_(visit), x_(a.cols(), 0), res_(b.begin(), b.end()),
        suffixPos_((a.cols() + 1) * a.rows(), 0) {
    for (std::size_t j = a.cols(); j-- > 0;)
      for (std::size_t r = 0; r < a.rows(); ++r)
        suffixPos_[j * a.rows() + r] = suffixPos_[(j + 1) * a.rows() + r] || a(r, j) > 0;
  }

  void run() {
    if (std::any_of(res_.begin(), res_.end(), [](Int v) { return v < 0; })) return;
    descend(0);
  }

 private:
  bool descend(std::size_t j) {
    const std::size_t rows = a_.rows();
    for (std::size_t r = 0; r < rows; ++r)
      if (res_[r] > 0 && !suffixPos_[j * rows + r]) return true;
    if (j == a_.cols()) return invoke_visit(visit_, std::span<const Int>(x_));

    auto c = a_.col(j);
    Int tmax = -1;
    for (std::size_t r = 0; r < rows; ++r)
      if (c[r] > 0) {
        Int q = res_[r] / c[r];
        tmax = (tmax < 0) ? q : std::min(tmax, q);
      }
    if (j + 1 == a_.cols()) {
      // Last column: the residual must be an exact multiple.
      for (std::size_t r = 0; r < rows; ++r)
        if (res_[r] != tmax * c[r]) return true;
      x_[j] = tmax;
      bool go = invoke_visit(visit_, std::span<const Int>(x_));
      x_[j] = 0;
      return go;
    }
    for (std::size_t r = 0; r < rows; ++r) res_[r] -= tmax * c[r];
    for (Int t = tmax; t >= 0; --t) {
      x_[j] = t;
      if (!descend(j + 1)) {
        for (std::size_t r = 0; r < rows; ++r) res_[r] += t * c[r];
        x_[j] = 0;
        return false;
      }
      for (std::size_t r = 0; r < rows; ++r) res_[r] += c[r];
    }
    for (std::size_t r = 0; r < rows; ++r) res_[r] -= c[r];
    x_[j] = 0;
    return true;
  }

  const IntMatrix& a_;
  Visit& visit_;
  ExponentVec x_;
  ElementVec res_;
  std::vector<char> suffixPos_;
};

inline void check_solver_input(const IntMatrix& a, std::span<const Int> b) {
  if (b.size() != a.rows())
    throw DimensionError("right-hand side has length " + std::to_string(b.size()) + ", expected " +
                         std::to_string(a.rows()));
  if (!a.columns_nonneg_nonzero())
    throw PreconditionError("solver requires nonnegative, nonzero columns");
}

}  // namespace detail

/// Calls visit(x) for every x in N^cols with A·x = b, depth-first over the columns in
/// order with each coordinate running from its largest feasible value down to zero
/// (so the visiting order is descending lexicographic). visit may return false to stop.
template <class Visit>
void visit_nonneg_solutions(const IntMatrix& a, std::span<const Int> b, Visit&& visit) {
  detail::check_solver_input(a, b);
  detail::SolutionWalker<std::remove_reference_t<Visit>> walker(a, b, visit);
  walker.run();
}

inline std::vector<ExponentVec> enumerate_nonneg_solutions(const IntMatrix& a, std::span<const Int> b) {
  std::vector<ExponentVec> out;
  visit_nonneg_solutions(a, b, [&](std::span<const Int> x) { out.emplace_back(x.begin(), x.end()); });
  return out;
}

inline std::optional<Int> max_solution_length(const IntMatrix& a, std::span<const Int> b) {
  std::optional<Int> best;
  visit_nonneg_solutions(a, b, [&](std::span<const Int> x) {
    Int len = length(x);
    if (!best || len > *best) best = len;
  });
  return best;
}

struct HilbertConfig {
  std::size_t maxGenerators = 20000;
  std::size_t maxFrontier = 1'000'000;
  /// Optional: exclusivePartner[j] = k forbids solutions with x_j > 0 and x_k > 0 at once.
  /// The result is then the set of Hilbert basis elements respecting every exclusion.
  std::vector<std::size_t> exclusivePartner;
};

/// Minimal generating set of { x in N^cols : A·x = 0 }, computed by the
/// Contejean–Devie completion. Sorted ascending lexicographically.
/// With exclusions the search stays inside the corresponding faces of the solution cone;
/// completion still reaches every such basis element since its path only visits vectors below it.
inline std::vector<ExponentVec> hilbert_basis_kernel(const IntMatrix& a, const HilbertConfig& cfg = {}) {
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  const bool exclusive = !cfg.exclusivePartner.empty();
  if (exclusive && cfg.exclusivePartner.size() != n) throw DimensionError("exclusivePartner has wrong length");
  std::vector<ExponentVec> basis;

  auto dot = [&](std::span<const Int> u, std::span<const Int> v) {
    Int s = 0;
    for (std::size_t r = 0; r < m; ++r) s = checked::add(s, checked::mul(u[r], v[r]));
    return s;
  };

  std::vector<std::pair<ExponentVec, ElementVec>> frontier;
  for (std::size_t j = 0; j < n; ++j) {
    ExponentVec e(n, 0);
    e[j] = 1;
    frontier.emplace_back(std::move(e), ElementVec(a.col(j).begin(), a.col(j).end()));
  }

  while (!frontier.empty()) {
    std::vector<std::pair<ExponentVec, ElementVec>> open;
    for (auto& entry : frontier) {
      if (is_zero(entry.second))
        basis.push_back(std::move(entry.first));
      else
        open.push_back(std::move(entry));
    }
    if (basis.size() > cfg.maxGenerators)
      throw ResourceLimitError("Hilbert basis exceeds " + std::to_string(cfg.maxGenerators) + " generators");

    std::set<ExponentVec> next;
    for (const auto& [p, ap] : open) {
      for (std::size_t j = 0; j < n; ++j) {
        if (dot(ap, a.col(j)) >= 0) continue;
        if (exclusive && p[cfg.exclusivePartner[j]] > 0) continue;
        ExponentVec q = p;
        q[j] = checked::add(q[j], 1);
        bool dominated = std::any_of(basis.begin(), basis.end(), [&](const ExponentVec& b) { return leq(b, q); });
        if (!dominated) next.insert(std::move(q));
      }
      if (next.size() > cfg.maxFrontier)
        throw ResourceLimitError("Hilbert basis frontier exceeds " + std::to_string(cfg.maxFrontier) + " vectors");
    }
    frontier.clear();
    for (const auto& q : next) frontier.emplace_back(q, a.apply(q));
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

enum class Certification { NotRequested, Certified, Heuristic, BoxTooSmall };

inline const char* certification_name(Certification c) {
  switch (c) {
    case Certification::NotRequested: return "not-requested";
    case Certification::Certified: return "certified";
    case Certification::Heuristic: return "heuristic: certified only within boxBound";
    case Certification::BoxTooSmall: return "box too small";
  }
  return "unknown";
}

struct FrontierConfig {
  /// Per-coordinate cap on the searched box; entries must be >= 1.
  ExponentVec boxBound;
  bool certify = false;
  /// A caller-proved bound containing every minimal element. Certification requires it to fit in the box.
  std::optional<ExponentVec> provenBound;
  std::size_t maxVisited = 5'000'000;
};

struct MinimalElements {
  std::vector<ExponentVec> elements;
  Certification certification = Certification::NotRequested;
  bool boxTruncated = false;
  std::size_t visited = 0;
};

/// Minimal elements of an upward-closed set S ⊆ N^n inside the box, found by a
/// level-synchronous search over |m| that discards vectors dominated by minima found so
/// far. Every non-dominated vector of level L+1 has a non-dominated non-member predecessor
/// of level L, so expanding only non-members is complete within the box.
template <class Oracle>
MinimalElements minimal_elements(Oracle&& oracle, const FrontierConfig& cfg) {
  const std::size_t n = cfg.boxBound.size();
  if (std::any_of(cfg.boxBound.begin(), cfg.boxBound.end(), [](Int b) { return b < 1; }))
    throw PreconditionError("boxBound coordinates must be >= 1");
  if (cfg.provenBound && cfg.provenBound->size() != n) throw DimensionError("provenBound has wrong dimension");

  MinimalElements out;
  std::vector<ExponentVec> level{ExponentVec(n, 0)};
  while (!level.empty()) {
    std::vector<ExponentVec> nonMembers;
    for (auto& v : level) {
      if (++out.visited > cfg.maxVisited)
        throw ResourceLimitError("minimal_elements visited more than " + std::to_string(cfg.maxVisited) + " vectors");
      if (oracle(std::span<const Int>(v)))
        out.elements.push_back(v);
      else
        nonMembers.push_back(std::move(v));
    }
    std::set<ExponentVec> next;
    for (const auto& v : nonMembers) {
      for (std::size_t j = 0; j < n; ++j) {
        if (v[j] >= cfg.boxBound[j]) {
          out.boxTruncated = true;
          continue;
        }
        ExponentVec w = v;
        ++w[j];
        bool dominated =
            std::any_of(out.elements.begin(), out.elements.end(), [&](const ExponentVec& e) { return leq(e, w); });
        if (!dominated) next.insert(std::move(w));
      }
    }
    level.assign(next.begin(), next.end());
  }
  std::sort(out.elements.begin(), out.elements.end());

  if (cfg.certify) {
    if (!out.boxTruncated)
      out.certification = Certification::Certified;
    else if (cfg.provenBound)
      out.certification = leq(*cfg.provenBound, cfg.boxBound) ? Certification::Certified : Certification::BoxTooSmall;
    else
      out.certification = Certification::Heuristic;
  }
  return out;
}

}  // namespace deltareal::diophantine
