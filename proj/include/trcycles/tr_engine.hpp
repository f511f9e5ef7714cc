#pragma once

// Residue form of topological recursion in local-cycle coordinates.
//
// omega_{g,n} = sum F_{g,n}[i_1..i_n] prod_j Bhat(Gamma_{i_j})(z_j), and
// F_{g,n}[i_1..i_n] is the iterated B-cycle integral. With the newest variable
// z_0 distinguished and the others contracted against B-cycles,
//
//   F_{g,n+1}[(a,k0), J] = -sum_{k=2}^{r_a} sum_{S subset G_a^*, |S|=k-1}
//       (1/k0) [w^{-1-k0}] W_{k,S}(w; J) / prod_{s in S} (y(w) - rho^s y(rho^s w))
//
// where everything is written as the coefficient of the appropriate power of dw,
// W_{k,S} sums over set partitions of the k slots {w} u {rho^s w} and the blocks
// are the lower correlators, omega_{0,1} blocks excluded.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "trcycles/curve.hpp"
#include "trcycles/cycles.hpp"
#include "trcycles/errors.hpp"
#include "trcycles/laurent.hpp"
#include "trcycles/scalar.hpp"

namespace trc {

using IndexTuple = std::vector<Label>;

/// Symmetric tensors F_{g,n} for 2g-2+n = 1..chi_max, n >= 1.
class OmegaTable {
 public:
  using Level = std::map<IndexTuple, Scalar>;

  int chi_max = 0;
  std::string curve_hash;
  std::map<std::pair<int, int>, Level> levels;
  /// Largest mode index that can carry a nonzero entry, per (g,n) and point.
  std::map<std::pair<int, int>, std::map<int, int>> bounds;
  /// Entries recomputed with another distinguished variable and found equal.
  std::map<std::pair<int, int>, long> symmetry_comparisons;

  bool has_level(int g, int n) const { return levels.count({g, n}) != 0; }

  const Level& level(int g, int n) const {
    auto it = levels.find({g, n});
    if (it == levels.end())
      fail(ErrorKind::NotInRange, "F_{" + std::to_string(g) + "," + std::to_string(n) + "} not computed");
    return it->second;
  }

  /// Entry for any index order.
  Scalar get(int g, int n, IndexTuple idx) const {
    if (static_cast<int>(idx.size()) != n) fail(ErrorKind::Internal, "index count does not match n");
    std::sort(idx.begin(), idx.end());
    const Level& l = level(g, n);
    auto it = l.find(idx);
    return it == l.end() ? Scalar() : it->second;
  }

  int bound(int g, int n, int point) const {
    auto it = bounds.find({g, n});
    if (it == bounds.end()) return 0;
    auto jt = it->second.find(point);
    return jt == it->second.end() ? 0 : jt->second;
  }

  /// omega_{g,n} in its first variable with the remaining n-1 contracted against
  /// B-cycles with the given labels.
  LocalForm omega_form(const CurveData& c, int g, int n, const IndexTuple& spectators) const {
    if (static_cast<int>(spectators.size()) != n - 1) fail(ErrorKind::Internal, "expected n-1 spectators");
    LocalCycle comb;
    for (const auto& p : c.points())
      for (int k = 1; k <= bound(g, n, p.label); ++k) {
        IndexTuple idx = spectators;
        idx.push_back({p.label, k});
        Scalar v = get(g, n, idx);
        if (!v.is_zero()) comb += LocalCycle::gamma(p.label, k, v);
      }
    return bhat(comb, c);
  }

  friend bool operator==(const OmegaTable& a, const OmegaTable& b) {
    return a.chi_max == b.chi_max && a.levels == b.levels;
  }
};

struct EngineOptions {
  /// Highest kernel order K_k used; 0 means all k <= r_a.
  int max_kernel_order = 0;
};

namespace detail {

/// Set partitions of {0..k-1}, blocks listed in order of their smallest element.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int k) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
      cur[b].push_back(i);
      rec(i + 1);
      cur[b].pop_back();
    }
    cur.push_back({i});
    rec(i + 1);
    cur.pop_back();
  };
  rec(0);
  return out;
}

inline void subsets_of_size(int n, int size, int start, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == size) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= n; ++i) {
    cur.push_back(i);
    subsets_of_size(n, size, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Unordered (k-1)-subsets of the nontrivial Galois elements {1..r-1}.
inline std::vector<std::vector<int>> galois_subsets(int r, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets_of_size(r - 1, size, 1, cur, out);
  return out;
}

/// Compositions of total into parts nonnegative integers.
inline void compositions(int total, int parts, std::vector<int>& cur,
                         const std::function<void(const std::vector<int>&)>& f) {
  if (parts == 0) {
    if (total == 0) f(cur);
    return;
  }
  if (parts == 1) {
    cur.push_back(total);
    f(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts - 1, cur, f);
    cur.pop_back();
  }
}

/// Multisets of size n drawn from sorted labels, emitted sorted.
inline void for_each_multiset(const std::vector<Label>& labels, int n,
                              const std::function<void(const IndexTuple&)>& f) {
  IndexTuple cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == n) {
      f(cur);
      return;
    }
    for (std::size_t i = start; i < labels.size(); ++i) {
      cur.push_back(labels[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
}

/// Ordered splittings of a sorted multiset into `parts` sub-multisets, with the
/// number of ways to split distinct variables carrying those labels.
inline void multiset_splits(const IndexTuple& j, int parts,
                            const std::function<void(const std::vector<IndexTuple>&, long)>& f) {
  std::vector<std::pair<Label, int>> groups;
  for (const auto& l : j) {
    if (!groups.empty() && groups.back().first == l)
      ++groups.back().second;
    else
      groups.push_back({l, 1});
  }
  std::vector<IndexTuple> cur(static_cast<std::size_t>(parts));
  std::function<void(std::size_t, long)> rec = [&](std::size_t gi, long mult) {
    if (gi == groups.size()) {
      f(cur, mult);
      return;
    }
    const auto& [label, count] = groups[gi];
    std::vector<int> take(static_cast<std::size_t>(parts), 0);
    std::function<void(int, int, long)> dist = [&](int p, int left, long m) {
      if (p == parts - 1) {
        take[static_cast<std::size_t>(p)] = left;
        for (int q = 0; q < parts; ++q)
          for (int c = 0; c < take[static_cast<std::size_t>(q)]; ++c) cur[static_cast<std::size_t>(q)].push_back(label);
        rec(gi + 1, mult * m);
        for (int q = 0; q < parts; ++q)
          for (int c = 0; c < take[static_cast<std::size_t>(q)]; ++c) cur[static_cast<std::size_t>(q)].pop_back();
        return;
      }
      long binom = 1;
      for (int v = 0; v <= left; ++v) {
        take[static_cast<std::size_t>(p)] = v;
        dist(p + 1, left - v, m * binom);
        binom = binom * (left - v) / (v + 1);
      }
    };
    dist(0, count, 1);
  };
  rec(0, 1);
}

/// Labels (b, j), j <= bound_b, skipping Galois-invariant modes r_b | j.
inline std::vector<Label> label_range(const CurveData& c, const std::map<int, int>& bound) {
  std::vector<Label> out;
  for (const auto& p : c.points()) {
    auto it = bound.find(p.label);
    const int kb = it == bound.end() ? 0 : it->second;
    for (int j = 1; j <= kb; ++j)
      if (j % p.order != 0) out.push_back({p.label, j});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rotation z -> rho^s z of the coefficient of dz (includes the rho^s from dz).
inline LaurentSeries rotate_form_coefficient(const LaurentSeries& f, int r, int s) {
  return f.with_kind(SeriesKind::Form).rotate(r, s).with_kind(SeriesKind::Function);
}

/// prod_{s in S} (y(w) - rho^s y(rho^s w)) as a series in w, coefficient of dw^{|S|}.
inline LaurentSeries kernel_denominator(const CurveData& c, int a, const std::vector<int>& rots) {
  const auto& p = c.point(a);
  LaurentSeries prod = LaurentSeries::monomial(0, Scalar(1));
  for (int s : rots) {
    LaurentSeries d(SeriesKind::Function, kNegInf, sat_add(c.times_precision(), -1));
    for (const auto& [k, t] : p.times)
      d.add_to(k - 1, t * (Scalar(1) - Scalar::root_of_unity(p.order, static_cast<long>(s) * k)));
    prod = prod * d;
  }
  return prod;
}

}  // namespace detail

/// Kernel residue at point a for one Galois subset S: given the assembled W(w)
/// (coefficient of dw^{|S|+1}), returns c_{k0} such that the output 1-form in the
/// spectator is sum_{k0} c_{k0} Bhat(Gamma_{a,k0}).
inline std::map<int, Scalar> kernel_residue(const CurveData& c, int a, const std::vector<int>& rots,
                                            const LaurentSeries& w_series) {
  std::map<int, Scalar> out;
  if (w_series.is_zero()) return out;
  const int r = c.point(a).order;
  const int low = *w_series.lowest_exponent();
  const int kmax = -1 - (low - static_cast<int>(rots.size()) * r);
  if (kmax < 1) return out;
  LaurentSeries p = detail::kernel_denominator(c, a, rots).inverse(-2 - low);
  LaurentSeries prod = w_series * p;
  for (int k0 = 1; k0 <= kmax; ++k0) {
    Scalar v = prod.coefficient(-1 - k0);
    if (!v.is_zero()) out[k0] = -v * Scalar(Rational(1, k0));
  }
  return out;
}

/// K_2 at a point of order 2 applied to W(w) = coefficient of dw dw' at w' = sigma(w).
inline LocalForm k2_apply(const CurveData& c, int a, const LaurentSeries& w_series) {
  if (c.point(a).order != 2)
    fail(ErrorKind::UseHigherKernel, "point " + std::to_string(a) + " has order > 2");
  LocalCycle comb;
  for (const auto& [k0, v] : kernel_residue(c, a, {1}, w_series)) comb += LocalCycle::gamma(a, k0, v);
  return bhat(comb, c);
}

/// K_k at point a: sums the kernel residue over all (k-1)-subsets of G_a^*. The
/// callback supplies W for a given subset. Empty for k > r_a.
inline LocalForm kk_apply(const CurveData& c, int k, int a,
                          const std::function<LaurentSeries(const std::vector<int>&)>& w_for_subset) {
  const int r = c.point(a).order;
  LocalCycle comb;
  if (k < 2 || k > r) return bhat(comb, c);
  for (const auto& rots : detail::galois_subsets(r, k - 1))
    for (const auto& [k0, v] : kernel_residue(c, a, rots, w_for_subset(rots)))
      comb += LocalCycle::gamma(a, k0, v);
  return bhat(comb, c);
}

namespace detail {

/// Slot series at one point (coefficients of dw): Bhat of B-cycle duals, discs
/// omega_{0,2}(rho^s w, rho^t w), the interior omega_{0,2}(w, B_l) and stable
/// blocks omega_{g,n}(rotated slots, spectators), memoized.
class BlockEvaluator {
 public:
  BlockEvaluator(const CurveData& c, const OmegaTable& t, int point, int cap, int lowmin)
      : c_(c), t_(t), point_(point), r_(c.point(point).order), cap_(cap), lowmin_(lowmin) {}

  int point() const { return point_; }
  int order() const { return r_; }
  int window_hi() const { return c_.has_phi() ? std::min(cap_, c_.phi_precision() - 1) : cap_; }

  const LaurentSeries& bhat_at(const Label& i) {
    auto it = bhat_memo_.find(i);
    if (it != bhat_memo_.end()) return it->second;
    LaurentSeries s(SeriesKind::Function, kNegInf, window_hi());
    if (i.point == point_) s.add_to(-i.k - 1, Scalar(i.k));
    if (c_.has_phi())
      for (int j = 1; j - 1 <= window_hi(); ++j) s.add_to(j - 1, c_.phi({point_, j}, i));
    return bhat_memo_.emplace(i, std::move(s)).first->second;
  }

  const LaurentSeries& denominator_inverse(const std::vector<int>& rots) {
    auto it = denom_memo_.find(rots);
    if (it != denom_memo_.end()) return it->second;
    LaurentSeries inv = kernel_denominator(c_, point_, rots).inverse(-2 - lowmin_);
    return denom_memo_.emplace(rots, std::move(inv)).first->second;
  }

  LaurentSeries disc(int s, int t) const {
    const Scalar rs = Scalar::root_of_unity(r_, s), rt = Scalar::root_of_unity(r_, t);
    const Scalar diff = rs - rt;
    LaurentSeries out(SeriesKind::Function, kNegInf, window_hi());
    out.add_to(-2, rs * rt / (diff * diff));
    if (c_.has_phi())
      for (int k = 1; k - 1 <= window_hi(); ++k)
        for (int j = 1; k + j - 2 <= window_hi(); ++j)
          out.add_to(k + j - 2, c_.phi({point_, k}, {point_, j}) *
                                    Scalar::root_of_unity(r_, static_cast<long>(s) * k + static_cast<long>(t) * j));
    return out;
  }

  /// omega_{0,2}(rho^s w, .) paired with B_l, the second variable exterior to w.
  LaurentSeries delta(int s, const Label& l) const {
    if (l.point != point_) return LaurentSeries(SeriesKind::Function);
    return LaurentSeries::monomial(l.k - 1, Scalar::root_of_unity(r_, static_cast<long>(s) * l.k));
  }

  /// Stable block; rots must be sorted, spect sorted.
  const LaurentSeries& stable_block(int gb, int nb, const std::vector<int>& rots, const IndexTuple& spect) {
    auto key = std::make_tuple(gb, nb, rots, spect);
    auto it = block_memo_.find(key);
    if (it != block_memo_.end()) return it->second;
    LaurentSeries out(SeriesKind::Function, kNegInf, window_hi());
    const int s0 = rots.front();
    const std::vector<int> rest(rots.begin() + 1, rots.end());
    for (const auto& l : label_range(c_, t_.bounds.at({gb, nb}))) {
      IndexTuple idx = spect;
      idx.insert(std::upper_bound(idx.begin(), idx.end(), l), l);
      if (rest.empty()) {
        Scalar v = t_.get(gb, nb, idx);
        if (!v.is_zero()) out += rotate_form_coefficient(bhat_at(l), r_, s0) * v;
      } else {
        const LaurentSeries& inner = stable_block(gb, nb, rest, idx);
        if (!inner.is_zero()) out += rotate_form_coefficient(bhat_at(l), r_, s0) * inner;
      }
    }
    return block_memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const CurveData& c_;
  const OmegaTable& t_;
  int point_, r_, cap_, lowmin_;
  std::map<Label, LaurentSeries> bhat_memo_;
  std::map<std::vector<int>, LaurentSeries> denom_memo_;
  std::map<std::tuple<int, int, std::vector<int>, IndexTuple>, LaurentSeries> block_memo_;
};

class RecursionLevel {
 public:
  RecursionLevel(const CurveData& c, OmegaTable& t, const EngineOptions& opt, int g, int n_spect)
      : c_(c), t_(t), opt_(opt), g_(g), n_(n_spect) {}

  void run() {
    std::map<int, int> kb;
    for (const auto& p : c_.points()) {
      auto [bound, low] = pole_bounds(p.label);
      kb[p.label] = bound;
      lowmin_[p.label] = low;
    }
    const std::pair<int, int> key{g_, n_ + 1};
    t_.bounds[key] = kb;
    OmegaTable::Level computed;
    const std::vector<Label> labels = label_range(c_, kb);
    for_each_multiset(labels, n_, [&](const IndexTuple& j) {
      for (const auto& p : c_.points()) {
        if (kb[p.label] < 1) continue;
        point_ = p.label;
        r_ = p.order;
        const int kmax = opt_.max_kernel_order > 0 ? std::min(r_, opt_.max_kernel_order) : r_;
        const int cap = (kmax - 1) * r_ - 2 - lowmin_[point_];
        evaluators_.try_emplace(point_, c_, t_, point_, cap, lowmin_[point_]);
        std::map<int, Scalar> acc;
        for (int k = 2; k <= kmax; ++k)
          for (const auto& rots : galois_subsets(r_, k - 1)) {
            LaurentSeries w = assemble(k, rots, j);
            if (w.is_zero()) continue;
            LaurentSeries prod = w * evaluators_.at(point_).denominator_inverse(rots);
            for (int k0 = 1; k0 <= kb[point_]; ++k0) {
              Scalar v = coefficient_checked(prod, -1 - k0, k0);
              if (!v.is_zero()) acc[k0] += -v * Scalar(Rational(1, k0));
            }
          }
        for (int k0 = 1; k0 <= kb[point_]; ++k0) {
          Scalar v = acc.count(k0) ? acc[k0] : Scalar();
          if (k0 % r_ == 0) {
            if (!v.is_zero())
              fail(ErrorKind::Internal, "Galois-invariant mode " + std::to_string(k0) + " is nonzero");
            continue;
          }
          IndexTuple idx = j;
          idx.push_back({point_, k0});
          std::sort(idx.begin(), idx.end());
          auto [it, inserted] = computed.try_emplace(idx, v);
          if (!inserted) ++t_.symmetry_comparisons[key];
          if (!inserted && !(it->second == v))
            fail(ErrorKind::SymmetryViolation, "F_{" + std::to_string(g_) + "," + std::to_string(n_ + 1) +
                                                   "} differs under permutation at " + describe(idx) + ": " +
                                                   it->second.to_string() + " vs " + v.to_string());
        }
      }
    });
    OmegaTable::Level& out = t_.levels[key];
    for (auto& [idx, v] : computed)
      if (!v.is_zero()) out.emplace(idx, std::move(v));
  }

 private:
  static std::string describe(const IndexTuple& idx) {
    std::string s = "[";
    for (const auto& l : idx) s += l.to_string();
    return s + "]";
  }

  Scalar coefficient_checked(const LaurentSeries& s, int e, int k0) const {
    if (!s.in_window(e))
      fail(ErrorKind::InsufficientPrecision, "omega_{" + std::to_string(g_) + "," + std::to_string(n_ + 1) +
                                                 "} at point " + std::to_string(point_) + ", k = " +
                                                 std::to_string(k0) + ": series window " + s.window_string());
    return s.coefficient(e);
  }

  // Lowest exponent a block can contribute at point a, or nullopt if it vanishes
  // or is excluded.
  std::optional<int> block_low(int a, int gb, int slots, int spect) const {
    const int nb = slots + spect;
    if (gb == 0 && nb == 1) return std::nullopt;
    if (gb == 0 && nb == 2) return slots == 1 ? 0 : -2;
    if (!t_.has_level(gb, nb)) fail(ErrorKind::Internal, "lower correlator missing");
    std::optional<int> best;
    for (const auto& [idx, v] : t_.level(gb, nb)) {
      std::vector<int> ks;
      for (const auto& l : idx)
        if (l.point == a) ks.push_back(l.k + 1);
      std::sort(ks.rbegin(), ks.rend());
      int sum = 0;
      for (int i = 0; i < slots && i < static_cast<int>(ks.size()); ++i) sum += ks[static_cast<std::size_t>(i)];
      if (!best || -sum < *best) best = -sum;
    }
    return best;
  }

  // (largest k0 that can be nonzero, lowest exponent of any W) at point a.
  std::pair<int, int> pole_bounds(int a) const {
    const int r = c_.point(a).order;
    const int kmax = opt_.max_kernel_order > 0 ? std::min(r, opt_.max_kernel_order) : r;
    int bound = 0, lowmin = 0;
    for (int k = 2; k <= kmax; ++k) {
      for (const auto& part : set_partitions(k)) {
        const int ell = static_cast<int>(part.size());
        const int gsum = g_ - k + ell;
        if (gsum < 0) continue;
        std::vector<int> gcur;
        compositions(gsum, ell, gcur, [&](const std::vector<int>& gs) {
          std::vector<int> ccur;
          compositions(n_, ell, ccur, [&](const std::vector<int>& counts) {
            for (int i = 0; i < ell; ++i)
              if (gs[static_cast<std::size_t>(i)] == 0 &&
                  part[static_cast<std::size_t>(i)].size() + static_cast<std::size_t>(counts[static_cast<std::size_t>(i)]) == 1)
                return;
            int low = 0;
            for (int i = 0; i < ell; ++i) {
              auto bl = block_low(a, gs[static_cast<std::size_t>(i)],
                                  static_cast<int>(part[static_cast<std::size_t>(i)].size()),
                                  counts[static_cast<std::size_t>(i)]);
              if (!bl) return;
              low += *bl;
            }
            bound = std::max(bound, -1 - low + (k - 1) * r);
            lowmin = std::min(lowmin, low);
          });
        });
      }
    }
    return {bound, lowmin};
  }

  // Block with the given slot rotations, genus gb and spectator labels; nullopt when
  // excluded (omega_{0,1}).
  std::optional<LaurentSeries> block(int gb, std::vector<int> rots, const IndexTuple& spect) {
    BlockEvaluator& ev = evaluators_.at(point_);
    const int nb = static_cast<int>(rots.size() + spect.size());
    if (gb == 0 && nb == 1) return std::nullopt;
    if (gb == 0 && nb == 2) {
      if (rots.size() == 2) return ev.disc(rots[0], rots[1]);
      return ev.delta(rots[0], spect.front());
    }
    std::sort(rots.begin(), rots.end());
    return ev.stable_block(gb, nb, rots, spect);
  }

  LaurentSeries assemble(int k, const std::vector<int>& galois, const IndexTuple& j) {
    std::vector<int> slot_rot{0};
    slot_rot.insert(slot_rot.end(), galois.begin(), galois.end());
    LaurentSeries w(SeriesKind::Function);
    for (const auto& part : set_partitions(k)) {
      const int ell = static_cast<int>(part.size());
      const int gsum = g_ - k + ell;
      if (gsum < 0) continue;
      std::vector<std::vector<int>> rots(static_cast<std::size_t>(ell));
      for (int i = 0; i < ell; ++i)
        for (int slot : part[static_cast<std::size_t>(i)])
          rots[static_cast<std::size_t>(i)].push_back(slot_rot[static_cast<std::size_t>(slot)]);
      multiset_splits(j, ell, [&](const std::vector<IndexTuple>& split, long mult) {
        std::vector<int> gcur;
        compositions(gsum, ell, gcur, [&](const std::vector<int>& gs) {
          for (int i = 0; i < ell; ++i)
            if (gs[static_cast<std::size_t>(i)] == 0 &&
                rots[static_cast<std::size_t>(i)].size() + split[static_cast<std::size_t>(i)].size() == 1)
              return;
          LaurentSeries prod = LaurentSeries::monomial(0, Scalar(mult));
          for (int i = 0; i < ell; ++i) {
            auto b = block(gs[static_cast<std::size_t>(i)], rots[static_cast<std::size_t>(i)],
                           split[static_cast<std::size_t>(i)]);
            if (!b || b->is_zero()) return;
            prod = prod * *b;
          }
          w += prod;
        });
      });
    }
    return w;
  }

  const CurveData& c_;
  OmegaTable& t_;
  const EngineOptions& opt_;
  int g_, n_;
  int point_ = 0, r_ = 2;
  std::map<int, int> lowmin_;
  std::map<int, BlockEvaluator> evaluators_;
};

}  // namespace detail

/// F_{g,n} for every 1 <= 2g-2+n <= chi_max, n >= 1.
inline OmegaTable compute_omega_table(const CurveData& c, int chi_max, const EngineOptions& opt = {}) {
  if (chi_max < 1) fail(ErrorKind::BadDeclaration, "chi_max must be at least 1");
  OmegaTable t;
  t.chi_max = chi_max;
  for (int chi = 1; chi <= chi_max; ++chi)
    for (int g = 0; 2 * g - 2 + 1 <= chi; ++g) {
      const int n = chi + 2 - 2 * g;
      if (n < 1) continue;
      detail::RecursionLevel(c, t, opt, g, n - 1).run();
    }
  return t;
}

/// F_g = <eta, omega_{g,1}> / (2 - 2g), g >= 2.
inline Scalar compute_Fg(const OmegaTable& t, const CurveData& c, int g) {
  if (g < 2) fail(ErrorKind::OutOfScope, "F_g is only defined here for g >= 2");
  return eta_pairing(t.omega_form(c, g, 1, {}), c) / Scalar(2 - 2 * g);
}

}  // namespace trc
