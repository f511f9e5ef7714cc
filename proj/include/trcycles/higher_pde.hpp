#pragma once

// Higher-order annihilation check. With G_m = Delta^m ln Z' carrying
// hbar^{2g-2+n+m}/n! omega_{g,n+m}(slots; gamma'^n), recursion reads
//   G_1 = sum_k hbar^{k-1} K_k( sum over set partitions of the k slots of prod blocks ),
// each block of size m being an insertion block (G_m without its genus-0,
// spectator-free part) or a disc omega_{0,m}. An operator is a list of such
// terms; the check expands Z'^{-1} L Z' against the stored correlators.

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "trcycles/airy.hpp"

namespace trc {

/// K_k(insertion blocks, disc blocks), block sizes in decreasing order.
struct OperatorTerm {
  int k = 0;
  std::vector<int> insertions;
  std::vector<int> discs;

  std::string name() const {
    std::string s = "K" + std::to_string(k) + "(";
    bool first = true;
    for (int m : insertions) {
      s += (first ? "" : ",") + std::string("D") + std::to_string(m);
      first = false;
    }
    for (int m : discs) {
      s += (first ? "" : ",") + std::string("w0") + std::to_string(m);
      first = false;
    }
    return s + ")";
  }
  friend auto operator<=>(const OperatorTerm&, const OperatorTerm&) = default;
};

/// Expanded operator: coefficient of each term in Z'^{-1} (sum K-terms) Z'.
using OperatorExpansion = std::map<OperatorTerm, Rational>;

/// Unexpanded term c K_k(Delta^l, disc blocks); Delta^l acting on Z' expands into
/// set partitions of its l slots.
struct OperatorSummand {
  Rational coefficient;
  int k = 0;
  int l = 0;
  std::vector<int> discs;
};

inline OperatorExpansion expand_operator(const std::vector<OperatorSummand>& summands) {
  OperatorExpansion out;
  for (const auto& s : summands) {
    if (s.l == 0) {
      out[{s.k, {}, s.discs}] += s.coefficient;
      continue;
    }
    std::map<std::vector<int>, long> shapes;
    for (const auto& part : detail::set_partitions(s.l)) ++shapes[partition_shape(part)];
    for (const auto& [shape, count] : shapes) out[{s.k, shape, s.discs}] += s.coefficient * count;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// L = hbar Delta - hbar sum_k sum_l binom(k,l) K_k(hbar^l Delta^l, U_{k-l}), 2 <= k <= k_max.
inline OperatorExpansion general_operator(int k_max) {
  std::vector<OperatorSummand> sums;
  for (int k = 2; k <= k_max; ++k) {
    long binom = 1;
    for (int l = 0; l <= k; ++l) {
      if (l > 0) binom = binom * (k - l + 1) / l;
      if (k - l == 0) {
        sums.push_back({Rational(binom), k, l, {}});
        continue;
      }
      for (const auto& [shape, count] : compute_Uk(k - l).shapes)
        sums.push_back({Rational(binom * count), k, l, shape});
    }
  }
  return expand_operator(sums);
}

/// L = Delta - Bhat(gamma') - omega_{1,1} - K_2(Delta^2) - 3 K_3(omega_{0,2} x Delta) - K_3(Delta^3).
inline OperatorExpansion explicit_r3_operator() {
  return expand_operator({{Rational(1), 2, 0, {2}},
                          {Rational(1), 2, 2, {}},
                          {Rational(3), 3, 1, {2}},
                          {Rational(1), 3, 3, {}}});
}

namespace detail {

/// A set partition of the k kernel slots with a type per block (true = disc).
struct SlotAssignment {
  std::vector<std::vector<int>> blocks;
  std::vector<bool> disc;
};

inline std::map<OperatorTerm, std::vector<SlotAssignment>> slot_assignments(int k) {
  std::map<OperatorTerm, std::vector<SlotAssignment>> out;
  for (const auto& part : set_partitions(k)) {
    const std::size_t ell = part.size();
    for (unsigned mask = 0; mask < (1u << ell); ++mask) {
      OperatorTerm term{k, {}, {}};
      SlotAssignment as{part, std::vector<bool>(ell, false)};
      bool ok = true;
      for (std::size_t b = 0; b < ell; ++b) {
        const int m = static_cast<int>(part[b].size());
        as.disc[b] = (mask >> b) & 1u;
        if (as.disc[b] && m < 2) ok = false;
        (as.disc[b] ? term.discs : term.insertions).push_back(m);
      }
      if (!ok) continue;
      std::sort(term.insertions.rbegin(), term.insertions.rend());
      std::sort(term.discs.rbegin(), term.discs.rend());
      out[term].push_back(std::move(as));
    }
  }
  return out;
}

}  // namespace detail

namespace detail {

/// Pairs the K-terms of `op` acting on Z' with every B_{a,k0}, through hbar order
/// hbar_max and all degrees in t'. Each term's coefficient is spread evenly over the
/// slot assignments of its shape. The visitor receives (B-label, hbar order,
/// monomial, genus of the matching correlator, value before the monomial weight).
inline void operator_action(
    const CurveData& c, const OmegaTable& t, const OperatorExpansion& op, int hbar_max,
    const std::function<void(const Label&, int, const IndexTuple&, int, const Scalar&)>& visit) {
  if (hbar_max < 1) fail(ErrorKind::BadDeclaration, "hbar_max must be at least 1");
  if (t.chi_max < hbar_max)
    fail(ErrorKind::InsufficientPrecision, "table computed to chi " + std::to_string(t.chi_max) +
                                               ", operator check needs " + std::to_string(hbar_max));
  int kmax_table = 0, kmax_check = 0;
  for (const auto& [gn, kb] : t.bounds)
    for (const auto& [a, k] : kb) {
      kmax_table = std::max(kmax_table, k);
      if (2 * gn.first - 2 + gn.second <= hbar_max) kmax_check = std::max(kmax_check, k);
    }
  // Monomials include the Galois-invariant directions r | k: Z' does not depend on
  // them, which the operator must reproduce.
  std::vector<Label> mono_labels;
  for (const auto& p : c.points())
    for (int k = 1; k <= kmax_check; ++k) mono_labels.push_back({p.label, k});

  for (const auto& p : c.points()) {
    const int a = p.label, r = p.order;
    const int lowmin = -r * (kmax_table + 2);
    detail::BlockEvaluator ev(c, t, a, (r - 1) * r - 2 - lowmin, lowmin);
    const int k0_max = kmax_check + r;

    std::map<int, std::map<OperatorTerm, std::vector<detail::SlotAssignment>>> assignments;
    for (const auto& [term, coef] : op)
      if (term.k <= r && !assignments.count(term.k)) assignments[term.k] = detail::slot_assignments(term.k);

    for (int h = 1; h <= hbar_max; ++h)
      for (int n = 0; n <= h + 1; ++n) {
        if ((h + 1 - n) % 2 != 0) continue;
        const int g = (h + 1 - n) / 2;
        detail::for_each_multiset(mono_labels, n, [&](const IndexTuple& mono) {
          std::map<int, Scalar> rhs;
          for (const auto& [term, coef] : op) {
            if (term.k > r) continue;
            const auto& list = assignments.at(term.k).at(term);
            const Scalar weight = Scalar(coef / Rational(static_cast<long>(list.size())));
            for (const auto& rots : detail::galois_subsets(r, term.k - 1)) {
              std::vector<int> slot_rot{0};
              slot_rot.insert(slot_rot.end(), rots.begin(), rots.end());
              LaurentSeries w(SeriesKind::Function);
              for (const auto& as : list) {
                LaurentSeries fixed = LaurentSeries::monomial(0, Scalar(1));
                int budget = h - (term.k - 1);
                std::vector<std::vector<int>> ins_rots;
                std::vector<int> ins_sizes;
                for (std::size_t b = 0; b < as.blocks.size(); ++b) {
                  std::vector<int> br;
                  for (int s : as.blocks[b]) br.push_back(slot_rot[static_cast<std::size_t>(s)]);
                  std::sort(br.begin(), br.end());
                  const int m = static_cast<int>(br.size());
                  if (!as.disc[b]) {
                    ins_rots.push_back(br);
                    ins_sizes.push_back(m);
                    continue;
                  }
                  budget -= m - 2;
                  fixed = fixed * (m == 2 ? ev.disc(br[0], br[1]) : ev.stable_block(0, m, br, {}));
                }
                const int nd = static_cast<int>(ins_sizes.size());
                int twice_genus = budget + 2 * nd - n;
                for (int m : ins_sizes) twice_genus -= m;
                if (twice_genus < 0 || twice_genus % 2 != 0) continue;
                if (nd == 0) {
                  if (n == 0 && twice_genus == 0) w += fixed;
                  continue;
                }
                detail::multiset_splits(mono, nd, [&](const std::vector<IndexTuple>& split, long mult) {
                  std::vector<int> gcur;
                  detail::compositions(twice_genus / 2, nd, gcur, [&](const std::vector<int>& gs) {
                    LaurentSeries prod = fixed * Scalar(mult);
                    for (int b = 0; b < nd; ++b) {
                      const std::size_t ub = static_cast<std::size_t>(b);
                      const int gb = gs[ub], mb = ins_sizes[ub];
                      const int nb = static_cast<int>(split[ub].size());
                      if (gb == 0 && nb == 0) return;  // omega_{0,1} or a disc
                      if (gb == 0 && nb == 1 && mb == 1) {
                        prod = prod * ev.delta(ins_rots[ub][0], split[ub][0]);
                      } else {
                        if (2 * gb - 2 + nb + mb > t.chi_max)
                          fail(ErrorKind::InsufficientPrecision, "operator check needs omega_{" + std::to_string(gb) +
                                                                     "," + std::to_string(nb + mb) + "}");
                        prod = prod * ev.stable_block(gb, nb + mb, ins_rots[ub], split[ub]);
                      }
                      if (prod.is_zero()) return;
                    }
                    w += prod;
                  });
                });
              }
              if (w.is_zero()) continue;
              const LaurentSeries pr = w * ev.denominator_inverse(rots);
              for (int k0 = 1; k0 <= k0_max; ++k0) {
                if (!pr.in_window(-1 - k0))
                  fail(ErrorKind::InsufficientPrecision, "operator check window " + pr.window_string());
                const Scalar v = pr.coefficient(-1 - k0);
                if (!v.is_zero()) rhs[k0] += weight * v * Scalar(Rational(-1, k0));
              }
            }
          }
          for (int k0 = 1; k0 <= k0_max; ++k0) visit({a, k0}, h, mono, g, rhs.count(k0) ? rhs[k0] : Scalar());
        });
      }
  }
}

}  // namespace detail

/// Expands Z'^{-1} L Z' for L = Delta - Bhat(gamma') - (terms of `op`) and returns
/// the nonzero coefficients. Delta ln Z' contributes the correlators themselves;
/// Bhat(gamma') pairs to zero with every B-cycle.
inline ResidualReport verify_operator(const CurveData& c, const OmegaTable& t, const OperatorExpansion& op,
                                      int hbar_max, const std::string& reading = "operator") {
  ResidualReport rep;
  rep.reading = reading;
  detail::operator_action(c, t, op, hbar_max,
                          [&](const Label& i0, int h, const IndexTuple& mono, int g, const Scalar& rhs) {
                            IndexTuple idx = mono;
                            idx.push_back(i0);
                            const int n1 = static_cast<int>(idx.size());
                            const Scalar lhs = t.has_level(g, n1) ? t.get(g, n1, idx) : Scalar();
                            const Scalar diff = lhs - rhs;
                            ++rep.checked;
                            if (!diff.is_zero()) rep.nonzero.push_back({i0, h, mono, diff * multiset_weight(mono)});
                          });
  return rep;
}

/// One term of two expansions: symbolic coefficients and whether their evaluated
/// contributions (on the given curve, through the checked order) coincide.
struct TermComparison {
  OperatorTerm term;
  Rational first, second;
  bool evaluates_equal = true;
};

inline std::vector<TermComparison> compare_terms(const CurveData& c, const OmegaTable& t, const OperatorExpansion& a,
                                                 const OperatorExpansion& b, int hbar_max) {
  std::map<OperatorTerm, std::pair<Rational, Rational>> all;
  for (const auto& [term, coef] : a) all[term].first = coef;
  for (const auto& [term, coef] : b) all[term].second = coef;
  auto contribution = [&](const OperatorTerm& term, const Rational& coef) {
    std::map<std::tuple<Label, int, IndexTuple>, Scalar> out;
    if (coef == 0) return out;
    detail::operator_action(c, t, {{term, coef}}, hbar_max,
                            [&](const Label& i0, int h, const IndexTuple& mono, int, const Scalar& v) {
                              if (!v.is_zero()) out[{i0, h, mono}] = v;
                            });
    return out;
  };
  std::vector<TermComparison> out;
  for (const auto& [term, cs] : all) {
    TermComparison tc{term, cs.first, cs.second, true};
    if (cs.first != cs.second) tc.evaluates_equal = contribution(term, cs.first) == contribution(term, cs.second);
    out.push_back(tc);
  }
  return out;
}

struct HigherPdeReport {
  ResidualReport general;                 // the general operator
  ResidualReport explicit_form;           // the explicit r = 3 operator (r = 3 curves only)
  std::vector<TermComparison> terms;      // general vs explicit r = 3 expansion
};

/// Runs the general operator and, when the curve has an order-3 point, the explicit
/// r = 3 operator with its term-by-term comparison.
inline HigherPdeReport verify_higher_pde(const CurveData& c, const OmegaTable& t, int hbar_max) {
  HigherPdeReport out;
  const int r = c.max_order();
  const OperatorExpansion general = general_operator(r);
  out.general = verify_operator(c, t, general, hbar_max, "general");
  if (r == 3) {
    const OperatorExpansion explicit_r3 = explicit_r3_operator();
    out.terms = compare_terms(c, t, general, explicit_r3, hbar_max);
    out.explicit_form = verify_operator(c, t, explicit_r3, hbar_max, "explicit-r3");
  }
  return out;
}

}  // namespace trc
