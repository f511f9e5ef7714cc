#pragma once

// The ABCD tensors of the quantum Airy structure at r = 2 points, the tensor-form
// recursion, the U_k operators and the annihilation checks.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "trcycles/tr_engine.hpp"
#include "trcycles/wavefunction.hpp"

namespace trc {

using Tensor = std::map<IndexTuple, Scalar>;

/// Sparse tensors over labels (a, k), 1 <= k <= max_mode, k odd (the even modes
/// are Galois-invariant and decouple). Storage keys are
/// canonical: A sorted, C as (i0, i, j) with i <= j, B as (i0, j, l) with j the
/// correlator slot and l the spectator, D as (i).
struct AiryTensors {
  int max_mode = 0;
  std::vector<Label> labels;
  Tensor A, B, C, D;

  static Scalar lookup(const Tensor& t, const IndexTuple& key) {
    auto it = t.find(key);
    return it == t.end() ? Scalar() : it->second;
  }
  Scalar a(Label i, Label j, Label k) const {
    IndexTuple key{i, j, k};
    std::sort(key.begin(), key.end());
    return lookup(A, key);
  }
  Scalar b(const Label& i0, const Label& j, const Label& l) const { return lookup(B, {i0, j, l}); }
  Scalar c(const Label& i0, Label i, Label j) const {
    if (j < i) std::swap(i, j);
    return lookup(C, {i0, i, j});
  }
  Scalar d(const Label& i) const { return lookup(D, {i}); }

  friend bool operator==(const AiryTensors&, const AiryTensors&) = default;
};

namespace detail {

inline void put(Tensor& t, IndexTuple key, const Scalar& v) {
  if (!v.is_zero()) t[std::move(key)] = v;
}

}  // namespace detail

/// A = 2 F_{0,3} and D = F_{1,1} from the table; C and B from kernel residues:
/// C[i0; i, j] = 2 <B_{i0}, K_2(Bhat Gamma_i, Bhat Gamma_j)>,
/// B[i0; j, l] = 2 <B_l, <B_{i0}, K_2(Bhat Gamma_j, omega_{0,2}(z, .))>>.
inline AiryTensors compute_airy_tensors(const CurveData& c, const OmegaTable& t) {
  for (const auto& p : c.points())
    if (p.order != 2)
      fail(ErrorKind::UnsupportedTensorForm, "point " + std::to_string(p.label) + " has order " +
                                                 std::to_string(p.order) + "; use the higher-order check");
  if (!t.has_level(0, 3) || !t.has_level(1, 1))
    fail(ErrorKind::NotInRange, "omega_{0,3} and omega_{1,1} are required");
  AiryTensors at;
  for (const auto& [gn, kb] : t.bounds)
    for (const auto& [a, k] : kb) at.max_mode = std::max(at.max_mode, k);
  for (const auto& p : c.points())
    for (int k = 1; k <= at.max_mode; k += 2) at.labels.push_back({p.label, k});
  std::sort(at.labels.begin(), at.labels.end());

  for (const auto& [idx, v] : t.level(0, 3)) detail::put(at.A, idx, Scalar(2) * v);
  for (const auto& [idx, v] : t.level(1, 1)) detail::put(at.D, idx, v);

  for (const auto& p : c.points()) {
    const int a = p.label;
    detail::BlockEvaluator ev(c, t, a, at.max_mode + 2, 0);
    auto rot = [](const LaurentSeries& s) { return detail::rotate_form_coefficient(s, 2, 1); };
    for (std::size_t x = 0; x < at.labels.size(); ++x)
      for (std::size_t y = x; y < at.labels.size(); ++y) {
        const Label &i = at.labels[x], &j = at.labels[y];
        const LaurentSeries w = ev.bhat_at(i) * rot(ev.bhat_at(j)) + ev.bhat_at(j) * rot(ev.bhat_at(i));
        for (const auto& [k0, v] : kernel_residue(c, a, {1}, w))
          if (k0 <= at.max_mode) detail::put(at.C, {{a, k0}, i, j}, v);
      }
    for (const auto& j : at.labels)
      for (const auto& l : at.labels) {
        const LaurentSeries w = ev.bhat_at(j) * ev.delta(1, l) + ev.delta(0, l) * rot(ev.bhat_at(j));
        for (const auto& [k0, v] : kernel_residue(c, a, {1}, w))
          if (k0 <= at.max_mode) detail::put(at.B, {{a, k0}, j, l}, v);
      }
  }
  return at;
}

/// Largest mode of F_{g,n} at an r = 2 point.
inline int quadratic_mode_bound(int g, int n) { return 6 * g - 5 + 2 * n; }

/// F_{g,n} for 1 <= 2g-2+n <= chi_max by tensor contraction alone, seeded with
/// F_{0,3} = A/2 and F_{1,1} = D:
/// 2F_{g,n+1}[i0, J] = sum C[i0;i,j] (F_{g-1,n+2}[i,j,J] + sum_stable F[i,J1] F[j,J2])
///                     + 2 sum_k sum_j B[i0; j, J_k] F_{g,n}[j, J \ J_k].
inline OmegaTable tensor_recursion(const AiryTensors& at, int chi_max) {
  if (chi_max < 1) fail(ErrorKind::BadDeclaration, "chi_max must be at least 1");
  const int need = quadratic_mode_bound((chi_max + 1) / 2, chi_max + 2 - 2 * ((chi_max + 1) / 2));
  if (need > at.max_mode)
    fail(ErrorKind::InsufficientPrecision, "tensors known up to mode " + std::to_string(at.max_mode) +
                                               ", recursion needs " + std::to_string(need));
  std::vector<int> points;
  for (const auto& l : at.labels)
    if (points.empty() || points.back() != l.point) points.push_back(l.point);

  std::map<Label, std::vector<std::pair<std::pair<Label, Label>, Scalar>>> c_by_i0;
  for (const auto& [key, v] : at.C) c_by_i0[key[0]].push_back({{key[1], key[2]}, v});
  std::map<std::pair<Label, Label>, std::vector<std::pair<Label, Scalar>>> b_by_i0_l;
  for (const auto& [key, v] : at.B) b_by_i0_l[{key[0], key[2]}].push_back({key[1], v});

  OmegaTable t;
  t.chi_max = chi_max;
  auto level_labels = [&](int g, int n) {
    std::vector<Label> out;
    for (int a : points)
      for (int k = 1; k <= quadratic_mode_bound(g, n); k += 2) out.push_back({a, k});
    return out;
  };
  auto set_bounds = [&](int g, int n) {
    for (int a : points) t.bounds[{g, n}][a] = quadratic_mode_bound(g, n);
  };
  auto F = [&](int g, int n, const IndexTuple& idx) -> Scalar {
    if (g < 0 || 2 * g - 2 + n <= 0) return Scalar();
    if (!t.has_level(g, n)) fail(ErrorKind::Internal, "tensor recursion: lower level missing");
    return t.get(g, n, idx);
  };

  set_bounds(0, 3);
  t.levels[{0, 3}];
  for (const auto& [idx, v] : at.A) t.levels[{0, 3}].emplace(idx, v / Scalar(2));
  set_bounds(1, 1);
  t.levels[{1, 1}];
  for (const auto& [idx, v] : at.D) t.levels[{1, 1}].emplace(idx, v);

  for (int chi = 2; chi <= chi_max; ++chi)
    for (int g = 0; 2 * g - 1 <= chi; ++g) {
      const int np1 = chi + 2 - 2 * g;
      if (np1 < 1) continue;
      const int n = np1 - 1;
      set_bounds(g, np1);
      OmegaTable::Level computed;
      const std::vector<Label> labels = level_labels(g, np1);
      detail::for_each_multiset(labels, n, [&](const IndexTuple& j) {
        for (const auto& i0 : labels) {
          Scalar sum;
          auto cit = c_by_i0.find(i0);
          if (cit != c_by_i0.end())
            for (const auto& [ij, cv] : cit->second) {
              const auto& [i, jj] = ij;
              Scalar x;
              if (g >= 1) {
                IndexTuple idx = j;
                idx.push_back(i);
                idx.push_back(jj);
                x += F(g - 1, np1 + 1, idx);
              }
              detail::multiset_splits(j, 2, [&](const std::vector<IndexTuple>& split, long mult) {
                for (int g1 = 0; g1 <= g; ++g1) {
                  const int g2 = g - g1;
                  const int n1 = 1 + static_cast<int>(split[0].size()), n2 = 1 + static_cast<int>(split[1].size());
                  if (2 * g1 - 2 + n1 <= 0 || 2 * g2 - 2 + n2 <= 0) continue;
                  IndexTuple l1 = split[0], l2 = split[1];
                  l1.push_back(i);
                  l2.push_back(jj);
                  const Scalar f1 = F(g1, n1, l1);
                  if (f1.is_zero()) continue;
                  x += Scalar(mult) * f1 * F(g2, n2, l2);
                }
              });
              sum += (i == jj ? Scalar(1) : Scalar(2)) * cv * x;
            }
          for (std::size_t p = 0; p < j.size(); ++p) {
            if (p > 0 && j[p] == j[p - 1]) continue;
            const long mult = std::count(j.begin(), j.end(), j[p]);
            auto bit = b_by_i0_l.find({i0, j[p]});
            if (bit == b_by_i0_l.end()) continue;
            IndexTuple rest = j;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
            for (const auto& [jl, bv] : bit->second) {
              IndexTuple idx = rest;
              idx.push_back(jl);
              sum += Scalar(2 * mult) * bv * F(g, n, idx);
            }
          }
          const Scalar v = sum / Scalar(2);
          IndexTuple idx = j;
          idx.push_back(i0);
          std::sort(idx.begin(), idx.end());
          auto [it, inserted] = computed.try_emplace(idx, v);
          if (!inserted && !(it->second == v))
            fail(ErrorKind::SymmetryViolation, "tensor recursion F_{" + std::to_string(g) + "," +
                                                   std::to_string(np1) + "} is not symmetric");
        }
      });
      OmegaTable::Level& out = t.levels[{g, np1}];
      for (auto& [idx, v] : computed)
        if (!v.is_zero()) out.emplace(idx, std::move(v));
    }
  return t;
}

/// U_k: set partitions of k slots into blocks of size >= 2, a block of size m
/// carrying omega_{0,m}. Shapes are block sizes in decreasing order.
struct UOperator {
  int k = 0;
  std::map<std::vector<int>, long> shapes;
};

inline std::vector<int> partition_shape(const std::vector<std::vector<int>>& part) {
  std::vector<int> shape;
  for (const auto& b : part) shape.push_back(static_cast<int>(b.size()));
  std::sort(shape.rbegin(), shape.rend());
  return shape;
}

inline UOperator compute_Uk(int k) {
  if (k < 1) fail(ErrorKind::BadDeclaration, "U_k needs k >= 1");
  UOperator u;
  u.k = k;
  for (const auto& part : detail::set_partitions(k)) {
    std::vector<int> shape = partition_shape(part);
    if (shape.back() >= 2) ++u.shapes[shape];
  }
  return u;
}

/// Adds delta to one stored entry (key canonicalized as in AiryTensors).
inline void perturb_tensor(AiryTensors& at, const std::string& name, IndexTuple key, const Scalar& delta) {
  Tensor* t = nullptr;
  std::size_t arity = 0;
  if (name == "A") {
    t = &at.A, arity = 3;
    std::sort(key.begin(), key.end());
  } else if (name == "B") {
    t = &at.B, arity = 3;
  } else if (name == "C") {
    t = &at.C, arity = 3;
    if (key.size() == 3 && key[2] < key[1]) std::swap(key[1], key[2]);
  } else if (name == "D") {
    t = &at.D, arity = 1;
  } else {
    fail(ErrorKind::BadDeclaration, "unknown tensor '" + name + "'");
  }
  if (key.size() != arity) fail(ErrorKind::BadDeclaration, "tensor " + name + " takes " + std::to_string(arity) + " indices");
  Scalar& v = (*t)[key];
  v += delta;
  if (v.is_zero()) t->erase(key);
}

struct ResidualEntry {
  Label i;
  int order = 0;
  Monomial monomial;
  Scalar value;
};

struct ResidualReport {
  std::string reading;
  long checked = 0;
  std::vector<ResidualEntry> nonzero;
  bool zero() const { return nonzero.empty(); }
};

/// How the quadratic operator is read. Derived is the normalization for which
/// Z = exp(sum_m hbar^m P_m) is annihilated:
///   [d_i - hbar D_i - (hbar/2)(A_ijk t_j t_k / 2 + 2 B_ijk t_k d_j + C_ijk d_j d_k)] Z = 0,
/// with B_ijk indexed (output, correlator slot, spectator). The two alternate
/// readings take hbar d_i - hbar D_i - (hbar/2)(A t t + 2 B t hbar d + C hbar d hbar d)
/// at face value, with A contracted against t_i t_j (literal) or t_j t_k (symmetric),
/// t on the correlator slot of B and d on its spectator. Both leave a residual.
enum class PdeReading { Derived, AlternateLiteral, AlternateSymmetric };

inline const char* to_string(PdeReading r) {
  switch (r) {
    case PdeReading::Derived: return "derived";
    case PdeReading::AlternateLiteral: return "alternate-literal";
    case PdeReading::AlternateSymmetric: return "alternate-symmetric";
  }
  return "unknown";
}

/// Expands Z^{-1} L_i Z in hbar (orders <= hbar_max) and t' (degree <= deg_max)
/// for every label i of the tensors and returns the nonzero coefficients.
inline ResidualReport verify_quadratic_pde(const CurveData& c, const AiryTensors& at, const OmegaTable& t,
                                           int hbar_max, int deg_max,
                                           PdeReading reading = PdeReading::Derived) {
  for (const auto& p : c.points())
    if (p.order != 2) fail(ErrorKind::UnsupportedTensorForm, "quadratic PDE needs order-2 points");
  if (t.chi_max < hbar_max)
    fail(ErrorKind::InsufficientPrecision, "table computed to chi " + std::to_string(t.chi_max) +
                                               ", PDE check needs " + std::to_string(hbar_max));
  struct Weights {
    int lhs, d, a, b, c;
    Scalar fa, fb, fc;
  };
  const bool derived = reading == PdeReading::Derived;
  const Weights w = derived ? Weights{0, 1, 1, 1, 1, Scalar(1, 4), Scalar(1), Scalar(1, 2)}
                            : Weights{1, 1, 1, 2, 3, Scalar(1, 2), Scalar(1), Scalar(1, 2)};

  const LogZ lz = assemble_logZ(t, hbar_max);
  std::map<int, std::map<Label, TimesPolynomial>> dP;  // order -> label -> d P_m / d t_label
  for (int m = 1; m <= hbar_max; ++m)
    for (const auto& l : at.labels) {
      TimesPolynomial d = lz.series.at(m).derivative(l);
      if (!d.is_zero()) dP[m][l] = d.truncated(deg_max + 1);
    }
  auto dp = [&](int m, const Label& l) -> const TimesPolynomial& {
    static const TimesPolynomial zero;
    auto it = dP.find(m);
    if (it == dP.end()) return zero;
    auto jt = it->second.find(l);
    return jt == it->second.end() ? zero : jt->second;
  };

  std::map<Label, std::vector<std::pair<std::pair<Label, Label>, Scalar>>> c_by_i0, b_by_i0;
  for (const auto& [key, v] : at.C) c_by_i0[key[0]].push_back({{key[1], key[2]}, v});
  for (const auto& [key, v] : at.B) b_by_i0[key[0]].push_back({{key[1], key[2]}, v});
  std::map<Label, std::vector<std::pair<std::pair<Label, Label>, Scalar>>> a_by_i;
  for (const auto& [key, v] : at.A) {
    // every ordered (i; j, k) arrangement of the symmetric entry
    IndexTuple perm = key;
    do a_by_i[perm[0]].push_back({{perm[1], perm[2]}, v});
    while (std::next_permutation(perm.begin(), perm.end()));
  }

  ResidualReport rep;
  rep.reading = to_string(reading);
  for (const auto& i : at.labels) {
    std::map<int, TimesPolynomial> res;  // hbar order -> polynomial
    auto add = [&](int order, const TimesPolynomial& p, const Scalar& f) {
      if (order > hbar_max || p.is_zero() || f.is_zero()) return;
      res[order] += f * p.truncated(deg_max);
    };
    for (int m = 1; m <= hbar_max; ++m) add(w.lhs + m, dp(m, i), Scalar(1));
    add(w.d, TimesPolynomial::constant(at.d(i)), Scalar(-1));
    if (auto it = a_by_i.find(i); it != a_by_i.end()) {
      TimesPolynomial q;
      for (const auto& [jk, v] : it->second) {
        const Label& first = reading == PdeReading::AlternateLiteral ? i : jk.first;
        q.add({first, jk.second}, v);
      }
      add(w.a, q, -w.fa);
    }
    if (auto it = b_by_i0.find(i); it != b_by_i0.end())
      for (int m = 1; m + w.b <= hbar_max; ++m) {
        TimesPolynomial q;
        for (const auto& [jl, v] : it->second) {
          const Label& slot = jl.first;
          const Label& spect = jl.second;
          const Label& times = derived ? spect : slot;
          const Label& deriv = derived ? slot : spect;
          q += v * TimesPolynomial::product(TimesPolynomial::variable(times), dp(m, deriv), deg_max);
        }
        add(w.b + m, q, -w.fb);
      }
    if (auto it = c_by_i0.find(i); it != c_by_i0.end())
      for (const auto& [jk, v] : it->second) {
        const Scalar v2 = jk.first == jk.second ? v : Scalar(2) * v;
        for (int m = 1; m + w.c <= hbar_max; ++m) add(w.c + m, dp(m, jk.first).derivative(jk.second), -w.fc * v2);
        for (int a = 1; a + 1 + w.c <= hbar_max; ++a)
          for (int b = 1; a + b + w.c <= hbar_max; ++b)
            add(w.c + a + b, TimesPolynomial::product(dp(a, jk.first), dp(b, jk.second), deg_max), -w.fc * v2);
      }
    for (int order = 0; order <= hbar_max; ++order) {
      ++rep.checked;
      auto it = res.find(order);
      if (it == res.end()) continue;
      for (const auto& [mono, v] : it->second.terms) rep.nonzero.push_back({i, order, mono, v});
    }
  }
  return rep;
}

}  // namespace trc
