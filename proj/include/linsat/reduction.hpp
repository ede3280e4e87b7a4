#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "linsat/errors.hpp"
#include "linsat/gf.hpp"
#include "linsat/instance.hpp"
#include "linsat/rational.hpp"

namespace linsat {

/// Exact binomial coefficient; zero when b < 0 or b > a.
inline std::int64_t binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  b = std::min(b, a - b);
  std::int64_t result = 1;
  for (std::int64_t k = 1; k <= b; ++k) result = result * (a - b + k) / k;
  return result;
}

namespace detail {

inline void check_r(std::uint32_t q, std::int64_t r) {
  if (r < 1 || r > static_cast<std::int64_t>(q) - 1)
    throw Error(ErrorKind::RangeError,
                "r = " + std::to_string(r) + " outside [1, " +
                    std::to_string(q - 1) + "]");
}

}  // namespace detail

/// All C(q-1, r-1) r-subsets of F_q containing b, each sorted, listed in
/// lexicographic order.
inline std::vector<std::vector<Element>> r_subsets_containing(
    const FieldSpec& field, Element b, std::size_t r) {
  const auto q = field.order();
  detail::check_r(q, static_cast<std::int64_t>(r));
  if (!field.contains(b))
    throw Error(ErrorKind::RangeError, "b is not an element of the field");

  std::vector<Element> others;
  for (auto e : field.elements())
    if (e != b) others.push_back(e);

  std::vector<std::vector<Element>> out;
  const std::size_t k = r - 1;
  std::vector<std::size_t> pick(k);
  for (std::size_t t = 0; t < k; ++t) pick[t] = t;
  while (true) {
    std::vector<Element> set{b};
    for (auto t : pick) set.push_back(others[t]);
    std::sort(set.begin(), set.end());
    out.push_back(std::move(set));
    // next k-combination of others.size() indices
    std::size_t t = k;
    while (t > 0 && pick[t - 1] == others.size() - k + t - 1) --t;
    if (t == 0) break;
    ++pick[t - 1];
    for (std::size_t u = t; u < k; ++u) pick[u] = pick[u - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Gadget reduction from max-LINSAT(q, 1) to max-LINSAT(q, r): each
/// constraint L_i(x) = b_i becomes the C(q-1, r-1) constraints L_i(x) in S
/// for every r-subset S containing b_i, ordered by (i, subset rank).
inline Instance reduce(const Instance& inst, std::size_t r) {
  const auto& field = inst.field();
  detail::check_r(field.order(), static_cast<std::int64_t>(r));
  for (std::size_t i = 0; i < inst.num_constraints(); ++i)
    if (inst.constraint(i).accept.size() != 1)
      throw Error(ErrorKind::NotSingleton,
                  "constraint " + std::to_string(i) +
                      " does not have a singleton acceptance set");

  std::vector<Constraint> rows;
  rows.reserve(inst.num_constraints() *
               static_cast<std::size_t>(binomial(field.order() - 1, r - 1)));
  for (const auto& row : inst.constraints())
    for (auto& subset : r_subsets_containing(field, row.accept.front(), r))
      rows.push_back(Constraint{row.coeffs, std::move(subset)});
  return Instance(field, inst.num_variables(), std::move(rows));
}

/// Reduced-instance satisfaction fraction for an assignment that satisfies a
/// mu fraction of the original constraints:
/// mu * (q-r)/(q-1) + (r-1)/(q-1).
inline Rational predicted_fraction(const Rational& mu, std::int64_t q,
                                   std::int64_t r) {
  if (q < 2) throw Error(ErrorKind::RangeError, "q must be >= 2");
  detail::check_r(static_cast<std::uint32_t>(q), r);
  if (mu < 0 || mu > 1) throw Error(ErrorKind::RangeError, "mu outside [0, 1]");
  return mu * Rational(q - r, q - 1) + Rational(r - 1, q - 1);
}

/// Upper bound r/q + epsilon * (q-r)/(q-1) on the reduced fraction when the
/// original instance has mu <= 1/q + epsilon.
inline Rational soundness_bound(const Rational& epsilon, std::int64_t q,
                                std::int64_t r) {
  if (q < 2) throw Error(ErrorKind::RangeError, "q must be >= 2");
  detail::check_r(static_cast<std::uint32_t>(q), r);
  if (epsilon < 0) throw Error(ErrorKind::RangeError, "epsilon must be >= 0");
  return Rational(r, q) + epsilon * Rational(q - r, q - 1);
}

struct ReductionReport {
  Rational mu;                      // |A(x)| / m
  std::int64_t exact_satisfied = 0;  // |A(x)|
  std::int64_t predicted_satisfied = 0;
  std::int64_t actual_satisfied = 0;
  std::int64_t m_prime = 0;

  bool consistent() const { return predicted_satisfied == actual_satisfied; }
};

/// Checks once that `reduced` has the shape reduce(original, r) would give,
/// then produces per-assignment reports.
class ReductionVerifier {
 public:
  ReductionVerifier(const Instance& original, const Instance& reduced)
      : original_(&original), reduced_(&reduced) {
    const auto fail = [](const std::string& what) {
      throw Error(ErrorKind::MismatchedInstances, what);
    };
    if (!(original.field() == reduced.field())) fail("field orders differ");
    if (original.num_variables() != reduced.num_variables())
      fail("variable counts differ");
    const auto m = static_cast<std::int64_t>(original.num_constraints());
    for (const auto& row : original.constraints())
      if (row.accept.size() != 1) fail("original is not a singleton instance");
    const auto r_opt = uniform_acceptance_size(reduced);
    if (!r_opt) fail("reduced instance is not uniform");
    r_ = static_cast<std::int64_t>(*r_opt);
    const std::int64_t q = original.field().order();
    block_ = binomial(q - 1, r_ - 1);
    miss_ = binomial(q - 2, r_ - 2);
    if (static_cast<std::int64_t>(reduced.num_constraints()) != m * block_)
      fail("reduced constraint count is not m * C(q-1, r-1)");
    for (std::int64_t i = 0; i < m; ++i) {
      const auto& src = original.constraint(static_cast<std::size_t>(i));
      for (std::int64_t k = 0; k < block_; ++k) {
        const auto& dst =
            reduced.constraint(static_cast<std::size_t>(i * block_ + k));
        if (dst.coeffs != src.coeffs) fail("reduced row coefficients differ");
        if (!std::binary_search(dst.accept.begin(), dst.accept.end(),
                                src.accept.front()))
          fail("reduced acceptance set misses the original target");
      }
    }
  }

  std::int64_t r() const noexcept { return r_; }

  /// Report from precomputed satisfied counts of original and reduced.
  ReductionReport report(std::int64_t exact, std::int64_t actual) const {
    const auto m = static_cast<std::int64_t>(original_->num_constraints());
    ReductionReport rep;
    rep.mu = Rational(exact, m);
    rep.exact_satisfied = exact;
    rep.predicted_satisfied = exact * block_ + (m - exact) * miss_;
    rep.actual_satisfied = actual;
    rep.m_prime = m * block_;
    return rep;
  }

  ReductionReport verify(std::span<const Element> x) const {
    const auto exact = evaluate(*original_, x).satisfied;
    const auto actual = evaluate(*reduced_, x).satisfied;
    return report(static_cast<std::int64_t>(exact),
                  static_cast<std::int64_t>(actual));
  }

  /// Calls fn(x, report) for all q^n assignments in lexicographic order.
  void verify_all(
      const std::function<void(const Assignment&, const ReductionReport&)>& fn)
      const {
    IncrementalEvaluator reduced_eval(*reduced_);
    for_each_assignment(*original_, [&](const IncrementalEvaluator& orig) {
      const auto& x = orig.assignment();
      for (std::size_t j = 0; j < x.size(); ++j)
        if (reduced_eval.assignment()[j] != x[j]) reduced_eval.set(j, x[j]);
      fn(x, report(static_cast<std::int64_t>(orig.satisfied()),
                   static_cast<std::int64_t>(reduced_eval.satisfied())));
    });
  }

 private:
  const Instance* original_;
  const Instance* reduced_;
  std::int64_t r_ = 1;
  std::int64_t block_ = 1;
  std::int64_t miss_ = 0;
};

inline ReductionReport verify_reduction(const Instance& original,
                                        const Instance& reduced,
                                        std::span<const Element> x) {
  return ReductionVerifier(original, reduced).verify(x);
}

}  // namespace linsat
