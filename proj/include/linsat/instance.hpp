#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "linsat/errors.hpp"
#include "linsat/gf.hpp"
#include "linsat/rational.hpp"

namespace linsat {

/// One constraint: the linear form sum_j coeffs[j] * x_j must land in
/// `accept`, a sorted, duplicate-free, nonempty proper subset of F_q.
struct Constraint {
  std::vector<Element> coeffs;
  std::vector<Element> accept;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// A max-LINSAT instance over a single field. Validated on construction and
/// immutable afterwards.
class Instance {
 public:
  Instance(FieldSpec field, std::size_t n, std::vector<Constraint> rows)
      : field_(std::move(field)), n_(n), rows_(std::move(rows)) {
    validate();
  }

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t num_variables() const noexcept { return n_; }
  std::size_t num_constraints() const noexcept { return rows_.size(); }
  const std::vector<Constraint>& constraints() const noexcept { return rows_; }
  const Constraint& constraint(std::size_t i) const { return rows_.at(i); }

  bool accepts(std::size_t i, Element value) const {
    const auto& set = rows_[i].accept;
    return std::binary_search(set.begin(), set.end(), value);
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  void validate() const {
    const auto q = field_.order();
    if (n_ == 0)
      throw Error(ErrorKind::InvariantViolation, "instance needs n >= 1");
    if (rows_.empty())
      throw Error(ErrorKind::InvariantViolation, "instance needs m >= 1");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& row = rows_[i];
      if (row.coeffs.size() != n_)
        throw InvariantViolation(i, "coefficient count differs from n");
      for (auto c : row.coeffs)
        if (!field_.contains(c))
          throw InvariantViolation(i, "coefficient outside F_q");
      if (row.accept.empty() || row.accept.size() >= q)
        throw InvariantViolation(
            i, "acceptance set must be a nonempty proper subset of F_q");
      for (std::size_t t = 0; t < row.accept.size(); ++t) {
        if (!field_.contains(row.accept[t]))
          throw InvariantViolation(i, "acceptance value outside F_q");
        if (t > 0 && !(row.accept[t - 1] < row.accept[t]))
          throw InvariantViolation(i, "acceptance set not strictly increasing");
      }
    }
  }

  FieldSpec field_;
  std::size_t n_;
  std::vector<Constraint> rows_;
};

/// A point x in F_q^n.
using Assignment = std::vector<Element>;

struct EvalResult {
  std::size_t satisfied = 0;
  Rational ratio;
  std::vector<bool> mask;
};

/// Value of constraint i's linear form at x.
inline Element linear_form(const Instance& inst, std::size_t i,
                           std::span<const Element> x) {
  const auto& field = inst.field();
  const auto& coeffs = inst.constraint(i).coeffs;
  Element acc = FieldSpec::zero();
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j].value != 0) acc = field.add(acc, field.mul(coeffs[j], x[j]));
  return acc;
}

inline void check_assignment(const Instance& inst, std::span<const Element> x) {
  if (x.size() != inst.num_variables())
    throw Error(ErrorKind::DimensionMismatch,
                "assignment has " + std::to_string(x.size()) +
                    " entries, instance has n = " +
                    std::to_string(inst.num_variables()));
  for (auto v : x)
    if (!inst.field().contains(v))
      throw Error(ErrorKind::DimensionMismatch,
                  "assignment value " + std::to_string(v.value) +
                      " outside F_" + std::to_string(inst.field().order()));
}

inline EvalResult evaluate(const Instance& inst, std::span<const Element> x) {
  check_assignment(inst, x);
  const auto m = inst.num_constraints();
  EvalResult result;
  result.mask.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool ok = inst.accepts(i, linear_form(inst, i, x));
    result.mask[i] = ok;
    result.satisfied += ok;
  }
  result.ratio = Rational(static_cast<std::int64_t>(result.satisfied),
                          static_cast<std::int64_t>(m));
  return result;
}

/// Common acceptance-set size r, or nullopt if the sizes differ.
inline std::optional<std::size_t> uniform_acceptance_size(const Instance& inst) {
  const auto& rows = inst.constraints();
  const auto r = rows.front().accept.size();
  for (const auto& row : rows)
    if (row.accept.size() != r) return std::nullopt;
  return r;
}

/// Expected satisfied fraction of a uniformly random assignment,
/// (1/m) * sum_i |F_i| / q.
inline Rational baseline_ratio(const Instance& inst) {
  std::int64_t total = 0;
  for (const auto& row : inst.constraints())
    total += static_cast<std::int64_t>(row.accept.size());
  return Rational(total, static_cast<std::int64_t>(inst.num_constraints()) *
                             inst.field().order());
}

/// Maintains every linear form under single-variable updates, so that
/// walking through assignments costs O(m) per changed coordinate.
class IncrementalEvaluator {
 public:
  explicit IncrementalEvaluator(const Instance& inst)
      : inst_(&inst),
        x_(inst.num_variables(), FieldSpec::zero()),
        forms_(inst.num_constraints(), FieldSpec::zero()),
        sat_(inst.num_constraints()) {
    for (std::size_t i = 0; i < forms_.size(); ++i) {
      sat_[i] = inst.accepts(i, forms_[i]);
      satisfied_ += sat_[i];
    }
  }

  void set(std::size_t j, Element value) {
    const auto& field = inst_->field();
    const Element delta = field.sub(value, x_[j]);
    x_[j] = value;
    if (delta.value == 0) return;
    for (std::size_t i = 0; i < forms_.size(); ++i) {
      const Element c = inst_->constraint(i).coeffs[j];
      if (c.value == 0) continue;
      forms_[i] = field.add(forms_[i], field.mul(c, delta));
      const bool now = inst_->accepts(i, forms_[i]);
      if (now != static_cast<bool>(sat_[i])) {
        satisfied_ += now ? 1 : -1;
        sat_[i] = now;
      }
    }
  }

  std::size_t satisfied() const noexcept {
    return static_cast<std::size_t>(satisfied_);
  }
  const Assignment& assignment() const noexcept { return x_; }
  Element form(std::size_t i) const { return forms_[i]; }

 private:
  const Instance* inst_;
  Assignment x_;
  std::vector<Element> forms_;
  std::vector<char> sat_;
  long long satisfied_ = 0;
};

/// Calls fn(const IncrementalEvaluator&) for every x in F_q^n, in
/// lexicographic order with x_1 most significant.
template <typename Fn>
void for_each_assignment(const Instance& inst, Fn&& fn) {
  const auto q = inst.field().order();
  const auto n = inst.num_variables();
  IncrementalEvaluator eval(inst);
  std::vector<std::uint32_t> digits(n, 0);
  while (true) {
    fn(static_cast<const IncrementalEvaluator&>(eval));
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++digits[j] < q) {
        eval.set(j, Element{digits[j]});
        break;
      }
      digits[j] = 0;
      eval.set(j, FieldSpec::zero());
      if (j == 0) return;
    }
  }
}

/// q^n, or nullopt when it exceeds `cap`.
inline std::optional<std::uint64_t> assignment_count(const Instance& inst,
                                                     std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < inst.num_variables(); ++j) {
    total *= inst.field().order();
    if (total > cap) return std::nullopt;
  }
  return total;
}

}  // namespace linsat
