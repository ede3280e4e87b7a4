#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "linsat/errors.hpp"
#include "linsat/gf.hpp"
#include "linsat/instance.hpp"
#include "linsat/rng.hpp"

namespace linsat {

using Matrix = std::vector<std::vector<Element>>;

/// Row-reduced form of A x = b over F_q.
class LinearSystemSolution {
 public:
  enum class Kind { Unique, Parametrized, Inconsistent };

  Kind kind() const noexcept { return kind_; }
  std::size_t rank() const noexcept { return pivot_cols_.size(); }
  const std::vector<std::size_t>& pivot_columns() const noexcept {
    return pivot_cols_;
  }
  const std::vector<std::size_t>& free_columns() const noexcept {
    return free_cols_;
  }

  /// Solution with the free variables set to `free_values` (in the order of
  /// free_columns()). Not meaningful when inconsistent.
  Assignment with_free(std::span<const Element> free_values) const {
    Assignment x(cols_, FieldSpec::zero());
    for (std::size_t t = 0; t < free_cols_.size(); ++t)
      x[free_cols_[t]] = free_values[t];
    for (std::size_t row = 0; row < pivot_cols_.size(); ++row) {
      Element value = rhs_[row];
      for (auto f : free_cols_)
        value = field_->sub(value, field_->mul(rref_[row][f], x[f]));
      x[pivot_cols_[row]] = value;
    }
    return x;
  }

  /// Solution with every free variable zero.
  Assignment particular() const {
    std::vector<Element> zeros(free_cols_.size(), FieldSpec::zero());
    return with_free(zeros);
  }

 private:
  friend LinearSystemSolution solve_linear_system(const FieldSpec&,
                                                  const Matrix&,
                                                  std::span<const Element>);

  std::optional<FieldSpec> field_;
  Kind kind_ = Kind::Inconsistent;
  std::size_t cols_ = 0;
  Matrix rref_;  // first rank() rows of the reduced matrix
  std::vector<Element> rhs_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<std::size_t> free_cols_;
};

/// Gauss-Jordan elimination. A may be rectangular; each row of A must have
/// the same length and b one entry per row.
inline LinearSystemSolution solve_linear_system(const FieldSpec& field,
                                                const Matrix& A,
                                                std::span<const Element> b) {
  if (A.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "A and b row counts differ");
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A.front().size() : 0;
  for (const auto& row : A)
    if (row.size() != cols)
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix");

  Matrix M = A;
  std::vector<Element> rhs(b.begin(), b.end());
  LinearSystemSolution out;
  out.field_ = field;
  out.cols_ = cols;

  std::size_t rank = 0;
  std::size_t col = 0;
  for (; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && M[pivot][col].value == 0) ++pivot;
    if (pivot == rows) {
      out.free_cols_.push_back(col);
      continue;
    }
    std::swap(M[pivot], M[rank]);
    std::swap(rhs[pivot], rhs[rank]);
    const Element scale = field.inv(M[rank][col]);
    for (auto& v : M[rank]) v = field.mul(v, scale);
    rhs[rank] = field.mul(rhs[rank], scale);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || M[r][col].value == 0) continue;
      const Element factor = M[r][col];
      for (std::size_t c = col; c < cols; ++c)
        M[r][c] = field.sub(M[r][c], field.mul(factor, M[rank][c]));
      rhs[r] = field.sub(rhs[r], field.mul(factor, rhs[rank]));
    }
    out.pivot_cols_.push_back(col);
    ++rank;
  }
  // columns past the last pivot row are free
  for (; col < cols; ++col) out.free_cols_.push_back(col);

  bool consistent = true;
  for (std::size_t r = rank; r < rows; ++r)
    if (rhs[r].value != 0) consistent = false;

  M.resize(rank);
  rhs.resize(rank);
  out.rref_ = std::move(M);
  out.rhs_ = std::move(rhs);
  if (!consistent)
    out.kind_ = LinearSystemSolution::Kind::Inconsistent;
  else if (out.free_cols_.empty())
    out.kind_ = LinearSystemSolution::Kind::Unique;
  else
    out.kind_ = LinearSystemSolution::Kind::Parametrized;
  return out;
}

struct SolveResult {
  Assignment assignment;
  EvalResult eval;
  std::string algorithm;
  std::uint64_t iterations = 0;
  std::optional<std::uint64_t> seed;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Exhaustive search; returns the lexicographically smallest optimum.
/// Throws TooLarge when q^n exceeds `cap`.
inline SolveResult brute_force(const Instance& inst,
                               std::uint64_t cap = kDefaultEnumerationCap) {
  if (!assignment_count(inst, cap))
    throw Error(ErrorKind::TooLarge,
                "q^n exceeds the enumeration cap of " + std::to_string(cap));
  Assignment best;
  std::size_t best_s = 0;
  bool first = true;
  for_each_assignment(inst, [&](const IncrementalEvaluator& e) {
    if (first || e.satisfied() > best_s) {
      best_s = e.satisfied();
      best = e.assignment();
      first = false;
    }
  });
  SolveResult out;
  out.eval = evaluate(inst, best);
  out.assignment = std::move(best);
  out.algorithm = "brute";
  return out;
}

inline Assignment uniform_assignment(std::uint32_t q, std::size_t n, Rng& rng) {
  Assignment x;
  x.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    x.emplace_back(static_cast<std::uint32_t>(rng.below(q)));
  return x;
}

inline SolveResult random_assignment(const Instance& inst, std::uint64_t seed) {
  Rng rng(derive_seed(seed, Stream::RandomAssignment));
  SolveResult out;
  out.assignment =
      uniform_assignment(inst.field().order(), inst.num_variables(), rng);
  out.eval = evaluate(inst, out.assignment);
  out.algorithm = "random";
  out.seed = seed;
  return out;
}

/// Derandomized baseline. Variables are fixed in index order; each takes the
/// value maximizing the exact conditional expectation of the satisfied count
/// (smallest encoding on ties). A constraint still depending on an unfixed
/// variable contributes |F_i|/q regardless of the choice, so only constraints
/// whose last nonzero coefficient is the current variable are compared.
inline SolveResult conditional_expectations(const Instance& inst) {
  const auto& field = inst.field();
  const auto q = field.order();
  const auto n = inst.num_variables();
  const auto m = inst.num_constraints();

  std::vector<std::vector<std::size_t>> closing(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& coeffs = inst.constraint(i).coeffs;
    for (std::size_t j = n; j-- > 0;)
      if (coeffs[j].value != 0) {
        closing[j].push_back(i);
        break;
      }
  }

  std::vector<Element> partial(m, FieldSpec::zero());
  Assignment x(n, FieldSpec::zero());
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best_score = 0;
    Element best_value = FieldSpec::zero();
    for (std::uint32_t v = 0; v < q; ++v) {
      const Element value{v};
      std::size_t score = 0;
      for (auto i : closing[j]) {
        const Element form = field.add(
            partial[i], field.mul(inst.constraint(i).coeffs[j], value));
        score += inst.accepts(i, form);
      }
      if (v == 0 || score > best_score) {
        best_score = score;
        best_value = value;
      }
    }
    x[j] = best_value;
    if (best_value.value == 0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      const Element c = inst.constraint(i).coeffs[j];
      if (c.value != 0)
        partial[i] = field.add(partial[i], field.mul(c, best_value));
    }
  }

  SolveResult out;
  out.eval = evaluate(inst, x);
  out.assignment = std::move(x);
  out.algorithm = "ce";
  return out;
}

namespace detail {

// One Prange attempt: solve a random size-min(n, m) subsystem with targets
// drawn from the acceptance sets.
inline Assignment prange_candidate(const Instance& inst, Rng& rng) {
  const auto& field = inst.field();
  const auto q = field.order();
  const auto n = inst.num_variables();
  const auto m = inst.num_constraints();
  const auto k = std::min(n, m);

  std::vector<std::size_t> rows(m);
  for (std::size_t i = 0; i < m; ++i) rows[i] = i;
  for (std::size_t t = 0; t < k; ++t)
    std::swap(rows[t], rows[t + rng.below(m - t)]);
  rows.resize(k);

  Matrix A;
  A.reserve(k);
  for (auto i : rows) A.push_back(inst.constraint(i).coeffs);

  auto draw_targets = [&] {
    std::vector<Element> b;
    b.reserve(k);
    for (auto i : rows) {
      const auto& set = inst.constraint(i).accept;
      b.push_back(set[rng.below(set.size())]);
    }
    return b;
  };

  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto targets = draw_targets();
    const auto sol = solve_linear_system(field, A, targets);
    if (sol.kind() == LinearSystemSolution::Kind::Inconsistent) continue;
    std::vector<Element> free_values;
    for (std::size_t t = 0; t < sol.free_columns().size(); ++t)
      free_values.emplace_back(static_cast<std::uint32_t>(rng.below(q)));
    return sol.with_free(free_values);
  }
  return uniform_assignment(q, n, rng);
}

}  // namespace detail

/// Prange-style information-set decoding. Each iteration uses its own
/// substream keyed by (seed, iteration index); the best candidate wins, with
/// ties going to the earliest iteration. When n > m the whole m x n system is
/// solved instead of an n x n subsystem.
inline SolveResult prange_isd(const Instance& inst, std::uint64_t seed,
                              std::uint64_t iterations) {
  if (iterations < 1)
    throw Error(ErrorKind::ConfigError, "prange needs at least one iteration");
  SolveResult best;
  for (std::uint64_t it = 0; it < iterations; ++it) {
    Rng rng(derive_seed(seed, Stream::PrangeIteration, it));
    auto x = detail::prange_candidate(inst, rng);
    auto eval = evaluate(inst, x);
    if (it == 0 || eval.satisfied > best.eval.satisfied) {
      best.assignment = std::move(x);
      best.eval = std::move(eval);
    }
  }
  best.algorithm = "prange";
  best.iterations = iterations;
  best.seed = seed;
  return best;
}

}  // namespace linsat
