#pragma once

// Closed-form performance curves for max-LINSAT(q, r): the DQI semicircle
// law as a function of the decoding-radius fraction l/m, the expected ratio
// of Prange information-set decoding on random instances, and the r/q
// worst-case wall. Ratios use binary64; the combinatorial laws elsewhere
// stay exact.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "linsat/errors.hpp"
#include "linsat/rational.hpp"

namespace linsat {

namespace detail {

inline void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw Error(ErrorKind::RangeError, std::string(name) + " outside [0, 1]");
}

inline void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0))
    throw Error(ErrorKind::RangeError, std::string(name) + " outside (0, 1)");
}

}  // namespace detail

/// Unsaturated branch (sqrt(l(1-rq)) + sqrt(rq(1-l)))^2, without the
/// saturation switch.
inline double semicircle_branch(double ell_over_m, double r_over_q) {
  const double a = std::sqrt(ell_over_m * (1.0 - r_over_q));
  const double b = std::sqrt(r_over_q * (1.0 - ell_over_m));
  return (a + b) * (a + b);
}

/// DQI semicircle law. Returns exactly 1 once l/m >= 1 - r/q.
inline double semicircle_ratio(double ell_over_m, double r_over_q) {
  detail::require_unit(ell_over_m, "l/m");
  detail::require_open_unit(r_over_q, "r/q");
  if (ell_over_m >= 1.0 - r_over_q) return 1.0;
  return std::min(1.0, semicircle_branch(ell_over_m, r_over_q));
}

/// Same law with the saturation test done in exact arithmetic.
inline double semicircle_ratio(const Rational& ell_over_m,
                               const Rational& r_over_q) {
  if (ell_over_m < 0 || ell_over_m > 1)
    throw Error(ErrorKind::RangeError, "l/m outside [0, 1]");
  if (r_over_q <= 0 || r_over_q >= 1)
    throw Error(ErrorKind::RangeError, "r/q outside (0, 1)");
  if (ell_over_m >= 1 - r_over_q) return 1.0;
  return std::min(1.0,
                  semicircle_branch(to_double(ell_over_m), to_double(r_over_q)));
}

/// n/m + (1 - n/m) r/q.
inline double prange_expected_ratio(double n_over_m, double r_over_q) {
  detail::require_unit(n_over_m, "n/m");
  detail::require_unit(r_over_q, "r/q");
  return n_over_m + (1.0 - n_over_m) * r_over_q;
}

inline Rational prange_expected_ratio(const Rational& n_over_m,
                                      const Rational& r_over_q) {
  if (n_over_m < 0 || n_over_m > 1 || r_over_q < 0 || r_over_q > 1)
    throw Error(ErrorKind::RangeError, "ratios must lie in [0, 1]");
  return n_over_m + (1 - n_over_m) * r_over_q;
}

/// Smallest l/m at which the semicircle law reaches 1.
inline Rational saturation_threshold(const Rational& r_over_q) {
  if (r_over_q <= 0 || r_over_q >= 1)
    throw Error(ErrorKind::RangeError, "r/q outside (0, 1)");
  return 1 - r_over_q;
}

inline double saturation_threshold(double r_over_q) {
  detail::require_open_unit(r_over_q, "r/q");
  return 1.0 - r_over_q;
}

struct LandscapePoint {
  Rational ell_over_m;
  Rational r_over_q;
  double alpha_dqi = 0.0;
  Rational hardness_wall;
  bool saturated = false;
};

/// `steps` evenly spaced l/m values on [0, 1], endpoints included.
inline std::vector<LandscapePoint> landscape_curve(const Rational& r_over_q,
                                                   std::size_t steps) {
  if (steps < 2) throw Error(ErrorKind::RangeError, "steps must be >= 2");
  if (r_over_q <= 0 || r_over_q >= 1)
    throw Error(ErrorKind::RangeError, "r/q outside (0, 1)");
  std::vector<LandscapePoint> out;
  out.reserve(steps);
  const auto last = static_cast<std::int64_t>(steps - 1);
  for (std::int64_t k = 0; k <= last; ++k) {
    LandscapePoint pt;
    pt.ell_over_m = Rational(k, last);
    pt.r_over_q = r_over_q;
    pt.hardness_wall = r_over_q;
    pt.saturated = pt.ell_over_m >= 1 - r_over_q;
    pt.alpha_dqi = semicircle_ratio(pt.ell_over_m, r_over_q);
    out.push_back(pt);
  }
  return out;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string landscape_csv(const std::vector<LandscapePoint>& curve) {
  std::string out = "ell_over_m,alpha_dqi,hardness_wall,saturated\n";
  for (const auto& pt : curve) {
    out += format_double(to_double(pt.ell_over_m)) + "," +
           format_double(pt.alpha_dqi) + "," +
           format_double(to_double(pt.hardness_wall)) + "," +
           (pt.saturated ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace linsat
