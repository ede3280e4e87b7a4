#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linsat/errors.hpp"
#include "linsat/gf.hpp"
#include "linsat/instance.hpp"
#include "linsat/rational.hpp"
#include "linsat/rng.hpp"

namespace linsat {

enum class GenKind { Random, E3Lin, Opi, Planted };

inline const char* to_string(GenKind kind) noexcept {
  switch (kind) {
    case GenKind::Random: return "random";
    case GenKind::E3Lin: return "e3lin";
    case GenKind::Opi: return "opi";
    case GenKind::Planted: return "planted";
  }
  return "?";
}

inline GenKind parse_gen_kind(const std::string& name) {
  if (name == "random") return GenKind::Random;
  if (name == "e3lin") return GenKind::E3Lin;
  if (name == "opi") return GenKind::Opi;
  if (name == "planted") return GenKind::Planted;
  throw Error(ErrorKind::ConfigError, "unknown generator kind '" + name + "'");
}

struct GenConfig {
  std::uint32_t q = 2;
  std::size_t n = 1;
  std::size_t m = 1;
  std::size_t r = 1;
  std::uint64_t seed = 0;
  GenKind kind = GenKind::Random;
  Rational planted_fraction{1};  // planted only
};

inline void validate(const GenConfig& cfg) {
  if (cfg.n == 0 || cfg.m == 0)
    throw Error(ErrorKind::ConfigError, "n and m must be >= 1");
  if (cfg.r < 1 || cfg.r >= cfg.q)
    throw Error(ErrorKind::ConfigError, "r must lie in [1, q-1]");
  if (cfg.kind == GenKind::E3Lin && cfg.n < 3)
    throw Error(ErrorKind::ConfigError, "e3lin needs n >= 3");
  if (cfg.kind == GenKind::Opi) {
    if (cfg.m > cfg.q)
      throw Error(ErrorKind::ConfigError, "opi needs m <= q distinct points");
    if (cfg.n > cfg.m) throw Error(ErrorKind::ConfigError, "opi needs n <= m");
  }
  if (cfg.kind == GenKind::Planted &&
      (cfg.planted_fraction <= 0 || cfg.planted_fraction > 1))
    throw Error(ErrorKind::ConfigError, "planted fraction must lie in (0, 1]");
}

/// Uniformly random r-subset of F_q, sorted.
inline std::vector<Element> random_subset(std::uint32_t q, std::size_t r,
                                          Rng& rng) {
  std::vector<std::uint32_t> pool(q);
  for (std::uint32_t v = 0; v < q; ++v) pool[v] = v;
  for (std::size_t t = 0; t < r; ++t)
    std::swap(pool[t], pool[t + rng.below(q - t)]);
  std::vector<Element> out;
  for (std::size_t t = 0; t < r; ++t) out.emplace_back(pool[t]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::vector<Element> row_acceptance(const GenConfig& cfg,
                                           std::size_t i) {
  Rng rng(derive_seed(cfg.seed, Stream::RowAcceptance, i));
  return random_subset(cfg.q, cfg.r, rng);
}

inline Instance uniform_random_instance(const GenConfig& cfg) {
  const auto field = FieldSpec::from_order(cfg.q);
  std::vector<Constraint> rows(cfg.m);
  for (std::size_t i = 0; i < cfg.m; ++i) {
    Rng rng(derive_seed(cfg.seed, Stream::RowCoefficients, i));
    rows[i].coeffs.reserve(cfg.n);
    for (std::size_t j = 0; j < cfg.n; ++j)
      rows[i].coeffs.emplace_back(static_cast<std::uint32_t>(rng.below(cfg.q)));
    rows[i].accept = row_acceptance(cfg, i);
  }
  return Instance(field, cfg.n, std::move(rows));
}

}  // namespace detail

/// B uniform over F_q, each F_i a uniform r-subset.
inline Instance generate_random(const GenConfig& cfg) {
  validate(cfg);
  return detail::uniform_random_instance(cfg);
}

/// Coefficient-free rows: exactly three 1s at distinct positions. Index
/// triples are drawn independently per row, so duplicate rows can occur.
inline Instance generate_e3lin(const GenConfig& cfg) {
  validate(cfg);
  if (cfg.n < 3) throw Error(ErrorKind::ConfigError, "e3lin needs n >= 3");
  const auto field = FieldSpec::from_order(cfg.q);
  std::vector<Constraint> rows(cfg.m);
  for (std::size_t i = 0; i < cfg.m; ++i) {
    Rng rng(derive_seed(cfg.seed, Stream::RowCoefficients, i));
    rows[i].coeffs.assign(cfg.n, FieldSpec::zero());
    std::size_t placed = 0;
    while (placed < 3) {
      const auto j = rng.below(cfg.n);
      if (rows[i].coeffs[j].value == 0) {
        rows[i].coeffs[j] = FieldSpec::one();
        ++placed;
      }
    }
    rows[i].accept = detail::row_acceptance(cfg, i);
  }
  return Instance(field, cfg.n, std::move(rows));
}

/// Evaluation points for the opi generator: elements 0..m-1, shuffled by a
/// seeded Fisher-Yates pass.
inline std::vector<Element> opi_points(const GenConfig& cfg) {
  std::vector<Element> points;
  for (std::uint32_t v = 0; v < cfg.m; ++v) points.emplace_back(v);
  Rng rng(derive_seed(cfg.seed, Stream::OpiPoints));
  for (std::size_t t = points.size(); t > 1; --t)
    std::swap(points[t - 1], points[rng.below(t)]);
  return points;
}

/// Vandermonde rows B_{i,j} = y_i^j (j = 0..n-1) on distinct points y_i.
inline Instance generate_opi(const GenConfig& cfg) {
  validate(cfg);
  const auto field = FieldSpec::from_order(cfg.q);
  const auto points = opi_points(cfg);
  std::vector<Constraint> rows(cfg.m);
  for (std::size_t i = 0; i < cfg.m; ++i) {
    Element power = FieldSpec::one();
    for (std::size_t j = 0; j < cfg.n; ++j) {
      rows[i].coeffs.push_back(power);
      power = field.mul(power, points[i]);
    }
    rows[i].accept = detail::row_acceptance(cfg, i);
  }
  return Instance(field, cfg.n, std::move(rows));
}

struct PlantedInstance {
  Instance instance;
  Assignment planted;
};

/// Random instance adjusted so that a hidden assignment x* satisfies at least
/// ceil(fraction * m) constraints. For each forced constraint whose set misses
/// L_i(x*), a uniformly chosen member is replaced by L_i(x*), keeping |F_i| = r.
inline PlantedInstance generate_planted(const GenConfig& cfg) {
  validate(cfg);
  const auto field = FieldSpec::from_order(cfg.q);
  Assignment planted;
  {
    Rng rng(derive_seed(cfg.seed, Stream::PlantedAssignment));
    for (std::size_t j = 0; j < cfg.n; ++j)
      planted.emplace_back(static_cast<std::uint32_t>(rng.below(cfg.q)));
  }

  const auto base = detail::uniform_random_instance(cfg);
  std::vector<Constraint> rows = base.constraints();

  const auto m = static_cast<std::int64_t>(cfg.m);
  const Rational target = cfg.planted_fraction * m;
  auto forced = static_cast<std::size_t>(target.numerator() / target.denominator());
  if (target.numerator() % target.denominator() != 0) ++forced;

  std::vector<std::size_t> order(cfg.m);
  for (std::size_t i = 0; i < cfg.m; ++i) order[i] = i;
  {
    Rng rng(derive_seed(cfg.seed, Stream::PlantedSelection));
    for (std::size_t t = 0; t < forced; ++t)
      std::swap(order[t], order[t + rng.below(cfg.m - t)]);
  }
  for (std::size_t t = 0; t < forced; ++t) {
    const auto i = order[t];
    const Element value = linear_form(base, i, planted);
    auto& set = rows[i].accept;
    if (std::binary_search(set.begin(), set.end(), value)) continue;
    Rng rng(derive_seed(cfg.seed, Stream::PlantedRow, i));
    set[rng.below(set.size())] = value;
    std::sort(set.begin(), set.end());
  }
  return {Instance(field, cfg.n, std::move(rows)), std::move(planted)};
}

/// Dispatches on cfg.kind; the planted assignment is dropped.
inline Instance generate(const GenConfig& cfg) {
  switch (cfg.kind) {
    case GenKind::Random: return generate_random(cfg);
    case GenKind::E3Lin: return generate_e3lin(cfg);
    case GenKind::Opi: return generate_opi(cfg);
    case GenKind::Planted: return generate_planted(cfg).instance;
  }
  throw Error(ErrorKind::ConfigError, "unknown generator kind");
}

// Manifest grammar: one `key = value` per line, '#' starts a comment, blank
// lines ignored. Keys are case-sensitive; repeated keys keep the last value.

using Manifest = std::map<std::string, std::string>;

inline Manifest parse_manifest(const std::string& text) {
  Manifest out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SyntaxError(line_no, "expected 'key = value'");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw SyntaxError(line_no, "empty key");
    out[key] = value;
  }
  return out;
}

/// Reads kind, q, n, m, r, seed and planted_fraction; absent keys keep the
/// values already in `base`.
inline GenConfig gen_config_from_manifest(const Manifest& manifest,
                                          GenConfig base = {}) {
  auto number = [&](const std::string& key, auto& slot) {
    auto it = manifest.find(key);
    if (it == manifest.end()) return;
    try {
      slot = static_cast<std::remove_reference_t<decltype(slot)>>(
          std::stoull(it->second));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ConfigError,
                  "manifest key '" + key + "' needs an integer");
    }
  };
  number("q", base.q);
  number("n", base.n);
  number("m", base.m);
  number("r", base.r);
  number("seed", base.seed);
  if (auto it = manifest.find("kind"); it != manifest.end())
    base.kind = parse_gen_kind(it->second);
  if (auto it = manifest.find("planted_fraction"); it != manifest.end())
    base.planted_fraction = parse_rational(it->second);
  return base;
}

}  // namespace linsat
