#pragma once

#include <cstdint>
#include <filesystem>

#include "lpcurse/point_set.hpp"

namespace lpcurse {

inline constexpr std::size_t kMaxHaltonDim = 16;

PointSet gen_random(std::size_t d, std::size_t n, std::uint64_t seed);

/// Full tensor grid with m points per axis: {0, 1/m, ..., (m-1)/m}, or the
/// midpoints {(2i-1)/(2m)} when `centered`.
PointSet gen_grid(std::size_t d, std::size_t m, bool centered,
                  std::uint64_t cap = std::uint64_t{1} << 26);

/// Halton points with indices 1..n, axis k in the k-th prime base.
PointSet gen_halton(std::size_t d, std::size_t n);

struct RuleFile {
  QuadratureRule rule;
  bool weighted;
};

/// CSV: '#' comment lines, header "x1,...,xd" or "x1,...,xd,weight", one
/// point per row. Without a weight column the rule gets weights 1/n.
RuleFile read_rule(const std::filesystem::path& path);
RuleFile parse_rule(std::string_view text);

void write_rule(const QuadratureRule& rule, const std::filesystem::path& path,
                bool weighted = true);
std::string format_rule(const QuadratureRule& rule, bool weighted = true);

} // namespace lpcurse
