#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace bbs {

using Color = int;

/// A kappa-color box-ball configuration on the half-infinite lattice.
///
/// Sites are indexed from 1. A site holds color 0 (empty) or a ball of color
/// 1..kappa. Only a finite prefix is stored; every site beyond it is empty.
/// Stored cells are canonical (no trailing zeros), so two configurations
/// compare equal iff they agree on every site.
class BallConfig {
 public:
  explicit BallConfig(int kappa, std::vector<Color> cells = {});

  int kappa() const { return kappa_; }
  /// Color at 1-based site x; 0 beyond the stored prefix.
  Color at(std::int64_t site) const;
  const std::vector<Color>& cells() const { return cells_; }
  /// Last occupied site; 0 for the empty configuration.
  std::int64_t support_end() const { return static_cast<std::int64_t>(cells_.size()); }
  bool empty() const { return cells_.empty(); }
  std::int64_t ball_count() const;
  /// Number of balls of each color, indexed 0..kappa (index 0 counts stored empties).
  std::vector<std::int64_t> color_counts() const;

  bool operator==(const BallConfig&) const = default;

 private:
  int kappa_;
  std::vector<Color> cells_;
};

/// Integer partition: non-increasing positive row lengths.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::int64_t> rows);

  const std::vector<std::int64_t>& rows() const { return rows_; }
  /// 1-based row length, 0 past the last row.
  std::int64_t row(std::int64_t k) const;
  std::size_t size() const { return rows_.size(); }
  std::int64_t total() const;
  /// Column lengths (the conjugate partition), longest first.
  std::vector<std::int64_t> conjugate() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::int64_t> rows_;
};

/// Move every ball of color a, taken left to right, to the leftmost empty
/// site strictly to its right.
BallConfig apply_K(const BallConfig& config, Color a);

/// One time step: apply_K for colors kappa, kappa-1, ..., 1.
BallConfig evolve_step(const BallConfig& config);

/// Cyclic single-color rule: color-kappa balls jump as in apply_K, become
/// color 1, and every other positive color is incremented. Applying this
/// kappa times equals evolve_step.
BallConfig cyclic_step(const BallConfig& config);

/// Relabel so that every ball carries a distinct color in 1..N while
/// preserving all strict order relations between ball colors. Within each
/// original color class labels increase right to left, after all labels of
/// lower classes. An empty configuration stays empty (with kappa = 1).
BallConfig standardize(const BallConfig& config);

/// True iff the configuration is a union of non-interacting solitons:
/// maximal non-increasing positive blocks with non-decreasing lengths from
/// the left, every adjacent pair obeying the separation condition
/// (the i-th largest entry of the right block strictly exceeds the
/// (i+gap)-th largest entry of the left block whenever both exist).
bool soliton_decomposition_reached(const BallConfig& config);

/// One-line text form: whitespace-separated colors, "0" for the empty
/// configuration.
std::string to_text(const BallConfig& config);
BallConfig config_from_text(int kappa, const std::string& line);

/// File form: header line "kappa=<int>", then one configuration per line.
void write_configs(std::ostream& out, int kappa, const std::vector<BallConfig>& configs);
std::pair<int, std::vector<BallConfig>> read_configs(std::istream& in);

}  // namespace bbs
