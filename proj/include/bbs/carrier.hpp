#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbs/config.hpp"

namespace bbs {

inline constexpr std::int64_t kUnboundedCapacity = -1;

/// A carrier for the circular exclusion rule. Held balls are stored as
/// per-color multiplicities; empty slots are implicit (the remaining
/// capacity, or infinitely many for the unbounded carrier).
///
/// The transition on input y:
///  - y >= 1 and y exceeds the smallest entry: the largest entry strictly
///    below y (the largest held color < y, or an empty slot) is expelled and
///    y takes its place;
///  - otherwise the largest entry is expelled and y is appended.
class Carrier {
 public:
  Carrier(int kappa, std::int64_t capacity);
  static Carrier unbounded(int kappa) { return Carrier(kappa, kUnboundedCapacity); }
  static Carrier bounded(int kappa, std::int64_t capacity) { return Carrier(kappa, capacity); }

  int kappa() const { return kappa_; }
  std::int64_t capacity() const { return capacity_; }
  bool is_unbounded() const { return capacity_ == kUnboundedCapacity; }
  std::int64_t mult(Color c) const;
  std::int64_t held() const { return held_; }
  /// Remaining empty slots; kUnboundedCapacity for the unbounded carrier.
  std::int64_t zero_slots() const;
  /// Smallest entry of the word (0 whenever an empty slot remains).
  Color min_entry() const;
  /// Largest held color; 0 when nothing is held.
  Color max_entry() const;

  /// One circular-exclusion transition; returns the expelled color.
  Color step(Color y);

  /// Add/remove a single ball directly (used by the localized rule).
  void insert_ball(Color c);
  void remove_ball(Color c);

  /// First `len` entries of the sorted non-increasing word, zero padded.
  std::vector<Color> word(std::int64_t len) const;

 private:
  int kappa_;
  std::int64_t capacity_;
  std::int64_t held_ = 0;
  std::vector<std::int64_t> mult_;  // index by color, [0] unused
};

/// Time-indexed record of a carrier sweep: the multiplicity state after each
/// step and the expelled colors X'(1), ..., X'(T).
struct CarrierTrace {
  int kappa = 0;
  std::int64_t capacity = kUnboundedCapacity;
  std::vector<std::int64_t> mults;  // (steps+1) x kappa, row t = state at time t
  std::vector<Color> expelled;

  std::int64_t steps() const { return static_cast<std::int64_t>(expelled.size()); }
  std::int64_t mult_at(std::int64_t t, Color c) const;
  /// Total held positive balls at time t.
  std::int64_t height_at(std::int64_t t) const;
  std::vector<std::int64_t> heights() const;
};

/// Sweep a carrier over the configuration from the empty state, continuing
/// past the support until the carrier has emptied again. The trace stores
/// the full multiplicity state per step (steps x kappa); for very large
/// color alphabets prefer carrier_height_path.
CarrierTrace run_carrier(const BallConfig& config, std::int64_t capacity = kUnboundedCapacity);

/// Held-ball counts along the same sweep, O(steps) memory for any kappa.
std::vector<std::int64_t> carrier_height_path(const BallConfig& config,
                                              std::int64_t capacity = kUnboundedCapacity);

/// Line-oriented records "t m1 m2 ... mkappa expelled", one per step t >= 1.
std::string trace_to_lines(const CarrierTrace& trace);

/// E_k: number of steps where the incoming color strictly exceeds the
/// minimum of the capacity-k carrier. E_0 = 0.
std::int64_t energy(const BallConfig& config, std::int64_t k);

/// Row length rho_k = E_k - E_{k-1} of the invariant Young diagram.
std::int64_t row_length(const BallConfig& config, std::int64_t k);

/// Longest soliton length: the maximum number of balls held by the
/// unbounded carrier during its sweep.
std::int64_t lambda1_queue(const BallConfig& config);

/// j-th column length lambda_j = max{c >= 1 : rho_c >= j} of the invariant
/// Young diagram (0 when the diagram has fewer than j columns).
std::int64_t column_length(const BallConfig& config, std::int64_t j);

/// Full invariant Young diagram; rows are soliton counts, columns (the
/// conjugate) are the sorted soliton lengths.
Partition young_diagram(const BallConfig& config);

/// True iff at every time the capacity-c word is obtained from the
/// capacity-(c+1) word by deleting exactly one entry.
bool check_capacity_coupling(const BallConfig& config, std::int64_t c);

}  // namespace bbs
