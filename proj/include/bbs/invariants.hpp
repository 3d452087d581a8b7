#pragma once

#include <cstdint>
#include <vector>

#include "bbs/config.hpp"

namespace bbs {

/// Strictly increasing finite set of 1-based sites; may be empty.
using SiteSet = std::vector<std::int64_t>;

/// 1 + number of ascents of X along consecutive elements of A; 0 for empty A.
std::int64_t num_ascents(const SiteSet& sites, const BallConfig& config);

/// |A| minus the number of empty sites spanned by A when X is non-increasing
/// on A, else 0. Empty A gives 0. May be negative when A contains empty sites.
std::int64_t penalized_length(const SiteSet& sites, const BallConfig& config);

/// Modified Greene-Kleitman row invariant R_k: the exhaustively maximized
/// total ascent count over k disjoint site classes. Equals E_k.
///
/// Classes are scored with a virtual leading empty slot (a class opening on
/// an occupied site earns its first ascent, one opening on an empty site
/// does not); this is the convention under which the maximum matches the
/// carrier energy, and it is pinned by the equivalence tests.
/// The search covers the support plus one trailing empty site.
std::int64_t gk_rows_bruteforce(const BallConfig& config, int k);

/// Modified Greene-Kleitman column invariant L_k: maximum total penalized
/// length over k non-interlacing sets, by interval dynamic programming.
/// Equals lambda_1 + ... + lambda_k.
std::int64_t gk_cols(const BallConfig& config, int k);

}  // namespace bbs
