#include "bbs/config.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bbs {

namespace {

void trim_trailing_zeros(std::vector<Color>& cells) {
  while (!cells.empty() && cells.back() == 0) cells.pop_back();
}

}  // namespace

BallConfig::BallConfig(int kappa, std::vector<Color> cells)
    : kappa_(kappa), cells_(std::move(cells)) {
  if (kappa_ < 1) throw std::invalid_argument("BallConfig: kappa must be positive");
  for (Color c : cells_) {
    if (c < 0 || c > kappa_) throw std::invalid_argument("BallConfig: color out of range");
  }
  trim_trailing_zeros(cells_);
}

Color BallConfig::at(std::int64_t site) const {
  if (site < 1) throw std::out_of_range("BallConfig::at: sites are 1-based");
  if (site > support_end()) return 0;
  return cells_[static_cast<std::size_t>(site - 1)];
}

std::int64_t BallConfig::ball_count() const {
  std::int64_t n = 0;
  for (Color c : cells_) n += (c > 0);
  return n;
}

std::vector<std::int64_t> BallConfig::color_counts() const {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(kappa_) + 1, 0);
  for (Color c : cells_) ++counts[static_cast<std::size_t>(c)];
  return counts;
}

Partition::Partition(std::vector<std::int64_t> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] <= 0) throw std::invalid_argument("Partition: rows must be positive");
    if (i > 0 && rows_[i] > rows_[i - 1])
      throw std::invalid_argument("Partition: rows must be non-increasing");
  }
}

std::int64_t Partition::row(std::int64_t k) const {
  if (k < 1) throw std::out_of_range("Partition::row: rows are 1-based");
  if (k > static_cast<std::int64_t>(rows_.size())) return 0;
  return rows_[static_cast<std::size_t>(k - 1)];
}

std::int64_t Partition::total() const {
  std::int64_t t = 0;
  for (std::int64_t r : rows_) t += r;
  return t;
}

std::vector<std::int64_t> Partition::conjugate() const {
  if (rows_.empty()) return {};
  std::vector<std::int64_t> cols(static_cast<std::size_t>(rows_.front()), 0);
  for (std::int64_t r : rows_) {
    for (std::int64_t j = 0; j < r; ++j) ++cols[static_cast<std::size_t>(j)];
  }
  return cols;
}

BallConfig apply_K(const BallConfig& config, Color a) {
  if (a < 1 || a > config.kappa())
    throw std::invalid_argument("apply_K: color must lie in 1..kappa");
  std::vector<Color> cells = config.cells();
  const std::int64_t n = static_cast<std::int64_t>(cells.size());
  std::vector<std::int64_t> movers;
  std::set<std::int64_t> empties;  // 1-based empty sites inside the stored prefix
  for (std::int64_t i = 0; i < n; ++i) {
    if (cells[static_cast<std::size_t>(i)] == a) movers.push_back(i + 1);
    else if (cells[static_cast<std::size_t>(i)] == 0) empties.insert(i + 1);
  }
  for (std::int64_t pos : movers) {
    cells[static_cast<std::size_t>(pos - 1)] = 0;
    empties.insert(pos);
    auto it = empties.upper_bound(pos);
    if (it == empties.end()) {
      cells.push_back(a);  // leftmost empty site is just past the stored prefix
    } else {
      cells[static_cast<std::size_t>(*it - 1)] = a;
      empties.erase(it);
    }
  }
  return BallConfig(config.kappa(), std::move(cells));
}

BallConfig evolve_step(const BallConfig& config) {
  BallConfig out = config;
  for (Color a = config.kappa(); a >= 1; --a) out = apply_K(out, a);
  return out;
}

BallConfig cyclic_step(const BallConfig& config) {
  const Color kappa = config.kappa();
  std::vector<Color> cells = apply_K(config, kappa).cells();
  for (Color& c : cells) {
    if (c == kappa) c = 1;
    else if (c >= 1) ++c;
  }
  return BallConfig(kappa, std::move(cells));
}

BallConfig standardize(const BallConfig& config) {
  const auto& cells = config.cells();
  std::vector<std::vector<std::size_t>> sites_of(static_cast<std::size_t>(config.kappa()) + 1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] > 0) sites_of[static_cast<std::size_t>(cells[i])].push_back(i);
  }
  std::vector<Color> out(cells.size(), 0);
  Color next = 1;
  for (Color c = 1; c <= config.kappa(); ++c) {
    const auto& sites = sites_of[static_cast<std::size_t>(c)];
    for (auto it = sites.rbegin(); it != sites.rend(); ++it) out[*it] = next++;
  }
  return BallConfig(std::max(next - 1, 1), std::move(out));
}

bool soliton_decomposition_reached(const BallConfig& config) {
  const auto& cells = config.cells();
  const std::int64_t n = static_cast<std::int64_t>(cells.size());
  struct Block {
    std::int64_t start, end;  // 0-based inclusive
  };
  std::vector<Block> blocks;
  std::int64_t i = 0;
  while (i < n) {
    if (cells[static_cast<std::size_t>(i)] == 0) {
      ++i;
      continue;
    }
    std::int64_t j = i;
    while (j + 1 < n && cells[static_cast<std::size_t>(j + 1)] >= 1 &&
           cells[static_cast<std::size_t>(j + 1)] <= cells[static_cast<std::size_t>(j)]) {
      ++j;
    }
    blocks.push_back({i, j});
    i = j + 1;
  }
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    const std::int64_t left_len = blocks[b - 1].end - blocks[b - 1].start + 1;
    const std::int64_t right_len = blocks[b].end - blocks[b].start + 1;
    if (left_len > right_len) return false;
    const std::int64_t gap = blocks[b].start - blocks[b - 1].end - 1;
    std::vector<Color> left, right;
    for (std::int64_t s = blocks[b - 1].start; s <= blocks[b - 1].end; ++s)
      left.push_back(cells[static_cast<std::size_t>(s)]);
    for (std::int64_t s = blocks[b].start; s <= blocks[b].end; ++s)
      right.push_back(cells[static_cast<std::size_t>(s)]);
    std::sort(left.rbegin(), left.rend());
    std::sort(right.rbegin(), right.rend());
    for (std::int64_t k = 1; k <= right_len && k + gap <= left_len; ++k) {
      if (right[static_cast<std::size_t>(k - 1)] <=
          left[static_cast<std::size_t>(k + gap - 1)])
        return false;
    }
  }
  return true;
}

std::string to_text(const BallConfig& config) {
  if (config.empty()) return "0";
  std::ostringstream os;
  const auto& cells = config.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ' ';
    os << cells[i];
  }
  return os.str();
}

BallConfig config_from_text(int kappa, const std::string& line) {
  std::istringstream is(line);
  std::vector<Color> cells;
  Color c;
  while (is >> c) cells.push_back(c);
  if (!is.eof()) throw std::invalid_argument("config_from_text: non-integer token");
  return BallConfig(kappa, std::move(cells));
}

void write_configs(std::ostream& out, int kappa, const std::vector<BallConfig>& configs) {
  out << "kappa=" << kappa << '\n';
  for (const auto& c : configs) {
    if (c.kappa() != kappa)
      throw std::invalid_argument("write_configs: configuration kappa mismatch");
    out << to_text(c) << '\n';
  }
}

std::pair<int, std::vector<BallConfig>> read_configs(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("kappa=", 0) != 0)
    throw std::invalid_argument("read_configs: missing kappa= header");
  const int kappa = std::stoi(line.substr(6));
  std::vector<BallConfig> configs;
  while (std::getline(in, line)) configs.push_back(config_from_text(kappa, line));
  return {kappa, std::move(configs)};
}

}  // namespace bbs
