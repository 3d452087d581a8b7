#include "bbs/carrier.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bbs {

namespace {

// Multiplicity-vector steps are O(kappa); beyond this the sweeps below
// switch to an ordered-multiset word.
constexpr int kSmallKappa = 64;

}  // namespace

Carrier::Carrier(int kappa, std::int64_t capacity)
    : kappa_(kappa), capacity_(capacity), mult_(static_cast<std::size_t>(kappa) + 1, 0) {
  if (kappa_ < 1) throw std::invalid_argument("Carrier: kappa must be positive");
  if (capacity_ != kUnboundedCapacity && capacity_ < 1)
    throw std::invalid_argument("Carrier: capacity must be positive or unbounded");
}

std::int64_t Carrier::mult(Color c) const {
  if (c < 1 || c > kappa_) throw std::out_of_range("Carrier::mult: color out of range");
  return mult_[static_cast<std::size_t>(c)];
}

std::int64_t Carrier::zero_slots() const {
  return is_unbounded() ? kUnboundedCapacity : capacity_ - held_;
}

Color Carrier::min_entry() const {
  if (is_unbounded() || held_ < capacity_) return 0;
  for (Color c = 1; c <= kappa_; ++c) {
    if (mult_[static_cast<std::size_t>(c)] > 0) return c;
  }
  return 0;
}

Color Carrier::max_entry() const {
  for (Color c = kappa_; c >= 1; --c) {
    if (mult_[static_cast<std::size_t>(c)] > 0) return c;
  }
  return 0;
}

Color Carrier::step(Color y) {
  if (y < 0 || y > kappa_) throw std::invalid_argument("Carrier::step: invalid color");
  if (y == 0) {
    const Color m = max_entry();
    if (m > 0) {
      --mult_[static_cast<std::size_t>(m)];
      --held_;
    }
    return m;
  }
  if (y > min_entry()) {
    for (Color c = y - 1; c >= 1; --c) {
      if (mult_[static_cast<std::size_t>(c)] > 0) {
        --mult_[static_cast<std::size_t>(c)];
        ++mult_[static_cast<std::size_t>(y)];
        return c;
      }
    }
    // no held color below y: an empty slot is expelled
    ++mult_[static_cast<std::size_t>(y)];
    ++held_;
    return 0;
  }
  // bounded carrier full of colors >= y: the maximum slides out
  const Color m = max_entry();
  --mult_[static_cast<std::size_t>(m)];
  ++mult_[static_cast<std::size_t>(y)];
  return m;
}

void Carrier::insert_ball(Color c) {
  if (c < 1 || c > kappa_) throw std::invalid_argument("Carrier::insert_ball: invalid color");
  if (!is_unbounded() && held_ >= capacity_)
    throw std::logic_error("Carrier::insert_ball: carrier is full");
  ++mult_[static_cast<std::size_t>(c)];
  ++held_;
}

void Carrier::remove_ball(Color c) {
  if (c < 1 || c > kappa_) throw std::invalid_argument("Carrier::remove_ball: invalid color");
  if (mult_[static_cast<std::size_t>(c)] == 0)
    throw std::logic_error("Carrier::remove_ball: color not held");
  --mult_[static_cast<std::size_t>(c)];
  --held_;
}

std::vector<Color> Carrier::word(std::int64_t len) const {
  std::vector<Color> w;
  w.reserve(static_cast<std::size_t>(len));
  for (Color c = kappa_; c >= 1 && static_cast<std::int64_t>(w.size()) < len; --c) {
    for (std::int64_t i = 0; i < mult_[static_cast<std::size_t>(c)] &&
                             static_cast<std::int64_t>(w.size()) < len;
         ++i) {
      w.push_back(c);
    }
  }
  w.resize(static_cast<std::size_t>(len), 0);
  return w;
}

std::int64_t CarrierTrace::mult_at(std::int64_t t, Color c) const {
  return mults[static_cast<std::size_t>(t * kappa + (c - 1))];
}

std::int64_t CarrierTrace::height_at(std::int64_t t) const {
  std::int64_t h = 0;
  for (Color c = 1; c <= kappa; ++c) h += mult_at(t, c);
  return h;
}

std::vector<std::int64_t> CarrierTrace::heights() const {
  std::vector<std::int64_t> hs(static_cast<std::size_t>(steps()) + 1);
  for (std::int64_t t = 0; t <= steps(); ++t) hs[static_cast<std::size_t>(t)] = height_at(t);
  return hs;
}

CarrierTrace run_carrier(const BallConfig& config, std::int64_t capacity) {
  Carrier car(config.kappa(), capacity);
  CarrierTrace trace;
  trace.kappa = config.kappa();
  trace.capacity = capacity;
  auto record_state = [&] {
    for (Color c = 1; c <= car.kappa(); ++c) trace.mults.push_back(car.mult(c));
  };
  record_state();
  for (std::int64_t t = 1; t <= config.support_end(); ++t) {
    trace.expelled.push_back(car.step(config.at(t)));
    record_state();
  }
  while (car.held() > 0) {
    trace.expelled.push_back(car.step(0));
    record_state();
  }
  return trace;
}

std::vector<std::int64_t> carrier_height_path(const BallConfig& config, std::int64_t capacity) {
  std::vector<std::int64_t> heights{0};
  if (config.kappa() <= kSmallKappa) {
    Carrier car(config.kappa(), capacity);
    for (std::int64_t t = 1; t <= config.support_end(); ++t) {
      car.step(config.at(t));
      heights.push_back(car.held());
    }
    while (car.held() > 0) {
      car.step(0);
      heights.push_back(car.held());
    }
    return heights;
  }
  std::multiset<Color> held;
  std::int64_t zero_slots = capacity == kUnboundedCapacity ? -1 : capacity;
  auto step = [&](Color y) {
    const Color mn = (zero_slots != 0) ? 0 : *held.begin();
    if (y >= 1 && y > mn) {
      auto it = held.lower_bound(y);
      if (it != held.begin()) {
        held.erase(std::prev(it));
      } else if (zero_slots > 0) {
        --zero_slots;
      }
      held.insert(y);
    } else if (!held.empty()) {
      held.erase(std::prev(held.end()));
      if (y >= 1) held.insert(y);
      else if (zero_slots >= 0) ++zero_slots;
    }
  };
  for (std::int64_t t = 1; t <= config.support_end(); ++t) {
    step(config.at(t));
    heights.push_back(static_cast<std::int64_t>(held.size()));
  }
  while (!held.empty()) {
    step(0);
    heights.push_back(static_cast<std::int64_t>(held.size()));
  }
  return heights;
}

std::string trace_to_lines(const CarrierTrace& trace) {
  std::ostringstream os;
  for (std::int64_t t = 1; t <= trace.steps(); ++t) {
    os << t;
    for (Color c = 1; c <= trace.kappa; ++c) os << ' ' << trace.mult_at(t, c);
    os << ' ' << trace.expelled[static_cast<std::size_t>(t - 1)] << '\n';
  }
  return os.str();
}

namespace {

std::int64_t energy_mult(const BallConfig& config, std::int64_t k) {
  Carrier car = Carrier::bounded(config.kappa(), k);
  std::int64_t e = 0;
  for (Color y : config.cells()) {
    if (y > car.min_entry()) ++e;
    car.step(y);
  }
  return e;
}

// Ordered-word sweep for large color alphabets (e.g. permutation input):
// held colors in a multiset, empty slots counted implicitly.
std::int64_t energy_word(const BallConfig& config, std::int64_t k) {
  std::multiset<Color> held;
  std::int64_t zero_slots = k;
  std::int64_t e = 0;
  for (Color y : config.cells()) {
    const Color mn = zero_slots > 0 ? 0 : *held.begin();
    if (y > mn) {
      ++e;
      auto it = held.lower_bound(y);
      if (it != held.begin()) {
        held.erase(std::prev(it));
        held.insert(y);
      } else {
        --zero_slots;
        held.insert(y);
      }
    } else {
      if (!held.empty()) {
        held.erase(std::prev(held.end()));
        if (y >= 1) held.insert(y);
        else ++zero_slots;
      }
    }
  }
  return e;
}

}  // namespace

std::int64_t energy(const BallConfig& config, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("energy: capacity must be non-negative");
  if (k == 0) return 0;
  return config.kappa() <= kSmallKappa ? energy_mult(config, k) : energy_word(config, k);
}

std::int64_t row_length(const BallConfig& config, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("row_length: rows are 1-based");
  return energy(config, k) - energy(config, k - 1);
}

std::int64_t lambda1_queue(const BallConfig& config) {
  std::int64_t best = 0;
  if (config.kappa() <= kSmallKappa) {
    Carrier car = Carrier::unbounded(config.kappa());
    for (Color y : config.cells()) {
      car.step(y);
      best = std::max(best, car.held());
    }
  } else {
    std::multiset<Color> held;
    for (Color y : config.cells()) {
      if (y >= 1) {
        auto it = held.lower_bound(y);
        if (it != held.begin()) held.erase(std::prev(it));
        held.insert(y);
      } else if (!held.empty()) {
        held.erase(std::prev(held.end()));
      }
      best = std::max(best, static_cast<std::int64_t>(held.size()));
    }
  }
  return best;
}

std::int64_t column_length(const BallConfig& config, std::int64_t j) {
  if (j < 1) throw std::invalid_argument("column_length: columns are 1-based");
  const std::int64_t lam1 = lambda1_queue(config);
  if (lam1 == 0) return 0;
  if (j == 1) return lam1;
  if (row_length(config, 1) < j) return 0;
  // rho_c is non-increasing in c, so the predicate rho_c >= j is monotone.
  std::int64_t lo = 1, hi = lam1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (row_length(config, mid) >= j) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

Partition young_diagram(const BallConfig& config) {
  const std::int64_t total = config.ball_count();
  std::vector<std::int64_t> rows;
  std::int64_t prev = 0;
  for (std::int64_t k = 1; k <= total; ++k) {
    const std::int64_t ek = energy(config, k);
    const std::int64_t rho = ek - prev;
    prev = ek;
    if (rho == 0) break;  // rows are non-increasing, so all later rows vanish
    rows.push_back(rho);
  }
  return Partition(std::move(rows));
}

bool check_capacity_coupling(const BallConfig& config, std::int64_t c) {
  if (c < 1) throw std::invalid_argument("check_capacity_coupling: capacity must be positive");
  Carrier small = Carrier::bounded(config.kappa(), c);
  Carrier big = Carrier::bounded(config.kappa(), c + 1);
  auto one_entry_apart = [&] {
    std::int64_t total = big.zero_slots() - small.zero_slots();
    if (total < 0) return false;
    for (Color col = 1; col <= config.kappa(); ++col) {
      const std::int64_t d = big.mult(col) - small.mult(col);
      if (d < 0) return false;
      total += d;
    }
    return total == 1;
  };
  if (!one_entry_apart()) return false;
  for (std::int64_t t = 1; t <= config.support_end(); ++t) {
    small.step(config.at(t));
    big.step(config.at(t));
    if (!one_entry_apart()) return false;
  }
  while (small.held() > 0 || big.held() > 0) {
    small.step(0);
    big.step(0);
    if (!one_entry_apart()) return false;
  }
  return true;
}

}  // namespace bbs
