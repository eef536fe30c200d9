#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <utility>
#include <vector>

namespace antijam {

/// One completed round: indices into A_R and A_J.
struct RoundPair {
  std::uint32_t radar = 0;
  std::uint32_t jammer = 0;
  bool operator==(const RoundPair&) const = default;
};

/// The last k rounds, oldest first and most recent last.
struct HistoryKey {
  std::vector<RoundPair> window;

  std::size_t length() const { return window.size(); }
  const RoundPair& most_recent() const { return window.back(); }
  /// lag 1 is the previous round, lag k the oldest one kept.
  const RoundPair& at_lag(std::size_t lag) const { return window[window.size() - lag]; }
  /// The last `k` entries of this key.
  HistoryKey suffix(std::size_t k) const;
  bool operator==(const HistoryKey&) const = default;
};

struct HistoryKeyHash {
  std::size_t operator()(const HistoryKey& h) const noexcept {
    std::uint64_t x = 0x84222325cbf29ce4ULL ^ h.window.size();
    for (const auto& p : h.window) {
      std::uint64_t v = (static_cast<std::uint64_t>(p.radar) << 32) | p.jammer;
      x ^= v + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
      x *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(x ^ (x >> 29));
  }
};

/// Rolling window of the last `capacity` rounds.
class HistoryWindow {
 public:
  HistoryWindow(std::size_t capacity, RoundPair fill);

  void push(RoundPair p);
  std::size_t capacity() const { return cap_; }
  /// Key over the most recent k <= capacity rounds.
  HistoryKey key(std::size_t k) const;

 private:
  std::size_t cap_;
  std::deque<RoundPair> buf_;
};

/// Probability mass on a subset of jammer actions; entries sorted by index.
using SparseDist = std::vector<std::pair<std::size_t, double>>;

std::vector<double> to_dense(const SparseDist& d, std::size_t n);

}  // namespace antijam
