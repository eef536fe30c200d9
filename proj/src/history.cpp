#include "antijam/history.hpp"

#include <stdexcept>

namespace antijam {

HistoryKey HistoryKey::suffix(std::size_t k) const {
  if (k > window.size()) throw std::invalid_argument("HistoryKey::suffix: too long");
  return HistoryKey{{window.end() - static_cast<std::ptrdiff_t>(k), window.end()}};
}

HistoryWindow::HistoryWindow(std::size_t capacity, RoundPair fill) : cap_(capacity) {
  buf_.assign(capacity, fill);
}

void HistoryWindow::push(RoundPair p) {
  if (cap_ == 0) return;
  buf_.pop_front();
  buf_.push_back(p);
}

HistoryKey HistoryWindow::key(std::size_t k) const {
  if (k > cap_) throw std::invalid_argument("HistoryWindow::key: k exceeds capacity");
  HistoryKey h;
  h.window.assign(buf_.end() - static_cast<std::ptrdiff_t>(k), buf_.end());
  return h;
}

std::vector<double> to_dense(const SparseDist& d, std::size_t n) {
  std::vector<double> out(n, 0.0);
  for (const auto& [b, p] : d) out.at(b) += p;
  return out;
}

}  // namespace antijam
