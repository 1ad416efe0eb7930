#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace reeb {

struct Box {
  double x0, y0, x1, y1;
  bool overlaps(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

// Uniform bucket grid over axis-aligned boxes. Pairs are reported once, from
// the cell holding the lower-left corner of the two boxes' intersection.
class UniformGrid {
 public:
  explicit UniformGrid(const std::vector<Box>& boxes) : boxes_(boxes) {
    if (boxes.empty()) return;
    Box all = boxes.front();
    for (const Box& b : boxes) {
      all.x0 = std::min(all.x0, b.x0);
      all.y0 = std::min(all.y0, b.y0);
      all.x1 = std::max(all.x1, b.x1);
      all.y1 = std::max(all.y1, b.y1);
    }
    bounds_ = all;
    const auto side = static_cast<int>(std::clamp(std::sqrt(static_cast<double>(boxes.size())), 1.0, 1024.0));
    nx_ = ny_ = side;
    wx_ = std::max((all.x1 - all.x0) / nx_, 1e-300);
    wy_ = std::max((all.y1 - all.y0) / ny_, 1e-300);
    cells_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (std::uint32_t i = 0; i < boxes.size(); ++i) {
      const Box& b = boxes[i];
      for (int y = cy(b.y0); y <= cy(b.y1); ++y)
        for (int x = cx(b.x0); x <= cx(b.x1); ++x) cells_[index(x, y)].push_back(i);
    }
  }

  // f(i, j) for every i < j whose boxes overlap.
  template <class F>
  void self_pairs(F&& f) const {
    for (int y = 0; y < ny_; ++y)
      for (int x = 0; x < nx_; ++x) {
        const auto& cell = cells_[index(x, y)];
        for (std::size_t a = 0; a < cell.size(); ++a)
          for (std::size_t b = a + 1; b < cell.size(); ++b) {
            const Box& p = boxes_[cell[a]];
            const Box& q = boxes_[cell[b]];
            if (!p.overlaps(q)) continue;
            if (cx(std::max(p.x0, q.x0)) != x || cy(std::max(p.y0, q.y0)) != y) continue;
            f(std::min(cell[a], cell[b]), std::max(cell[a], cell[b]));
          }
      }
  }

  // f(j) for every stored box j overlapping `query`, each once.
  template <class F>
  void query(const Box& q, F&& f) const {
    if (cells_.empty()) return;
    if (q.x1 < bounds_.x0 || q.x0 > bounds_.x1 || q.y1 < bounds_.y0 || q.y0 > bounds_.y1) return;
    for (int y = cy(q.y0); y <= cy(q.y1); ++y)
      for (int x = cx(q.x0); x <= cx(q.x1); ++x)
        for (std::uint32_t j : cells_[index(x, y)]) {
          const Box& b = boxes_[j];
          if (!b.overlaps(q)) continue;
          if (cx(std::max(b.x0, q.x0)) != x || cy(std::max(b.y0, q.y0)) != y) continue;
          f(j);
        }
  }

 private:
  int cx(double v) const { return std::clamp(static_cast<int>(std::floor((v - bounds_.x0) / wx_)), 0, nx_ - 1); }
  int cy(double v) const { return std::clamp(static_cast<int>(std::floor((v - bounds_.y0) / wy_)), 0, ny_ - 1); }
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * nx_ + x; }

  const std::vector<Box>& boxes_;
  Box bounds_{0, 0, 0, 0};
  int nx_ = 0, ny_ = 0;
  double wx_ = 1, wy_ = 1;
  std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace reeb
