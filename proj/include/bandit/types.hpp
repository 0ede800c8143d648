#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace bandit {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Infinity-norm metric on [0,1]^2.
inline double dist_inf(Point a, Point b) {
  return std::max(std::fabs(a.x - b.x), std::fabs(a.y - b.y));
}

// Axis-aligned dyadic cell [ix,ix+1) x [iy,iy+1) scaled by 2^-depth.
// The radius convention is r = side length, so the root has r = 1 and
// quartering halves r.
struct Cell {
  int depth = 0;
  std::uint32_t ix = 0;
  std::uint32_t iy = 0;

  double side() const { return std::ldexp(1.0, -depth); }
  double x0() const { return ix * side(); }
  double y0() const { return iy * side(); }
  Point center() const { return {(ix + 0.5) * side(), (iy + 0.5) * side()}; }

  bool contains(Point p) const {
    const double s = side();
    return p.x >= ix * s && p.x < (ix + 1) * s && p.y >= iy * s &&
           p.y < (iy + 1) * s;
  }

  // True when this cell equals `other` or one contains the other.  Dyadic
  // cells either nest or are disjoint; partial overlap cannot happen.
  bool nested_or_equal(const Cell& other) const {
    const Cell& hi = depth <= other.depth ? *this : other;
    const Cell& lo = depth <= other.depth ? other : *this;
    const int shift = lo.depth - hi.depth;
    return (lo.ix >> shift) == hi.ix && (lo.iy >> shift) == hi.iy;
  }

  bool operator==(const Cell& other) const {
    return depth == other.depth && ix == other.ix && iy == other.iy;
  }
};

// One historical observation.  K-armed entries use `arm`; continuous
// allocation entries use (p, beta).  Rewards live in [0,1].
struct HistEntry {
  int arm = -1;
  Point p{};
  double beta = 0.0;
  double reward = 0.0;
};

// Equivalence-class key shared by the replay matcher and the reward tape.
// Layout (high to low): tag(2) | level(6) | depth(5) | ix(25) | iy(25) for
// cells; arm index or oracle point id in the low bits otherwise.
using ClassKey = std::uint64_t;

namespace key {

constexpr std::uint64_t kTagShift = 62;
constexpr std::uint64_t kTagArm = 0;
constexpr std::uint64_t kTagCell = 1;
constexpr std::uint64_t kTagExact = 2;
constexpr int kMaxDepth = 25;

inline ClassKey arm(int a) {
  return (kTagArm << kTagShift) | static_cast<std::uint64_t>(a);
}

inline int arm_of(ClassKey k) { return static_cast<int>(k & 0xffffffffULL); }

inline ClassKey cell(int level_idx, const Cell& c) {
  if (c.depth > kMaxDepth) throw std::invalid_argument("cell too deep");
  return (kTagCell << kTagShift) |
         (static_cast<std::uint64_t>(level_idx) << 55) |
         (static_cast<std::uint64_t>(c.depth) << 50) |
         (static_cast<std::uint64_t>(c.ix) << 25) |
         static_cast<std::uint64_t>(c.iy);
}

inline ClassKey exact(int level_idx, int point_id) {
  return (kTagExact << kTagShift) |
         (static_cast<std::uint64_t>(level_idx) << 55) |
         static_cast<std::uint64_t>(point_id);
}

inline std::uint64_t tag(ClassKey k) { return k >> kTagShift; }
inline int level_of(ClassKey k) { return static_cast<int>((k >> 55) & 0x3f); }
inline Cell cell_of(ClassKey k) {
  Cell c;
  c.depth = static_cast<int>((k >> 50) & 0x1f);
  c.ix = static_cast<std::uint32_t>((k >> 25) & 0x1ffffff);
  c.iy = static_cast<std::uint32_t>(k & 0x1ffffff);
  return c;
}
inline int exact_id(ClassKey k) { return static_cast<int>(k & 0xffffffffULL); }

}  // namespace key

}  // namespace bandit
