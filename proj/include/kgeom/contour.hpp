#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "kgeom/cloud.hpp"
#include "kgeom/interpolant.hpp"

namespace kgeom {

/// Axis-aligned box in R^d.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dim() const { return static_cast<int>(lo.size()); }

  void validate() const {
    if (lo.size() != hi.size() || lo.size() == 0) {
      throw std::invalid_argument("box bounds have mismatched dimensions");
    }
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
      if (!(lo[i] < hi[i])) {
        throw std::invalid_argument("box is empty along axis " +
                                    std::to_string(i));
      }
    }
  }
};

/// Cloud bounding box inflated by `inflate` of its extent per side.
inline Box default_box(const PointCloud& X, double inflate = 0.25) {
  Box box;
  box.lo = X.points().colwise().minCoeff().transpose();
  box.hi = X.points().colwise().maxCoeff().transpose();
  for (Eigen::Index i = 0; i < box.lo.size(); ++i) {
    double extent = box.hi[i] - box.lo[i];
    if (extent == 0.0) extent = 1.0;
    box.lo[i] -= inflate * extent;
    box.hi[i] += inflate * extent;
  }
  return box;
}

/// Model values on a res x res node grid over a 2-d box.
/// values(i, j) = u(x_i, y_j) with x along axis 0 and y along axis 1.
struct ValueGrid2d {
  Box box;
  int res = 0;
  Eigen::MatrixXd values;

  double x(int i) const {
    return box.lo[0] + (box.hi[0] - box.lo[0]) * i / (res - 1);
  }
  double y(int j) const {
    return box.lo[1] + (box.hi[1] - box.lo[1]) * j / (res - 1);
  }
  double spacing() const {
    return std::max(box.hi[0] - box.lo[0], box.hi[1] - box.lo[1]) /
           (res - 1);
  }
};

inline ValueGrid2d sample_grid2d(const Model& model, const Box& box,
                                 int res) {
  box.validate();
  if (box.dim() != 2 || model.dim() != 2) {
    throw std::invalid_argument("sample_grid2d requires d = 2");
  }
  if (res < 2) throw std::invalid_argument("grid resolution must be >= 2");
  ValueGrid2d grid{box, res, Eigen::MatrixXd(res, res)};
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      grid.values(i, j) =
          evaluate_jet(model, Eigen::Vector2d(grid.x(i), grid.y(j)), 0)
              .value;
    }
  }
  return grid;
}

using Polyline = std::vector<Eigen::Vector2d>;

inline bool is_closed(const Polyline& p) {
  return p.size() >= 2 && p.front() == p.back();
}

namespace detail {

// A level crossing sits on a unique grid edge: (i, j) of the edge's
// lower-left node plus its orientation. Used as the stitching key.
struct EdgeKey {
  int i = 0, j = 0;
  bool horizontal = false;

  bool operator<(const EdgeKey& o) const {
    return std::tie(i, j, horizontal) < std::tie(o.i, o.j, o.horizontal);
  }
  bool operator==(const EdgeKey& o) const {
    return i == o.i && j == o.j && horizontal == o.horizontal;
  }
};

}  // namespace detail

/// Marching squares with linear interpolation on grid edges; ambiguous
/// saddle cells are resolved by the cell-average rule. Segments are
/// stitched into polylines; a loop that does not meet the box boundary
/// comes back closed (first = last vertex).
inline std::vector<Polyline> extract_level_polylines(const ValueGrid2d& grid,
                                                     double level) {
  using detail::EdgeKey;
  const int res = grid.res;

  auto crossing = [&](const EdgeKey& e) -> Eigen::Vector2d {
    const double v0 = grid.values(e.i, e.j);
    const double v1 = e.horizontal ? grid.values(e.i + 1, e.j)
                                   : grid.values(e.i, e.j + 1);
    double t = (level - v0) / (v1 - v0);
    t = std::min(1.0, std::max(0.0, t));
    const double x0 = grid.x(e.i);
    const double y0 = grid.y(e.j);
    if (e.horizontal) return {x0 + t * (grid.x(e.i + 1) - x0), y0};
    return {x0, y0 + t * (grid.y(e.j + 1) - y0)};
  };

  // Collect segments as pairs of edge keys, cell by cell.
  std::vector<std::pair<EdgeKey, EdgeKey>> segments;
  for (int i = 0; i + 1 < res; ++i) {
    for (int j = 0; j + 1 < res; ++j) {
      const double v00 = grid.values(i, j);
      const double v10 = grid.values(i + 1, j);
      const double v01 = grid.values(i, j + 1);
      const double v11 = grid.values(i + 1, j + 1);
      int mask = 0;
      if (v00 >= level) mask |= 1;
      if (v10 >= level) mask |= 2;
      if (v11 >= level) mask |= 4;
      if (v01 >= level) mask |= 8;
      if (mask == 0 || mask == 15) continue;

      const EdgeKey bottom{i, j, true};
      const EdgeKey top{i, j + 1, true};
      const EdgeKey left{i, j, false};
      const EdgeKey right{i + 1, j, false};

      auto add = [&](EdgeKey a, EdgeKey b) { segments.emplace_back(a, b); };
      switch (mask) {
        case 1:
        case 14:
          add(left, bottom);
          break;
        case 2:
        case 13:
          add(bottom, right);
          break;
        case 3:
        case 12:
          add(left, right);
          break;
        case 4:
        case 11:
          add(right, top);
          break;
        case 6:
        case 9:
          add(bottom, top);
          break;
        case 7:
        case 8:
          add(top, left);
          break;
        case 5:
        case 10: {
          // Saddle: connect according to the sign of the cell average.
          const bool center_above =
              0.25 * (v00 + v10 + v01 + v11) >= level;
          const bool corners_above = mask == 5;  // v00 and v11 above
          if (center_above == corners_above) {
            add(left, bottom);
            add(right, top);
          } else {
            add(left, top);
            add(bottom, right);
          }
          break;
        }
        default:
          break;
      }
    }
  }

  // Stitch: each crossing touches at most two segments.
  std::map<EdgeKey, std::vector<int>> incident;
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    incident[segments[s].first].push_back(s);
    incident[segments[s].second].push_back(s);
  }

  std::vector<bool> used(segments.size(), false);
  std::vector<Polyline> polylines;

  auto walk = [&](int start_seg, const EdgeKey& start_edge) {
    std::vector<EdgeKey> chain{start_edge};
    int seg = start_seg;
    EdgeKey at = start_edge;
    while (true) {
      used[seg] = true;
      const EdgeKey next = segments[seg].first == at ? segments[seg].second
                                                     : segments[seg].first;
      chain.push_back(next);
      at = next;
      int follow = -1;
      for (int s : incident[at]) {
        if (!used[s]) {
          follow = s;
          break;
        }
      }
      if (follow < 0) break;
      seg = follow;
    }
    Polyline p;
    p.reserve(chain.size());
    for (const auto& e : chain) p.push_back(crossing(e));
    return p;
  };

  // Open chains first (crossings with a single incident segment).
  for (const auto& [edge, segs] : incident) {
    if (segs.size() != 1) continue;
    const int s = segs.front();
    if (!used[s]) polylines.push_back(walk(s, edge));
  }
  // Remaining segments form closed loops.
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (!used[s]) polylines.push_back(walk(s, segments[s].first));
  }
  return polylines;
}

}  // namespace kgeom
