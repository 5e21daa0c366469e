#include "rauzy/verify.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <unordered_set>

#include "rauzy/error.h"

namespace rauzy {

namespace {

// Static kd-tree with a bounding box per node, for queries whose nearest
// point lies many grid cells away.
class KdIndex {
 public:
  explicit KdIndex(const PointCloud& pts) : dim_(pts.dim()) {
    if (pts.empty()) throw InvalidInput("nearest-neighbour index over an empty cloud");
    build(pts);
  }

  // Distance from q to the nearest indexed point. Once some point within
  // `enough` is found the search stops and returns that (non-minimal) value.
  double nearest(std::span<const double> q, double enough = 0) const {
    double best2 = std::numeric_limits<double>::infinity();
    const double enough2 = enough * enough;
    std::pair<double, std::uint32_t> stack[128];
    int top = 0;
    stack[top++] = {box_distance2(0, q.data()), 0};
    while (top > 0) {
      const auto [d2, id] = stack[--top];
      if (d2 >= best2) continue;
      const Node& n = nodes_[id];
      if (n.left == 0) {
        for (std::size_t s = n.begin; s < n.end; ++s) {
          const double* p = coords_.data() + s * dim_;
          double e = 0;
          for (int a = 0; a < dim_; ++a) e += (p[a] - q[a]) * (p[a] - q[a]);
          best2 = std::min(best2, e);
        }
        if (best2 <= enough2) break;
        continue;
      }
      const double dl = box_distance2(n.left, q.data()), dr = box_distance2(n.left + 1, q.data());
      // push the farther child first so the nearer one is expanded next
      if (dl < dr) {
        if (dr < best2) stack[top++] = {dr, n.left + 1};
        if (dl < best2) stack[top++] = {dl, n.left};
      } else {
        if (dl < best2) stack[top++] = {dl, n.left};
        if (dr < best2) stack[top++] = {dr, n.left + 1};
      }
    }
    return std::sqrt(best2);
  }

 private:
  static constexpr std::size_t kLeaf = 12;

  struct Node {
    std::size_t begin = 0, end = 0;
    std::uint32_t left = 0;  ///< children at left and left + 1; 0 for a leaf
  };

  double box_distance2(std::uint32_t id, const double* q) const {
    const double* lo = boxes_.data() + static_cast<std::size_t>(id) * 2 * dim_;
    const double* hi = lo + dim_;
    double d2 = 0;
    for (int a = 0; a < dim_; ++a) {
      const double e = q[a] < lo[a] ? lo[a] - q[a] : (q[a] > hi[a] ? q[a] - hi[a] : 0.0);
      d2 += e * e;
    }
    return d2;
  }

  // Splits at the median of the longest axis of a loose box (the parent's
  // box cut at the split value), then tightens every box bottom-up.
  void build(const PointCloud& pts) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    const BoundingBox whole = bounding_box(pts);
    nodes_.reserve(2 * (n / kLeaf) + 1);
    nodes_.push_back({0, n, 0});
    std::vector<double> loose(whole.lo);
    loose.insert(loose.end(), whole.hi.begin(), whole.hi.end());
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      const std::size_t begin = nodes_[id].begin, end = nodes_[id].end;
      if (end - begin <= kLeaf) continue;
      const double* lo = loose.data() + id * 2 * dim_;
      const double* hi = lo + dim_;
      int axis = 0;
      for (int a = 1; a < dim_; ++a)
        if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
      const std::size_t mid = begin + (end - begin) / 2;
      std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                       [&](std::size_t x, std::size_t y) { return pts[x][axis] < pts[y][axis]; });
      const double cut = pts[order[mid]][axis];
      const auto left = static_cast<std::uint32_t>(nodes_.size());
      nodes_[id].left = left;
      nodes_.push_back({begin, mid, 0});
      nodes_.push_back({mid, end, 0});
      const std::size_t base = loose.size();
      loose.resize(base + 4 * dim_);
      std::copy_n(loose.data() + id * 2 * dim_, 2 * dim_, loose.data() + base);
      std::copy_n(loose.data() + id * 2 * dim_, 2 * dim_, loose.data() + base + 2 * dim_);
      loose[base + dim_ + axis] = cut;       // left hi
      loose[base + 2 * dim_ + axis] = cut;   // right lo
    }

    coords_.resize(n * dim_);
    for (std::size_t i = 0; i < n; ++i) std::copy_n(pts[order[i]].data(), dim_, coords_.data() + i * dim_);

    boxes_.assign(nodes_.size() * 2 * dim_, 0.0);
    for (std::size_t id = nodes_.size(); id-- > 0;) {
      double* lo = boxes_.data() + id * 2 * dim_;
      double* hi = lo + dim_;
      const Node& nd = nodes_[id];
      if (nd.left == 0) {
        std::copy_n(coords_.data() + nd.begin * dim_, dim_, lo);
        std::copy_n(coords_.data() + nd.begin * dim_, dim_, hi);
        for (std::size_t s = nd.begin + 1; s < nd.end; ++s)
          for (int a = 0; a < dim_; ++a) {
            const double v = coords_[s * dim_ + a];
            lo[a] = std::min(lo[a], v);
            hi[a] = std::max(hi[a], v);
          }
      } else {
        const double* l = boxes_.data() + static_cast<std::size_t>(nd.left) * 2 * dim_;
        const double* r = l + 2 * dim_;
        for (int a = 0; a < dim_; ++a) {
          lo[a] = std::min(l[a], r[a]);
          hi[a] = std::max(l[dim_ + a], r[dim_ + a]);
        }
      }
    }
  }

  int dim_;
  std::vector<Node> nodes_;
  std::vector<double> boxes_;  ///< per node: lo[dim], hi[dim]
  std::vector<double> coords_;
};

// Points of a cloud bucketed on a dense uniform grid (CSR layout), with a
// chessboard distance transform over the cells to skip empty space. Shell
// scans cost O(r^(d-1)) cells at radius r, so queries that need more than
// kNearShells shells go to a kd-tree built on first use.
class GridIndex {
 public:
  explicit GridIndex(const PointCloud& pts) : dim_(pts.dim()), source_(&pts) {
    if (pts.empty()) throw InvalidInput("nearest-neighbour index over an empty cloud");
    const BoundingBox box = bounding_box(pts);
    lo_ = box.lo;
    double extent = 0;
    for (int c = 0; c < dim_; ++c) extent = std::max(extent, box.extent(c));
    // Roughly two points per cell along a d-dimensional box.
    const double per_axis = std::pow(static_cast<double>(pts.size()) / 2.0, 1.0 / dim_);
    cell_ = extent > 0 ? extent / std::max(1.0, per_axis) : 1.0;
    std::size_t total = 1;
    n_.resize(dim_);
    stride_.resize(dim_);
    for (int c = 0; c < dim_; ++c) {
      n_[c] = static_cast<int>(std::floor(box.extent(c) / cell_)) + 1;
      stride_[c] = total;
      total *= n_[c];
    }
    start_.assign(total + 1, 0);
    std::vector<std::size_t> key(pts.size());
    for (std::size_t p = 0; p < pts.size(); ++p) {
      std::size_t k = 0;
      for (int a = 0; a < dim_; ++a)
        k += stride_[a] * std::clamp(static_cast<int>(std::floor((pts[p][a] - lo_[a]) / cell_)), 0, n_[a] - 1);
      key[p] = k;
      ++start_[k + 1];
    }
    for (std::size_t k = 0; k < total; ++k) start_[k + 1] += start_[k];
    sorted_.resize(pts.coords().size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const std::size_t slot = fill[key[p]]++;
      std::copy_n(pts[p].data(), dim_, sorted_.data() + slot * dim_);
    }
    build_empty_radius(total);
  }

  // Distance from q to the nearest indexed point. Once some point within
  // `enough` is found the search stops and returns that (non-minimal) value.
  double nearest(std::span<const double> q, double enough = 0) const {
    int qc[kMaxDim];
    int r0 = 0, rmax = 0;
    bool inside = true;
    std::size_t clamped = 0;
    for (int c = 0; c < dim_; ++c) {
      qc[c] = static_cast<int>(std::floor((q[c] - lo_[c]) / cell_));
      if (qc[c] < 0) r0 = std::max(r0, -qc[c]), inside = false;
      if (qc[c] >= n_[c]) r0 = std::max(r0, qc[c] - n_[c] + 1), inside = false;
      rmax = std::max({rmax, std::abs(qc[c]), std::abs(n_[c] - 1 - qc[c])});
      clamped += stride_[c] * std::clamp(qc[c], 0, n_[c] - 1);
    }
    // Chebyshev triangle inequality through the nearest grid cell.
    r0 = inside ? empty_radius_[clamped] : std::max(r0, empty_radius_[clamped] - r0);
    double best2 = std::numeric_limits<double>::infinity();
    const double enough2 = enough * enough;
    for (int r = r0; r <= rmax; ++r) {
      if (r > kNearShells) return far().nearest(q, enough);
      scan_shell(qc, r, dim_ - 1, 0, false, q.data(), best2);
      if (best2 <= enough2) break;
      // Cells at Chebyshev index distance > r lie at least r cells away.
      const double bound = r * cell_;
      if (best2 <= bound * bound) break;
    }
    return std::sqrt(best2);
  }

 private:
  static constexpr int kMaxDim = 8;
  static constexpr int kNearShells = 6;

  const KdIndex& far() const {
    if (!far_) far_ = std::make_unique<KdIndex>(*source_);
    return *far_;
  }

  void build_empty_radius(std::size_t total) {
    empty_radius_.assign(total, -1);
    std::vector<std::size_t> queue;
    queue.reserve(total);
    for (std::size_t k = 0; k < total; ++k)
      if (start_[k + 1] > start_[k]) empty_radius_[k] = 0, queue.push_back(k);
    int neighbours = 1;
    for (int a = 0; a < dim_; ++a) neighbours *= 3;
    int c[kMaxDim];
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t k = queue[head];
      for (int a = 0; a < dim_; ++a) c[a] = static_cast<int>((k / stride_[a]) % n_[a]);
      for (int code = 0; code < neighbours; ++code) {
        int t = code;
        bool ok = true, self = true;
        std::size_t m = 0;
        for (int a = 0; a < dim_; ++a) {
          const int o = t % 3 - 1, v = c[a] + o;
          t /= 3;
          self = self && o == 0;
          ok = ok && v >= 0 && v < n_[a];
          m += stride_[a] * static_cast<std::size_t>(std::max(v, 0));
        }
        if (self || !ok || empty_radius_[m] >= 0) continue;
        empty_radius_[m] = empty_radius_[k] + 1;
        queue.push_back(m);
      }
    }
  }

  // Visits the cells at Chebyshev offset exactly r from qc, axes from high to
  // low; `on_face` records whether a higher axis already sits at offset +-r.
  void scan_shell(const int* qc, int r, int axis, std::size_t partial, bool on_face, const double* q,
                  double& best2) const {
    const int lo = std::max(-r, -qc[axis]), hi = std::min(r, n_[axis] - 1 - qc[axis]);
    if (lo > hi) return;
    if (axis == 0) {
      auto visit = [&](int o) {
        const std::size_t k = partial + stride_[0] * (qc[0] + o);
        for (std::size_t s = start_[k]; s < start_[k + 1]; ++s) {
          const double* p = sorted_.data() + s * dim_;
          double d2 = 0;
          for (int a = 0; a < dim_; ++a) d2 += (p[a] - q[a]) * (p[a] - q[a]);
          best2 = std::min(best2, d2);
        }
      };
      if (on_face || r == 0) {
        for (int o = lo; o <= hi; ++o) visit(o);
      } else {
        if (lo == -r) visit(-r);
        if (hi == r) visit(r);
      }
      return;
    }
    for (int o = lo; o <= hi; ++o)
      scan_shell(qc, r, axis - 1, partial + stride_[axis] * (qc[axis] + o), on_face || std::abs(o) == r, q, best2);
  }

  int dim_;
  const PointCloud* source_;
  std::vector<double> lo_;
  double cell_ = 1;
  std::vector<int> n_;
  std::vector<std::size_t> stride_;
  std::vector<std::size_t> start_;
  std::vector<double> sorted_;
  std::vector<int> empty_radius_;
  mutable std::unique_ptr<KdIndex> far_;
};

double full_diameter(const TileSet& tiles) {
  PointCloud all;
  for (const auto& [a, t] : tiles) all.append(t.points);
  if (all.empty()) throw InvalidInput("empty tile set");
  return diameter(all);
}

std::size_t thinning_cap(const VerifyConfig& cfg) { return 2 * cfg.point_budget; }
constexpr double kThinningCells = 10;  // thinning cells per tolerance

struct Scale {
  double tolerance;
  double shift;
  std::size_t cap;  ///< larger clouds are thinned before comparison
};

Scale scale_for(const TileSet& reference, const VerifyConfig& cfg) {
  const double d = full_diameter(reference);
  return {cfg.tolerance_fraction * d, cfg.perturbation * d, thinning_cap(cfg)};
}

// One point per occupied cube of side `cell`, so every dropped point stays
// within cell * sqrt(dim) of a kept one. Clouds of at most `cap` points are
// left alone.
PointCloud thinned(const PointCloud& c, std::size_t cap, double cell) {
  if (cap == 0 || c.size() <= cap || !(cell > 0)) return c;
  const int d = c.dim();
  const int bits = 63 / d;
  const BoundingBox box = bounding_box(c);
  for (int k = 0; k < d; ++k) cell = std::max(cell, box.extent(k) / std::ldexp(1.0, bits) * 1.001);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(c.size());
  PointCloud out(d);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto p = c[i];
    std::uint64_t key = 0;
    for (int k = 0; k < d; ++k)
      key = (key << bits) | static_cast<std::uint64_t>(std::floor((p[k] - box.lo[k]) / cell));
    if (seen.insert(key).second) out.push_back(p);
  }
  return out;
}

IdentityReport compare_scaled(std::string identity, const TileApprox& left, const TileApprox& right, const Scale& sc) {
  IdentityReport rep;
  rep.identity = std::move(identity);
  rep.left = left.label.str();
  rep.right = right.label.str();
  rep.tolerance = sc.tolerance;
  const double cell = sc.tolerance / kThinningCells;
  const PointCloud lhs = thinned(left.points, sc.cap, cell);
  PointCloud rhs = thinned(right.points, sc.cap, cell);
  if (sc.shift != 0) {
    std::vector<double> offset(rhs.dim(), 0.0);
    offset[0] = sc.shift;
    TileApprox moved;
    moved.points = std::move(rhs);
    rhs = translated(moved, offset).points;
  }
  rep.distance = hausdorff(lhs, rhs);
  rep.pass = rep.distance <= rep.tolerance;
  return rep;
}

std::string occ_list(const std::vector<Occurrence>& occs) {
  std::string s;
  for (const Occurrence& o : occs) s += (s.empty() ? "" : ",") + ("(" + std::to_string(o.j) + ";" + std::to_string(o.k) + ")");
  return s;
}

TileApprox union_of_subsubtiles(const Substitution& s, std::shared_ptr<const SpectralData> sd, const TileSet& tiles,
                                Letter i, const std::vector<Occurrence>& occs, const std::string& name) {
  std::vector<TileApprox> parts;
  parts.reserve(occs.size());
  for (const Occurrence& o : occs) parts.push_back(subsubtile(s, sd, tiles, i, o));
  std::vector<const TileApprox*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  return merge_tiles(TileLabel::named(name), ptrs);
}

void require_nonempty(const TileSet& tiles, const char* what) {
  for (const auto& [a, t] : tiles)
    if (!t.convention) throw InvalidInput(std::string(what) + " tiles carry no spectral data");
}

bool same_vector(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());
}

bool same_vector(const ComplexVector& a, const ComplexVector& b) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());
}

bool derived_from(const SpectralData& child, const SpectralData& expected) {
  if (child.alphabet != expected.alphabet || child.conjugate_vectors.size() != expected.conjugate_vectors.size())
    return false;
  if (!same_vector(child.beta_vector, expected.beta_vector)) return false;
  for (std::size_t c = 0; c < child.conjugate_vectors.size(); ++c)
    if (!same_vector(child.conjugate_vectors[c], expected.conjugate_vectors[c])) return false;
  return true;
}

}  // namespace

double directed_hausdorff(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw InvalidInput("Hausdorff distance of an empty cloud");
  if (a.dim() != b.dim()) throw InvalidInput("Hausdorff distance between clouds of different dimension");
  if (a.dim() > 8) throw InvalidInput("Hausdorff distance supports at most 8 dimensions");
  const GridIndex index(b);
  // A strided first pass raises `worst` early, so most later queries stop at
  // the first point within it.
  double worst = 0;
  const std::size_t stride = std::max<std::size_t>(1, a.size() / 256);
  for (std::size_t p = 0; p < a.size(); p += stride) worst = std::max(worst, index.nearest(a[p], worst));
  for (std::size_t p = 0; p < a.size(); ++p) worst = std::max(worst, index.nearest(a[p], worst));
  return worst;
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff(const TileApprox& a, const TileApprox& b) { return hausdorff(a.points, b.points); }

double tolerance_for(const TileSet& tiles, const VerifyConfig& cfg) {
  return cfg.tolerance_fraction * full_diameter(tiles);
}

IdentityReport compare(std::string identity, const TileApprox& left, const TileApprox& right, double tolerance,
                       const VerifyConfig& cfg) {
  double shift = 0;
  if (cfg.perturbation != 0) {
    PointCloud both = left.points;
    both.append(right.points);
    shift = cfg.perturbation * diameter(both);
  }
  return compare_scaled(std::move(identity), left, right, {tolerance, shift, thinning_cap(cfg)});
}

IdentityReport check_gifs_identity(const Substitution& s, std::shared_ptr<const SpectralData> sd, const TileSet& tiles,
                                   Letter i, const std::vector<Occurrence>& occs, const VerifyConfig& cfg) {
  const Scale sc = scale_for(tiles, cfg);
  const TileApprox rhs = union_of_subsubtiles(s, sd, tiles, i, occs, "U T(" + std::to_string(i) + ",j;k) over " + occ_list(occs));
  return compare_scaled("set equation T(i) = U T(i,j;k)", tiles.at(i), rhs, sc);
}

std::vector<IdentityReport> check_gifs_identity(const Substitution& s, std::shared_ptr<const SpectralData> sd,
                                                const TileSet& tiles, const VerifyConfig& cfg) {
  std::vector<IdentityReport> out;
  const Scale sc = scale_for(tiles, cfg);
  for (const auto& [i, t] : tiles) {
    const auto occs = occurrences(s, i);
    if (occs.empty() || t.points.empty()) continue;
    const TileApprox rhs = union_of_subsubtiles(s, sd, tiles, i, occs, "U T(" + std::to_string(i) + ",j;k) over occ(s," + std::to_string(i) + ")");
    out.push_back(compare_scaled("set equation T(i) = U T(i,j;k)", t, rhs, sc));
  }
  return out;
}

std::vector<IdentityReport> check_split_identities(const Substitution& sigma, const Substitution& tau,
                                                   const TileSet& base_tiles, const TileSet& split_tiles,
                                                   const SplitSpec& spec, const VerifyConfig& cfg) {
  require_nonempty(base_tiles, "base");
  require_nonempty(split_tiles, "split");
  const auto sd_sigma = base_tiles.begin()->second.convention;
  const auto sd_tau = split_tiles.begin()->second.convention;
  if (!derived_from(*sd_tau, split_spectral(*sd_sigma, spec.a)))
    throw InvalidInput("split tiles were not built with the eigenvectors derived from the base tiles");

  const Letter a = spec.a, b = sigma.alphabet() + 1;
  const Scale sc = scale_for(base_tiles, cfg);
  std::vector<IdentityReport> out;

  for (Letter i = 1; i <= sigma.alphabet(); ++i) {
    if (i == a) continue;
    out.push_back(compare_scaled("split: T_tau(i) = T_sigma(i), i not in {a,b}", split_tiles.at(i), base_tiles.at(i), sc));
  }

  std::vector<Occurrence> kept;
  for (const Occurrence& o : occurrences(sigma, a))
    if (std::find(spec.selected.begin(), spec.selected.end(), o) == spec.selected.end()) kept.push_back(o);
  if (!kept.empty() && !split_tiles.at(a).points.empty()) {
    const TileApprox rhs = union_of_subsubtiles(sigma, sd_sigma, base_tiles, a, kept, "U T_sigma(a,j;k) over occ \\ I");
    out.push_back(compare_scaled("split: T_tau(a) = U_{occ(sigma,a) \\ I} T_sigma(a,j;k)", split_tiles.at(a), rhs, sc));
  }
  const TileApprox rhs_b = union_of_subsubtiles(sigma, sd_sigma, base_tiles, a, spec.selected, "U T_sigma(a,j;k) over I");
  out.push_back(compare_scaled("split: T_tau(b) = U_I T_sigma(a,j;k)", split_tiles.at(b), rhs_b, sc));

  // Subsubtile level: T_tau(i,j;k) = T_sigma(i',j;k) for j not in {a,b},
  // T_tau(i,a;k) u T_tau(i,b;k) = T_sigma(i',a;k).
  for (Letter i = 1; i <= tau.alphabet(); ++i) {
    const Letter ip = i == b ? a : i;
    for (const Occurrence& o : occurrences(tau, i)) {
      if (o.j == b) continue;
      const TileApprox rhs = subsubtile(sigma, sd_sigma, base_tiles, ip, o);
      if (o.j != a) {
        out.push_back(compare_scaled("split subsubtile: T_tau(i,j;k) = T_sigma(i',j;k)",
                                     subsubtile(tau, sd_tau, split_tiles, i, o), rhs, sc));
      } else {
        const TileApprox pa = subsubtile(tau, sd_tau, split_tiles, i, o);
        const TileApprox pb = subsubtile(tau, sd_tau, split_tiles, i, {b, o.k});
        const TileApprox lhs = merge_tiles(
            TileLabel::named("T_tau(" + std::to_string(i) + "," + std::to_string(a) + ";" + std::to_string(o.k) +
                             ") u T_tau(" + std::to_string(i) + "," + std::to_string(b) + ";" + std::to_string(o.k) + ")"),
            std::vector<const TileApprox*>{&pa, &pb});
        out.push_back(compare_scaled("split subsubtile: T_tau(i,a;k) u T_tau(i,b;k) = T_sigma(i',a;k)", lhs, rhs, sc));
      }
    }
  }
  return out;
}

std::vector<IdentityReport> check_conjugation_identities(const Substitution& tau, const Substitution& theta,
                                                         const TileSet& tau_tiles, const TileSet& theta_tiles,
                                                         Letter b, Letter c, const VerifyConfig& cfg) {
  require_nonempty(tau_tiles, "tau");
  require_nonempty(theta_tiles, "theta");
  const auto sd_tau = tau_tiles.begin()->second.convention;
  const auto sd_theta = theta_tiles.begin()->second.convention;
  if (theta.alphabet() != tau.alphabet()) throw InvalidInput("theta and tau alphabets differ");
  if (b == c) {
    // Identity automorphism: nothing is re-partitioned.
    if (!derived_from(*sd_theta, *sd_tau))
      throw InvalidInput("theta tiles were not built with the eigenvectors of the tau tiles");
    const Scale sc = scale_for(tau_tiles, cfg);
    std::vector<IdentityReport> out;
    for (const auto& [i, t] : theta_tiles)
      out.push_back(compare_scaled("conjugation: T_theta(i) = T_tau(i)", t, tau_tiles.at(i), sc));
    return out;
  }
  const ElementaryAutomorphism rho = elementary(tau.alphabet(), c, b);
  if (conjugate(tau, rho).images() != theta.images())
    throw InvalidInput("theta is not rho_cb^-1 tau rho_cb");
  if (!derived_from(*sd_theta, conjugate_spectral(*sd_tau, rho)))
    throw InvalidInput("theta tiles were not built with the eigenvectors derived from the tau tiles");

  const Scale sc = scale_for(tau_tiles, cfg);
  std::vector<IdentityReport> out;
  const int n = tau.alphabet();

  for (Letter i = 1; i <= n; ++i) {
    if (i == b || i == c) continue;
    out.push_back(compare_scaled("conjugation: T_theta(i) = T_tau(i), i not in {b,c}", theta_tiles.at(i), tau_tiles.at(i), sc));
  }

  const TileApprox& tb = theta_tiles.at(b);
  const TileApprox& tc = theta_tiles.at(c);
  const TileApprox bc = merge_tiles(TileLabel::named("T_theta(b) u T_theta(c)"), std::vector<const TileApprox*>{&tb, &tc});
  out.push_back(compare_scaled("conjugation: T_theta(b) u T_theta(c) = T_tau(c)", bc, tau_tiles.at(c), sc));

  const Projection pi = projection_of(*sd_tau);
  const Eigen::VectorXd shift = -pi.letter(c);
  TileApprox moved = translated(tau_tiles.at(b), std::span<const double>(shift.data(), shift.size()));
  moved.label = TileLabel::named("T_tau(b) - pi P(c)");
  out.push_back(compare_scaled("conjugation: T_theta(b) = T_tau(b) - pi_tau P(c)", tb, moved, sc));

  std::vector<Occurrence> before_b;
  for (const Occurrence& o : occurrences(tau, b)) before_b.push_back({o.j, o.k - 1});
  out.push_back(compare_scaled("conjugation: T_theta(b) = U_{occ(tau,b)} T_tau(c,j;k-1)", tb,
                               union_of_subsubtiles(tau, sd_tau, tau_tiles, c, before_b, "U T_tau(c,j;k-1)"), sc));

  std::vector<Occurrence> free_c;
  for (const Occurrence& o : occurrences(tau, c)) {
    const Word& img = tau(o.j);
    if (o.k < static_cast<int>(img.size()) && img[o.k] == b) continue;
    free_c.push_back(o);
  }
  if (!free_c.empty() && !tc.points.empty())
    out.push_back(compare_scaled("conjugation: T_theta(c) = U T_tau(c,j;k), (j;k+1) not in occ(tau,b)", tc,
                                 union_of_subsubtiles(tau, sd_tau, tau_tiles, c, free_c, "U T_tau(c,j;k) not before b"), sc));

  std::vector<const TileApprox*> theta_all, tau_rest;
  for (const auto& [i, t] : theta_tiles) theta_all.push_back(&t);
  for (const auto& [i, t] : tau_tiles)
    if (i != b) tau_rest.push_back(&t);
  out.push_back(compare_scaled("conjugation: T_theta = U_{i != b} T_tau(i)", merge_tiles(TileLabel::named("T_theta"), theta_all),
                               merge_tiles(TileLabel::named("U_{i != b} T_tau(i)"), tau_rest), sc));
  return out;
}

bool all_pass(const std::vector<IdentityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const IdentityReport& r) { return r.pass; });
}

double overlap_fraction(const PointCloud& a, const PointCloud& b, double cell) {
  if (!(cell > 0) || !std::isfinite(cell)) throw InvalidInput("overlap cell size must be positive");
  if (a.empty() || b.empty()) return 0.0;
  if (a.dim() != b.dim()) throw InvalidInput("overlap of clouds of different dimension");
  const int dim = a.dim();
  const int bits = 64 / dim;
  const std::int64_t bias = std::int64_t{1} << (bits - 1);
  auto keys = [&](const PointCloud& c) {
    std::unordered_set<std::uint64_t> out;
    for (std::size_t p = 0; p < c.size(); ++p) {
      std::uint64_t k = 0;
      for (int d = 0; d < dim; ++d) {
        const std::int64_t q = static_cast<std::int64_t>(std::floor(c[p][d] / cell)) + bias;
        if (q < 0 || q >= 2 * bias) throw InvalidInput("overlap cell size too small for the cloud extent");
        k = (k << bits) | static_cast<std::uint64_t>(q);
      }
      out.insert(k);
    }
    return out;
  };
  const auto ka = keys(a), kb = keys(b);
  const auto& small = ka.size() <= kb.size() ? ka : kb;
  const auto& large = ka.size() <= kb.size() ? kb : ka;
  std::size_t shared = 0;
  for (std::uint64_t k : small) shared += large.count(k);
  return static_cast<double>(shared) / static_cast<double>(small.size());
}

double overlap_fraction(const TileApprox& a, const TileApprox& b, double cell) {
  return overlap_fraction(a.points, b.points, cell);
}

std::size_t Raster::occupied() const {
  return static_cast<std::size_t>(std::count(occupancy.begin(), occupancy.end(), std::uint8_t{1}));
}

std::pair<int, int> Raster::cell_of(std::span<const double> p) const {
  return {pad + static_cast<int>(std::floor((p[0] - box.lo[0]) / cell)),
          pad + static_cast<int>(std::floor((p[1] - box.lo[1]) / cell))};
}

namespace {

std::vector<std::uint8_t> dilate_square(const std::vector<std::uint8_t>& g, int w, int h) {
  std::vector<std::uint8_t> out(g.size(), 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!g[static_cast<std::size_t>(y) * w + x]) continue;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx >= 0 && ny >= 0 && nx < w && ny < h) out[static_cast<std::size_t>(ny) * w + nx] = 1;
        }
    }
  return out;
}

std::vector<std::uint8_t> erode_square(const std::vector<std::uint8_t>& g, int w, int h) {
  std::vector<std::uint8_t> out(g.size(), 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool keep = true;
      for (int dy = -1; dy <= 1 && keep; ++dy)
        for (int dx = -1; dx <= 1 && keep; ++dx) {
          const int nx = x + dx, ny = y + dy;
          keep = nx >= 0 && ny >= 0 && nx < w && ny < h && g[static_cast<std::size_t>(ny) * w + nx];
        }
      out[static_cast<std::size_t>(y) * w + x] = keep;
    }
  return out;
}

BoundingBox union_box(const std::vector<const TileApprox*>& tiles) {
  BoundingBox box;
  for (const TileApprox* t : tiles)
    if (!t->points.empty()) box.merge(bounding_box(*t));
  if (box.empty()) throw InvalidInput("rasterizing an empty set of points");
  return box;
}

// Labels connected components of cells equal to `value`; returns the count
// and, through `touches_border`, which labels reach the outer frame.
int label_components(const std::vector<std::uint8_t>& g, int w, int h, std::uint8_t value, bool eight,
                     std::vector<bool>* touches_border) {
  std::vector<int> label(g.size(), -1);
  int count = 0;
  std::deque<std::pair<int, int>> queue;
  for (int sy = 0; sy < h; ++sy)
    for (int sx = 0; sx < w; ++sx) {
      const std::size_t s = static_cast<std::size_t>(sy) * w + sx;
      if (g[s] != value || label[s] >= 0) continue;
      bool border = false;
      label[s] = count;
      queue.emplace_back(sx, sy);
      while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        if (x == 0 || y == 0 || x == w - 1 || y == h - 1) border = true;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
            const int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t k = static_cast<std::size_t>(ny) * w + nx;
            if (g[k] == value && label[k] < 0) {
              label[k] = count;
              queue.emplace_back(nx, ny);
            }
          }
      }
      if (touches_border) touches_border->push_back(border);
      ++count;
    }
  return count;
}

}  // namespace

Raster rasterize(const std::vector<const TileApprox*>& tiles, const RasterConfig& cfg) {
  return rasterize(tiles, union_box(tiles), cfg);
}

Raster rasterize(const std::vector<const TileApprox*>& tiles, const BoundingBox& box, const RasterConfig& cfg) {
  if (cfg.resolution < 64) throw InvalidInput("raster resolution must be at least 64");
  if (box.dim() != 2) throw InvalidInput("rasterization needs planar tiles");
  for (const TileApprox* t : tiles)
    if (!t->points.empty() && t->points.dim() != 2) throw InvalidInput("rasterization needs planar tiles");
  Raster r;
  r.box = box;
  r.resolution = cfg.resolution;
  r.dilation = cfg.dilation;
  r.margin = cfg.margin;
  const double extent = std::max(box.extent(0), box.extent(1));
  r.cell = extent > 0 ? extent / cfg.resolution : 1.0;
  const int pad = cfg.margin + cfg.dilation + cfg.closing_passes;
  r.pad = pad;
  const int cw = static_cast<int>(std::ceil(box.extent(0) / r.cell - 1e-9)) + 1;
  const int ch = static_cast<int>(std::ceil(box.extent(1) / r.cell - 1e-9)) + 1;
  r.width = cw + 2 * pad;
  r.height = ch + 2 * pad;
  r.occupancy.assign(static_cast<std::size_t>(r.width) * r.height, 0);

  std::vector<std::pair<int, int>> disc;
  for (int dy = -cfg.dilation; dy <= cfg.dilation; ++dy)
    for (int dx = -cfg.dilation; dx <= cfg.dilation; ++dx)
      if (dx * dx + dy * dy <= cfg.dilation * cfg.dilation) disc.emplace_back(dx, dy);

  const double slack = 1e-9 * std::max(1.0, extent);
  for (const TileApprox* t : tiles)
    for (std::size_t p = 0; p < t->points.size(); ++p) {
      const auto q = t->points[p];
      if (q[0] < box.lo[0] - slack || q[0] > box.hi[0] + slack || q[1] < box.lo[1] - slack || q[1] > box.hi[1] + slack)
        continue;
      const int x = pad + std::clamp(static_cast<int>(std::floor((q[0] - box.lo[0]) / r.cell)), 0, cw - 1);
      const int y = pad + std::clamp(static_cast<int>(std::floor((q[1] - box.lo[1]) / r.cell)), 0, ch - 1);
      for (const auto& [dx, dy] : disc) r.occupancy[static_cast<std::size_t>(y + dy) * r.width + x + dx] = 1;
    }
  for (int c = 0; c < cfg.closing_passes; ++c)
    r.occupancy = erode_square(dilate_square(r.occupancy, r.width, r.height), r.width, r.height);
  return r;
}

Raster eroded(const Raster& r, int cells) {
  Raster out = r;
  for (int c = 0; c < cells; ++c) out.occupancy = erode_square(out.occupancy, out.width, out.height);
  return out;
}

int count_holes(const Raster& r) {
  std::vector<bool> border;
  const int n = label_components(r.occupancy, r.width, r.height, 0, false, &border);
  return n - static_cast<int>(std::count(border.begin(), border.end(), true));
}

int count_components(const Raster& r) { return label_components(r.occupancy, r.width, r.height, 1, true, nullptr); }

bool DisklikeReport::all() const {
  return union_disklike && std::all_of(tiles.begin(), tiles.end(), [](const auto& t) { return t.second; });
}

DisklikeReport disklike_heuristic(const TileSet& tiles, const RasterConfig& cfg) {
  DisklikeReport rep;
  std::vector<const TileApprox*> all;
  for (const auto& [a, t] : tiles) {
    if (t.points.empty()) continue;
    all.push_back(&t);
    const Raster r = rasterize({&t}, cfg);
    rep.tiles.emplace_back(t.label.str(), count_components(r) == 1 && count_holes(r) == 0);
  }
  const Raster u = rasterize(all, cfg);
  rep.union_components = count_components(u);
  rep.union_holes = count_holes(u);
  rep.union_disklike = rep.union_components == 1 && rep.union_holes == 0;
  return rep;
}

}  // namespace rauzy
