#include "rauzy/fractal.h"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <unordered_set>

#include "rauzy/error.h"

namespace rauzy {

PointCloud::PointCloud(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1 || coords_.size() % dim_ != 0) throw InvalidInput("point cloud coordinates do not match dimension");
}

void PointCloud::push_back(std::span<const double> p) {
  if (static_cast<int>(p.size()) != dim_) throw InvalidInput("point has wrong dimension");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

void PointCloud::append(const PointCloud& other) {
  if (other.empty()) return;
  if (dim_ == 0) dim_ = other.dim_;
  if (other.dim_ != dim_) throw InvalidInput("appending clouds of different dimension");
  coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
}

double BoundingBox::diagonal() const {
  double acc = 0.0;
  for (int a = 0; a < dim(); ++a) acc += extent(a) * extent(a);
  return std::sqrt(acc);
}

void BoundingBox::include(std::span<const double> p) {
  if (lo.empty()) {
    lo.assign(p.begin(), p.end());
    hi.assign(p.begin(), p.end());
    return;
  }
  for (std::size_t a = 0; a < p.size(); ++a) {
    lo[a] = std::min(lo[a], p[a]);
    hi[a] = std::max(hi[a], p[a]);
  }
}

void BoundingBox::merge(const BoundingBox& other) {
  if (other.empty()) return;
  include(other.lo);
  include(other.hi);
}

BoundingBox bounding_box(const PointCloud& cloud) {
  if (cloud.empty()) throw InvalidInput("bounding box of an empty cloud");
  BoundingBox box;
  for (std::size_t i = 0; i < cloud.size(); ++i) box.include(cloud[i]);
  return box;
}

BoundingBox bounding_box(const TileApprox& t) { return bounding_box(t.points); }

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

std::vector<std::vector<double>> sample_directions(int dim) {
  std::vector<std::vector<double>> dirs;
  if (dim == 1) return {{1.0}};
  if (dim == 2) {
    for (int t = 0; t < 512; ++t) {
      const double a = std::numbers::pi * t / 512.0;
      dirs.push_back({std::cos(a), std::sin(a)});
    }
    return dirs;
  }
  // Fibonacci lattice on the sphere; remaining axes zero for dim > 3.
  const int count = 2048;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int t = 0; t < count; ++t) {
    const double z = 1.0 - (t + 0.5) / count;
    const double r = std::sqrt(1.0 - z * z);
    std::vector<double> d(dim, 0.0);
    d[0] = r * std::cos(golden * t);
    d[1] = r * std::sin(golden * t);
    d[2] = z;
    dirs.push_back(d);
  }
  return dirs;
}

// Andrew's monotone chain; returns indices of the hull vertices.
std::vector<std::size_t> convex_hull_2d(const PointCloud& cloud) {
  std::vector<std::size_t> idx(cloud.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return cloud[a][0] < cloud[b][0] || (cloud[a][0] == cloud[b][0] && cloud[a][1] < cloud[b][1]);
  });
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (cloud[a][0] - cloud[o][0]) * (cloud[b][1] - cloud[o][1]) -
           (cloud[a][1] - cloud[o][1]) * (cloud[b][0] - cloud[o][0]);
  };
  std::vector<std::size_t> hull(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i : idx) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], i) <= 0) --k;
    hull[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
    const std::size_t i = idx[t];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], i) <= 0) --k;
    hull[k++] = i;
  }
  hull.resize(k > 1 ? k - 1 : k);
  return hull;
}

// Points whose coarse grid cell has an empty (or missing) neighbour. Points
// in fully surrounded cells are never strictly extreme in any direction.
std::vector<std::size_t> boundary_cell_points(const PointCloud& cloud) {
  const int dim = cloud.dim();
  const BoundingBox box = bounding_box(cloud);
  const int per_axis = dim <= 3 ? 32 : 8;
  std::vector<std::size_t> stride(dim);
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) stride[a] = total, total *= per_axis;
  auto cell_index = [&](std::span<const double> p, int a) {
    const double e = box.extent(a);
    return e > 0 ? std::min(per_axis - 1, static_cast<int>((p[a] - box.lo[a]) / e * per_axis)) : 0;
  };
  std::vector<std::uint8_t> occupied(total, 0);
  std::vector<std::size_t> key(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    std::size_t k = 0;
    for (int a = 0; a < dim; ++a) k += stride[a] * cell_index(cloud[i], a);
    key[i] = k;
    occupied[k] = 1;
  }
  int neighbours = 1;
  for (int a = 0; a < dim; ++a) neighbours *= 3;
  std::vector<std::uint8_t> boundary(total, 0);
  for (std::size_t k = 0; k < total; ++k) {
    if (!occupied[k]) continue;
    for (int code = 0; code < neighbours && !boundary[k]; ++code) {
      int t = code;
      std::size_t m = 0;
      bool outside = false;
      for (int a = 0; a < dim; ++a) {
        const int v = static_cast<int>((k / stride[a]) % per_axis) + t % 3 - 1;
        t /= 3;
        if (v < 0 || v >= per_axis) outside = true;
        else m += stride[a] * v;
      }
      if (outside || !occupied[m]) boundary[k] = 1;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (boundary[key[i]]) out.push_back(i);
  return out;
}

}  // namespace

double diameter(const PointCloud& cloud) {
  if (cloud.empty()) throw InvalidInput("diameter of an empty cloud");
  std::vector<std::size_t> candidates;
  if (cloud.size() <= 2000) {
    for (std::size_t i = 0; i < cloud.size(); ++i) candidates.push_back(i);
  } else if (cloud.dim() == 2) {
    candidates = convex_hull_2d(cloud);
  } else {
    const std::vector<std::size_t> shell = boundary_cell_points(cloud);
    for (const auto& d : sample_directions(cloud.dim())) {
      std::size_t lo = shell.front(), hi = shell.front();
      double vlo = INFINITY, vhi = -INFINITY;
      for (std::size_t i : shell) {
        double v = 0.0;
        const auto p = cloud[i];
        for (int a = 0; a < cloud.dim(); ++a) v += p[a] * d[a];
        if (v < vlo) vlo = v, lo = i;
        if (v > vhi) vhi = v, hi = i;
      }
      candidates.push_back(lo);
      candidates.push_back(hi);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }
  double best = 0.0;
  for (std::size_t x = 0; x < candidates.size(); ++x)
    for (std::size_t y = x + 1; y < candidates.size(); ++y)
      best = std::max(best, distance(cloud[candidates[x]], cloud[candidates[y]]));
  return best;
}

std::string TileLabel::str() const {
  switch (kind) {
    case Kind::Whole: return "T";
    case Kind::Subtile: return "T(" + std::to_string(i) + ")";
    case Kind::Subsubtile:
      return "T(" + std::to_string(i) + "," + std::to_string(occ.j) + ";" + std::to_string(occ.k) + ")";
    case Kind::Union: return text;
  }
  return text;
}

std::string to_string(GenerationMethod m) {
  switch (m) {
    case GenerationMethod::Prefix: return "prefix";
    case GenerationMethod::Gifs: return "gifs";
    case GenerationMethod::Translated: return "translated";
    case GenerationMethod::Union: return "union";
  }
  return "unknown";
}

namespace {

void check_spectral_match(const Substitution& s, const SpectralData& sd) {
  if (sd.alphabet != s.alphabet()) throw InvalidInput("spectral data alphabet does not match the substitution");
  const IntMatrix m = incidence_matrix(s);
  const double scale = std::max(1.0, static_cast<double>(m.cwiseAbs().maxCoeff())) *
                       std::max(1.0, sd.beta_vector.cwiseAbs().maxCoeff());
  if (eigen_residual(sd, m) > 1e-9 * scale)
    throw InvalidInput("spectral data is not an eigen-system of the substitution's incidence matrix");
}

TileSet assign_prefix_points(const Substitution& s, std::shared_ptr<const SpectralData> sd, const Word& stream,
                             std::size_t budget) {
  const Projection pi = projection_of(*sd);
  const int dim = pi.dimension();
  TileSet tiles;
  for (Letter a = 1; a <= s.alphabet(); ++a) {
    TileApprox t;
    t.label = TileLabel::subtile(a);
    t.points = PointCloud(dim);
    t.method = GenerationMethod::Prefix;
    t.convention = sd;
    t.point_budget = budget;
    tiles.emplace(a, std::move(t));
  }
  std::vector<double> acc(dim, 0.0);
  for (Letter a : stream) {
    tiles.at(a).points.push_back(acc);
    const auto col = pi.matrix().col(a - 1);
    for (int c = 0; c < dim; ++c) acc[c] += col(c);
  }
  return tiles;
}

}  // namespace

TileSet tiles_by_prefixes(const Substitution& s, std::shared_ptr<const SpectralData> sd, std::size_t m) {
  check_spectral_match(s, *sd);
  const Word stream = prefix_stream(s, periodic_seed(s), m);
  return assign_prefix_points(s, sd, stream, m);
}

TileSet tiles_by_prefixes_target(const Substitution& s, std::shared_ptr<const SpectralData> sd, std::size_t per_tile) {
  check_spectral_match(s, *sd);
  const PeriodicSeed seed = periodic_seed(s);
  std::size_t m = per_tile * static_cast<std::size_t>(s.alphabet());
  for (;;) {
    const Word stream = prefix_stream(s, seed, m);
    std::vector<std::size_t> counts(s.alphabet(), 0);
    for (Letter a : stream) ++counts[a - 1];
    const auto low = *std::min_element(counts.begin(), counts.end());
    if (low >= per_tile) return assign_prefix_points(s, sd, stream, per_tile);
    if (low == 0 && m > 64 * per_tile * s.alphabet())
      throw PreconditionFailed("some letter never occurs in the periodic point");
    m = m * 3 / 2 + 1;
  }
}

Eigen::VectorXd prefix_translation(const Substitution& s, const Projection& pi, Occurrence occ) {
  const Word& w = s(occ.j);
  if (occ.k < 1 || occ.k > static_cast<int>(w.size())) throw InvalidInput("occurrence position out of range");
  AbelianVector counts(s.alphabet(), 0);
  for (int t = 0; t < occ.k - 1; ++t) ++counts[w[t] - 1];
  return pi(counts);
}

namespace {

struct Branch {
  Letter source;
  Eigen::VectorXd shift;
};

std::map<Letter, std::vector<Branch>> branches_of(const Substitution& s, const Projection& pi) {
  std::map<Letter, std::vector<Branch>> out;
  for (Letter i = 1; i <= s.alphabet(); ++i)
    for (const Occurrence& o : occurrences(s, i)) out[i].push_back({o.j, prefix_translation(s, pi, o)});
  return out;
}

// out += H p + t for every p in src.
void map_into(const PointCloud& src, const Eigen::MatrixXd& h, const Eigen::VectorXd& t, std::vector<double>& out) {
  const int dim = src.dim();
  const auto& c = src.coords();
  const std::size_t n = src.size();
  const std::size_t base = out.size();
  out.resize(base + n * dim);
  double* dst = out.data() + base;
  for (std::size_t p = 0; p < n; ++p) {
    const double* x = c.data() + p * dim;
    for (int r = 0; r < dim; ++r) {
      double acc = t(r);
      for (int q = 0; q < dim; ++q) acc += h(r, q) * x[q];
      dst[p * dim + r] = acc;
    }
  }
}

class CellSet {
 public:
  CellSet(int dim, double cell) : dim_(dim), inv_(1.0 / cell) {}
  bool insert(const double* p) {
    std::uint64_t key = 0;
    for (int a = 0; a < dim_; ++a) {
      const auto c = static_cast<std::int64_t>(std::floor(p[a] * inv_)) + (1 << 20);
      key = (key << 21) | (static_cast<std::uint64_t>(c) & 0x1FFFFF);
    }
    return cells_.insert(key).second;
  }
  void reserve(std::size_t n) { cells_.reserve(n); }

 private:
  int dim_;
  double inv_;
  std::unordered_set<std::uint64_t> cells_;
};

}  // namespace

std::map<Letter, PointCloud> set_equation_step(const Substitution& s, const SpectralData& sd,
                                               const std::map<Letter, PointCloud>& clouds) {
  const Projection pi = projection_of(sd);
  const Contraction h = contraction_of(sd);
  std::map<Letter, PointCloud> next;
  for (const auto& [i, list] : branches_of(s, pi)) {
    std::vector<double> coords;
    for (const Branch& b : list) map_into(clouds.at(b.source), h.matrix(), b.shift, coords);
    next.emplace(i, PointCloud(pi.dimension(), std::move(coords)));
  }
  for (Letter i = 1; i <= s.alphabet(); ++i) next.try_emplace(i, PointCloud(pi.dimension()));
  return next;
}

TileSet tiles_by_gifs(const Substitution& s, std::shared_ptr<const SpectralData> sd, const GifsOptions& opts) {
  check_spectral_match(s, *sd);
  const Projection pi = projection_of(*sd);
  const Contraction h = contraction_of(*sd);
  const int dim = pi.dimension();
  const int n = s.alphabet();

  // Exact seeds and a diameter estimate from a short prefix stream.
  const Word stream = prefix_stream(s, periodic_seed(s), std::max<std::size_t>(4096, 64 * n));
  std::map<Letter, PointCloud> clouds;
  PointCloud sample(dim);
  {
    std::vector<double> acc(dim, 0.0);
    for (Letter a : stream) {
      sample.push_back(acc);
      auto& seed = clouds.try_emplace(a, PointCloud(dim)).first->second;
      if (seed.empty()) seed.push_back(acc);
      const auto col = pi.matrix().col(a - 1);
      for (int c = 0; c < dim; ++c) acc[c] += col(c);
    }
  }
  for (Letter a = 1; a <= n; ++a) clouds.try_emplace(a, PointCloud(dim));
  const double cell = diameter(sample) * opts.dedup_fraction;
  if (!(cell > 0.0)) throw PreconditionFailed("degenerate fractal (zero diameter)");

  const auto branches = branches_of(s, pi);
  std::map<Letter, CellSet> seen;
  for (Letter a = 1; a <= n; ++a) {
    seen.emplace(a, CellSet(dim, cell));
    if (!clouds.at(a).empty()) seen.at(a).insert(clouds.at(a).coords().data());
  }

  auto reached = [&] {
    for (const auto& [a, c] : clouds)
      if (!c.empty() && c.size() < opts.target) return false;
    return true;
  };

  // Breadth-first over the IFS tree: only points added in the previous round
  // have unexplored images. A point landing in an occupied dedup cell is
  // dropped together with its subtree.
  std::map<Letter, PointCloud> frontier = clouds;
  std::vector<double> candidate;
  for (int it = 0; it < opts.max_iterations && !reached(); ++it) {
    std::map<Letter, PointCloud> added;
    bool any = false;
    for (Letter i = 1; i <= n; ++i) {
      std::vector<double> fresh;
      if (auto found = branches.find(i); found != branches.end()) {
        CellSet& cells = seen.at(i);
        for (const Branch& b : found->second) {
          const PointCloud& src = frontier.at(b.source);
          if (src.empty()) continue;
          candidate.clear();
          map_into(src, h.matrix(), b.shift, candidate);
          for (std::size_t p = 0; p < candidate.size(); p += dim)
            if (cells.insert(candidate.data() + p))
              fresh.insert(fresh.end(), candidate.begin() + p, candidate.begin() + p + dim);
        }
      }
      any = any || !fresh.empty();
      added.emplace(i, PointCloud(dim, std::move(fresh)));
    }
    for (Letter i = 1; i <= n; ++i) clouds.at(i).append(added.at(i));
    frontier = std::move(added);
    if (!any) break;
  }

  TileSet tiles;
  for (auto& [a, c] : clouds) {
    TileApprox t;
    t.label = TileLabel::subtile(a);
    t.points = std::move(c);
    t.method = GenerationMethod::Gifs;
    t.convention = sd;
    t.point_budget = opts.target;
    tiles.emplace(a, std::move(t));
  }
  return tiles;
}

TileApprox subsubtile(const Substitution& s, std::shared_ptr<const SpectralData> sd, const TileSet& base, Letter i,
                      Occurrence occ) {
  if (occ.j < 1 || occ.j > s.alphabet() || occ.k < 1 || occ.k > static_cast<int>(s(occ.j).size()) ||
      s(occ.j)[occ.k - 1] != i)
    throw InvalidInput("(" + std::to_string(occ.j) + ";" + std::to_string(occ.k) + ") is not an occurrence of " +
                       std::to_string(i));
  const Projection pi = projection_of(*sd);
  const Contraction h = contraction_of(*sd);
  const TileApprox& src = base.at(occ.j);
  std::vector<double> coords;
  map_into(src.points, h.matrix(), prefix_translation(s, pi, occ), coords);
  TileApprox t;
  t.label = TileLabel::subsubtile(i, occ);
  t.points = PointCloud(pi.dimension(), std::move(coords));
  t.method = GenerationMethod::Translated;
  t.convention = sd;
  t.point_budget = src.point_budget;
  return t;
}

TileApprox merge_tiles(TileLabel label, const std::vector<const TileApprox*>& parts) {
  TileApprox out;
  out.label = std::move(label);
  out.method = GenerationMethod::Union;
  for (const TileApprox* p : parts) {
    if (!out.convention) out.convention = p->convention;
    out.points.append(p->points);
    out.point_budget += p->point_budget;
  }
  return out;
}

TileApprox merge_tiles(TileLabel label, const TileSet& tiles) {
  std::vector<const TileApprox*> parts;
  for (const auto& [a, t] : tiles) parts.push_back(&t);
  return merge_tiles(std::move(label), parts);
}

TileApprox translated(const TileApprox& t, std::span<const double> offset) {
  TileApprox out = t;
  const int dim = t.points.dim();
  std::vector<double> coords = t.points.coords();
  for (std::size_t p = 0; p < coords.size(); ++p) coords[p] += offset[p % dim];
  out.points = PointCloud(dim, std::move(coords));
  out.method = GenerationMethod::Translated;
  return out;
}

void write_csv(std::ostream& out, const TileApprox& t) {
  out << "# tile=" << t.label.str()
      << " convention=" << (t.convention ? to_string(t.convention->convention) : std::string("none"))
      << " method=" << to_string(t.method) << " points=" << t.points.size() << "\n";
  char buf[64];
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    const auto p = t.points[i];
    for (std::size_t a = 0; a < p.size(); ++a) {
      std::snprintf(buf, sizeof buf, "%.9g", p[a]);
      if (a) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace rauzy
