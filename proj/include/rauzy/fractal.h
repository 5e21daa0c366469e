#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rauzy/spectral.h"
#include "rauzy/substitution.h"

namespace rauzy {

/// Flat contiguous storage of points in R^dim.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(int dim) : dim_(dim) {}
  PointCloud(int dim, std::vector<double> coords);

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const { return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)}; }
  void push_back(std::span<const double> p);
  void append(const PointCloud& other);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& coords() const { return coords_; }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

struct BoundingBox {
  std::vector<double> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool empty() const { return lo.empty(); }
  /// Length of the box diagonal.
  double diagonal() const;
  double extent(int axis) const { return hi[axis] - lo[axis]; }
  void include(std::span<const double> p);
  void merge(const BoundingBox& other);
};

/// Tight axis-aligned bounds; throws InvalidInput on an empty cloud.
BoundingBox bounding_box(const PointCloud& cloud);

/// Largest pairwise distance. Exact in the plane (convex hull) and up to 2000
/// points; otherwise exact among the extreme points of many sampled directions.
double diameter(const PointCloud& cloud);

struct TileLabel {
  enum class Kind { Whole, Subtile, Subsubtile, Union };
  Kind kind = Kind::Subtile;
  Letter i = 0;
  Occurrence occ{};     ///< for subsubtiles (i, j; k)
  std::string text;     ///< free-form name for unions

  static TileLabel whole() { return {Kind::Whole, 0, {}, {}}; }
  static TileLabel subtile(Letter i) { return {Kind::Subtile, i, {}, {}}; }
  static TileLabel subsubtile(Letter i, Occurrence o) { return {Kind::Subsubtile, i, o, {}}; }
  static TileLabel named(std::string t) { return {Kind::Union, 0, {}, std::move(t)}; }

  std::string str() const;
};

enum class GenerationMethod { Prefix, Gifs, Translated, Union };
std::string to_string(GenerationMethod m);

/// Finite approximation of a subtile, subsubtile or union of those.
struct TileApprox {
  TileLabel label;
  PointCloud points;
  GenerationMethod method = GenerationMethod::Prefix;
  /// Spectral data (hence eigenvector convention) the points were built with.
  std::shared_ptr<const SpectralData> convention;
  std::size_t point_budget = 0;
};

using TileSet = std::map<Letter, TileApprox>;

constexpr std::size_t kVerificationBudget = 200000;
constexpr std::size_t kPreviewBudget = 20000;

/// Subtiles from the projected Abelianized prefixes of a periodic point: the
/// point pi P(u_1..u_t) is assigned to the tile of u_{t+1}, t = 0..m-1.
/// Rejects spectral data that is not an eigen-system of s.
TileSet tiles_by_prefixes(const Substitution& s, std::shared_ptr<const SpectralData> sd, std::size_t m);

/// Grows the prefix stream until each tile holds at least `per_tile` points.
TileSet tiles_by_prefixes_target(const Substitution& s, std::shared_ptr<const SpectralData> sd, std::size_t per_tile);

struct GifsOptions {
  std::size_t target = kVerificationBudget;  ///< stop once every nonempty tile holds this many points
  double dedup_fraction = 1.0 / 2048.0;      ///< dedup cell size relative to the fractal diameter
  int max_iterations = 400;
};

/// One application of the set equation
///   T(i) <- U_{(j;k) in occ(s,i)} h T(j) + pi P(s(j)_1 .. s(j)_{k-1})
/// to the given clouds, without deduplication.
std::map<Letter, PointCloud> set_equation_step(const Substitution& s, const SpectralData& sd,
                                               const std::map<Letter, PointCloud>& clouds);

/// Subtiles as the attractor of the set equation, iterated with grid
/// deduplication. Each tile starts from one exact point of it (the first
/// prefix-stream point assigned to it), so every generated point lies on the
/// attractor. Stops at the target, or when the clouds stop growing.
TileSet tiles_by_gifs(const Substitution& s, std::shared_ptr<const SpectralData> sd, const GifsOptions& opts = {});

/// pi P(s(j)_1 .. s(j)_{k-1}).
Eigen::VectorXd prefix_translation(const Substitution& s, const Projection& pi, Occurrence occ);

/// h(T(j)) + pi P(s(j)_1 .. s(j)_{k-1}) for (j;k) in occ(s, i).
TileApprox subsubtile(const Substitution& s, std::shared_ptr<const SpectralData> sd, const TileSet& base, Letter i,
                      Occurrence occ);

BoundingBox bounding_box(const TileApprox& t);

/// Union of the clouds of several tiles under one label.
TileApprox merge_tiles(TileLabel label, const std::vector<const TileApprox*>& parts);
TileApprox merge_tiles(TileLabel label, const TileSet& tiles);

/// Copy of t shifted by offset.
TileApprox translated(const TileApprox& t, std::span<const double> offset);

/// CSV export: one '#' header row naming the tile label and convention, then
/// one point per row, coordinates to 9 significant digits.
void write_csv(std::ostream& out, const TileApprox& t);

}  // namespace rauzy
