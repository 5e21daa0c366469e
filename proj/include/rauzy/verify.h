#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rauzy/fractal.h"
#include "rauzy/transform.h"

namespace rauzy {

/// max over a in A of the distance from a to B.
double directed_hausdorff(const PointCloud& a, const PointCloud& b);
/// Symmetric Hausdorff distance, via a uniform-grid nearest-neighbour index.
double hausdorff(const PointCloud& a, const PointCloud& b);
double hausdorff(const TileApprox& a, const TileApprox& b);

struct IdentityReport {
  std::string identity;  ///< which set identity was checked
  std::string left, right;
  double distance = 0;
  double tolerance = 0;
  bool pass = false;
};

struct VerifyConfig {
  double tolerance_fraction = 0.01;             ///< eps_H relative to the full-fractal diameter
  /// Points per tile. Identity checks thin any cloud above twice this to one
  /// point per grid cell of a tenth of eps_H, which moves the Hausdorff
  /// distance by at most 0.15 eps_H in the plane.
  std::size_t point_budget = kVerificationBudget;
  /// Shift applied to every right-hand side, as a fraction of the diameter.
  /// Nonzero only for negative controls.
  double perturbation = 0.0;
};

/// eps_H for a tile set: tolerance_fraction times the diameter of the union.
double tolerance_for(const TileSet& tiles, const VerifyConfig& cfg);

IdentityReport compare(std::string identity, const TileApprox& left, const TileApprox& right, double tolerance,
                       const VerifyConfig& cfg);

/// T(i) against the union of its subsubtiles, for every letter i.
std::vector<IdentityReport> check_gifs_identity(const Substitution& s, std::shared_ptr<const SpectralData> sd,
                                                const TileSet& tiles, const VerifyConfig& cfg = {});

/// Same, with an explicit (possibly wrong) occurrence set for letter i.
IdentityReport check_gifs_identity(const Substitution& s, std::shared_ptr<const SpectralData> sd, const TileSet& tiles,
                                   Letter i, const std::vector<Occurrence>& occs, const VerifyConfig& cfg = {});

/// Subtiles of the split substitution against subsubtiles of the base one,
/// plus the subsubtile-level identities. `split_tiles` must carry the
/// spectral data derived from `base_tiles` by split_spectral.
std::vector<IdentityReport> check_split_identities(const Substitution& sigma, const Substitution& tau,
                                                   const TileSet& base_tiles, const TileSet& split_tiles,
                                                   const SplitSpec& spec, const VerifyConfig& cfg = {});

/// Subtiles of theta = rho_cb^-1 tau rho_cb against pieces of the tau tiles.
/// `theta_tiles` must carry the spectral data derived by conjugate_spectral.
std::vector<IdentityReport> check_conjugation_identities(const Substitution& tau, const Substitution& theta,
                                                         const TileSet& tau_tiles, const TileSet& theta_tiles,
                                                         Letter b, Letter c, const VerifyConfig& cfg = {});

bool all_pass(const std::vector<IdentityReport>& reports);

/// Shared occupied cells over the smaller occupied count, at the given cell
/// size. Throws InvalidInput for a nonpositive cell.
double overlap_fraction(const PointCloud& a, const PointCloud& b, double cell);
double overlap_fraction(const TileApprox& a, const TileApprox& b, double cell);

struct RasterConfig {
  int resolution = 1024;
  int dilation = 2;
  int margin = 2;
  int closing_passes = 1;
};

/// Planar occupancy grid. Cell (x, y) is at index y * width + x.
struct Raster {
  BoundingBox box;     ///< world box mapped onto the interior of the grid
  int resolution = 0;  ///< cells along the longer axis, margin excluded
  int width = 0, height = 0;
  int dilation = 0;
  int margin = 0;
  int pad = 0;         ///< empty cells around the box on every side
  double cell = 0;     ///< world size of one cell
  std::vector<std::uint8_t> occupancy;

  bool at(int x, int y) const { return occupancy[static_cast<std::size_t>(y) * width + x] != 0; }
  std::size_t occupied() const;
  /// Grid cell of a world point (may fall outside the grid).
  std::pair<int, int> cell_of(std::span<const double> p) const;
};

/// Rasterizes the union of the tiles on their own bounding box.
Raster rasterize(const std::vector<const TileApprox*>& tiles, const RasterConfig& cfg = {});
/// Rasterizes onto a given world box; points outside it are dropped.
Raster rasterize(const std::vector<const TileApprox*>& tiles, const BoundingBox& box, const RasterConfig& cfg = {});

/// Complement components (4-connected) that do not reach the grid border.
int count_holes(const Raster& r);
/// Foreground components, 8-connected.
int count_components(const Raster& r);

/// Erodes the occupancy by `cells` (square structuring element).
Raster eroded(const Raster& r, int cells);

struct DisklikeReport {
  std::vector<std::pair<std::string, bool>> tiles;
  bool union_disklike = false;
  int union_components = 0;
  int union_holes = 0;
  bool all() const;
};

/// Heuristic only: one foreground component and no holes at the given
/// raster settings, per tile and for the union. Planar tiles only.
DisklikeReport disklike_heuristic(const TileSet& tiles, const RasterConfig& cfg = {});

}  // namespace rauzy
