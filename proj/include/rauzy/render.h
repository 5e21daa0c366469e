#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rauzy/fractal.h"

namespace rauzy {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct RenderSpec {
  int width = 1024, height = 1024;
  std::map<std::string, Rgb> palette;  ///< keyed by TileLabel::str()
  int point_radius = 0;                ///< pixels around each point
  Rgb background{255, 255, 255};
  double margin = 0.05;                ///< fraction of the union box added per side
  std::size_t svg_cap = 50000;         ///< points above this are subsampled in SVG
};

/// The fixed eight-colour palette, indexed from zero.
Rgb palette_color(int index);

/// Palette for the given tiles: subtile i takes palette_color(i - 1); other
/// labels take colours by position. The label of subtile `black` (the split
/// letter, if any) is drawn black.
std::map<std::string, Rgb> default_palette(const std::vector<const TileApprox*>& tiles,
                                           std::optional<Letter> black = std::nullopt);

/// 8-bit RGB PNG; tiles drawn in order, later over earlier. Throws
/// InvalidInput for non-planar tiles or labels missing from the palette.
std::vector<std::uint8_t> render_png(const std::vector<const TileApprox*>& tiles, const RenderSpec& spec);

/// SVG 1.1 with one <g> per tile label and one circle per (subsampled) point.
std::string render_svg(const std::vector<const TileApprox*>& tiles, const RenderSpec& spec);

/// Three-coordinate CSV per tile (see write_csv), one file per label, named
/// after the label. Returns the written paths. Throws InvalidInput when a
/// tile is not three-dimensional.
std::vector<std::filesystem::path> export_3d(const std::vector<const TileApprox*>& tiles,
                                             const std::filesystem::path& dir);

std::vector<const TileApprox*> tile_pointers(const TileSet& tiles);

}  // namespace rauzy
