#include "rauzy/render.h"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rauzy/error.h"

namespace rauzy {

namespace {

constexpr std::array<Rgb, 8> kPalette{{
    {228, 26, 28},    // red
    {55, 126, 184},   // blue
    {77, 175, 74},    // green
    {255, 127, 0},    // orange
    {152, 78, 163},   // purple
    {166, 86, 40},    // brown
    {247, 129, 191},  // pink
    {153, 153, 153},  // grey
}};

// Uniform world-to-pixel map over the union box with a margin on every side.
struct Viewport {
  double x0 = 0, y0 = 0, scale = 1, ox = 0, oy = 0;
  int width = 0, height = 0;

  Viewport(const std::vector<const TileApprox*>& tiles, const RenderSpec& spec) : width(spec.width), height(spec.height) {
    BoundingBox box;
    for (const TileApprox* t : tiles)
      if (!t->points.empty()) box.merge(bounding_box(*t));
    if (box.empty()) return;
    double w = box.extent(0), h = box.extent(1);
    x0 = box.lo[0];
    y0 = box.lo[1];
    // a flat axis gets a unit extent around its value, so the points stay centred
    const double unit = std::max(w, h) > 0 ? std::max(w, h) : 1.0;
    if (w <= 0) x0 -= unit / 2, w = unit;
    if (h <= 0) y0 -= unit / 2, h = unit;
    const double fw = 1.0 + 2.0 * spec.margin;
    scale = std::min(spec.width / (w * fw), spec.height / (h * fw));
    ox = (spec.width - w * scale) / 2.0;
    oy = (spec.height - h * scale) / 2.0;
  }
  // Image rows grow downwards.
  std::pair<double, double> map(std::span<const double> p) const {
    return {ox + (p[0] - x0) * scale, height - (oy + (p[1] - y0) * scale)};
  }
};

void check_inputs(const std::vector<const TileApprox*>& tiles, const RenderSpec& spec) {
  if (spec.width < 64 || spec.height < 64) throw InvalidInput("image size must be at least 64x64");
  if (!(spec.margin >= 0 && spec.margin < 0.5)) throw InvalidInput("margin must lie in [0, 0.5)");
  for (const TileApprox* t : tiles) {
    if (!t->points.empty() && t->points.dim() != 2) throw InvalidInput("rendering needs planar tiles");
    if (!spec.palette.count(t->label.str())) throw InvalidInput("no palette entry for " + t->label.str());
  }
}

void write_to_vector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string file_stem(const std::string& label) {
  std::string out;
  for (char ch : label) {
    if (std::isalnum(static_cast<unsigned char>(ch))) out += ch;
    else if (!out.empty() && out.back() != '_') out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "tile" : out;
}

}  // namespace

Rgb palette_color(int index) { return kPalette[static_cast<std::size_t>(index) % kPalette.size()]; }

std::map<std::string, Rgb> default_palette(const std::vector<const TileApprox*>& tiles, std::optional<Letter> black) {
  std::map<std::string, Rgb> out;
  int position = 0;
  for (const TileApprox* t : tiles) {
    const std::string key = t->label.str();
    if (t->label.kind == TileLabel::Kind::Subtile) {
      out[key] = black && t->label.i == *black ? Rgb{0, 0, 0} : palette_color(t->label.i - 1);
    } else if (!out.count(key)) {
      out[key] = palette_color(position);
    }
    ++position;
  }
  return out;
}

std::vector<std::uint8_t> render_png(const std::vector<const TileApprox*>& tiles, const RenderSpec& spec) {
  check_inputs(tiles, spec);
  const Viewport vp(tiles, spec);
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(spec.width) * spec.height * 3);
  for (std::size_t p = 0; p < pixels.size(); p += 3) {
    pixels[p] = spec.background.r;
    pixels[p + 1] = spec.background.g;
    pixels[p + 2] = spec.background.b;
  }
  const int rad = std::max(0, spec.point_radius);
  for (const TileApprox* t : tiles) {
    const Rgb c = spec.palette.at(t->label.str());
    for (std::size_t i = 0; i < t->points.size(); ++i) {
      const auto [fx, fy] = vp.map(t->points[i]);
      const int x = std::clamp(static_cast<int>(std::floor(fx)), 0, spec.width - 1);
      const int y = std::clamp(static_cast<int>(std::floor(fy)), 0, spec.height - 1);
      for (int dy = -rad; dy <= rad; ++dy)
        for (int dx = -rad; dx <= rad; ++dx) {
          if (dx * dx + dy * dy > rad * rad) continue;
          const int px = x + dx, py = y + dy;
          if (px < 0 || py < 0 || px >= spec.width || py >= spec.height) continue;
          std::uint8_t* dst = &pixels[(static_cast<std::size_t>(py) * spec.width + px) * 3];
          dst[0] = c.r;
          dst[1] = c.g;
          dst[2] = c.b;
        }
    }
  }

  std::vector<std::uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("libpng: cannot create write struct");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    throw std::runtime_error("libpng: encoding failed");
  }
  png_set_write_fn(png, &out, write_to_vector, nullptr);
  png_set_IHDR(png, info, spec.width, spec.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < spec.height; ++y) png_write_row(png, &pixels[static_cast<std::size_t>(y) * spec.width * 3]);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::string render_svg(const std::vector<const TileApprox*>& tiles, const RenderSpec& spec) {
  check_inputs(tiles, spec);
  const Viewport vp(tiles, spec);
  std::size_t total = 0;
  for (const TileApprox* t : tiles) total += t->points.size();
  const std::size_t stride = spec.svg_cap == 0 || total <= spec.svg_cap ? 1 : (total + spec.svg_cap - 1) / spec.svg_cap;
  const double r = std::max(0.5, static_cast<double>(spec.point_radius));

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"" << hex(spec.background) << "\"/>\n";
  char buf[96];
  for (const TileApprox* t : tiles) {
    out << "<g id=\"" << xml_escape(t->label.str()) << "\" fill=\"" << hex(spec.palette.at(t->label.str())) << "\">\n";
    for (std::size_t i = 0; i < t->points.size(); i += stride) {
      const auto [x, y] = vp.map(t->points[i]);
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.2f\"/>\n", x, y, r);
      out << buf;
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<std::filesystem::path> export_3d(const std::vector<const TileApprox*>& tiles,
                                             const std::filesystem::path& dir) {
  for (const TileApprox* t : tiles)
    if (t->points.dim() != 3) throw InvalidInput("3D export needs three-dimensional tiles, got " + t->label.str());
  std::vector<std::filesystem::path> written;
  if (tiles.empty()) return written;
  std::filesystem::create_directories(dir);
  for (const TileApprox* t : tiles) {
    const auto path = dir / (file_stem(t->label.str()) + ".csv");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    write_csv(f, *t);
    written.push_back(path);
  }
  return written;
}

std::vector<const TileApprox*> tile_pointers(const TileSet& tiles) {
  std::vector<const TileApprox*> out;
  for (const auto& [a, t] : tiles) out.push_back(&t);
  return out;
}

}  // namespace rauzy
