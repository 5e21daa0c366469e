// rauzy: command-line front end for substitution analysis, symbol
// splitting, conjugation, hole drilling, tile export and verification.
//
// Exit codes: 0 success / all checks pass, 1 a verification failed,
// 2 bad input or failed precondition.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rauzy/drill.h"
#include "rauzy/error.h"
#include "rauzy/render.h"
#include "rauzy/report.h"
#include "rauzy/text.h"
#include "rauzy/verify.h"

using namespace rauzy;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

std::shared_ptr<const SpectralData> solved(const Substitution& s) {
  return std::make_shared<const SpectralData>(base_eigenvectors(s));
}

TileSet make_tiles(const Substitution& s, std::shared_ptr<const SpectralData> sd, const std::string& method,
                   std::size_t points) {
  if (method == "prefix") return tiles_by_prefixes_target(s, sd, points);
  if (method == "gifs") {
    GifsOptions opts;
    opts.target = points;
    return tiles_by_gifs(s, sd, opts);
  }
  throw InvalidInput("unknown method '" + method + "' (prefix or gifs)");
}

std::pair<int, int> parse_size(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw InvalidInput("size must look like WxH");
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw InvalidInput("size must look like WxH");
  }
}

json reports_json(const std::vector<IdentityReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

struct VerifyArgs {
  std::string pipeline = "gifs";
  Letter a = 0, b = 0, c = 0;
  std::string I;
  int K = 1;
  std::optional<int> force_N;
  std::string force_I;
  std::size_t points = kVerificationBudget;
  double tolerance = 0.01;
  double perturbation = 0.0;
  std::string out;
};

int run_verify(const Substitution& s, const VerifyArgs& args) {
  VerifyConfig cfg;
  cfg.tolerance_fraction = args.tolerance;
  cfg.point_budget = args.points;
  cfg.perturbation = args.perturbation;
  json rep = report_envelope("verify");
  rep["pipeline"] = args.pipeline;
  rep["config"] = {{"tolerance_fraction", cfg.tolerance_fraction},
                   {"points_per_tile", cfg.point_budget},
                   {"perturbation", cfg.perturbation},
                   {"deterministic", true}};
  rep["substitution"] = to_json(s);
  std::vector<IdentityReport> all;
  bool ok = true;

  if (args.pipeline == "gifs") {
    const auto sd = solved(s);
    const TileSet gifs = make_tiles(s, sd, "gifs", args.points);
    const TileSet prefix = make_tiles(s, sd, "prefix", args.points);
    all = check_gifs_identity(s, sd, gifs, cfg);
    const double tol = tolerance_for(gifs, cfg);
    for (const auto& [i, t] : gifs) all.push_back(compare("prefix method = GIFS method", prefix.at(i), t, tol, cfg));
    const double cell = diameter(merge_tiles(TileLabel::whole(), gifs).points) / 512.0;
    json overlaps = json::array();
    for (auto x = gifs.begin(); x != gifs.end(); ++x)
      for (auto y = std::next(x); y != gifs.end(); ++y)
        overlaps.push_back({{"pair", {x->first, y->first}}, {"fraction", overlap_fraction(x->second, y->second, cell)}});
    rep["overlap"] = {{"cell", cell}, {"pairs", overlaps}};
  } else if (args.pipeline == "split") {
    if (!args.a || args.I.empty()) throw InvalidInput("split pipeline needs -a and -I");
    const SplitSpec spec{args.a, parse_occurrences(args.I)};
    const Substitution tau = split(s, spec);
    const auto v = solved(s);
    const auto w = std::make_shared<const SpectralData>(split_spectral(*v, args.a));
    const TileSet base = make_tiles(s, v, "prefix", args.points);
    const TileSet tiles = make_tiles(tau, w, "prefix", args.points);
    rep["tau"] = to_json(tau);
    all = check_split_identities(s, tau, base, tiles, spec, cfg);
  } else if (args.pipeline == "conjugate") {
    if (!args.b || !args.c) throw InvalidInput("conjugate pipeline needs -c and -b");
    const Letter pred = preceding_letter(s, args.b);
    if (pred != args.c)
      throw PreconditionFailed("every " + std::to_string(args.b) + " is preceded by " + std::to_string(pred) + ", not " +
                               std::to_string(args.c));
    const ElementaryAutomorphism rho = elementary(s.alphabet(), args.c, args.b);
    const Substitution theta = conjugate(s, rho);
    if (!is_primitive(incidence_matrix(theta)))
      throw PreconditionFailed("conjugate is not primitive: " + std::to_string(args.c) + " only occurs in front of " +
                               std::to_string(args.b));
    const auto w = solved(s);
    const auto z = std::make_shared<const SpectralData>(conjugate_spectral(*w, rho));
    const TileSet tau_tiles = make_tiles(s, w, "prefix", args.points);
    const TileSet theta_tiles = make_tiles(theta, z, "prefix", args.points);
    rep["theta"] = to_json(theta);
    all = check_conjugation_identities(s, theta, tau_tiles, theta_tiles, args.b, args.c, cfg);
  } else if (args.pipeline == "drill") {
    DrillParams params;
    params.force_N = args.force_N;
    if (!args.force_I.empty()) params.force_I = parse_occurrences(args.force_I);
    const DrillRecord rec = drill(s, args.K, params);
    const TileSet base = make_tiles(rec.power, rec.power_spectral, "prefix", args.points);
    const TileSet tau_tiles = make_tiles(rec.tau, rec.tau_spectral, "prefix", args.points);
    const TileSet theta_tiles = make_tiles(rec.theta, rec.theta_spectral, "prefix", args.points);
    all = check_split_identities(rec.power, rec.tau, base, tau_tiles, {rec.a, rec.I}, cfg);
    const auto conj = check_conjugation_identities(rec.tau, rec.theta, tau_tiles, theta_tiles, rec.b, rec.c, cfg);
    all.insert(all.end(), conj.begin(), conj.end());
    rep["drill"] = to_json(rec);
    json holes = json::array();
    for (int res : {1024, 2048}) {
      RasterConfig rc;
      rc.resolution = res;
      const Raster r = rasterize(tile_pointers(theta_tiles), rc);
      const int h = count_holes(r);
      holes.push_back({{"raster", to_json(rc)}, {"holes", h}, {"components", count_components(r)}, {"expected", args.K}});
      ok = ok && h == args.K;
    }
    rep["hole_counts"] = holes;
    rep["hole_counts_note"] = "bounded complement components of the rasterized fractal; a heuristic proxy";
  } else {
    throw InvalidInput("unknown pipeline '" + args.pipeline + "' (gifs, split, conjugate, drill)");
  }

  rep["identities"] = reports_json(all);
  ok = ok && all_pass(all);
  rep["pass"] = ok;
  emit(rep, args.out);
  if (!args.out.empty()) std::cerr << (ok ? "pass" : "FAIL") << ": " << all.size() << " identities\n";
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rauzy fractals of Pisot substitutions: classify, split, conjugate, drill holes, render, verify."};
  app.require_subcommand(1);
  std::string text;
  int code = kOk;

  auto* check = app.add_subcommand("check", "classify a substitution (JSON)");
  int depth = kDefaultCoincidenceDepth;
  check->add_option("subst", text, "substitution, e.g. \"1->12; 2->13; 3->1\"")->required();
  check->add_option("--depth", depth, "strong coincidence search depth")->capture_default_str();

  auto* pow = app.add_subcommand("power", "print s^N");
  int N = 1;
  pow->add_option("subst", text)->required();
  pow->add_option("-n", N, "exponent")->required()->check(CLI::PositiveNumber);

  auto* occ = app.add_subcommand("occ", "print occ(s, i)");
  Letter letter = 0;
  occ->add_option("subst", text)->required();
  occ->add_option("-i", letter, "letter")->required();

  auto* spl = app.add_subcommand("split", "split letter a at occurrences I into n+1");
  Letter a = 0;
  std::string I;
  spl->add_option("subst", text)->required();
  spl->add_option("-a", a, "letter to split")->required();
  spl->add_option("-I", I, "occurrences \"(j;k),(j;k)\"")->required();

  auto* conj = app.add_subcommand("conjugate", "conjugate by rho_cb");
  Letter c = 0, b = 0;
  conj->add_option("subst", text)->required();
  conj->add_option("-c", c, "preceding letter")->required();
  conj->add_option("-b", b, "conjugated letter")->required();

  auto* dr = app.add_subcommand("drill", "drill K holes (DrillRecord JSON)");
  int K = 1, max_N = 8;
  std::optional<int> force_N;
  std::string force_I, seed_anchor, out;
  dr->add_option("subst", text)->required();
  dr->add_option("-k", K, "number of holes")->required()->check(CLI::PositiveNumber);
  dr->add_option("--max-N", max_N, "largest power searched")->capture_default_str();
  dr->add_option("--seed-anchor", seed_anchor, "anchor letters \"a,c\"");
  dr->add_option("--force-N", force_N, "use this power");
  dr->add_option("--force-I", force_I, "use these occurrences of s^N");
  dr->add_option("--out", out, "write JSON here instead of stdout");

  auto* tl = app.add_subcommand("tiles", "write subtile point clouds as CSV");
  std::string method = "prefix", dir;
  std::size_t points = kVerificationBudget;
  tl->add_option("subst", text)->required();
  tl->add_option("--method", method, "prefix or gifs")->capture_default_str();
  tl->add_option("--points", points, "points per tile")->capture_default_str();
  tl->add_option("--out", dir, "output directory")->required();

  auto* rd = app.add_subcommand("render", "render subtiles to PNG or SVG");
  bool subsub = false;
  std::string size = "1024x1024";
  std::optional<Letter> black;
  std::size_t render_points = kPreviewBudget * 5;
  rd->add_option("subst", text)->required();
  rd->add_flag("--subsub", subsub, "draw the subsubtiles instead of the subtiles");
  rd->add_option("--size", size, "WxH")->capture_default_str();
  rd->add_option("--points", render_points, "points per tile")->capture_default_str();
  rd->add_option("--method", method, "prefix or gifs")->capture_default_str();
  rd->add_option("--black", black, "draw this letter's tile black");
  rd->add_option("--out", out, "output file (.png or .svg)")->required();

  auto* vf = app.add_subcommand("verify", "check set identities (JSON report)");
  VerifyArgs va;
  vf->add_option("subst", text)->required();
  vf->add_option("--pipeline", va.pipeline, "gifs, split, conjugate or drill")->capture_default_str();
  vf->add_option("-a", va.a, "split letter");
  vf->add_option("-I", va.I, "split occurrences");
  vf->add_option("-c", va.c, "preceding letter");
  vf->add_option("-b", va.b, "conjugated letter");
  vf->add_option("-k", va.K, "holes for the drill pipeline")->capture_default_str();
  vf->add_option("--force-N", va.force_N, "drill power");
  vf->add_option("--force-I", va.force_I, "drill occurrences");
  vf->add_option("--points", va.points, "points per tile")->capture_default_str();
  vf->add_option("--tolerance", va.tolerance, "eps_H as a fraction of the diameter")->capture_default_str();
  vf->add_option("--perturb", va.perturbation, "shift right-hand sides by this fraction of the diameter");
  vf->add_option("--out", va.out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    const Substitution s = parse_substitution(text);
    if (check->parsed()) {
      emit(check_report(s, depth), "");
    } else if (pow->parsed()) {
      std::cout << format_substitution(power(s, N)) << "\n";
    } else if (occ->parsed()) {
      if (letter < 1 || letter > s.alphabet()) throw InvalidInput("letter out of alphabet");
      std::cout << format_occurrences(occurrences(s, letter)) << "\n";
    } else if (spl->parsed()) {
      std::cout << format_substitution(split(s, {a, parse_occurrences(I)})) << "\n";
    } else if (conj->parsed()) {
      const Letter pred = preceding_letter(s, b);
      if (pred != c)
        throw PreconditionFailed("every " + std::to_string(b) + " is preceded by " + std::to_string(pred) + ", not " +
                                 std::to_string(c));
      std::cout << format_substitution(conjugate(s, elementary(s.alphabet(), c, b))) << "\n";
    } else if (dr->parsed()) {
      DrillParams params;
      params.max_N = max_N;
      params.force_N = force_N;
      if (!force_I.empty()) params.force_I = parse_occurrences(force_I);
      if (!seed_anchor.empty()) params.seed_anchor = parse_letter_pair(seed_anchor);
      emit(to_json(drill(s, K, params)), out);
    } else if (tl->parsed()) {
      const TileSet tiles = make_tiles(s, solved(s), method, points);
      std::filesystem::create_directories(dir);
      json summary = report_envelope("tiles");
      summary["substitution"] = to_json(s);
      summary["method"] = method;
      for (const auto& [i, t] : tiles) {
        const auto path = std::filesystem::path(dir) / ("tile_" + std::to_string(i) + ".csv");
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write " + path.string());
        write_csv(f, t);
        summary["files"].push_back({{"tile", t.label.str()}, {"path", path.string()}, {"points", t.points.size()}});
      }
      emit(summary, "");
    } else if (rd->parsed()) {
      const auto sd = solved(s);
      const TileSet tiles = make_tiles(s, sd, method, render_points);
      std::vector<TileApprox> parts;
      if (subsub) {
        for (Letter i = 1; i <= s.alphabet(); ++i)
          for (const Occurrence& o : occurrences(s, i)) parts.push_back(subsubtile(s, sd, tiles, i, o));
      } else {
        for (const auto& [i, t] : tiles) parts.push_back(t);
      }
      std::vector<const TileApprox*> ptrs;
      for (const auto& p : parts) ptrs.push_back(&p);
      RenderSpec spec;
      std::tie(spec.width, spec.height) = parse_size(size);
      spec.palette = default_palette(ptrs, black);
      const std::filesystem::path path(out);
      if (path.extension() == ".svg") {
        std::ofstream(path, std::ios::binary) << render_svg(ptrs, spec);
      } else if (path.extension() == ".png") {
        const auto bytes = render_png(ptrs, spec);
        std::ofstream(path, std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      } else if (ptrs.front()->points.dim() == 3 || path.extension().empty()) {
        for (const auto& p : export_3d(ptrs, path)) std::cout << p.string() << "\n";
      } else {
        throw InvalidInput("output must end in .png or .svg (or be a directory for 3D export)");
      }
    } else if (vf->parsed()) {
      code = run_verify(s, va);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionFailed& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}
