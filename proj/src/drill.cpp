#include "rauzy/drill.h"

#include <algorithm>
#include <sstream>

#include "rauzy/error.h"
#include "rauzy/verify.h"

namespace rauzy {

namespace {

std::string occ_str(Occurrence o) { return "(" + std::to_string(o.j) + ";" + std::to_string(o.k) + ")"; }

struct Anchor {
  Letter a = 0, c = 0;
  int n0 = 0;
  Occurrence occ{};
};

// First factor "ca" in s^n0(j0), scanning (a, c) lexicographically, then n0,
// then j0 and k0.
std::optional<Anchor> find_anchor(const Substitution& s, std::optional<std::pair<Letter, Letter>> only) {
  const int n = s.alphabet();
  std::vector<Substitution> powers;
  for (int e = 1; e <= 4; ++e) powers.push_back(power(s, e));
  for (Letter a = 1; a <= n; ++a)
    for (Letter c = 1; c <= n; ++c) {
      if (a == c) continue;
      if (only && (only->first != a || only->second != c)) continue;
      for (int n0 = 1; n0 <= 4; ++n0) {
        const Substitution& p = powers[n0 - 1];
        for (Letter j = 1; j <= n; ++j) {
          const Word& img = p(j);
          for (std::size_t k = 1; k < img.size(); ++k)
            if (img[k] == a && img[k - 1] == c) return Anchor{a, c, n0, {j, static_cast<int>(k) + 1}};
        }
      }
    }
  return std::nullopt;
}

struct Candidate {
  Occurrence occ;
  Eigen::VectorXd centroid;
  double diameter = 0;
};

// Greedy choice of K pairwise separated candidates: first within a single
// source letter's image, then across all of them.
std::optional<std::vector<Occurrence>> select(const std::vector<Candidate>& cands, int K, int alphabet) {
  auto greedy = [&](auto&& admissible) -> std::optional<std::vector<Occurrence>> {
    std::vector<const Candidate*> picked;
    for (const Candidate& cand : cands) {
      if (!admissible(cand)) continue;
      bool ok = true;
      for (const Candidate* p : picked) {
        const double need = 2.0 * std::max(p->diameter, cand.diameter);
        if ((p->centroid - cand.centroid).norm() < need) ok = false;
      }
      if (!ok) continue;
      picked.push_back(&cand);
      if (static_cast<int>(picked.size()) == K) {
        std::vector<Occurrence> out;
        for (const Candidate* p : picked) out.push_back(p->occ);
        std::sort(out.begin(), out.end());
        return out;
      }
    }
    return std::nullopt;
  };
  for (Letter j = 1; j <= alphabet; ++j)
    if (auto got = greedy([j](const Candidate& c) { return c.occ.j == j; })) return got;
  return greedy([](const Candidate&) { return true; });
}

void require(bool ok, const std::string& what, std::vector<std::string>& log) {
  if (!ok) throw PreconditionFailed("drill precondition failed: " + what);
  log.push_back("precondition ok: " + what);
}

}  // namespace

std::vector<Occurrence> eligible_occurrences(const Substitution& t, Letter a, Letter c) {
  std::vector<Occurrence> out;
  for (const Occurrence& o : occurrences(t, a))
    if (o.k >= 2 && t(o.j)[o.k - 2] == c) out.push_back(o);
  return out;
}

DrillRecord drill(const Substitution& s, int K, const DrillParams& params) {
  if (K < 1) throw InvalidInput("drill needs K >= 1");
  if (params.force_I && !params.force_N) throw InvalidInput("a forced occurrence set needs a forced N");
  if (params.max_N < 1) throw InvalidInput("max_N must be positive");
  std::vector<std::string> log;

  require(is_primitive(s), "primitive", log);
  const Classification cls = classify(s);
  require(cls.pisot, "Pisot (beta = " + std::to_string(cls.beta) + ")", log);
  require(is_unimodular(s), "unimodular", log);
  const bool need_search = !params.force_I;
  const bool planar = cls.degree == 3;
  // The interior test works on planar rasters; forced parameters skip it.
  if (need_search) require(planar, "Pisot degree 3 (planar fractal)", log);
  const CoincidenceResult sc = strong_coincidence(s);
  require(sc.holds, "strong coincidence (depth <= " + std::to_string(sc.max_depth) + ")", log);

  const auto v = std::make_shared<const SpectralData>(base_eigenvectors(s));
  const bool disklike = params.check_disklike && planar;
  if (params.check_disklike && !planar) log.push_back("disklike heuristic skipped: fractal is not planar");
  TileSet fine;
  if (disklike || need_search) fine = tiles_by_prefixes_target(s, v, params.anchor_points);
  if (disklike) {
    const DisklikeReport dr = disklike_heuristic(fine, {params.raster_resolution, 2, 2, 1});
    require(dr.all(), "disklike heuristic (one component, no holes, per tile and union)", log);
  }

  Letter a = 0, c = 0;
  int N = 0;
  std::vector<Occurrence> I;
  std::optional<Anchor> anchor;

  if (params.force_I) {
    N = *params.force_N;
    if (N < 1) throw InvalidInput("forced N must be positive");
    const Substitution sN = power(s, N);
    I = *params.force_I;
    if (static_cast<int>(I.size()) != K)
      throw InvalidInput("forced occurrence set has " + std::to_string(I.size()) + " elements, K = " + std::to_string(K));
    std::sort(I.begin(), I.end());
    if (std::adjacent_find(I.begin(), I.end()) != I.end()) throw InvalidInput("forced occurrence set has duplicates");
    for (const Occurrence& o : I) {
      if (o.j < 1 || o.j > sN.alphabet() || o.k < 2 || o.k > static_cast<int>(sN(o.j).size()))
        throw InvalidInput(occ_str(o) + " is not a position with a predecessor in s^" + std::to_string(N));
      const Letter here = sN(o.j)[o.k - 1], before = sN(o.j)[o.k - 2];
      if (a == 0) a = here, c = before;
      if (here != a || before != c)
        throw InvalidInput("forced occurrences do not share one letter and one predecessor");
    }
    if (a == c) throw InvalidInput("forced occurrences are preceded by the same letter");
    log.push_back("forced N = " + std::to_string(N) + ", a = " + std::to_string(a) + ", c = " + std::to_string(c));
    anchor = find_anchor(s, std::make_pair(a, c));
  } else {
    if (params.force_N && (*params.force_N < 1)) throw InvalidInput("forced N must be positive");
    anchor = find_anchor(s, params.seed_anchor);
    if (!anchor) throw PreconditionFailed("drill: no factor ca with a != c in s^1..s^4");
    a = anchor->a;
    c = anchor->c;
    log.push_back("anchor: a = " + std::to_string(a) + ", c = " + std::to_string(c) + ", n0 = " +
                  std::to_string(anchor->n0) + ", " + occ_str(anchor->occ));

    // Anchor subsubtile of s^n0, rasterized on the whole fractal's box.
    const Substitution sn0 = power(s, anchor->n0);
    const auto vn0 = std::make_shared<const SpectralData>(power_spectral(*v, anchor->n0));
    const TileApprox anchor_tile = subsubtile(sn0, vn0, fine, a, anchor->occ);
    BoundingBox global;
    for (const auto& [l, t] : fine) global.merge(bounding_box(t));
    const RasterConfig rc{params.raster_resolution, 2, 2, 1};
    const Raster inner = eroded(rasterize({&anchor_tile}, global, rc), params.erosion_cells);
    const TileSet coarse = tiles_by_prefixes_target(s, v, params.candidate_points);

    std::ostringstream tried;
    const int first = params.force_N ? *params.force_N : anchor->n0 + 1;
    const int last = params.force_N ? *params.force_N : params.max_N;
    for (int n = first; n <= last && I.empty(); ++n) {
      const Substitution sN = power(s, n);
      const auto vN = std::make_shared<const SpectralData>(power_spectral(*v, n));
      const auto O = eligible_occurrences(sN, a, c);
      std::vector<Candidate> cands;
      for (const Occurrence& o : O) {
        const TileApprox piece = subsubtile(sN, vN, coarse, a, o);
        bool inside = true;
        for (std::size_t p = 0; p < piece.points.size() && inside; ++p) {
          const auto [x, y] = inner.cell_of(piece.points[p]);
          inside = x >= 0 && y >= 0 && x < inner.width && y < inner.height && inner.at(x, y);
        }
        if (!inside) continue;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(piece.points.dim());
        for (std::size_t p = 0; p < piece.points.size(); ++p)
          centroid += Eigen::Map<const Eigen::VectorXd>(piece.points[p].data(), piece.points.dim());
        centroid /= static_cast<double>(piece.points.size());
        cands.push_back({o, centroid, diameter(piece.points)});
      }
      tried << " N=" << n << ": |O_N|=" << O.size() << ", interior=" << cands.size() << ";";
      if (auto chosen = select(cands, K, s.alphabet())) {
        I = *chosen;
        N = n;
      }
    }
    if (I.empty())
      throw PreconditionFailed("drill: no " + std::to_string(K) + " separated interior candidates up to N = " +
                               std::to_string(last) + ";" + tried.str());
    log.push_back("search:" + tried.str());
  }

  std::string chosen;
  for (const Occurrence& o : I) chosen += (chosen.empty() ? "" : ",") + occ_str(o);
  log.push_back("N = " + std::to_string(N) + ", I = {" + chosen + "}");

  const Substitution sN = power(s, N);
  const Substitution tau = split(sN, {a, I});
  const Letter b = s.alphabet() + 1;
  for (std::size_t x = 1; x < I.size(); ++x)
    if (I[x].j == I[x - 1].j && I[x].k == I[x - 1].k + 1)
      throw PreconditionFailed("selected occurrences are adjacent");
  const Letter pred = preceding_letter(tau, b);
  if (pred != c) throw PreconditionFailed("preceding letter of b is " + std::to_string(pred) + ", expected " + std::to_string(c));
  log.push_back("every " + std::to_string(b) + " in tau is preceded by " + std::to_string(c));
  const ElementaryAutomorphism rho = elementary(tau.alphabet(), c, b);
  const Substitution theta = conjugate(tau, rho);

  const auto vN = std::make_shared<const SpectralData>(power_spectral(*v, N));
  const auto w = std::make_shared<const SpectralData>(split_spectral(*vN, a));
  const auto z = std::make_shared<const SpectralData>(conjugate_spectral(*w, rho));

  return DrillRecord{.base = s,
                     .K = K,
                     .a = a,
                     .c = c,
                     .b = b,
                     .n0 = anchor ? anchor->n0 : 0,
                     .anchor = anchor ? anchor->occ : Occurrence{},
                     .N = N,
                     .I = I,
                     .forced = params.force_I.has_value(),
                     .power = sN,
                     .tau = tau,
                     .theta = theta,
                     .base_spectral = v,
                     .power_spectral = vN,
                     .tau_spectral = w,
                     .theta_spectral = z,
                     .checks = std::move(log)};
}

TileSet drilled_tiles(const DrillRecord& rec, std::size_t per_tile) {
  return tiles_by_prefixes_target(rec.theta, rec.theta_spectral, per_tile);
}

}  // namespace rauzy
