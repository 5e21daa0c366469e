// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.h"
#include "oracles.h"
#include "rauzy/drill.h"
#include "rauzy/error.h"
#include "rauzy/transform.h"
#include "rauzy/verify.h"

using namespace rauzy;

namespace {

// Pinned tolerances.
constexpr double kHausdorffFraction = 0.01;  // eps_H over the fractal diameter
constexpr double kNegativeShift = 0.05;      // injected translation, fraction of the diameter
constexpr double kResidual = 1e-9;
constexpr double kBetaTolerance = 1e-6;
constexpr double kOverlap = 0.02;
constexpr int kOverlapCells = 512;
constexpr std::size_t kPoints = 200000;
constexpr std::size_t kIdentityPoints = 50000;  // per tile in the identity suites, for the time limit
constexpr int kRandomSplits = 100;

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.note << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    out.ok = false;
    out.note << " [over the " << limit_s << " s limit]";
  }
  if (!out.ok) ++failures;
  std::printf("%s %2d %s (%.2f s / %.0f s)%s\n", out.ok ? "PASS" : "FAIL", id, name, secs, limit_s,
              out.note.str().c_str());
  std::fflush(stdout);
}

std::shared_ptr<const SpectralData> share(SpectralData sd) { return std::make_shared<const SpectralData>(std::move(sd)); }

VerifyConfig config(double perturbation = 0.0, std::size_t points = kPoints) {
  VerifyConfig cfg;
  cfg.tolerance_fraction = kHausdorffFraction;
  cfg.point_budget = points;
  cfg.perturbation = perturbation;
  return cfg;
}

DrillParams forced(int N, std::vector<Occurrence> I) {
  DrillParams p;
  p.force_N = N;
  p.force_I = std::move(I);
  return p;
}

int holes(const TileSet& tiles, int resolution) {
  std::vector<const TileApprox*> all;
  for (const auto& [i, t] : tiles) all.push_back(&t);
  return count_holes(rasterize(all, RasterConfig{resolution, 2, 2, 1}));
}

// The three drilled pipelines of the identity and overlap criteria.
struct Pipeline {
  Substitution sigma, tau, theta;
  SplitSpec spec;
  Letter b = 0, c = 0;
  std::shared_ptr<const SpectralData> v, w, z;
};

Pipeline split_pipeline() {
  Pipeline p{fx::base_cubed, fx::split_tau, fx::split_tau, {1, {{1, 1}, {2, 6}, {3, 2}}}, 4, 0, {}, {}, {}};
  p.v = share(power_spectral(base_eigenvectors(fx::base), 3));
  p.w = share(split_spectral(*p.v, 1));
  return p;
}

Pipeline drill_pipeline(int K, int N, std::vector<Occurrence> I) {
  const DrillRecord rec = drill(fx::base, K, forced(N, I));
  return {rec.power, rec.tau, rec.theta, {rec.a, rec.I}, rec.b, rec.c, rec.power_spectral, rec.tau_spectral,
          rec.theta_spectral};
}

void identity_suite(Outcome& out, const char* name, const Pipeline& p, bool conjugation) {
  const TileSet base = tiles_by_prefixes_target(p.sigma, p.v, kIdentityPoints);
  const TileSet tt = tiles_by_prefixes_target(p.tau, p.w, kIdentityPoints);
  const auto split_ok = check_split_identities(p.sigma, p.tau, base, tt, p.spec, config(0.0, kIdentityPoints));
  const auto split_bad = check_split_identities(p.sigma, p.tau, base, tt, p.spec, config(kNegativeShift, kIdentityPoints));
  out.require(all_pass(split_ok), std::string(name) + " split identities");
  for (const auto& r : split_bad) out.require(!r.pass, std::string(name) + " negative control: " + r.identity);
  std::size_t count = split_ok.size();

  if (conjugation) {
    const TileSet th = tiles_by_prefixes_target(p.theta, p.z, kIdentityPoints);
    const auto conj_ok = check_conjugation_identities(p.tau, p.theta, tt, th, p.b, p.c, config(0.0, kIdentityPoints));
    const auto conj_bad = check_conjugation_identities(p.tau, p.theta, tt, th, p.b, p.c, config(kNegativeShift, kIdentityPoints));
    out.require(all_pass(conj_ok), std::string(name) + " conjugation identities");
    bool translation = false;
    for (const auto& r : conj_ok)
      if (r.identity.find("pi_tau P(c)") != std::string::npos) translation = r.pass;
    out.require(translation, std::string(name) + " translation identity");
    for (const auto& r : conj_bad) out.require(!r.pass, std::string(name) + " negative control: " + r.identity);
    count += conj_ok.size();
  }
  out.note << " " << name << ": " << count << " identities;";
}

}  // namespace

int main() {
  criterion(1, "golden split", 1, [](Outcome& out) {
    const Substitution tau = split(fx::base_cubed, {1, {{1, 1}, {2, 6}, {3, 2}}});
    out.require(tau.images() == fx::split_tau.images(), "tau");
    out.require(tau == fx::subst({"4213121", "213124", "3421", "4213121"}), "tau text");
  });

  criterion(2, "golden conjugation", 1, [](Outcome& out) {
    const Substitution theta = conjugate(fx::drill_tau, elementary(4, 2, 4));
    out.require(theta == fx::subst({"121314", "213121", "3121", "213121121314"}), "drill K=1 theta");
    const Substitution tau5 = split(power(fx::quadribonacci, 3), {1, {{1, 8}, {2, 7}}});
    out.require(conjugate(tau5, elementary(5, 2, 5)) ==
                    fx::subst({"4121315", "121315", "213121", "3121", "1213154121315"}),
                "Quadribonacci theta");
  });

  criterion(3, "exact algebra on random splits and conjugations", 10, [](Outcome& out) {
    std::mt19937 rng(2024);
    int splits = 0, conjugations = 0;
    while (splits < kRandomSplits) {
      std::uniform_int_distribution<int> alpha(2, 5);
      const Substitution s = oracle::random_primitive(rng, alpha(rng), 6);
      std::uniform_int_distribution<int> pick(1, s.alphabet());
      const Letter a = pick(rng);
      const auto occ = occurrences(s, a);
      if (occ.empty()) continue;
      std::vector<Occurrence> I;
      std::bernoulli_distribution keep(0.5);
      for (const Occurrence& o : occ)
        if (keep(rng)) I.push_back(o);
      if (I.empty()) I.push_back(occ.front());
      const Substitution tau = split(s, {a, I});
      auto expected = oracle::char_poly(oracle::incidence(s));
      expected.push_back(0);
      out.require(char_poly(tau) == expected, "char poly of a split");
      ++splits;

      const int n = tau.alphabet();
      for (Letter c = 1; c <= n; ++c)
        for (Letter b = 1; b <= n; ++b) {
          if (b == c) continue;
          bool valid;
          try {
            valid = preceding_letter(tau, b) == c;
          } catch (const PreconditionFailed&) {
            valid = false;
          }
          if (!valid) continue;
          const auto rho = elementary(n, c, b);
          IntMatrix inv = IntMatrix::Identity(n, n);
          inv(c - 1, b - 1) = -1;
          out.require(incidence_matrix(conjugate(tau, rho)) == inv * incidence_matrix(tau) * rho.matrix(),
                      "M_theta = M_rho^-1 M_tau M_rho");
          ++conjugations;
        }
    }
    out.require(conjugations > 0, "some valid conjugation");
    out.note << " " << splits << " splits, " << conjugations << " conjugations";
  });

  criterion(4, "eigenvector identities", 1, [](Outcome& out) {
    const auto v3 = power_spectral(base_eigenvectors(fx::base), 3);
    const auto w33 = split_spectral(v3, 1);
    out.require(eigen_residual(w33, incidence_matrix(fx::split_tau)) < kResidual, "split w");
    const auto w42 = split_spectral(v3, 1);
    out.require(eigen_residual(w42, incidence_matrix(fx::drill_tau)) < kResidual, "drill K=1 w");
    out.require(eigen_residual(conjugate_spectral(w42, elementary(4, 2, 4)), incidence_matrix(fx::drill_theta)) < kResidual,
                "drill K=1 z");
    const std::vector<Occurrence> I43{{1, 24}, {1, 31}, {1, 33}, {1, 40}};
    const Substitution tau43 = split(power(fx::base, 6), {1, I43});
    const auto w43 = split_spectral(power_spectral(base_eigenvectors(fx::base), 6), 1);
    out.require(eigen_residual(w43, incidence_matrix(tau43)) < kResidual, "drill K=4 w");
    out.require(eigen_residual(conjugate_spectral(w43, elementary(4, 2, 4)),
                               incidence_matrix(conjugate(tau43, elementary(4, 2, 4)))) < kResidual,
                "drill K=4 z");
    const auto wq = split_spectral(power_spectral(base_eigenvectors(fx::quadribonacci), 3), 1);
    const Substitution tauq = split(power(fx::quadribonacci, 3), {1, {{1, 8}, {2, 7}}});
    out.require(eigen_residual(wq, incidence_matrix(tauq)) < kResidual, "Quadribonacci w");
    out.require(eigen_residual(conjugate_spectral(wq, elementary(5, 2, 5)), incidence_matrix(fx::quad_theta)) < kResidual,
                "Quadribonacci z");
  });

  criterion(5, "GIFS identity at 2e5 points per tile", 30, [](Outcome& out) {
    for (const auto& [name, s] : {std::pair{"Tribonacci", fx::tribonacci}, std::pair{"base", fx::base}}) {
      const auto sd = share(base_eigenvectors(s));
      const TileSet tiles = tiles_by_prefixes_target(s, sd, kPoints);
      double worst = 0;
      for (const auto& r : check_gifs_identity(s, sd, tiles, config())) {
        out.require(r.pass, std::string(name) + " " + r.left);
        worst = std::max(worst, r.distance / r.tolerance);
      }
      out.note << " " << name << " worst d/eps = " << worst << ";";
    }
  });

  criterion(6, "prefix and GIFS clouds agree", 60, [](Outcome& out) {
    for (const auto& [name, s] : {std::pair{"Tribonacci", fx::tribonacci}, std::pair{"base", fx::base}}) {
      const auto sd = share(base_eigenvectors(s));
      const TileSet pre = tiles_by_prefixes_target(s, sd, kPoints);
      GifsOptions opts;
      opts.target = kPoints;
      const TileSet gifs = tiles_by_gifs(s, sd, opts);
      const double eps = tolerance_for(pre, config());
      double worst = 0;
      for (const auto& [i, t] : pre) {
        const double d = hausdorff(t, gifs.at(i));
        out.require(d <= eps, std::string(name) + " tile " + std::to_string(i));
        worst = std::max(worst, d / eps);
      }
      out.note << " " << name << " worst d/eps = " << worst << ";";
    }
  });

  criterion(7, "split and conjugation identity suites with negative control", 60, [](Outcome& out) {
    identity_suite(out, "split", split_pipeline(), false);
    identity_suite(out, "drill K=1", drill_pipeline(1, 3, {{1, 7}}), true);
    identity_suite(out, "drill K=4", drill_pipeline(4, 6, {{1, 24}, {1, 31}, {1, 33}, {1, 40}}), true);
  });

  criterion(8, "hole counts of forced drills", 120, [](Outcome& out) {
    for (const auto& [K, N, I] : {std::tuple{1, 3, std::vector<Occurrence>{{1, 7}}},
                                  std::tuple{4, 6, std::vector<Occurrence>{{1, 24}, {1, 31}, {1, 33}, {1, 40}}}}) {
      const TileSet tiles = drilled_tiles(drill(fx::base, K, forced(N, I)), kPoints);
      for (int res : {1024, 2048}) {
        const int h = holes(tiles, res);
        out.require(h == K, "K=" + std::to_string(K) + " at " + std::to_string(res) + " has " + std::to_string(h));
      }
    }
    const TileSet tri = tiles_by_prefixes_target(fx::tribonacci, share(base_eigenvectors(fx::tribonacci)), kPoints);
    for (int res : {1024, 2048}) out.require(holes(tri, res) == 0, "Tribonacci at " + std::to_string(res));
  });

  criterion(9, "search-mode drill, K = 1, 2, 3", 300, [](Outcome& out) {
    for (int K = 1; K <= 3; ++K) {
      DrillParams p;
      p.max_N = 8;
      const DrillRecord rec = drill(fx::base, K, p);
      const std::string tag = "K=" + std::to_string(K);
      out.require(rec.N <= 8 && static_cast<int>(rec.I.size()) == K, tag + " record shape");
      out.require(rec.tau == split(rec.power, {rec.a, rec.I}), tag + " tau");
      out.require(preceding_letter(rec.tau, rec.b) == rec.c, tag + " predecessor");
      out.require(rec.theta == conjugate(rec.tau, elementary(rec.b, rec.c, rec.b)), tag + " theta");
      const TileSet tiles = drilled_tiles(rec, kPoints);
      for (int res : {1024, 2048}) {
        const int h = holes(tiles, res);
        out.require(h == K, tag + " at " + std::to_string(res) + " has " + std::to_string(h));
      }
      out.note << " " << tag << ": N=" << rec.N << " I=";
      for (const Occurrence& o : rec.I) out.note << "(" << o.j << ";" << o.k << ")";
      out.note << ";";
    }
  });

  criterion(10, "pairwise overlap of subtiles", 60, [](Outcome& out) {
    const Pipeline s33 = split_pipeline();
    const Pipeline d42 = drill_pipeline(1, 3, {{1, 7}});
    const std::vector<std::tuple<const char*, Substitution, std::shared_ptr<const SpectralData>>> cases{
        {"Tribonacci", fx::tribonacci, share(base_eigenvectors(fx::tribonacci))},
        {"split tau", s33.tau, s33.w},
        {"drill K=1 theta", d42.theta, d42.z}};
    for (const auto& [name, s, sd] : cases) {
      const TileSet tiles = tiles_by_prefixes_target(s, sd, kPoints);
      const double cell = diameter(merge_tiles(TileLabel::whole(), tiles).points) / kOverlapCells;
      double worst = 0, fine = 0;
      for (const auto& [i, ti] : tiles)
        for (const auto& [j, tj] : tiles) {
          if (j <= i) continue;
          const double f = overlap_fraction(ti, tj, cell);
          out.require(f <= kOverlap, std::string(name) + " " + ti.label.str() + "/" + tj.label.str());
          worst = std::max(worst, f);
          // informational: boundary overlap shrinks on a finer grid
          fine = std::max(fine, overlap_fraction(ti, tj, cell / 4));
        }
      out.note << " " << name << " max " << worst << " (" << fine << " at cell/4);";
    }
  });

  criterion(11, "classification", 1, [](Outcome& out) {
    const Classification c = classify(fx::tribonacci);
    const double root = oracle::bisect_root({1, -1, -1, -1}, 1.0, 2.0);
    out.require(is_primitive(fx::tribonacci), "primitive");
    out.require(is_unimodular(fx::tribonacci), "unimodular");
    out.require(c.pisot, "Pisot");
    out.require(std::abs(c.beta - root) <= kBetaTolerance, "beta");
    out.require(c.irreducible, "irreducible");
    const CoincidenceResult sc = strong_coincidence(fx::tribonacci, 5);
    out.require(sc.holds && sc.depth() <= 5, "strong coincidence");
    const Classification t = classify(fx::split_tau);
    out.require(t.pisot && t.degree == 3 && fx::split_tau.alphabet() == 4 && !t.irreducible, "split tau");
    out.note << " beta = " << c.beta << ", coincidence depth " << sc.depth();
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
