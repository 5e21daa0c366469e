#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rauzy/fractal.h"
#include "rauzy/transform.h"

namespace rauzy {

struct DrillParams {
  int max_N = 8;
  std::optional<int> force_N;
  std::optional<std::vector<Occurrence>> force_I;  ///< requires force_N
  std::optional<std::pair<Letter, Letter>> seed_anchor;  ///< (a, c)
  bool check_disklike = true;
  std::size_t anchor_points = kVerificationBudget;    ///< per tile, for the anchor raster
  std::size_t candidate_points = kPreviewBudget;      ///< per tile, for candidate clouds
  int raster_resolution = 1024;
  int erosion_cells = 2;
};

/// Everything needed to replay a drill: inputs, choices, and the derived
/// substitutions with their eigenvector chain.
struct DrillRecord {
  Substitution base;
  int K = 0;
  Letter a = 0, c = 0, b = 0;
  int n0 = 0;                  ///< 0 when no anchor was needed (forced parameters)
  Occurrence anchor{};
  int N = 0;
  std::vector<Occurrence> I;
  bool forced = false;
  Substitution power;          ///< base^N
  Substitution tau;
  Substitution theta;
  std::shared_ptr<const SpectralData> base_spectral;   ///< v
  std::shared_ptr<const SpectralData> power_spectral;  ///< v with multipliers^N
  std::shared_ptr<const SpectralData> tau_spectral;    ///< w = (v, v_a)
  std::shared_ptr<const SpectralData> theta_spectral;  ///< z = w M_rho
  std::vector<std::string> checks;  ///< preconditions and search decisions, in order
};

/// Splits K interior, pairwise separated subsubtiles of base^N off letter a
/// and conjugates by rho_cb so that they become holes. Throws
/// PreconditionFailed when a precondition fails or no N <= max_N works.
DrillRecord drill(const Substitution& s, int K, const DrillParams& params = {});

/// O_N: occurrences (j;k) of a in t with k >= 2 and t(j)_{k-1} = c.
std::vector<Occurrence> eligible_occurrences(const Substitution& t, Letter a, Letter c);

/// Subtiles of theta under z, by the prefix method.
TileSet drilled_tiles(const DrillRecord& rec, std::size_t per_tile = kVerificationBudget);

}  // namespace rauzy
