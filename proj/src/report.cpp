#include "rauzy/report.h"

#include "rauzy/error.h"
#include "rauzy/text.h"

namespace rauzy {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}, {"modulus", std::abs(z)}}; }

json vector_json(const ComplexVector& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}

json occurrence_json(const Occurrence& o) { return {{"j", o.j}, {"k", o.k}}; }

}  // namespace

json report_envelope(const std::string& kind) { return {{"schema", kReportSchema}, {"kind", kind}}; }

json to_json(const Substitution& s) {
  json images = json::array();
  for (Letter a = 1; a <= s.alphabet(); ++a) images.push_back(format_word(s(a), s.alphabet()));
  return {{"text", format_substitution(s)}, {"alphabet", s.alphabet()}, {"images", images}};
}

json to_json(const SpectralData& sd) {
  json conj = json::array(), vecs = json::array();
  for (const Complex& z : sd.conjugates) conj.push_back(complex_json(z));
  for (const ComplexVector& v : sd.conjugate_vectors) vecs.push_back(vector_json(v));
  json beta_vector = json::array();
  for (Eigen::Index i = 0; i < sd.beta_vector.size(); ++i) beta_vector.push_back(sd.beta_vector(i));
  return {{"alphabet", sd.alphabet},
          {"beta", sd.beta},
          {"degree", sd.degree},
          {"real_conjugates", sd.real_count},
          {"conjugates", conj},
          {"beta_vector", beta_vector},
          {"conjugate_vectors", vecs},
          {"convention", to_string(sd.convention)},
          {"normalization_index", sd.normalization_index + 1},
          {"lineage", sd.lineage}};
}

json to_json(const Classification& c) {
  json conj = json::array();
  for (const Complex& z : c.conjugates) conj.push_back(complex_json(z));
  return {{"beta", c.beta},
          {"minimal_polynomial", c.minimal_polynomial},
          {"degree", c.degree},
          {"real_conjugates", c.real_conjugates},
          {"complex_pairs", c.complex_pairs},
          {"conjugates", conj},
          {"pisot", c.pisot},
          {"irreducible", c.irreducible},
          {"unit", c.unit}};
}

json to_json(const CoincidenceResult& r) {
  json witnesses = json::array();
  for (const CoincidenceWitness& w : r.witnesses)
    witnesses.push_back({{"pair", {w.j1, w.j2}},
                         {"depth", w.depth},
                         {"letter", w.letter},
                         {"positions", {w.pos1, w.pos2}},
                         {"side", w.by_prefix ? "prefix" : "suffix"}});
  json unresolved = json::array();
  for (const auto& [x, y] : r.unresolved) unresolved.push_back({x, y});
  return {{"holds", r.holds},
          {"status", r.holds ? "holds" : "inconclusive"},
          {"depth", r.depth()},
          {"max_depth", r.max_depth},
          {"witnesses", witnesses},
          {"unresolved", unresolved}};
}

json to_json(const IdentityReport& r) {
  return {{"identity", r.identity},
          {"left", r.left},
          {"right", r.right},
          {"distance", r.distance},
          {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

json to_json(const RasterConfig& r) {
  return {{"resolution", r.resolution}, {"dilation", r.dilation}, {"margin", r.margin}, {"closing_passes", r.closing_passes}};
}

json to_json(const DrillRecord& r) {
  json I = json::array();
  for (const Occurrence& o : r.I) I.push_back(occurrence_json(o));
  json out = report_envelope("drill");
  out["base"] = to_json(r.base);
  out["K"] = r.K;
  out["a"] = r.a;
  out["c"] = r.c;
  out["b"] = r.b;
  out["forced"] = r.forced;
  out["anchor"] = r.n0 > 0 ? json{{"n0", r.n0}, {"occurrence", occurrence_json(r.anchor)}} : json(nullptr);
  out["N"] = r.N;
  out["I"] = I;
  out["I_text"] = format_occurrences(r.I);
  out["power"] = to_json(r.power);
  out["tau"] = to_json(r.tau);
  out["rho"] = {{"i", r.c}, {"j", r.b}};
  out["theta"] = to_json(r.theta);
  out["eigenvectors"] = {{"v", to_json(*r.base_spectral)},
                         {"v_power", to_json(*r.power_spectral)},
                         {"w", to_json(*r.tau_spectral)},
                         {"z", to_json(*r.theta_spectral)}};
  out["checks"] = r.checks;
  return out;
}

json check_report(const Substitution& s, int coincidence_depth) {
  json out = report_envelope("check");
  out["substitution"] = to_json(s);
  const IntMatrix m = incidence_matrix(s);
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  out["incidence_matrix"] = rows;
  out["determinant"] = determinant(m);
  out["unimodular"] = is_unimodular(s);
  out["characteristic_polynomial"] = char_poly(m);
  const bool primitive = is_primitive(m);
  out["primitive"] = primitive;
  if (primitive) {
    const Classification c = classify(s);
    out["classification"] = to_json(c);
    out["pisot"] = c.pisot;
    out["beta"] = c.beta;
    out["degree"] = c.degree;
    out["irreducible"] = c.irreducible;
  } else {
    out["classification"] = nullptr;
    out["pisot"] = false;
  }
  out["strong_coincidence"] = to_json(strong_coincidence(s, coincidence_depth));
  return out;
}

}  // namespace rauzy
