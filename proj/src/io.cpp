#include "germkit/io.hpp"

#include <cmath>

namespace germkit {

using nlohmann::json;

json series_json(const Series& s) {
  json arr = json::array();
  for (double c : s.coeffs()) arr.push_back(c);
  return arr;
}

json classification_json(const Classification& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["k"] = c.k;
  j["a"] = c.a;
  if (c.d) j["d"] = *c.d;
  j["sign"] = c.sign;
  j["determinacy_c1"] = c.determinacy_c1;
  if (c.determinacy_cinf) j["determinacy_cinf"] = *c.determinacy_cinf;
  if (c.c0_class) j["c0_class"] = to_string(*c.c0_class);
  j["checked_order"] = c.checked_order;
  if (c.kind == GermKind::Regular || c.kind == GermKind::Hyperbolic ||
      c.kind == GermKind::Degenerate) {
    json forms;
    forms["c0"] = normal_form(c, Relation::C0, false).display;
    forms["c1"] = normal_form(c, Relation::C1, false).display;
    forms["c1_tti"] = normal_form(c, Relation::C1, true).display;
    if (c.kind != GermKind::Degenerate || c.d) {
      forms["cinf"] = normal_form(c, Relation::Cinf, false).display;
      forms["cinf_tti"] = normal_form(c, Relation::Cinf, true).display;
    }
    j["normal_forms"] = forms;
  }
  return j;
}

json normal_form_json(const NormalForm& nf) {
  json j;
  j["relation"] = to_string(nf.relation);
  j["tangent_to_identity"] = nf.tangent_to_identity;
  j["coefficients"] = series_json(nf.coefficients);
  j["display"] = nf.display;
  return j;
}

json witness_summary_json(const Witness& w) {
  json j;
  j["smoothness"] = to_string(w.smoothness);
  j["orientation"] = to_string(w.orientation);
  j["tangent_to_identity"] = w.tangent_to_identity;
  j["c1_downgraded"] = w.c1_downgraded;
  j["domain"] = {w.domain.lo, w.domain.hi};
  j["tti_quotients"] = {w.tti_quotients[0], w.tti_quotients[1],
                        w.tti_quotients[2]};
  if (!w.target.empty()) j["target"] = w.target;
  return j;
}

json flow_json(const FlowResult& r) {
  json j;
  j["value"] = r.value;
  switch (r.status) {
    case FlowStatus::Ok:
      j["status"] = "ok";
      break;
    case FlowStatus::Blowup:
      j["status"] = "blowup";
      j["t_escape"] = r.t_escape;
      break;
    case FlowStatus::LeftDomain:
      j["status"] = "left_domain";
      j["t_escape"] = r.t_escape;
      break;
  }
  return j;
}

json verify_json(const VerifyResult& r) {
  json j;
  j["max_residual"] = r.max_residual;
  j["skipped"] = r.skipped;
  j["evaluated"] = r.evaluated;
  return j;
}

void write_witness_csv(const Witness& w, int samples, std::ostream& os) {
  os << "x,phi,dphi\n";
  if (samples < 2) samples = 2;
  const double r = 0.9 * std::min(std::abs(w.domain.lo), w.domain.hi);
  for (int i = 0; i < samples; ++i) {
    const double x = -r + 2.0 * r * i / (samples - 1.0);
    double phi;
    try {
      phi = w.forward(x);
    } catch (const Error&) {
      continue;  // point outside the resolvable range
    }
    os << format_double(x) << ',' << format_double(phi) << ',';
    if (w.derivative) {
      try {
        os << format_double(w.derivative(x));
      } catch (const Error&) {
      }
    }
    os << '\n';
  }
}

}  // namespace germkit
