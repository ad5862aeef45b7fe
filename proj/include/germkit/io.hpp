#pragma once

#include <ostream>

#include <json.hpp>

#include "germkit/classify.hpp"
#include "germkit/conjugacy.hpp"
#include "germkit/flows.hpp"
#include "germkit/unfold.hpp"

namespace germkit {

nlohmann::json series_json(const Series& s);

// {kind, k, a, d?, sign, determinacy_c1, determinacy_cinf?, c0_class?,
//  normal_forms?: {c0, c1, c1_tti, cinf, cinf_tti}}
nlohmann::json classification_json(const Classification& c);

nlohmann::json normal_form_json(const NormalForm& nf);

nlohmann::json witness_summary_json(const Witness& w);

nlohmann::json flow_json(const FlowResult& r);

nlohmann::json verify_json(const VerifyResult& r);

// Sampled graph of a witness: header "x,phi,dphi", dphi blank for C0-only
// witnesses. `samples` points spread uniformly over the inner 90% of the
// domain, always including 0.
void write_witness_csv(const Witness& w, int samples, std::ostream& os);

}  // namespace germkit
