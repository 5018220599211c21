#include "wedge/report_json.hpp"

namespace wedge {

namespace {

Json index_list(const IndexSet& s) {
  Json a = Json::array();
  for (auto i : s) a.push_back(i);
  return a;
}

Json complex_list(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    if (j.empty()) out += prefix + ": {}\n";
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    if (j.empty()) out += prefix + ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + ": " + j.dump() + "\n";
  }
}

}  // namespace

Json to_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const TNCertificate& c) {
  Json j;
  j["order_checked"] = c.order_checked;
  j["verdict"] = c.verdict;
  j["mode"] = c.mode == CheckMode::exhaustive ? "exhaustive" : "sampled";
  j["tol"] = c.tol;
  j["minors_evaluated"] = c.minors_evaluated;
  if (c.witness) {
    j["witness"] = Json{{"rows", index_list(c.witness->rows)}, {"cols", index_list(c.witness->cols)}, {"value", c.witness->value}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const SignChangeCount& s) {
  Json j;
  j["strict_count"] = optional_json(s.strict_count);
  j["vector_length"] = s.vector_length;
  j["zero_count"] = s.zero_count;
  return j;
}

Json to_json(const GKReport& r) {
  Json j;
  j["classification"] = to_string(r.classification);
  j["lambda1"] = r.lambda1;
  j["lambda2"] = optional_json(r.lambda2);
  j["lambda2_sorted"] = to_json(r.lambda2_sorted);
  j["complex_pair"] = r.complex_pair ? Json::array({to_json(r.complex_pair->first), to_json(r.complex_pair->second)}) : Json(nullptr);
  j["rho_wedge"] = r.rho_wedge;
  j["rho_wedge_method"] = to_string(r.rho_wedge_method);
  j["residual_theorem3"] = r.residual_theorem3;
  j["sign_changes_e1"] = r.sign_changes_e1 ? to_json(*r.sign_changes_e1) : Json(nullptr);
  j["sign_changes_e2"] = r.sign_changes_e2 ? to_json(*r.sign_changes_e2) : Json(nullptr);
  j["hypotheses_hold"] = r.hypotheses_hold;
  j["hypothesis_certificates"] = Json::array({to_json(r.hypothesis_certificates.first), to_json(r.hypothesis_certificates.second)});
  j["circle_count"] = r.circle_count;
  j["leading_multiplicity"] = r.leading_multiplicity;
  j["tol"] = r.tol;
  j["circle_tol"] = r.circle_tol;
  j["spectrum"] = complex_list(r.spectrum.values());
  j["notes"] = r.notes;
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["theorem"] = r.theorem;
  j["matched"] = r.matched;
  j["max_residual"] = r.max_residual;
  j["tol"] = r.tol;
  j["zero_threshold"] = r.zero_threshold;
  j["compared"] = r.compared;
  j["leftovers"] = Json{{"operator", complex_list(r.leftover_operator)}, {"products", complex_list(r.leftover_products)}};
  return j;
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

std::string render_text(const Json& j) {
  std::string out;
  flatten(j, "", out);
  return out;
}

}  // namespace wedge
