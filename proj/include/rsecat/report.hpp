#pragma once
// Text and JSON renderings of engine reports. Both are deterministic; timing is
// included only on request.

#include <sstream>
#include <string>

#include <json.hpp>  // nlohmann, vendored

#include "rsecat/secat.hpp"

namespace rsecat {

struct ReportOptions {
  bool witness = false;  // text: print the witness cocycle
  bool timing = false;
};

namespace detail {

inline std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline std::string verdict_list(const SecatReport& r) {
  std::string s;
  for (const auto& v : r.verdicts) {
    if (!s.empty()) s += ",";
    s += std::to_string(v.m) + ":" + (v.injective ? (*v.injective ? "true" : "false") : "undetermined");
  }
  return s;
}

inline std::string seconds_text(double s) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(3);
  o << s;
  return o.str();
}

}  // namespace detail

inline std::string format_text(const SecatReport& r, const ReportOptions& opt = {}) {
  std::ostringstream o;
  o << "invariant = " << r.invariant << "\n";
  if (r.value) {
    o << "value = " << *r.value << "\n";
  } else {
    o << "lower = " << r.lower << "\n";
    o << "upper = " << (r.upper ? std::to_string(*r.upper) : "inf") << "\n";
  }
  o << "status = " << r.status << "\n";
  o << "degrees_checked = " << detail::join_ints(r.degrees) << "\n";
  o << "verdicts = " << detail::verdict_list(r) << "\n";
  o << "route = " << r.route << "\n";
  o << "hypothesis = " << r.hypothesis << "\n";
  o << "convention = " << r.convention << "\n";
  if (opt.witness) {
    if (r.witness) {
      o << "witness = " << r.witness->formatted << "\n";
      o << "witness_power = " << r.witness->m << "\n";
      o << "witness_degree = " << r.witness->degree << "\n";
      o << "witness_verified = " << (r.witness_check && r.witness_check->ok() ? "true" : "false") << "\n";
    } else {
      o << "witness = none\n";
    }
  }
  if (opt.timing) o << "seconds = " << detail::seconds_text(r.seconds) << "\n";
  return o.str();
}

inline nlohmann::ordered_json witness_json(const SecatReport& r) {
  if (!r.witness) return nullptr;
  const WitnessClass& w = *r.witness;
  nlohmann::ordered_json cert = nlohmann::ordered_json::array();
  for (const auto& [i, c] : w.certificate) cert.push_back({i, c.get_str()});
  nlohmann::ordered_json j;
  j["m"] = w.m;
  j["degree"] = w.degree;
  j["cocycle"] = w.formatted;
  j["certificate"] = cert;
  if (r.witness_check) {
    j["in_ideal_module"] = r.witness_check->in_ideal_module;
    j["cocycle_condition"] = r.witness_check->cocycle;
    j["nontrivial"] = r.witness_check->nontrivial;
  }
  return j;
}

inline nlohmann::ordered_json to_json(const SecatReport& r, const ReportOptions& opt = {}) {
  nlohmann::ordered_json j;
  j["invariant"] = r.invariant;
  j["model"] = r.model;
  j["value"] = r.value ? nlohmann::ordered_json(*r.value) : nlohmann::ordered_json(nullptr);
  j["lower"] = r.lower;
  j["upper"] = r.upper ? nlohmann::ordered_json(*r.upper) : nlohmann::ordered_json(nullptr);
  j["status"] = r.status;
  j["degrees_checked"] = r.degrees;
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (const auto& v : r.verdicts) {
    nlohmann::ordered_json e;
    e["m"] = v.m;
    e["injective"] = v.injective ? nlohmann::ordered_json(*v.injective) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json pd = nlohmann::ordered_json::object();
    for (const auto& [k, b] : v.per_degree) pd[std::to_string(k)] = b;
    e["per_degree"] = pd;
    vs.push_back(e);
  }
  j["verdicts"] = vs;
  j["route"] = r.route;
  j["hypothesis"] = r.hypothesis;
  j["convention"] = r.convention;
  j["witness"] = witness_json(r);
  if (opt.timing) j["seconds"] = r.seconds;
  return j;
}

inline std::string format_text(const AdditivityReport& a, const std::string& invariant, bool subadditivity_only,
                               const ReportOptions& opt = {}) {
  std::ostringstream o;
  o << "invariant = " << invariant << "\n";
  o << "f = " << a.f.model << "\n";
  o << "g = " << a.g.model << "\n";
  o << "msecat_f = " << *a.f.value << "\n";
  o << "msecat_g = " << *a.g.value << "\n";
  o << "lhs = " << a.lhs << "\n";
  o << "rhs = " << a.rhs << "\n";
  if (!subadditivity_only) o << "equal = " << (a.equal ? "true" : "false") << "\n";
  o << "subadditive = " << (a.subadditive ? "true" : "false") << "\n";
  if (!subadditivity_only) o << "defect = " << (a.defect ? "true" : "false") << "\n";
  o << "hypothesis = " << a.f.hypothesis << "\n";
  o << "status = " << a.product.status << "\n";
  o << "convention = " << a.product.convention << "\n";
  if (opt.timing) o << "seconds = " << detail::seconds_text(a.f.seconds + a.g.seconds + a.product.seconds) << "\n";
  return o.str();
}

inline nlohmann::ordered_json to_json(const AdditivityReport& a, const std::string& invariant, bool subadditivity_only,
                                      const ReportOptions& opt = {}) {
  nlohmann::ordered_json j;
  j["invariant"] = invariant;
  j["f"] = to_json(a.f, opt);
  j["g"] = to_json(a.g, opt);
  j["product"] = to_json(a.product, opt);
  j["lhs"] = a.lhs;
  j["rhs"] = a.rhs;
  if (!subadditivity_only) j["equal"] = a.equal;
  j["subadditive"] = a.subadditive;
  if (!subadditivity_only) j["defect"] = a.defect;
  j["status"] = a.product.status;
  return j;
}

}  // namespace rsecat
