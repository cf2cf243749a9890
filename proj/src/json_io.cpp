#include "lpcurse/json_io.hpp"

#include <cmath>

#include "lpcurse/errors.hpp"

namespace lpcurse {

void to_json(nlohmann::json& j, const Certificate& c) {
  j = nlohmann::json{{"method", to_string(c.method)},
                     {"mode", to_string(c.mode)},
                     {"p", c.p},
                     {"q", c.q},
                     {"d", c.d},
                     {"n", c.n},
                     {"lower_bound", c.lower_bound},
                     {"integral_hd", c.integral_hd},
                     {"integral_fstar", c.integral_fstar},
                     {"norm_hd", c.norm_hd},
                     {"norm_fstar_bound", c.norm_fstar_bound}};
}

void from_json(const nlohmann::json& j, Certificate& c) {
  const auto method = j.at("method").get<std::string>();
  if (method == "decomposition") {
    c.method = FoolingMethod::decomposition;
  } else if (method == "spline") {
    c.method = FoolingMethod::spline;
  } else {
    throw ParseError("unknown certificate method '" + method + "'", 0);
  }
  const auto mode = j.at("mode").get<std::string>();
  if (mode != "paper" && mode != "sharp") throw ParseError("unknown mode '" + mode + "'", 0);
  c.mode = mode == "paper" ? CertificateMode::paper : CertificateMode::sharp;
  j.at("p").get_to(c.p);
  j.at("q").get_to(c.q);
  j.at("d").get_to(c.d);
  j.at("n").get_to(c.n);
  j.at("lower_bound").get_to(c.lower_bound);
  j.at("integral_hd").get_to(c.integral_hd);
  j.at("integral_fstar").get_to(c.integral_fstar);
  j.at("norm_hd").get_to(c.norm_hd);
  j.at("norm_fstar_bound").get_to(c.norm_fstar_bound);
}

void to_json(nlohmann::json& j, const DiscrepancyEstimate& e) {
  j = nlohmann::json{{"method", to_string(e.method)},
                     {"value", e.value},
                     {"uncertainty", e.uncertainty}};
  // JSON has no infinity literal.
  if (std::isinf(e.p)) {
    j["p"] = "inf";
  } else {
    j["p"] = e.p;
  }
}

} // namespace lpcurse
