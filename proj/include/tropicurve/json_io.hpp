#pragma once

// JSON input and output with stable key order, so identical runs produce
// byte-identical reports.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "tropicurve/pipeline.hpp"
#include "tropicurve/tropfan.hpp"

namespace trop {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson ray_to_json(const Ray& r) {
  OrderedJson jr;
  jr["direction"] = r.direction;
  jr["multiplicity"] = r.multiplicity;
  OrderedJson wits = OrderedJson::array();
  for (const auto& w : r.witnesses) {
    OrderedJson point = OrderedJson::array();
    for (const auto& c : w) point.push_back({c.real(), c.imag()});
    wits.push_back(std::move(point));
  }
  jr["witnesses"] = std::move(wits);
  return jr;
}

inline OrderedJson curve_to_json(const TropicalCurve& c) {
  OrderedJson j;
  j["n"] = c.n;
  OrderedJson rays = OrderedJson::array();
  for (const auto& r : c.rays) rays.push_back(ray_to_json(r));
  j["rays"] = std::move(rays);
  return j;
}

inline TropicalCurve curve_from_json(const OrderedJson& j) {
  TropicalCurve c;
  c.n = j.at("n").get<int>();
  for (const auto& jr : j.at("rays")) {
    Ray r;
    r.direction = jr.at("direction").get<ExponentVector>();
    if (static_cast<int>(r.direction.size()) != c.n)
      throw std::invalid_argument("curve json: direction length mismatch");
    r.multiplicity = jr.at("multiplicity").get<std::int64_t>();
    if (jr.contains("witnesses")) {
      for (const auto& jw : jr.at("witnesses")) {
        ComplexPoint p;
        for (const auto& jc : jw)
          p.emplace_back(jc.at(0).get<double>(), jc.at(1).get<double>());
        r.witnesses.push_back(std::move(p));
      }
    }
    c.rays.push_back(std::move(r));
  }
  sort_rays(c);
  return c;
}

inline OrderedJson config_to_json(const Config& cfg) {
  OrderedJson j;
  j["rounds"] = cfg.max_rounds;
  j["log_c1"] = cfg.log_c1;
  j["log_c2"] = cfg.log_c2;
  j["epsilon"] = cfg.epsilon;
  j["a0_modulus"] = cfg.a0_modulus;
  j["threads"] = cfg.threads;
  return j;
}

inline void config_from_json(const OrderedJson& j, Config& cfg) {
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("rounds")) cfg.max_rounds = j.at("rounds").get<int>();
  if (j.contains("log_c1")) cfg.log_c1 = j.at("log_c1").get<double>();
  if (j.contains("log_c2")) cfg.log_c2 = j.at("log_c2").get<double>();
  if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
  if (j.contains("a0_modulus")) cfg.a0_modulus = j.at("a0_modulus").get<double>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
}

inline OrderedJson report_to_json(const RunReport& rep) {
  OrderedJson j;
  j["n"] = rep.n;
  OrderedJson rays = OrderedJson::array();
  for (const auto& r : rep.curve.rays) rays.push_back(ray_to_json(r));
  j["rays"] = std::move(rays);
  j["numeric_degree"] = rep.numeric_deg;
  if (rep.trop_deg) j["tropical_degree"] = *rep.trop_deg;
  else j["tropical_degree"] = nullptr;
  j["balanced"] = rep.balanced;
  j["complete"] = rep.complete;
  j["defect"] = rep.defect;
  j["config"] = config_to_json(rep.config);
  j["seed"] = rep.seed;
  return j;
}

}  // namespace trop
