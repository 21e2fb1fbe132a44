#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "sendov9/prover.hpp"

namespace sendov {

namespace {

std::string hex(double d) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", d);
  return std::string(buf);
}

double unhex(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

nlohmann::json interval_json(const Interval& v) {
  return nlohmann::json{{"lo_hex", hex(v.lo)}, {"hi_hex", hex(v.hi)}, {"lo", v.lo}, {"hi", v.hi}};
}

Interval interval_from(const nlohmann::json& j) {
  return Interval(unhex(j.at("lo_hex").get<std::string>()),
                  unhex(j.at("hi_hex").get<std::string>()));
}

nlohmann::json box_json(const Box& b) {
  nlohmann::json dims = nlohmann::json::array();
  for (const BoxDim& d : b.dims) {
    nlohmann::json dj = interval_json(d.range);
    dj["name"] = d.name;
    dims.push_back(dj);
  }
  return dims;
}

Box box_from(const nlohmann::json& j) {
  Box b;
  for (const auto& dj : j) b.dims.push_back({dj.at("name").get<std::string>(), interval_from(dj)});
  return b;
}

// FNV-1a 64 over the canonical certification payload.
struct Fnv {
  std::uint64_t h = 1469598103934665603ULL;
  void feed(const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    feed_sep();
  }
  void feed_sep() {
    h ^= 0x1f;
    h *= 1099511628211ULL;
  }
};

const char* sign_name(Sign s) { return s == Sign::Positive ? "positive" : "negative"; }

}  // namespace

std::uint64_t Certificate::compute_digest() const {
  Fnv f;
  f.feed(condition_id);
  f.feed(sign_name(target));
  for (const BoxDim& d : domain.dims) {
    f.feed(d.name);
    f.feed(hex(d.range.lo));
    f.feed(hex(d.range.hi));
  }
  f.feed(std::to_string(options.max_depth));
  f.feed(hex(options.min_width));
  f.feed(std::to_string(options.x_cover_pieces));
  f.feed(params_desc);
  for (const auto& [k, v] : mutations) {
    f.feed(k);
    f.feed(v);
  }
  f.feed(cert_status_name(status));
  for (const Leaf& l : leaves) {
    f.feed(l.path);
    f.feed(leaf_kind_name(l.kind));
    for (const BoxDim& d : l.box.dims) {
      f.feed(hex(d.range.lo));
      f.feed(hex(d.range.hi));
    }
    f.feed(hex(l.margin.lo));
    f.feed(hex(l.margin.hi));
  }
  for (const ExactCheck& c : exact_checks) {
    f.feed(c.description);
    f.feed(c.holds ? "1" : "0");
  }
  for (const std::string& a : assumptions) f.feed(a);
  if (witness) {
    for (const auto& [n, v] : witness->point) {
      f.feed(n);
      f.feed(hex(v));
    }
    f.feed(hex(witness->enclosure.lo));
    f.feed(hex(witness->enclosure.hi));
  }
  return f.h;
}

std::string Certificate::to_json() const {
  nlohmann::json j;
  j["schema"] = "sendov9.certificate/1";
  j["condition_id"] = condition_id;
  j["target"] = sign_name(target);
  j["domain"] = box_json(domain);
  j["options"] = {{"max_depth", options.max_depth},
                  {"min_width_hex", hex(options.min_width)},
                  {"box_budget", options.box_budget},
                  {"x_cover_pieces", options.x_cover_pieces}};
  j["mutations"] = mutations;
  j["params"] = params_desc;
  j["status"] = cert_status_name(status);
  j["stats"] = {{"boxes_processed", boxes_processed},
                {"max_depth_reached", max_depth_reached},
                {"worst_margin", interval_json(worst_margin)},
                {"certified_leaves", certified_leaves},
                {"infeasible_leaves", infeasible_leaves},
                {"gap_leaves", gap_leaves},
                {"residual_leaves", residual_leaves}};
  j["assumptions"] = assumptions;
  nlohmann::json checks = nlohmann::json::array();
  for (const ExactCheck& c : exact_checks)
    checks.push_back({{"description", c.description}, {"holds", c.holds}});
  j["exact_checks"] = checks;
  nlohmann::json lv = nlohmann::json::array();
  for (const Leaf& l : leaves) {
    nlohmann::json lj;
    lj["path"] = l.path;
    lj["kind"] = leaf_kind_name(l.kind);
    lj["box"] = box_json(l.box);
    lj["margin"] = interval_json(l.margin);
    lv.push_back(lj);
  }
  j["leaves"] = lv;
  if (witness) {
    nlohmann::json wj;
    nlohmann::json pt = nlohmann::json::array();
    for (const auto& [n, v] : witness->point)
      pt.push_back({{"name", n}, {"value_hex", hex(v)}, {"value", v}});
    wj["point"] = pt;
    wj["enclosure"] = interval_json(witness->enclosure);
    j["witness"] = wj;
  }
  char dg[32];
  std::snprintf(dg, sizeof(dg), "fnv1a64:%016" PRIx64, digest);
  j["digest"] = dg;
  return j.dump(1);
}

Certificate Certificate::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("schema").get<std::string>() != "sendov9.certificate/1")
    throw DomainError("unknown certificate schema");
  Certificate c;
  c.condition_id = j.at("condition_id").get<std::string>();
  c.target = j.at("target").get<std::string>() == "positive" ? Sign::Positive : Sign::Negative;
  c.domain = box_from(j.at("domain"));
  const auto& oj = j.at("options");
  c.options.max_depth = oj.at("max_depth").get<int>();
  c.options.min_width = unhex(oj.at("min_width_hex").get<std::string>());
  c.options.box_budget = oj.at("box_budget").get<std::uint64_t>();
  c.options.x_cover_pieces = oj.at("x_cover_pieces").get<int>();
  c.mutations = j.at("mutations").get<std::map<std::string, std::string>>();
  c.params_desc = j.at("params").get<std::string>();
  const std::string st = j.at("status").get<std::string>();
  if (st == "certified")
    c.status = CertStatus::Certified;
  else if (st == "refuted")
    c.status = CertStatus::Refuted;
  else if (st == "inconclusive")
    c.status = CertStatus::Inconclusive;
  else if (st == "infeasible_region")
    c.status = CertStatus::InfeasibleRegion;
  else
    throw DomainError("unknown certificate status '" + st + "'");
  const auto& sj = j.at("stats");
  c.boxes_processed = sj.at("boxes_processed").get<std::uint64_t>();
  c.max_depth_reached = sj.at("max_depth_reached").get<int>();
  c.worst_margin = interval_from(sj.at("worst_margin"));
  c.certified_leaves = sj.at("certified_leaves").get<std::uint64_t>();
  c.infeasible_leaves = sj.at("infeasible_leaves").get<std::uint64_t>();
  c.gap_leaves = sj.at("gap_leaves").get<std::uint64_t>();
  c.residual_leaves = sj.at("residual_leaves").get<std::uint64_t>();
  c.assumptions = j.at("assumptions").get<std::vector<std::string>>();
  for (const auto& cj : j.at("exact_checks"))
    c.exact_checks.push_back(
        {cj.at("description").get<std::string>(), cj.at("holds").get<bool>()});
  for (const auto& lj : j.at("leaves")) {
    Leaf l;
    l.path = lj.at("path").get<std::string>();
    l.kind = leaf_kind_from_name(lj.at("kind").get<std::string>());
    l.box = box_from(lj.at("box"));
    l.margin = interval_from(lj.at("margin"));
    c.leaves.push_back(std::move(l));
  }
  if (j.contains("witness")) {
    Witness w;
    for (const auto& pj : j.at("witness").at("point"))
      w.point.emplace_back(pj.at("name").get<std::string>(),
                           unhex(pj.at("value_hex").get<std::string>()));
    w.enclosure = interval_from(j.at("witness").at("enclosure"));
    c.witness = std::move(w);
  }
  std::string dg = j.at("digest").get<std::string>();
  if (dg.rfind("fnv1a64:", 0) != 0) throw DomainError("bad digest field");
  c.digest = std::strtoull(dg.c_str() + 8, nullptr, 16);
  return c;
}

std::string TheoremReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "sendov9.report/1";
  j["verdict"] = verdict;
  j["params"] = params_desc;
  j["mutations"] = mutations;
  nlohmann::json ledger = nlohmann::json::array();
  for (const AssumptionEntry& a : assumption_ledger())
    ledger.push_back({{"id", a.id}, {"statement", a.statement}});
  j["assumption_ledger"] = ledger;
  nlohmann::json conds = nlohmann::json::array();
  for (const Certificate& c : certificates) {
    conds.push_back({{"condition_id", c.condition_id},
                     {"status", cert_status_name(c.status)},
                     {"boxes_processed", c.boxes_processed},
                     {"max_depth_reached", c.max_depth_reached},
                     {"certified_leaves", c.certified_leaves},
                     {"infeasible_leaves", c.infeasible_leaves},
                     {"gap_leaves", c.gap_leaves},
                     {"residual_leaves", c.residual_leaves},
                     {"worst_margin", interval_json(c.worst_margin)},
                     {"assumptions", c.assumptions}});
  }
  j["conditions"] = conds;
  return j.dump(1);
}

}  // namespace sendov
