#include "sendov9.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "json.hpp"
#include "sendov9/formulas.hpp"
#include "sendov9/oracle.hpp"
#include "sendov9/prover.hpp"

using namespace sendov;

struct s9_session {
  std::map<std::string, std::string> mutations;
  ProverOptions opts;
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
s9_status guarded(s9_session* session, Fn&& fn) {
  if (!session) return S9_ERR_ARGUMENT;
  try {
    return fn();
  } catch (const DomainError& e) {
    session->last_error = e.what();
    return S9_ERR_DOMAIN;
  } catch (const std::exception& e) {
    session->last_error = e.what();
    return S9_ERR_INTERNAL;
  }
}

int verdict_of(CertStatus s) {
  switch (s) {
    case CertStatus::Certified: return S9_CERTIFIED;
    case CertStatus::Refuted: return S9_REFUTED;
    case CertStatus::Inconclusive: return S9_INCONCLUSIVE;
    case CertStatus::InfeasibleRegion: return S9_INFEASIBLE_REGION;
  }
  return S9_INCONCLUSIVE;
}

}  // namespace

extern "C" {

s9_session* s9_session_new(void) { return new s9_session(); }

void s9_session_free(s9_session* session) { delete session; }

const char* s9_last_error(const s9_session* session) {
  return session ? session->last_error.c_str() : "null session";
}

s9_status s9_set_option(s9_session* session, const char* key, const char* value) {
  return guarded(session, [&]() -> s9_status {
    if (!key || !value) {
      session->last_error = "null option";
      return S9_ERR_ARGUMENT;
    }
    std::string k = key, v = value;
    if (k == "max_depth")
      session->opts.max_depth = std::stoi(v);
    else if (k == "min_width")
      session->opts.min_width = std::stod(v);
    else if (k == "box_budget")
      session->opts.box_budget = std::stoull(v);
    else if (k == "jobs")
      session->opts.jobs = std::max(1, std::stoi(v));
    else if (k == "x_cover_pieces")
      session->opts.x_cover_pieces = std::max(1, std::stoi(v));
    else {
      session->last_error = "unknown option '" + k + "'";
      return S9_ERR_ARGUMENT;
    }
    return S9_OK;
  });
}

s9_status s9_set_mutation(s9_session* session, const char* key, const char* value) {
  return guarded(session, [&]() -> s9_status {
    if (!key || !value) {
      session->last_error = "null mutation";
      return S9_ERR_ARGUMENT;
    }
    std::map<std::string, std::string> trial = session->mutations;
    trial[key] = value;
    Params::with_mutations(trial);  // validate eagerly
    session->mutations = std::move(trial);
    return S9_OK;
  });
}

s9_status s9_verify_all(s9_session* session, const char* out_dir, int* verdict_out) {
  return guarded(session, [&]() -> s9_status {
    Params params = Params::with_mutations(session->mutations);
    TheoremReport report = verify_all(params, session->opts, session->mutations);
    if (out_dir && *out_dir) {
      namespace fs = std::filesystem;
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      if (ec) {
        session->last_error = "cannot create output directory " + std::string(out_dir);
        return S9_ERR_IO;
      }
      for (const Certificate& c : report.certificates) {
        std::ofstream out(fs::path(out_dir) / (c.condition_id + ".json"));
        if (!out) {
          session->last_error = "cannot write certificate for " + c.condition_id;
          return S9_ERR_IO;
        }
        out << c.to_json() << "\n";
      }
      std::ofstream rout(fs::path(out_dir) / "report.json");
      if (!rout) {
        session->last_error = "cannot write report.json";
        return S9_ERR_IO;
      }
      rout << report.to_json() << "\n";
    }
    if (verdict_out) {
      if (report.verdict == "certified")
        *verdict_out = S9_CERTIFIED;
      else if (report.verdict == "refuted")
        *verdict_out = S9_REFUTED;
      else
        *verdict_out = S9_INCONCLUSIVE;
    }
    return S9_OK;
  });
}

s9_status s9_certify(s9_session* session, const char* condition_id, const char* box_json,
                     char** certificate_json_out, int* verdict_out) {
  return guarded(session, [&]() -> s9_status {
    if (!condition_id) {
      session->last_error = "null condition id";
      return S9_ERR_ARGUMENT;
    }
    Params params = Params::with_mutations(session->mutations);
    std::optional<Box> domain;
    if (box_json && *box_json && std::string(box_json) != "null") {
      nlohmann::json bj = nlohmann::json::parse(box_json);
      Box b;
      for (const auto& dj : bj)
        b.dims.push_back({dj.at("name").get<std::string>(),
                          Interval(dj.at("lo").get<double>(), dj.at("hi").get<double>())});
      domain = std::move(b);
    }
    Certificate cert =
        certify_by_id(condition_id, params, session->opts, domain, session->mutations);
    if (certificate_json_out) *certificate_json_out = dup_string(cert.to_json());
    if (verdict_out) *verdict_out = verdict_of(cert.status);
    return S9_OK;
  });
}

s9_status s9_replay(s9_session* session, const char* certificate_json, int* verdict_out,
                    char** reason_out) {
  return guarded(session, [&]() -> s9_status {
    if (!certificate_json) {
      session->last_error = "null certificate";
      return S9_ERR_ARGUMENT;
    }
    Certificate stored = Certificate::from_json(certificate_json);
    std::string reason;
    bool ok = replay_certificate(stored, &reason);
    if (verdict_out) *verdict_out = ok ? S9_CERTIFIED : S9_REFUTED;
    if (reason_out) *reason_out = dup_string(ok ? "" : reason);
    return S9_OK;
  });
}

s9_status s9_poly_report(s9_session* session, const char* config_json, char** report_json_out) {
  return guarded(session, [&]() -> s9_status {
    if (!config_json) {
      session->last_error = "null config";
      return S9_ERR_ARGUMENT;
    }
    Params params = Params::with_mutations(session->mutations);
    PolyConfig cfg = PolyConfig::from_json_text(config_json);
    std::string report = poly_report_json(cfg, params);
    if (report_json_out) *report_json_out = dup_string(report);
    return S9_OK;
  });
}

s9_status s9_oracle_run(s9_session* session, const char* suite, uint64_t trials, uint64_t seed,
                        const char* golden_path, char** report_json_out,
                        long long* violations_out) {
  return guarded(session, [&]() -> s9_status {
    if (!suite) {
      session->last_error = "null suite";
      return S9_ERR_ARGUMENT;
    }
    oracle::SuiteReport rep =
        oracle::run_suite(suite, trials, seed, golden_path ? golden_path : "");
    if (report_json_out) *report_json_out = dup_string(rep.to_json());
    if (violations_out) *violations_out = rep.violations;
    return S9_OK;
  });
}

s9_status s9_curves_csv(s9_session* session, const char* grid_json, char** csv_out) {
  return guarded(session, [&]() -> s9_status {
    if (!grid_json) {
      session->last_error = "null grid";
      return S9_ERR_ARGUMENT;
    }
    Params params = Params::with_mutations(session->mutations);
    nlohmann::json gj = nlohmann::json::parse(grid_json);
    const CaseSpec& cs = CaseSpec::by_name(gj.at("case").get<std::string>());
    auto axis = [&](const char* name, double def_lo, double def_hi,
                    double def_step) -> std::array<double, 3> {
      if (!gj.contains(name)) return {def_lo, def_hi, def_step};
      const auto& aj = gj.at(name);
      return {aj[0].get<double>(), aj[1].get<double>(), aj[2].get<double>()};
    };
    auto [a_lo, a_hi, a_step] = axis("a", 0.845, 1.0, 0.005);
    double q_default = cs.has_q() ? cs.q_lower(params).hi : 1.0;
    auto [q_lo, q_hi, q_step] = axis("q", q_default, 1.0, 0.01);
    if (a_step <= 0.0 || q_step <= 0.0) {
      session->last_error = "step must be positive";
      return S9_ERR_ARGUMENT;
    }

    std::string csv = "a,q,case,U_A,U_B,U,lhs213,Ustar,margin\n";
    char line[512];
    for (double a = a_lo; a <= a_hi + 1e-15; a += a_step) {
      double a_pt = std::min(a, 1.0 - 1e-9);
      for (double q = q_lo; q <= q_hi + 1e-15; q += (cs.has_q() ? q_step : 1e9)) {
        double q_pt = cs.has_q() ? std::min(q, 1.0) : 1.0;
        Interval ai(a_pt), qi(q_pt);
        if (cs.has_q() && params.q_feasibility_clip &&
            case_feasibility(cs, ai, qi) == Feasibility::No)
          continue;
        UCaseResult uc = u_case(cs, ai, qi, params);
        double lhs_mid = 0.0, us_mid = 0.0, margin = 0.0;
        try {
          Interval lhs = contradiction_lhs(uc.U, ai);
          Interval us = u_star(ai, params);
          lhs_mid = lhs.mid();
          us_mid = us.mid();
          margin = (lhs - us).mid();
        } catch (const DomainError&) {
          lhs_mid = us_mid = margin = std::nan("");
        }
        std::snprintf(line, sizeof(line), "%.9g,%.9g,%s,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                      a_pt, q_pt, cs.name, uc.UA.mid(), uc.UB.mid(), uc.U.mid(), lhs_mid,
                      us_mid, margin);
        csv += line;
        if (!cs.has_q()) break;
      }
    }
    if (csv_out) *csv_out = dup_string(csv);
    return S9_OK;
  });
}

s9_status s9_golden_generate(s9_session* session, char** json_out) {
  return guarded(session, [&]() -> s9_status {
    std::string text = oracle::generate_golden_json();
    if (json_out) *json_out = dup_string(text);
    return S9_OK;
  });
}

void s9_string_free(char* s) { std::free(s); }

const char* s9_version(void) { return "sendov9 1.0.0"; }

}  // extern "C"
