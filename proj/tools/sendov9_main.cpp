// Command-line driver for the certification engine; links the C API only.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sendov9.h"

namespace {

constexpr int kExitCertified = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

struct SessionGuard {
  s9_session* s = s9_session_new();
  ~SessionGuard() { s9_session_free(s); }
};

struct StringGuard {
  char* p = nullptr;
  ~StringGuard() { s9_string_free(p); }
};

int exit_of_verdict(int verdict) {
  switch (verdict) {
    case S9_CERTIFIED: return kExitCertified;
    case S9_INFEASIBLE_REGION: return kExitCertified;  // empty region, reported as such
    case S9_REFUTED: return kExitRefuted;
    default: return kExitInconclusive;
  }
}

bool apply_common(s9_session* s, const std::vector<std::string>& mutations, int max_depth,
                  std::string min_width, int jobs, int x_pieces, std::uint64_t box_budget) {
  auto set_opt = [&](const char* k, const std::string& v) {
    if (s9_set_option(s, k, v.c_str()) != S9_OK) {
      std::cerr << "error: " << s9_last_error(s) << "\n";
      return false;
    }
    return true;
  };
  if (!set_opt("max_depth", std::to_string(max_depth))) return false;
  if (!min_width.empty() && !set_opt("min_width", min_width)) return false;
  if (!set_opt("jobs", std::to_string(jobs))) return false;
  if (!set_opt("x_cover_pieces", std::to_string(x_pieces))) return false;
  if (!set_opt("box_budget", std::to_string(box_budget))) return false;
  for (const std::string& m : mutations) {
    auto eq = m.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --mutate expects key=value, got '" << m << "'\n";
      return false;
    }
    if (s9_set_mutation(s, m.substr(0, eq).c_str(), m.substr(eq + 1).c_str()) != S9_OK) {
      std::cerr << "error: " << s9_last_error(s) << "\n";
      return false;
    }
  }
  return true;
}

std::string default_out_dir() {
  const char* env = std::getenv("SENDOV_CERT_DIR");
  return env && *env ? env : "./certificates";
}

bool read_file(const std::string& path, std::string* out) {
  std::ifstream in(path);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  *out = ss.str();
  return true;
}

void render_markdown(const std::string& report_json) {
  auto j = nlohmann::json::parse(report_json);
  std::cout << "# Verification report\n\n";
  std::cout << "Verdict: **" << j.at("verdict").get<std::string>() << "**\n\n";
  std::cout << "| condition | status | boxes | worst margin lo |\n";
  std::cout << "|---|---|---|---|\n";
  for (const auto& c : j.at("conditions")) {
    std::cout << "| " << c.at("condition_id").get<std::string>() << " | "
              << c.at("status").get<std::string>() << " | "
              << c.at("boxes_processed").get<std::uint64_t>() << " | "
              << c.at("worst_margin").at("lo").get<double>() << " |\n";
  }
  std::cout << "\nAssumptions:\n";
  for (const auto& a : j.at("assumption_ledger"))
    std::cout << "- `" << a.at("id").get<std::string>() << "`: "
              << a.at("statement").get<std::string>() << "\n";
}

// "lo:hi" or "lo:hi:step" -> JSON array
bool parse_range(const std::string& text, bool want_step, nlohmann::json* out) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    try {
      parts.push_back(std::stod(tok));
    } catch (...) {
      return false;
    }
  }
  if (want_step && parts.size() == 3) {
    *out = nlohmann::json{parts[0], parts[1], parts[2]};
    return true;
  }
  if (!want_step && parts.size() == 2) {
    *out = nlohmann::json{parts[0], parts[1]};
    return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sendov9 - certified verification of the degree-9 Sendov inequalities"};
  app.require_subcommand(1);

  std::vector<std::string> mutations;
  int max_depth = 48;
  std::string min_width;
  int jobs = 1;
  int x_pieces = 16;
  std::uint64_t box_budget = 10000000;
  std::string format = "json";
  app.add_option("--mutate", mutations, "override a proof constant, key=value (test hook)");
  app.add_option("--max-depth", max_depth, "subdivision depth limit");
  app.add_option("--min-width", min_width, "smallest box width before giving up");
  app.add_option("--jobs", jobs, "worker threads");
  app.add_option("--x-pieces", x_pieces, "x covering pieces in the f-sigma conditions");
  app.add_option("--box-budget", box_budget, "box processing budget per condition");
  app.add_option("--format", format, "output format: json or md")
      ->check(CLI::IsMember({"json", "md"}));

  auto* verify = app.add_subcommand("verify-all", "run the full certification chain");
  std::string out_dir = default_out_dir();
  verify->add_option("--out", out_dir, "certificate output directory");

  auto* certify = app.add_subcommand("certify", "certify a single condition");
  std::string cond_id;
  std::string range_a, range_q, range_x;
  std::string cert_out;
  certify->add_option("condition", cond_id, "condition id")->required();
  certify->add_option("--a", range_a, "override the a range, lo:hi");
  certify->add_option("--q", range_q, "override the q range, lo:hi");
  certify->add_option("--x", range_x, "override the x range, lo:hi");
  certify->add_option("--out", cert_out, "write the certificate JSON here");

  auto* replay = app.add_subcommand("replay", "re-verify a stored certificate");
  std::string replay_path;
  replay->add_option("path", replay_path, "certificate file")->required();

  auto* poly = app.add_subcommand("poly", "derived quantities for a polynomial config");
  std::string poly_path;
  poly->add_option("path", poly_path, "config JSON file")->required();

  auto* sample = app.add_subcommand("sample", "run an oracle suite");
  std::string suite;
  std::uint64_t trials = 1000, seed = 1;
  std::string golden_path = "data/golden.json";
  sample->add_option("suite", suite, "sigma-bound | identities | mobius | spotchecks")
      ->required();
  sample->add_option("--trials", trials, "trial count");
  sample->add_option("--seed", seed, "rng seed");
  sample->add_option("--golden", golden_path, "golden file (spotchecks)");

  auto* curves = app.add_subcommand("curves", "emit sweep CSV for external plotting");
  std::string curve_case = "i";
  std::string curve_a = "0.845:1:0.005", curve_q;
  std::string curve_out;
  curves->add_option("--case", curve_case, "case name: i, ii, iii_a, iii_b, iv");
  curves->add_option("--a", curve_a, "a grid lo:hi:step");
  curves->add_option("--q", curve_q, "q grid lo:hi:step");
  curves->add_option("--out", curve_out, "write CSV here instead of stdout");

  auto* golden = app.add_subcommand("golden-gen", "regenerate the golden value file");
  std::string golden_out;
  golden->add_option("--out", golden_out, "write golden JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  SessionGuard session;
  if (!apply_common(session.s, mutations, max_depth, min_width, jobs, x_pieces, box_budget))
    return kExitUsage;

  if (verify->parsed()) {
    int verdict = S9_INCONCLUSIVE;
    if (s9_verify_all(session.s, out_dir.c_str(), &verdict) != S9_OK) {
      std::cerr << "error: " << s9_last_error(session.s) << "\n";
      return kExitUsage;
    }
    std::string report_text;
    if (!read_file(out_dir + "/report.json", &report_text)) {
      std::cerr << "error: report was not written\n";
      return kExitUsage;
    }
    if (format == "md")
      render_markdown(report_text);
    else
      std::cout << report_text;
    return exit_of_verdict(verdict);
  }

  if (certify->parsed()) {
    std::string box_json = "null";
    nlohmann::json dims = nlohmann::json::array();
    auto add_dim = [&](const std::string& name, const std::string& text) {
      if (text.empty()) return true;
      nlohmann::json r;
      if (!parse_range(text, false, &r)) {
        std::cerr << "error: bad range '" << text << "' (expected lo:hi)\n";
        return false;
      }
      dims.push_back({{"name", name}, {"lo", r[0]}, {"hi", r[1]}});
      return true;
    };
    if (!add_dim("a", range_a) || !add_dim("q", range_q) || !add_dim("x", range_x))
      return kExitUsage;
    if (!dims.empty()) box_json = dims.dump();

    StringGuard cert_json;
    int verdict = S9_INCONCLUSIVE;
    if (s9_certify(session.s, cond_id.c_str(), box_json.c_str(), &cert_json.p, &verdict) !=
        S9_OK) {
      std::cerr << "error: " << s9_last_error(session.s) << "\n";
      return kExitUsage;
    }
    if (!cert_out.empty()) {
      std::ofstream out(cert_out);
      if (!out) {
        std::cerr << "error: cannot write " << cert_out << "\n";
        return kExitUsage;
      }
      out << cert_json.p << "\n";
      auto j = nlohmann::json::parse(std::string(cert_json.p));
      std::cout << cond_id << ": " << j.at("status").get<std::string>() << " ("
                << j.at("stats").at("boxes_processed").get<std::uint64_t>() << " boxes)\n";
    } else {
      std::cout << cert_json.p << "\n";
    }
    return exit_of_verdict(verdict);
  }

  if (replay->parsed()) {
    std::string text;
    if (!read_file(replay_path, &text)) {
      std::cerr << "error: cannot read " << replay_path << "\n";
      return kExitUsage;
    }
    int verdict = S9_REFUTED;
    StringGuard reason;
    if (s9_replay(session.s, text.c_str(), &verdict, &reason.p) != S9_OK) {
      std::cerr << "error: " << s9_last_error(session.s) << "\n";
      return kExitUsage;
    }
    if (verdict == S9_CERTIFIED) {
      std::cout << "replay ok\n";
      return kExitCertified;
    }
    std::cout << "replay FAILED: " << (reason.p ? reason.p : "") << "\n";
    return kExitRefuted;
  }

  if (poly->parsed()) {
    std::string text;
    if (!read_file(poly_path, &text)) {
      std::cerr << "error: cannot read " << poly_path << "\n";
      return kExitUsage;
    }
    StringGuard report;
    if (s9_poly_report(session.s, text.c_str(), &report.p) != S9_OK) {
      std::cerr << "error: " << s9_last_error(session.s) << "\n";
      return kExitUsage;
    }
    std::cout << report.p << "\n";
    return kExitCertified;
  }

  if (sample->parsed()) {
    StringGuard report;
    long long violations = -1;
    if (s9_oracle_run(session.s, suite.c_str(), trials, seed, golden_path.c_str(), &report.p,
                      &violations) != S9_OK) {
      std::cerr << "error: " << s9_last_error(session.s) << "\n";
      return kExitUsage;
    }
    std::cout << report.p << "\n";
    return violations == 0 ? kExitCertified : kExitRefuted;
  }

  if (curves->parsed()) {
    nlohmann::json grid;
    grid["case"] = curve_case;
    nlohmann::json r;
    if (!parse_range(curve_a, true, &r)) {
      std::cerr << "error: bad --a grid (expected lo:hi:step)\n";
      return kExitUsage;
    }
    grid["a"] = r;
    if (!curve_q.empty()) {
      if (!parse_range(curve_q, true, &r)) {
        std::cerr << "error: bad --q grid (expected lo:hi:step)\n";
        return kExitUsage;
      }
      grid["q"] = r;
    }
    StringGuard csv;
    if (s9_curves_csv(session.s, grid.dump().c_str(), &csv.p) != S9_OK) {
      std::cerr << "error: " << s9_last_error(session.s) << "\n";
      return kExitUsage;
    }
    if (!curve_out.empty()) {
      std::ofstream out(curve_out);
      if (!out) {
        std::cerr << "error: cannot write " << curve_out << "\n";
        return kExitUsage;
      }
      out << csv.p;
    } else {
      std::cout << csv.p;
    }
    return kExitCertified;
  }

  if (golden->parsed()) {
    StringGuard text;
    if (s9_golden_generate(session.s, &text.p) != S9_OK) {
      std::cerr << "error: " << s9_last_error(session.s) << "\n";
      return kExitUsage;
    }
    if (!golden_out.empty()) {
      std::ofstream out(golden_out);
      if (!out) {
        std::cerr << "error: cannot write " << golden_out << "\n";
        return kExitUsage;
      }
      out << text.p;
    } else {
      std::cout << text.p;
    }
    return kExitCertified;
  }

  return kExitUsage;
}
