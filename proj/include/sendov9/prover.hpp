#ifndef SENDOV9_PROVER_HPP
#define SENDOV9_PROVER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sendov9/formulas.hpp"
#include "sendov9/interval.hpp"

namespace sendov {

struct BoxDim {
  std::string name;
  Interval range;
};

/// Axis-aligned product of 1-2 parameter intervals; the unit of subdivision.
struct Box {
  std::vector<BoxDim> dims;
  int depth = 0;
  std::string path;  // subdivision trail: pairs of (dim digit, 'L'/'R')

  const Interval& operator[](const std::string& name) const {
    for (const BoxDim& d : dims)
      if (d.name == name) return d.range;
    throw DomainError("Box: no dimension '" + name + "'");
  }
  bool has(const std::string& name) const {
    for (const BoxDim& d : dims)
      if (d.name == name) return true;
    return false;
  }
};

enum class Sign { Positive, Negative };

enum class LeafKind {
  Sign,        // direct enclosure decided the target sign
  Strip,       // one-sided divergence bound decided it (a -> 1 strip)
  Quotient,    // (1-a)-quotient form decided it (threshold near a = 1)
  Infeasible,  // box certainly empty of polynomials
  Gap,         // 4 < U < 64/9 not certifiable here (hypothesis gap)
  Residual,    // undecided at resource limits
  Violation    // enclosure proves the inequality fails on this box
};

const char* leaf_kind_name(LeafKind k);
LeafKind leaf_kind_from_name(const std::string& s);

/// What a condition reports for one box.
struct CondEval {
  Interval enc{0.0};             // enclosure of the certified expression
  LeafKind kind = LeafKind::Sign;
  bool infeasible = false;       // certainly outside the feasible region
  bool undecidable = false;      // must split regardless of the enclosure
  bool domain_gap = false;       // failed 4 < U < 64/9 prerequisites
  int split_dim = -1;            // preferred split dimension, -1 = widest
};

/// An exact-arithmetic side fact attached to a certificate (equality
/// endpoints the interval engine cannot certify).
struct ExactCheck {
  std::string description;
  bool holds = false;
};

/// A certifiable sign condition over a 1-2 dimensional parameter box.
class Condition {
 public:
  Condition(std::string id, Sign target, Box domain)
      : id_(std::move(id)), target_(target), domain_(std::move(domain)) {}
  virtual ~Condition() = default;

  const std::string& id() const { return id_; }
  Sign target() const { return target_; }
  const Box& domain() const { return domain_; }

  virtual CondEval evaluate(const Box& box) const = 0;
  virtual std::vector<ExactCheck> exact_checks() const { return {}; }
  virtual std::vector<std::string> assumptions() const { return {}; }

 private:
  std::string id_;
  Sign target_;
  Box domain_;
};

enum class CertStatus { Certified, Refuted, Inconclusive, InfeasibleRegion };
const char* cert_status_name(CertStatus s);

struct Leaf {
  std::string path;
  Box box;
  LeafKind kind = LeafKind::Sign;
  Interval margin{0.0};
};

struct Witness {
  std::vector<std::pair<std::string, double>> point;
  Interval enclosure{0.0};
};

struct ProverOptions {
  int max_depth = 48;
  double min_width = 0x1p-44;
  std::uint64_t box_budget = 10000000;
  int jobs = 1;
  int x_cover_pieces = 16;  // inner covering of x in the f-sigma conditions
};

struct Certificate {
  std::string condition_id;
  Sign target = Sign::Positive;
  Box domain;
  ProverOptions options;
  std::map<std::string, std::string> mutations;
  std::string params_desc;
  CertStatus status = CertStatus::Inconclusive;
  std::uint64_t boxes_processed = 0;
  int max_depth_reached = 0;
  Interval worst_margin{0.0};
  std::uint64_t certified_leaves = 0;
  std::uint64_t infeasible_leaves = 0;
  std::uint64_t gap_leaves = 0;
  std::uint64_t residual_leaves = 0;
  std::vector<Leaf> leaves;
  std::vector<ExactCheck> exact_checks;
  std::vector<std::string> assumptions;
  std::optional<Witness> witness;
  std::uint64_t digest = 0;

  std::string to_json() const;
  static Certificate from_json(const std::string& text);
  std::uint64_t compute_digest() const;
};

/// Adaptive bisection engine: splits the widest (domain-relative) dimension,
/// ties toward the first dimension (a), until every leaf decides the target
/// sign, is proven infeasible, or resource limits are hit.
class Prover {
 public:
  explicit Prover(ProverOptions opts = {}) : opts_(opts) {}

  Certificate certify(const Condition& condition) const;
  Certificate certify(const Condition& condition, const Box& domain) const;

  /// Leaf-by-leaf re-verification of a stored certificate: tiling of the
  /// domain, bit-exact margins, kinds, digest, status. Returns false with a
  /// reason on any mismatch.
  bool replay(const Condition& condition, const Certificate& stored,
              std::string* reason) const;

  const ProverOptions& options() const { return opts_; }

 private:
  ProverOptions opts_;
};

// ---- the proof DAG -----------------------------------------------------------

/// All box conditions of the proof, built against a parameter set.
std::vector<std::shared_ptr<Condition>> make_conditions(const Params& params,
                                                        const ProverOptions& opts);
std::shared_ptr<Condition> find_condition(const std::string& id, const Params& params,
                                          const ProverOptions& opts);

/// The constant identity 9/crit_product = (2 sin(pi/9))^2 as a certificate
/// (single exact leaf; Refuted when the mutated constant breaks it).
Certificate certify_product_identity(const Params& params);

struct AssumptionEntry {
  std::string id;
  std::string statement;
};
const std::vector<AssumptionEntry>& assumption_ledger();

struct TheoremReport {
  std::string verdict;  // "certified", "refuted", "unproven"
  std::string params_desc;
  std::map<std::string, std::string> mutations;
  std::vector<Certificate> certificates;
  std::string to_json() const;
};

/// Runs the whole dependency chain in order: constant identity, positivity
/// floor, threshold margin, f-monotonicity, the five f-sigma conditions, the
/// five case contradictions.
TheoremReport verify_all(const Params& params, const ProverOptions& opts,
                         const std::map<std::string, std::string>& mutations = {});

/// Certify any condition id, including "sin-product-identity"; optional
/// sub-box override for the box conditions.
Certificate certify_by_id(const std::string& id, const Params& params,
                          const ProverOptions& opts,
                          const std::optional<Box>& domain_override = std::nullopt,
                          const std::map<std::string, std::string>& mutations = {});

/// Re-verify a stored certificate (conditions are rebuilt from the stored
/// mutations and options). Returns false with a reason on any mismatch.
bool replay_certificate(const Certificate& stored, std::string* reason);

}  // namespace sendov

#endif
