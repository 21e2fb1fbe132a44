#include "sendov9/prover.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <future>
#include <limits>

namespace sendov {

const char* leaf_kind_name(LeafKind k) {
  switch (k) {
    case LeafKind::Sign: return "sign";
    case LeafKind::Strip: return "strip";
    case LeafKind::Quotient: return "quotient";
    case LeafKind::Infeasible: return "infeasible";
    case LeafKind::Gap: return "gap";
    case LeafKind::Residual: return "residual";
    case LeafKind::Violation: return "violation";
  }
  return "?";
}

LeafKind leaf_kind_from_name(const std::string& s) {
  if (s == "sign") return LeafKind::Sign;
  if (s == "strip") return LeafKind::Strip;
  if (s == "quotient") return LeafKind::Quotient;
  if (s == "infeasible") return LeafKind::Infeasible;
  if (s == "gap") return LeafKind::Gap;
  if (s == "residual") return LeafKind::Residual;
  if (s == "violation") return LeafKind::Violation;
  throw DomainError("unknown leaf kind '" + s + "'");
}

const char* cert_status_name(CertStatus s) {
  switch (s) {
    case CertStatus::Certified: return "certified";
    case CertStatus::Refuted: return "refuted";
    case CertStatus::Inconclusive: return "inconclusive";
    case CertStatus::InfeasibleRegion: return "infeasible_region";
  }
  return "?";
}

// ---- engine -------------------------------------------------------------------

namespace {

struct RunState {
  const Condition* cond = nullptr;
  ProverOptions opts;
  std::vector<double> root_width;
  std::atomic<std::uint64_t> boxes{0};
  std::atomic<int> spawn_slots{0};
};

struct SubResult {
  std::vector<Leaf> leaves;
  int max_depth = 0;
  std::optional<Witness> witness;

  void merge_after(SubResult&& right) {
    leaves.insert(leaves.end(), std::make_move_iterator(right.leaves.begin()),
                  std::make_move_iterator(right.leaves.end()));
    max_depth = std::max(max_depth, right.max_depth);
    if (!witness) witness = std::move(right.witness);
  }
};

Leaf make_leaf(const Box& box, LeafKind kind, const Interval& margin) {
  Leaf l;
  l.path = box.path;
  l.box = box;
  l.kind = kind;
  l.margin = margin;
  return l;
}

Witness make_witness(const Condition& cond, const Box& box, const Interval& fallback) {
  Witness w;
  Box point = box;
  for (BoxDim& d : point.dims) {
    double m = d.range.mid();
    w.point.emplace_back(d.name, m);
    d.range = Interval(m);
  }
  try {
    w.enclosure = cond.evaluate(point).enc;
  } catch (const DomainError&) {
    w.enclosure = fallback;
  }
  return w;
}

SubResult process(const Box& box, RunState& st) {
  SubResult out;
  out.max_depth = box.depth;

  if (st.boxes.fetch_add(1) >= st.opts.box_budget) {
    out.leaves.push_back(make_leaf(box, LeafKind::Residual, Interval(0.0)));
    return out;
  }

  CondEval ev;
  bool eval_failed = false;
  try {
    ev = st.cond->evaluate(box);
  } catch (const DomainError&) {
    eval_failed = true;  // enclosure hit a domain guard; refine
  }

  if (!eval_failed) {
    if (ev.infeasible) {
      out.leaves.push_back(make_leaf(box, LeafKind::Infeasible, Interval(0.0)));
      return out;
    }
    if (!ev.undecidable) {
      bool want_pos = st.cond->target() == Sign::Positive;
      bool proves = want_pos ? (ev.enc.lo > 0.0) : (ev.enc.hi < 0.0);
      bool violates = want_pos ? (ev.enc.hi < 0.0) : (ev.enc.lo > 0.0);
      if (proves) {
        out.leaves.push_back(make_leaf(box, ev.kind, ev.enc));
        return out;
      }
      if (violates) {
        out.leaves.push_back(make_leaf(box, LeafKind::Violation, ev.enc));
        out.witness = make_witness(*st.cond, box, ev.enc);
        return out;
      }
    }
  }

  // choose the dimension with the largest domain-relative width; ties go to
  // the first dimension (a)
  int dim = (!eval_failed && ev.split_dim >= 0 &&
             ev.split_dim < static_cast<int>(box.dims.size()))
                ? ev.split_dim
                : -1;
  if (dim < 0) {
    double best = -1.0;
    for (std::size_t i = 0; i < box.dims.size(); ++i) {
      double rel = box.dims[i].range.width() /
                   std::max(st.root_width[i], std::numeric_limits<double>::min());
      if (rel > best + 1e-15) {
        best = rel;
        dim = static_cast<int>(i);
      }
    }
  }

  const Interval& r = box.dims[static_cast<std::size_t>(dim)].range;
  double mid = r.mid();
  bool splittable = box.depth < st.opts.max_depth && r.width() > st.opts.min_width &&
                    mid > r.lo && mid < r.hi &&
                    st.boxes.load() < st.opts.box_budget;
  if (!splittable) {
    // try the other dimension before giving up
    for (std::size_t i = 0; i < box.dims.size() && !splittable; ++i) {
      if (static_cast<int>(i) == dim) continue;
      const Interval& ri = box.dims[i].range;
      double mi = ri.mid();
      if (box.depth < st.opts.max_depth && ri.width() > st.opts.min_width && mi > ri.lo &&
          mi < ri.hi) {
        dim = static_cast<int>(i);
        mid = mi;
        splittable = true;
      }
    }
  }
  if (!splittable) {
    LeafKind kind = (!eval_failed && ev.domain_gap) ? LeafKind::Gap : LeafKind::Residual;
    out.leaves.push_back(make_leaf(box, kind, eval_failed ? Interval(0.0) : ev.enc));
    return out;
  }

  Box left = box, right = box;
  left.depth = right.depth = box.depth + 1;
  left.dims[static_cast<std::size_t>(dim)].range = Interval(r.lo, mid);
  right.dims[static_cast<std::size_t>(dim)].range = Interval(mid, r.hi);
  left.path += static_cast<char>('0' + dim);
  left.path += 'L';
  right.path += static_cast<char>('0' + dim);
  right.path += 'R';

  SubResult lres, rres;
  bool spawned = false;
  if (box.depth <= 8) {
    if (st.spawn_slots.fetch_sub(1) > 0)
      spawned = true;
    else
      st.spawn_slots.fetch_add(1);
  }
  if (spawned) {
    auto fut = std::async(std::launch::async, [&left, &st] { return process(left, st); });
    rres = process(right, st);
    lres = fut.get();
    st.spawn_slots.fetch_add(1);
  } else {
    lres = process(left, st);
    rres = process(right, st);
  }
  lres.merge_after(std::move(rres));
  lres.max_depth = std::max(lres.max_depth, out.max_depth);
  return lres;
}

}  // namespace

Certificate Prover::certify(const Condition& condition) const {
  return certify(condition, condition.domain());
}

Certificate Prover::certify(const Condition& condition, const Box& domain) const {
  RunState st;
  st.cond = &condition;
  st.opts = opts_;
  st.spawn_slots.store(opts_.jobs - 1);
  for (const BoxDim& d : domain.dims) st.root_width.push_back(d.range.width());

  Box root = domain;
  root.depth = 0;
  root.path.clear();
  SubResult res = process(root, st);

  Certificate cert;
  cert.condition_id = condition.id();
  cert.target = condition.target();
  cert.domain = domain;
  cert.options = opts_;
  cert.boxes_processed = st.boxes.load();
  cert.max_depth_reached = res.max_depth;
  cert.leaves = std::move(res.leaves);
  cert.exact_checks = condition.exact_checks();
  cert.assumptions = condition.assumptions();
  cert.witness = std::move(res.witness);

  bool any_violation = false;
  bool worst_set = false;
  bool want_pos = condition.target() == Sign::Positive;
  for (const Leaf& l : cert.leaves) {
    switch (l.kind) {
      case LeafKind::Infeasible: ++cert.infeasible_leaves; break;
      case LeafKind::Gap: ++cert.gap_leaves; break;
      case LeafKind::Residual: ++cert.residual_leaves; break;
      case LeafKind::Violation: any_violation = true; break;
      default:
        ++cert.certified_leaves;
        if (!worst_set) {
          cert.worst_margin = l.margin;
          worst_set = true;
        } else if (want_pos ? (l.margin.lo < cert.worst_margin.lo)
                            : (l.margin.hi > cert.worst_margin.hi)) {
          cert.worst_margin = l.margin;
        }
        break;
    }
  }
  bool exact_ok = true;
  for (const ExactCheck& c : cert.exact_checks) exact_ok = exact_ok && c.holds;

  if (any_violation || !exact_ok)
    cert.status = CertStatus::Refuted;
  else if (cert.residual_leaves > 0 || cert.gap_leaves > 0)
    cert.status = CertStatus::Inconclusive;
  else if (cert.certified_leaves == 0)
    cert.status = CertStatus::InfeasibleRegion;
  else
    cert.status = CertStatus::Certified;

  cert.digest = cert.compute_digest();
  return cert;
}

// ---- replay ---------------------------------------------------------------------

namespace {

bool same_bits(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

bool same_interval(const Interval& a, const Interval& b) {
  return same_bits(a.lo, b.lo) && same_bits(a.hi, b.hi);
}

// Recursively verify that the set of leaf paths exactly tiles the root box,
// regenerating every leaf box from its path (midpoint splits are pure
// functions of the parent box, so the tiling is reproducible bit-for-bit).
bool verify_tiling(const Box& box, const std::vector<const Leaf*>& leaves,
                   std::size_t prefix, std::string* reason) {
  if (leaves.empty()) {
    *reason = "tiling: missing leaves under path prefix";
    return false;
  }
  if (leaves.size() == 1 && leaves[0]->path.size() == prefix) {
    const Leaf& l = *leaves[0];
    if (l.box.dims.size() != box.dims.size()) {
      *reason = "tiling: leaf dimension mismatch at " + l.path;
      return false;
    }
    for (std::size_t i = 0; i < box.dims.size(); ++i) {
      if (l.box.dims[i].name != box.dims[i].name ||
          !same_interval(l.box.dims[i].range, box.dims[i].range)) {
        *reason = "tiling: leaf box does not match its path at '" + l.path + "'";
        return false;
      }
    }
    return true;
  }
  // the split recorded at this node must be consistent across all leaves
  char dim_char = 0;
  for (const Leaf* l : leaves) {
    if (l->path.size() <= prefix + 1) {
      *reason = "tiling: path prefix collision at '" + l->path + "'";
      return false;
    }
    if (dim_char == 0)
      dim_char = l->path[prefix];
    else if (l->path[prefix] != dim_char) {
      *reason = "tiling: inconsistent split dimension under prefix";
      return false;
    }
  }
  int dim = dim_char - '0';
  if (dim < 0 || dim >= static_cast<int>(box.dims.size())) {
    *reason = "tiling: bad split dimension digit";
    return false;
  }
  const Interval& r = box.dims[static_cast<std::size_t>(dim)].range;
  double mid = r.mid();
  if (!(mid > r.lo && mid < r.hi)) {
    *reason = "tiling: unsplittable range splits in certificate";
    return false;
  }
  std::vector<const Leaf*> left, right;
  for (const Leaf* l : leaves) {
    char side = l->path[prefix + 1];
    if (side == 'L')
      left.push_back(l);
    else if (side == 'R')
      right.push_back(l);
    else {
      *reason = "tiling: bad side marker";
      return false;
    }
  }
  Box lbox = box, rbox = box;
  lbox.dims[static_cast<std::size_t>(dim)].range = Interval(r.lo, mid);
  rbox.dims[static_cast<std::size_t>(dim)].range = Interval(mid, r.hi);
  return verify_tiling(lbox, left, prefix + 2, reason) &&
         verify_tiling(rbox, right, prefix + 2, reason);
}

}  // namespace

bool Prover::replay(const Condition& condition, const Certificate& stored,
                    std::string* reason) const {
  std::string why;
  if (!reason) reason = &why;

  if (stored.compute_digest() != stored.digest) {
    *reason = "digest mismatch";
    return false;
  }
  if (stored.condition_id != condition.id()) {
    *reason = "condition id mismatch";
    return false;
  }

  std::vector<const Leaf*> all;
  all.reserve(stored.leaves.size());
  for (const Leaf& l : stored.leaves) all.push_back(&l);
  if (!verify_tiling(stored.domain, all, 0, reason)) return false;

  bool want_pos = condition.target() == Sign::Positive;
  bool any_violation = false;
  std::uint64_t certified = 0, infeasible = 0, gaps = 0, residual = 0;
  for (const Leaf& l : stored.leaves) {
    switch (l.kind) {
      case LeafKind::Residual:
        ++residual;
        continue;  // resource-limited leaves carry no decision to re-check
      case LeafKind::Gap: {
        ++gaps;
        continue;
      }
      default:
        break;
    }
    CondEval ev;
    try {
      ev = condition.evaluate(l.box);
    } catch (const DomainError&) {
      *reason = "leaf '" + l.path + "' no longer evaluates";
      return false;
    }
    if (l.kind == LeafKind::Infeasible) {
      ++infeasible;
      if (!ev.infeasible) {
        *reason = "leaf '" + l.path + "' is not infeasible on re-evaluation";
        return false;
      }
      continue;
    }
    if (ev.infeasible || ev.undecidable) {
      *reason = "leaf '" + l.path + "' decision no longer reproduces";
      return false;
    }
    if (!same_interval(ev.enc, l.margin)) {
      *reason = "leaf '" + l.path + "' margin differs from re-evaluation";
      return false;
    }
    if (ev.kind != l.kind && l.kind != LeafKind::Violation) {
      *reason = "leaf '" + l.path + "' kind differs";
      return false;
    }
    if (l.kind == LeafKind::Violation) {
      bool violates = want_pos ? (ev.enc.hi < 0.0) : (ev.enc.lo > 0.0);
      if (!violates) {
        *reason = "violation leaf '" + l.path + "' does not violate";
        return false;
      }
      any_violation = true;
    } else {
      bool proves = want_pos ? (ev.enc.lo > 0.0) : (ev.enc.hi < 0.0);
      if (!proves) {
        *reason = "leaf '" + l.path + "' does not certify the sign";
        return false;
      }
      ++certified;
    }
  }

  std::vector<ExactCheck> checks = condition.exact_checks();
  if (checks.size() != stored.exact_checks.size()) {
    *reason = "exact check count mismatch";
    return false;
  }
  bool exact_ok = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (checks[i].description != stored.exact_checks[i].description ||
        checks[i].holds != stored.exact_checks[i].holds) {
      *reason = "exact check mismatch: " + checks[i].description;
      return false;
    }
    exact_ok = exact_ok && checks[i].holds;
  }

  CertStatus expect;
  if (any_violation || !exact_ok)
    expect = CertStatus::Refuted;
  else if (residual > 0 || gaps > 0)
    expect = CertStatus::Inconclusive;
  else if (certified == 0)
    expect = CertStatus::InfeasibleRegion;
  else
    expect = CertStatus::Certified;
  if (expect != stored.status) {
    *reason = "status does not match the leaf evidence";
    return false;
  }

  if (stored.status == CertStatus::Refuted && stored.witness.has_value()) {
    Box point = stored.domain;
    for (BoxDim& d : point.dims) {
      for (const auto& [name, value] : stored.witness->point)
        if (name == d.name) d.range = Interval(value);
    }
    CondEval ev = condition.evaluate(point);
    bool violates = want_pos ? (ev.enc.hi < 0.0) : (ev.enc.lo > 0.0);
    if (!violates) {
      *reason = "stored witness does not violate the inequality";
      return false;
    }
  }
  return true;
}

// ---- conditions ------------------------------------------------------------------

namespace {

Interval domain_a() {
  return Interval(Interval::enclose(Rational(169, 200)).lo, 1.0);
}

Box box1(const std::string& n0, Interval r0) {
  Box b;
  b.dims.push_back({n0, r0});
  return b;
}

Box box2(const std::string& n0, Interval r0, const std::string& n1, Interval r1) {
  Box b;
  b.dims.push_back({n0, r0});
  b.dims.push_back({n1, r1});
  return b;
}

class FloorCondition final : public Condition {
 public:
  FloorCondition() : Condition("positivity-floor", Sign::Positive, box1("a", domain_a())) {}
  CondEval evaluate(const Box& box) const override {
    CondEval ev;
    ev.enc = const_2_1(box["a"]);
    return ev;
  }
};

class ThresholdCondition final : public Condition {
 public:
  explicit ThresholdCondition(const Params& params)
      : Condition("threshold", Sign::Positive, box1("a", domain_a())), params_(params) {}

  CondEval evaluate(const Box& box) const override {
    CondEval ev;
    const Interval& a = box["a"];
    if (a.hi <= kStripStart) {
      ev.enc = threshold_margin(a, params_);
      ev.kind = LeafKind::Sign;
    } else {
      // margin = (1-a) G(a): G > 0 on the box gives strict positivity for
      // a < 1 and degrades gracefully through the equality at a = 1
      ev.enc = threshold_quotient(a, params_);
      ev.kind = LeafKind::Quotient;
    }
    return ev;
  }

  std::vector<ExactCheck> exact_checks() const override {
    std::vector<ExactCheck> out;
    ExprPtr f = threshold_expr(params_);
    Rational at_one[] = {Rational(1)};
    bool zero_at_one = false;
    try {
      zero_at_one = eval_exact(*f, at_one).is_zero();
    } catch (const NonRationalResidue&) {
      zero_at_one = false;
    }
    out.push_back({"margin(1) = 0 exactly (rational evaluation)", zero_at_one});

    LambdaResult lam = lambda_of(domain_a(), Interval::enclose(params_.R));
    out.push_back({"lambda <= sin(pi/9) on the whole a-range", lam.lambda_le_sin_ok});
    out.push_back({"R <= (1 - (1 - sin(pi/9))^9)/a on the whole a-range", lam.r_bound_ok});
    return out;
  }

  std::vector<std::string> assumptions() const override {
    return {"critical-point-halfplane", "gamma0-lower-bound", "mobius-disk-threshold"};
  }

  static constexpr double kStripStart = 1.0 - 0x1p-20;

 private:
  Params params_;
};

class MonotoneNumeratorCondition final : public Condition {
 public:
  MonotoneNumeratorCondition()
      : Condition("f-increasing", Sign::Positive,
                  box2("a", domain_a(), "x",
                       Interval(Interval::enclose(Rational(23, 50)).lo,
                                Interval::enclose(Rational(999, 1000)).hi))) {}

  CondEval evaluate(const Box& box) const override {
    CondEval ev;
    ev.enc = y_factored(box["x"], box["a"]);
    return ev;
  }

  std::vector<ExactCheck> exact_checks() const override {
    // Y(1, a) is affine in a; exact zeros at two distinct rational points
    // prove it vanishes identically on the x = 1 edge.
    ExprPtr y = y_literal_expr();
    bool ok = true;
    for (long av : {0L, 1L}) {
      Rational pt[] = {Rational(1), Rational(av)};
      try {
        ok = ok && eval_exact(*y, pt).is_zero();
      } catch (const NonRationalResidue&) {
        ok = false;
      }
    }
    return {{"Y(1, a) = 0 for all a (affine in a; exact at a = 0 and a = 1)", ok}};
  }
};

class FSigmaCondition final : public Condition {
 public:
  FSigmaCondition(const CaseSpec& cs, const Params& params, int x_pieces)
      : Condition(std::string("f-sigma-") + dashed(cs.name), Sign::Negative, make_domain(cs, params)),
        cs_(cs),
        params_(params),
        x_pieces_(x_pieces) {}

  CondEval evaluate(const Box& box) const override {
    CondEval ev;
    const Interval& a = box["a"];
    Interval q = cs_.has_q() ? box["q"] : Interval(1.0);
    if (params_.q_feasibility_clip && cs_.has_q()) {
      Feasibility feas = case_feasibility(cs_, a, q);
      if (feas == Feasibility::No) {
        ev.infeasible = true;
        return ev;
      }
    }
    Interval U = u_case(cs_, a, q, params_).U;
    Interval f = f_sup(a);
    ev.enc = f + (Interval(1.0) - pow_int(a, 2)) * (U - 4.0);
    return ev;
  }

  std::vector<std::string> assumptions() const override {
    std::vector<std::string> out = {"delta-sigma-bound", "critpoint-product-bound"};
    if (cs_.id != CaseId::I) out.push_back("outer-product-sine-bound");
    return out;
  }

 private:
  static std::string dashed(std::string s) {
    for (char& c : s)
      if (c == '_') c = '-';
    return s;
  }

  static Box make_domain(const CaseSpec& cs, const Params& params) {
    if (!cs.has_q()) return box1("a", domain_a());
    return box2("a", domain_a(), "q", Interval(cs.q_lower(params).lo, 1.0));
  }

  // hull of f over the full x-range [0.46, 1] via a fixed covering; f's x
  // slack is what the covering controls, the (a, q) slack is the engine's
  Interval f_sup(const Interval& a) const {
    double x0 = Interval::enclose(Rational(23, 50)).lo;
    double x1 = 1.0;
    Interval out = f_factored(Interval(x0, x0 + (x1 - x0) / x_pieces_), a);
    for (int i = 1; i < x_pieces_; ++i) {
      double lo = x0 + (x1 - x0) * i / x_pieces_;
      double hi = (i + 1 == x_pieces_) ? x1 : x0 + (x1 - x0) * (i + 1) / x_pieces_;
      out = hull(out, f_factored(Interval(lo, hi), a));
    }
    return out;
  }

  CaseSpec cs_;
  Params params_;
  int x_pieces_;
};

class ContradictionCondition final : public Condition {
 public:
  ContradictionCondition(const CaseSpec& cs, const Params& params)
      : Condition(std::string("contradiction-") + dashed(cs.name), Sign::Positive,
                  make_domain(cs, params)),
        cs_(cs),
        params_(params) {}

  CondEval evaluate(const Box& box) const override {
    CondEval ev;
    const Interval& a = box["a"];
    Interval q = cs_.has_q() ? box["q"] : Interval(1.0);
    if (params_.q_feasibility_clip && cs_.has_q()) {
      if (case_feasibility(cs_, a, q) == Feasibility::No) {
        ev.infeasible = true;
        return ev;
      }
    }
    Interval U = u_case(cs_, a, q, params_).U;

    static const Rational kCap(64, 9);
    if (!(U.lo > 4.0) || !(Rational::from_double(U.hi) < kCap)) {
      // cannot place U inside (4, 64/9) on this box yet
      ev.enc = U;
      ev.undecidable = true;
      ev.domain_gap = true;
      return ev;
    }

    VCandidates vs = v_star(a);
    if (!vs.decided()) {
      // hulling u_star on the right of the comparison is not conservative;
      // force an a-split instead
      ev.undecidable = true;
      ev.split_dim = 0;
      ev.enc = U;
      return ev;
    }
    Interval us = u_star_for_v(a, vs.lo, params_);

    if (a.hi >= 1.0) {
      double lhs_lo = contradiction_lhs_lower_on_strip(U, a);
      double margin_lo = rnd::sub_down(lhs_lo, us.hi);
      ev.enc = Interval(margin_lo, std::numeric_limits<double>::max());
      ev.kind = LeafKind::Strip;
    } else {
      ev.enc = contradiction_lhs(U, a) - us;
      ev.kind = LeafKind::Sign;
    }
    return ev;
  }

  std::vector<std::string> assumptions() const override {
    std::vector<std::string> out = {"normalized-inverse-square-bound", "sigma-above-four"};
    if (cs_.id != CaseId::I) out.push_back("outer-product-sine-bound");
    return out;
  }

 private:
  static std::string dashed(std::string s) {
    for (char& c : s)
      if (c == '_') c = '-';
    return s;
  }

  static Box make_domain(const CaseSpec& cs, const Params& params) {
    if (!cs.has_q()) return box1("a", domain_a());
    return box2("a", domain_a(), "q", Interval(cs.q_lower(params).lo, 1.0));
  }

  CaseSpec cs_;
  Params params_;
};

}  // namespace

std::vector<std::shared_ptr<Condition>> make_conditions(const Params& params,
                                                        const ProverOptions& opts) {
  std::vector<std::shared_ptr<Condition>> out;
  out.push_back(std::make_shared<FloorCondition>());
  out.push_back(std::make_shared<ThresholdCondition>(params));
  out.push_back(std::make_shared<MonotoneNumeratorCondition>());
  for (const CaseSpec& cs : CaseSpec::all())
    out.push_back(std::make_shared<FSigmaCondition>(cs, params, opts.x_cover_pieces));
  for (const CaseSpec& cs : CaseSpec::all())
    out.push_back(std::make_shared<ContradictionCondition>(cs, params));
  return out;
}

std::shared_ptr<Condition> find_condition(const std::string& id, const Params& params,
                                          const ProverOptions& opts) {
  for (auto& c : make_conditions(params, opts))
    if (c->id() == id) return c;
  return nullptr;
}

Certificate certify_product_identity(const Params& params) {
  ProductIdentity pi = sin_product_identity(params);
  Certificate cert;
  cert.condition_id = "sin-product-identity";
  cert.target = Sign::Positive;
  cert.params_desc = params.describe();
  Leaf leaf;
  leaf.path = "";
  leaf.kind = LeafKind::Sign;
  leaf.margin = pi.difference;
  cert.leaves.push_back(leaf);
  cert.boxes_processed = 1;
  cert.worst_margin = pi.difference;
  cert.certified_leaves = pi.holds ? 1 : 0;
  cert.exact_checks.push_back(
      {"9/crit_product and (2 sin(pi/9))^2 agree to width 2^-40", pi.holds});
  cert.status = pi.holds ? CertStatus::Certified : CertStatus::Refuted;
  if (!pi.holds) {
    Witness w;
    w.point.emplace_back("difference_mid", pi.difference.mid());
    w.enclosure = pi.difference;
    cert.witness = w;
  }
  cert.digest = cert.compute_digest();
  return cert;
}

const std::vector<AssumptionEntry>& assumption_ledger() {
  static const std::vector<AssumptionEntry> ledger = {
      {"critical-point-halfplane",
       "imported: a critical point zeta_0 = a + rho_0 e^{i theta_0} with "
       "Re zeta_0 >= (a - lambda(lambda+2)/a)/2 exists under the lambda window"},
      {"outer-product-sine-bound",
       "imported: prod_{r_k >= rho} (r_k/rho) <= prod_{rho_j >= rho} (rho_j/rho) "
       "* prod_{2 sin(pi k/9) >= 1} 2 sin(pi k/9)"},
      {"gamma0-lower-bound",
       "imported: |gamma_0| > 1/sqrt(1 + lambda(lambda+2) - a^2 lambda(lambda+2)) "
       "when rho_1 > 1"},
      {"delta-sigma-bound",
       "imported: Delta <= -8/a + 8a + (9/(8a))(1-a^2) sigma when rho_1 > 1 and "
       "|z_k| in [0.46, 1]"},
      {"critpoint-product-bound",
       "imported: prod |zeta_j| <= (prod rho_j)(a^2 - 1 + (1/4) sum (|z_k|^2 - "
       "a^2)/r_k^2)^4 when rho_1 >= 1"},
      {"normalized-inverse-square-bound",
       "imported: sum 1/R_k^2 <= U*(a) when rho_1 > 1"},
      {"small-a-case", "the theorem for a < 0.845 is proved elsewhere"},
      {"sigma-above-four",
       "hypothesis gap: the contradiction chain needs sigma > 4, which is never "
       "discharged; the sweep separately certifies 4 < U on every feasible box"},
  };
  return ledger;
}

TheoremReport verify_all(const Params& params, const ProverOptions& opts,
                         const std::map<std::string, std::string>& mutations) {
  TheoremReport report;
  report.params_desc = params.describe();
  report.mutations = mutations;

  Certificate ident = certify_product_identity(params);
  ident.mutations = mutations;
  ident.digest = ident.compute_digest();
  report.certificates.push_back(ident);

  Prover prover(opts);
  for (auto& cond : make_conditions(params, opts)) {
    Certificate cert = prover.certify(*cond);
    cert.mutations = mutations;
    cert.params_desc = params.describe();
    cert.digest = cert.compute_digest();
    report.certificates.push_back(std::move(cert));
  }

  bool all_certified = true, any_refuted = false;
  for (const Certificate& c : report.certificates) {
    if (c.status != CertStatus::Certified) all_certified = false;
    if (c.status == CertStatus::Refuted) any_refuted = true;
  }
  report.verdict = all_certified ? "certified" : (any_refuted ? "refuted" : "unproven");
  return report;
}

Certificate certify_by_id(const std::string& id, const Params& params,
                          const ProverOptions& opts,
                          const std::optional<Box>& domain_override,
                          const std::map<std::string, std::string>& mutations) {
  Certificate cert;
  if (id == "sin-product-identity") {
    cert = certify_product_identity(params);
  } else {
    std::shared_ptr<Condition> cond = find_condition(id, params, opts);
    if (!cond) throw DomainError("unknown condition id '" + id + "'");
    Prover prover(opts);
    cert = domain_override ? prover.certify(*cond, *domain_override) : prover.certify(*cond);
  }
  cert.mutations = mutations;
  cert.params_desc = params.describe();
  cert.digest = cert.compute_digest();
  return cert;
}

bool replay_certificate(const Certificate& stored, std::string* reason) {
  std::string why;
  if (!reason) reason = &why;
  Params params;
  try {
    params = Params::with_mutations(stored.mutations);
  } catch (const DomainError& e) {
    *reason = std::string("bad stored mutations: ") + e.what();
    return false;
  }
  if (stored.condition_id == "sin-product-identity") {
    if (stored.compute_digest() != stored.digest) {
      *reason = "digest mismatch";
      return false;
    }
    Certificate fresh = certify_product_identity(params);
    if (fresh.status != stored.status) {
      *reason = "identity status no longer reproduces";
      return false;
    }
    if (stored.leaves.size() != 1 ||
        !(std::memcmp(&fresh.leaves[0].margin, &stored.leaves[0].margin,
                      sizeof(Interval)) == 0)) {
      *reason = "identity margin no longer reproduces";
      return false;
    }
    return true;
  }
  std::shared_ptr<Condition> cond = find_condition(stored.condition_id, params, stored.options);
  if (!cond) {
    *reason = "unknown condition id '" + stored.condition_id + "'";
    return false;
  }
  Prover prover(stored.options);
  return prover.replay(*cond, stored, reason);
}

}  // namespace sendov
