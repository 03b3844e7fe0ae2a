#include "fint/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fint/errors.hpp"
#include "fint/first_integral.hpp"
#include "fint/low_dim.hpp"
#include "fint/normalizer.hpp"
#include "fint/numeric.hpp"
#include "fint/parser.hpp"
#include "json.hpp"

namespace fint {

namespace {

using ordered_json = nlohmann::ordered_json;

struct CliOptions {
  std::string file;
  std::string mode;  // planar subcommand
  std::optional<std::uint64_t> seed;
  int samples = 64;
  double threshold = 1e-7;
  double tEnd = 1.0;
  double step = 1e-3;
  double tol = 1e-6;
  int trajectories = 10;
  int k = 3;
  std::vector<double> target;
  std::optional<std::string> lambdaText;
  std::optional<std::string> muText;
  bool json = false;
};

std::string fileDigest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : buf.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + hex;
}

ordered_json verdictJson(const Verdict& v) {
  ordered_json o;
  if (v.provenZero()) {
    o["kind"] = "proven-zero";
  } else if (v.provenNonzero()) {
    o["kind"] = "proven-nonzero";
  } else {
    o["kind"] = "numeric-zero";
    o["samples"] = v.sampleCount;
    o["maxAbsResidual"] = v.maxAbsResidual;
    o["threshold"] = v.threshold;
  }
  return o;
}

const char* kindName(NormalizerKind k) {
  switch (k) {
    case NormalizerKind::ExactNormalizer: return "exact-normalizer";
    case NormalizerKind::Generalized: return "generalized";
    case NormalizerKind::DegenerateParallel: return "degenerate-parallel";
  }
  return "unknown";
}

// resolved lambda/mu pair: explicit flags beat file values beat solving;
// when only one of the pair is given the other defaults to zero
struct ResolvedPair {
  Expr lambda;
  Expr mu;
  std::string lambdaSource;
  std::string muSource;
  bool solved = false;
  NormalizerSolution sol;
};

ResolvedPair resolvePair(const Problem& prob, const VectorField& X,
                         const VectorField& Y, const CliOptions& opt,
                         const ZeroTestConfig& cfg, bool useFile) {
  ResolvedPair r;
  if (opt.lambdaText) {
    r.lambda = parse_expr(*opt.lambdaText, prob.vars);
    r.lambdaSource = "flag";
  } else if (useFile && prob.lambda) {
    r.lambda = prob.lambda;
    r.lambdaSource = "file";
  }
  if (opt.muText) {
    r.mu = parse_expr(*opt.muText, prob.vars);
    r.muSource = "flag";
  } else if (useFile && prob.mu) {
    r.mu = prob.mu;
    r.muSource = "file";
  }
  if (!r.lambda && !r.mu) {
    r.sol = solve_lambda_mu(X, Y, prob.domain, cfg);
    r.lambda = r.sol.lambda;
    r.mu = r.sol.mu;
    r.lambdaSource = r.muSource = "solved";
    r.solved = true;
    return r;
  }
  if (!r.lambda) {
    r.lambda = mkConst(0);
    r.lambdaSource = "defaulted-zero";
  }
  if (!r.mu) {
    r.mu = mkConst(0);
    r.muSource = "defaulted-zero";
  }
  return r;
}

ordered_json normalizerJson(const ResolvedPair& rp, const Problem& prob,
                            const VectorField& X, const VectorField& Y,
                            const ZeroTestConfig& cfg) {
  ordered_json o;
  o["lambda"] = print_expr(rp.lambda, prob.vars);
  o["mu"] = print_expr(rp.mu, prob.vars);
  o["lambdaSource"] = rp.lambdaSource;
  o["muSource"] = rp.muSource;
  if (rp.solved) {
    o["kind"] = kindName(rp.sol.kind);
    if (rp.sol.pi >= 0) o["pivotPair"] = {rp.sol.pi, rp.sol.pj};
    o["residual"] = verdictJson(rp.sol.verdict);
  } else {
    o["residual"] =
        verdictJson(check_relation(X, Y, rp.lambda, rp.mu, prob.domain, cfg));
  }
  return o;
}

ordered_json integralJson(const FirstIntegralResult& r, const Problem& prob) {
  ordered_json o;
  o["H"] = print_expr(r.H, prob.vars);
  o["g"] = print_expr(r.g, prob.vars);
  ordered_json hyp;
  hyp["factorIntegratesX"] = verdictJson(r.hypotheses.factorX);
  hyp["factorMuIntegratesY"] = verdictJson(r.hypotheses.factorMuY);
  hyp["bracketRelation"] = verdictJson(r.hypotheses.relation);
  o["hypotheses"] = hyp;
  o["conserved"] = verdictJson(r.conclusion);
  o["trivial"] = verdictJson(r.trivial);
  o["domain"] = r.domainNote;
  return o;
}

const VectorField& requireY(const Problem& prob) {
  if (!prob.Y) throw MissingField("the command needs a Y field");
  return *prob.Y;
}

Expr requireF(const Problem& prob) {
  if (!prob.f) throw MissingField("the command needs an f entry");
  return prob.f;
}

ZeroTestConfig makeConfig(const Problem& prob, const CliOptions& opt) {
  ZeroTestConfig cfg;
  cfg.samples = opt.samples;
  cfg.threshold = opt.threshold;
  cfg.seed = opt.seed ? *opt.seed : prob.seed;
  if (prob.f) cfg.avoid = simplify(prob.f);
  return cfg;
}

int cmdFirstIntegral(const Problem& prob, const CliOptions& opt,
                     ordered_json& rep) {
  const VectorField& Y = requireY(prob);
  Expr f = requireF(prob);
  ZeroTestConfig cfg = makeConfig(prob, opt);
  ResolvedPair rp = resolvePair(prob, prob.X, Y, opt, cfg, true);
  rep["normalizer"] = normalizerJson(rp, prob, prob.X, Y, cfg);
  auto r = theorem1(prob.X, Y, f, rp.lambda, rp.mu, prob.volume(), prob.domain,
                    cfg);
  rep["firstIntegral"] = integralJson(r, prob);
  if (r.conclusion.provenNonzero()) {
    rep["status"] = "not-a-first-integral";
    return 1;
  }
  rep["status"] = "ok";
  return 0;
}

int cmdVerify(const Problem& prob, const CliOptions& opt, ordered_json& rep) {
  const VectorField& Y = requireY(prob);
  Expr f = requireF(prob);
  ZeroTestConfig cfg = makeConfig(prob, opt);
  ResolvedPair rp = resolvePair(prob, prob.X, Y, opt, cfg, true);
  rep["normalizer"] = normalizerJson(rp, prob, prob.X, Y, cfg);
  auto r = theorem1(prob.X, Y, f, rp.lambda, rp.mu, prob.volume(), prob.domain,
                    cfg);
  rep["H"] = print_expr(r.H, prob.vars);

  CounterRng rng{cfg.seed};
  ordered_json runs = ordered_json::array();
  double worst = 0;
  bool allPass = true;
  std::uint64_t counter = 0;
  for (int t = 0; t < opt.trajectories; ++t) {
    std::vector<double> p0;
    Trajectory traj;
    bool started = false;
    for (int attempt = 0; attempt < 64 && !started; ++attempt) {
      p0 = sampleBox(rng, prob.domain, counter++);
      if (cfg.avoid) {
        try {
          if (std::abs(evaluate(cfg.avoid, p0)) < cfg.avoidCut) continue;
        } catch (const DomainError&) {
          continue;
        }
      }
      try {
        traj = integrate_trajectory(prob.X, p0, opt.tEnd, opt.step);
        started = true;
      } catch (const ImmediateDomainError&) {
      }
    }
    if (!started)
      throw InsufficientSamples("no valid starting points in the domain");
    auto res = conservation_check(r.H, traj, opt.tol);
    ordered_json run;
    run["start"] = p0;
    run["points"] = traj.points.size();
    run["truncated"] = traj.truncated;
    run["maxDrift"] = res.maxDrift;
    run["pass"] = res.pass;
    runs.push_back(run);
    worst = std::max(worst, res.maxDrift);
    allPass = allPass && res.pass;
  }
  ordered_json v;
  v["tEnd"] = opt.tEnd;
  v["step"] = opt.step;
  v["tol"] = opt.tol;
  v["runs"] = runs;
  v["maxDrift"] = worst;
  v["pass"] = allPass;
  rep["conservation"] = v;
  rep["status"] = allPass ? "ok" : "drift-exceeded";
  return allPass ? 0 : 1;
}

int cmdPlanar(const Problem& prob, const CliOptions& opt, ordered_json& rep) {
  if (prob.dim() != 2)
    throw DimensionMismatch("planar commands need a two dimensional problem");
  ZeroTestConfig cfg = makeConfig(prob, opt);
  VolumeForm vol = prob.volume();

  if (opt.mode == "derive-f") {
    const VectorField& Y = requireY(prob);
    Expr f0 = planar_f_from_Y(prob.X, Y, vol, prob.domain, cfg);
    ordered_json o;
    o["f"] = print_expr(f0, prob.vars);
    o["integratesX"] =
        verdictJson(is_integrating_factor(f0, prob.X, vol, prob.domain, cfg));
    ResolvedPair rp = resolvePair(prob, prob.X, Y, opt, cfg, true);
    rep["normalizer"] = normalizerJson(rp, prob, prob.X, Y, cfg);
    auto r = theorem1(prob.X, Y, f0, rp.lambda, rp.mu, vol, prob.domain, cfg);
    o["H"] = print_expr(r.H, prob.vars);
    o["trivial"] = verdictJson(r.trivial);
    rep["derivedFactor"] = o;
    rep["status"] = "ok";
    return 0;
  }

  if (opt.mode == "derive-y") {
    Expr f = requireF(prob);
    VectorField Yp = planar_Y_from_f(prob.X, f, vol, prob.domain, cfg);
    ordered_json o;
    o["Y"] = {print_expr(Yp.components[0], prob.vars),
              print_expr(Yp.components[1], prob.vars)};
    // the file's lambda belongs to the file's pair, not the derived one
    ResolvedPair rp = resolvePair(prob, prob.X, Yp, opt, cfg, false);
    rep["normalizer"] = normalizerJson(rp, prob, prob.X, Yp, cfg);
    auto r = theorem1(prob.X, Yp, f, rp.lambda, rp.mu, vol, prob.domain, cfg);
    o["H"] = print_expr(r.H, prob.vars);
    o["trivial"] = verdictJson(r.trivial);
    rep["derivedNormalizer"] = o;
    rep["status"] = "ok";
    return 0;
  }

  // lie-form
  const VectorField& Y = requireY(prob);
  OneForm w = lie_one_form(prob.X, Y, vol, prob.domain, cfg);
  ordered_json o;
  o["omega"] = {print_expr(w.coefficients[0], prob.vars),
                print_expr(w.coefficients[1], prob.vars)};
  o["closed"] = verdictJson(w.closedness);
  if (!opt.target.empty()) {
    std::vector<double> base = prob.domain.center();
    double value = quadrature(w, base, opt.target);
    o["basepoint"] = base;
    o["target"] = opt.target;
    o["I"] = value;
  }
  rep["lieForm"] = o;
  rep["status"] = "ok";
  return 0;
}

int cmdIntegrability(const Problem& prob, const CliOptions& opt,
                     ordered_json& rep) {
  std::vector<VectorField> Ys = prob.Ylist;
  if (Ys.empty() && prob.Y) Ys.push_back(*prob.Y);
  if (Ys.empty()) throw MissingField("the command needs Y1..Yk entries");
  ZeroTestConfig cfg = makeConfig(prob, opt);
  auto ir =
      integrability_report(prob.X, Ys, prob.volume(), prob.domain, cfg, 20);
  ordered_json o;
  o["divergenceFreeX"] = verdictJson(ir.divXZero);
  ordered_json entries = ordered_json::array();
  for (const auto& e : ir.entries) {
    ordered_json ent;
    ent["c"] = print_expr(e.c, prob.vars);
    ent["H"] = print_expr(e.H, prob.vars);
    ent["bracketRelation"] = verdictJson(e.relation);
    entries.push_back(ent);
  }
  o["entries"] = entries;
  o["jacobianRanks"] = ir.independence.jacobianRanks;
  o["consensusRank"] = ir.independence.consensusRank;
  o["samples"] = ir.independence.sampledPoints.size();
  o["tolerance"] = ir.independence.tolerance;
  o["completelyIntegrable"] = ir.completelyIntegrable;
  o["statement"] = ir.statement;
  rep["integrability"] = o;
  rep["status"] = "ok";
  return 0;
}

int cmdChain(const Problem& prob, const CliOptions& opt, ordered_json& rep) {
  const VectorField& Y = requireY(prob);
  Expr f = requireF(prob);
  ZeroTestConfig cfg = makeConfig(prob, opt);
  ResolvedPair rp = resolvePair(prob, prob.X, Y, opt, cfg, true);
  rep["normalizer"] = normalizerJson(rp, prob, prob.X, Y, cfg);
  auto r = theorem1(prob.X, Y, f, rp.lambda, rp.mu, prob.volume(), prob.domain,
                    cfg);
  rep["H"] = print_expr(r.H, prob.vars);
  auto entries = chain_Hk(prob.X, Y, r.H, opt.k, prob.domain, cfg, rp.mu);
  ordered_json chain = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json ent;
    ent["H"] = print_expr(e.H, prob.vars);
    ent["conserved"] = verdictJson(e.conserved);
    chain.push_back(ent);
  }
  rep["chain"] = chain;
  rep["status"] = "ok";
  return 0;
}

bool allScalar(const ordered_json& a) {
  for (const auto& v : a)
    if (v.is_object() || v.is_array()) return false;
  return true;
}

std::string scalarText(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void renderText(const ordered_json& j, std::ostream& out, int indent) {
  const int column = 26;
  for (const auto& [key, v] : j.items()) {
    std::string head(static_cast<std::size_t>(indent), ' ');
    head += key;
    if (v.is_object()) {
      out << head << "\n";
      renderText(v, out, indent + 2);
    } else if (v.is_array() && !allScalar(v)) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << head << "[" << i << "]\n";
        renderText(v[i], out, indent + 2);
      }
    } else if (v.is_array()) {
      std::string line;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) line += ", ";
        line += scalarText(v[i]);
      }
      if (static_cast<int>(head.size()) < column)
        head.resize(static_cast<std::size_t>(column), ' ');
      out << head << "[" << line << "]\n";
    } else {
      if (static_cast<int>(head.size()) < column)
        head.resize(static_cast<std::size_t>(column), ' ');
      out << head << scalarText(v) << "\n";
    }
  }
}

// unusable input exits 2, a pipeline that reaches a negative verdict exits 1
int errorExitCode(const Error& e) {
  if (dynamic_cast<const SyntaxError*>(&e) ||
      dynamic_cast<const UnknownVariable*>(&e) ||
      dynamic_cast<const MissingField*>(&e) ||
      dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const DimensionMismatch*>(&e) ||
      dynamic_cast<const ZeroFactor*>(&e) ||
      dynamic_cast<const UnrepresentableExponent*>(&e))
    return 2;
  return 1;
}

const char* errorName(const Error& e) {
  if (dynamic_cast<const SyntaxError*>(&e)) return "syntax-error";
  if (dynamic_cast<const UnknownVariable*>(&e)) return "unknown-variable";
  if (dynamic_cast<const MissingField*>(&e)) return "missing-field";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation-error";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "dimension-mismatch";
  if (dynamic_cast<const ZeroFactor*>(&e)) return "zero-factor";
  if (dynamic_cast<const UnrepresentableExponent*>(&e))
    return "unrepresentable-exponent";
  if (dynamic_cast<const NoSolution*>(&e)) return "no-solution";
  if (dynamic_cast<const UnresolvedRank*>(&e)) return "unresolved-rank";
  if (dynamic_cast<const HypothesisViolated*>(&e)) return "hypothesis-violated";
  if (dynamic_cast<const InsufficientSamples*>(&e))
    return "insufficient-samples";
  if (dynamic_cast<const RankDeficient*>(&e)) return "rank-deficient";
  if (dynamic_cast<const DivergenceFree*>(&e)) return "divergence-free";
  if (dynamic_cast<const PathThroughSingularity*>(&e))
    return "path-through-singularity";
  if (dynamic_cast<const ImmediateDomainError*>(&e))
    return "immediate-domain-error";
  if (dynamic_cast<const DomainError*>(&e)) return "domain-error";
  return "error";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"first integral toolkit"};
  app.require_subcommand(1);
  CliOptions opt;

  auto addCommon = [&](CLI::App* c, bool pair, bool numeric) {
    c->add_option("file", opt.file, "problem file")->required();
    c->add_option("--seed", opt.seed, "sampling seed (overrides the file)");
    c->add_option("--samples", opt.samples, "zero-test sample count");
    c->add_option("--threshold", opt.threshold, "zero-test threshold");
    c->add_flag("--json", opt.json, "emit the report as JSON");
    if (pair) {
      c->add_option("--lambda", opt.lambdaText, "override lambda");
      c->add_option("--mu", opt.muText, "override mu");
    }
    if (numeric) {
      c->add_option("--tend", opt.tEnd, "integration end time");
      c->add_option("--step", opt.step, "integration step size");
      c->add_option("--tol", opt.tol, "relative drift tolerance");
      c->add_option("--trajectories", opt.trajectories,
                    "number of starting points");
    }
  };

  CLI::App* cFirst =
      app.add_subcommand("first-integral", "construct the first integral");
  addCommon(cFirst, true, false);
  CLI::App* cVerify =
      app.add_subcommand("verify", "check conservation along sampled flows");
  addCommon(cVerify, true, true);
  CLI::App* cPlanar =
      app.add_subcommand("planar", "two dimensional constructions");
  cPlanar
      ->add_option("mode", opt.mode, "derive-f, derive-y, or lie-form")
      ->required()
      ->check(CLI::IsMember({"derive-f", "derive-y", "lie-form"}));
  addCommon(cPlanar, true, false);
  cPlanar->add_option("--target", opt.target, "quadrature endpoint")
      ->expected(2);
  CLI::App* cInteg =
      app.add_subcommand("integrability", "complete integrability report");
  addCommon(cInteg, false, false);
  CLI::App* cChain =
      app.add_subcommand("chain", "iterated first integral chain");
  addCommon(cChain, true, false);
  cChain->add_option("--k", opt.k, "chain length");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  std::string command;
  int (*body)(const Problem&, const CliOptions&, ordered_json&) = nullptr;
  if (app.got_subcommand(cFirst)) {
    command = "first-integral";
    body = cmdFirstIntegral;
  } else if (app.got_subcommand(cVerify)) {
    command = "verify";
    body = cmdVerify;
  } else if (app.got_subcommand(cPlanar)) {
    command = "planar " + opt.mode;
    body = cmdPlanar;
  } else if (app.got_subcommand(cInteg)) {
    command = "integrability";
    body = cmdIntegrability;
  } else {
    command = "chain";
    body = cmdChain;
  }

  ordered_json rep;
  rep["command"] = command;
  rep["input"] = opt.file;
  int code = 0;
  try {
    rep["digest"] = fileDigest(opt.file);
    Problem prob = load_problem(opt.file);
    rep["seed"] = opt.seed ? *opt.seed : prob.seed;
    code = body(prob, opt, rep);
  } catch (const Error& e) {
    code = errorExitCode(e);
    ordered_json eo;
    eo["type"] = errorName(e);
    eo["message"] = e.what();
    rep["error"] = eo;
    rep["status"] = "error";
  }
  rep["exit"] = code;

  if (opt.json) {
    out << rep.dump(2) << "\n";
  } else {
    renderText(rep, out, 0);
  }
  return code;
}

}  // namespace fint
