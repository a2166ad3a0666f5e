#include "pbm/cli_main.hpp"

#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbm/acceptance.hpp"
#include "pbm/bounds.hpp"
#include "pbm/brp.hpp"
#include "pbm/errors.hpp"
#include "pbm/parser.hpp"

namespace pbm {

namespace {

using Json = nlohmann::ordered_json;

struct CliError {
  int code;
  std::string type;
  std::string message;
};

TermPtr cliParseTerm(const std::string& text) {
  try {
    return parseTerm(text);
  } catch (const WeightSumError& e) {
    throw CliError{1, "weight-sum", e.what()};
  } catch (const RangeError& e) {
    throw CliError{1, "range", e.what()};
  } catch (const ParseError& e) {
    throw CliError{1, "parse", e.what()};
  }
}

Rat cliParseRat(const std::string& text, const char* what) {
  try {
    return ratFromString(text);
  } catch (const std::exception& e) {
    throw CliError{3, "parameter", std::string(what) + ": " + e.what()};
  }
}

std::vector<Rat> cliParseRatList(const std::string& text, const char* what) {
  std::vector<Rat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(cliParseRat(item, what));
  if (out.empty()) throw CliError{3, "parameter", std::string(what) + ": empty list"};
  return out;
}

Json jsonRat(const Rat& r) {
  return Json{{"fraction", ratToString(r)}, {"decimal", ratToDouble(r)}};
}

Json jsonTransitions(const TransitionSet& ts) {
  Json arr = Json::array();
  for (const auto& [a, dists] : ts.byAction) {
    for (const auto& dist : dists) {
      Json sup = Json::array();
      for (const auto& [t, p] : dist.m)
        sup.push_back(Json{{"term", render(t)}, {"prob", ratToString(p)}});
      arr.push_back(Json{{"action", a}, {"support", std::move(sup)}});
    }
  }
  return arr;
}

Json jsonResult(const DistanceResult& r) {
  return Json{{"lower", jsonRat(r.lower)},
              {"upper", jsonRat(r.upper)},
              {"depthUsed", r.depthUsed},
              {"exact", r.exact}};
}

void emit(std::ostream& out, bool json, const std::string& command, const Json& inputs,
          const Json& result, const std::string& textBody) {
  if (json) {
    Json doc{{"command", command}, {"inputs", inputs}, {"result", result}, {"status", "ok"}};
    out << doc.dump(2) << "\n";
  } else {
    out << textBody;
  }
}

CombinatorId combinatorFromFlags(const std::string& opName, const std::string& pOpt,
                                 unsigned n, const std::string& syncOpt,
                                 const std::string& weightsOpt) {
  Rat p(1, 2);
  if (!pOpt.empty()) p = cliParseRat(pOpt, "--p");
  std::string name = opName;
  for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "prefix") {
    std::vector<Rat> w =
        weightsOpt.empty() ? std::vector<Rat>{Rat(1, 2), Rat(1, 2)} : cliParseRatList(weightsOpt, "--weights");
    return CombinatorId::prefix(std::move(w));
  }
  if (name == "alt") return CombinatorId::simple(CombKind::Alt);
  if (name == "palt") return CombinatorId::withP(CombKind::PAlt, p);
  if (name == "seq") return CombinatorId::simple(CombKind::Seq);
  if (name == "syncpar") return CombinatorId::simple(CombKind::SyncPar);
  if (name == "asyncpar") return CombinatorId::simple(CombKind::AsyncPar);
  if (name == "ppar") return CombinatorId::withP(CombKind::PPar, p);
  if (name == "csppar") {
    std::vector<Action> sync;
    std::stringstream ss(syncOpt);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) sync.push_back(item);
    }
    return CombinatorId::cspPar(std::move(sync));
  }
  if (name == "finiter") return CombinatorId::iter(CombKind::FinIter, n);
  if (name == "finrepl") return CombinatorId::iter(CombKind::FinRepl, n);
  if (name == "infiter") return CombinatorId::simple(CombKind::InfIter);
  if (name == "bang") return CombinatorId::simple(CombKind::Bang);
  if (name == "kleene") return CombinatorId::simple(CombKind::Kleene);
  if (name == "pkleene") return CombinatorId::withP(CombKind::PKleene, p);
  if (name == "pbang") return CombinatorId::withP(CombKind::PBang, p);
  if (name == "copy") return CombinatorId::simple(CombKind::Copy);
  throw CliError{3, "parameter", "unknown combinator: " + opName};
}

std::string describeCombinator(const CombinatorId& id) {
  switch (id.kind) {
    case CombKind::Prefix: return "prefix";
    case CombKind::Alt: return "alt";
    case CombKind::PAlt: return "palt";
    case CombKind::Seq: return "seq";
    case CombKind::SyncPar: return "syncPar";
    case CombKind::AsyncPar: return "asyncPar";
    case CombKind::CspPar: return "cspPar";
    case CombKind::PPar: return "ppar";
    case CombKind::FinIter: return "finIter";
    case CombKind::FinRepl: return "finRepl";
    case CombKind::InfIter: return "infIter";
    case CombKind::Bang: return "bang";
    case CombKind::Kleene: return "kleene";
    case CombKind::PKleene: return "pkleene";
    case CombKind::PBang: return "pbang";
    case CombKind::Copy: return "copy";
  }
  return "?";
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bisimulation distances for probabilistic process terms"};
  app.require_subcommand(1);

  std::string format = "text";

  // parse
  auto* cmdParse = app.add_subcommand("parse", "parse a term and print its canonical form");
  std::string parseInput;
  cmdParse->add_option("term", parseInput, "term text, or - for stdin")->required();
  cmdParse->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // derive
  auto* cmdDerive = app.add_subcommand("derive", "transitions of a term");
  std::string deriveTerm;
  unsigned deriveDepth = 0;
  size_t deriveBudget = 10000;
  cmdDerive->add_option("--term", deriveTerm)->required();
  cmdDerive->add_option("--depth", deriveDepth, "also dump reachable states to this depth");
  cmdDerive->add_option("--budget", deriveBudget);
  cmdDerive->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // dist
  auto* cmdDist = app.add_subcommand("dist", "bisimulation distance between two terms");
  std::string distLeft, distRight, distLambda = "1", distEps;
  unsigned distUpto = 0;
  bool distUptoSet = false, distExact = false;
  size_t distBudget = 100000;
  unsigned distIters = 1000;
  cmdDist->add_option("--left", distLeft)->required();
  cmdDist->add_option("--right", distRight)->required();
  cmdDist->add_option("--lambda", distLambda)->required();
  cmdDist->add_option("--upto", distUpto)->each([&](const std::string&) { distUptoSet = true; });
  cmdDist->add_option("--epsilon", distEps);
  cmdDist->add_flag("--exact", distExact);
  cmdDist->add_option("--budget", distBudget);
  cmdDist->add_option("--iters", distIters);
  cmdDist->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // bound
  auto* cmdBound = app.add_subcommand("bound", "closed-form compositional distance bound");
  std::string boundOp, boundLambda = "1", boundEps, boundP, boundSync, boundWeights;
  unsigned boundN = 1;
  cmdBound->add_option("--op", boundOp)->required();
  cmdBound->add_option("--lambda", boundLambda)->required();
  cmdBound->add_option("--eps", boundEps)->required();
  cmdBound->add_option("--p", boundP);
  cmdBound->add_option("--n", boundN);
  cmdBound->add_option("--sync-set", boundSync);
  cmdBound->add_option("--weights", boundWeights);
  cmdBound->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // witness
  auto* cmdWitness = app.add_subcommand("witness", "tightness witnesses for a bound");
  std::string witOp, witLambda = "1", witEps, witP, witSync, witWeights;
  unsigned witN = 1, witDepth = 30;
  bool witVerify = false;
  cmdWitness->add_option("--op", witOp)->required();
  cmdWitness->add_option("--lambda", witLambda)->required();
  cmdWitness->add_option("--eps", witEps)->required();
  cmdWitness->add_option("--p", witP);
  cmdWitness->add_option("--n", witN);
  cmdWitness->add_option("--sync-set", witSync);
  cmdWitness->add_option("--weights", witWeights);
  cmdWitness->add_flag("--verify", witVerify);
  cmdWitness->add_option("--depth", witDepth);
  cmdWitness->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // brp
  auto* cmdBrp = app.add_subcommand("brp", "bounded retransmission protocol analysis");
  cmdBrp->require_subcommand(1);
  auto* cmdReport = cmdBrp->add_subcommand("report", "bounds and likelihoods");
  unsigned brpN = 1, brpT = 1, brpDepth = 20, brpDomain = 1;
  std::string brpP = "0", brpQ = "0", brpLambda = "1";
  bool brpVerify = false;
  cmdReport->add_option("--n", brpN)->required();
  cmdReport->add_option("--t", brpT)->required();
  cmdReport->add_option("--p", brpP)->required();
  cmdReport->add_option("--q", brpQ)->required();
  cmdReport->add_option("--lambda", brpLambda);
  cmdReport->add_option("--depth", brpDepth);
  cmdReport->add_option("--domain", brpDomain);
  cmdReport->add_flag("--verify", brpVerify);
  cmdReport->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* cmdSolve = cmdBrp->add_subcommand("solve", "channel requirement from a target likelihood");
  double solveTarget = 0.99;
  unsigned solveN = 20, solveT = 1;
  cmdSolve->add_option("--target", solveTarget)->required();
  cmdSolve->add_option("--n", solveN)->required();
  cmdSolve->add_option("--t", solveT)->required();
  cmdSolve->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // selftest
  auto* cmdSelftest = app.add_subcommand("selftest", "run the acceptance suite");
  cmdSelftest->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::vector<const char*> argv;
  std::vector<std::string> argStore;
  argStore.push_back("pbm");
  for (const auto& a : args) argStore.push_back(a);
  for (const auto& a : argStore) argv.push_back(a.c_str());

  std::string commandName = "?";
  auto emitError = [&](const CliError& ce) {
    if (format == "json") {
      Json doc{{"command", commandName},
               {"inputs", Json::object()},
               {"result", nullptr},
               {"status", "error"},
               {"error", Json{{"type", ce.type}, {"message", ce.message}}}};
      out << doc.dump(2) << "\n";
    } else {
      err << "error (" << ce.type << "): " << ce.message << "\n";
    }
    return ce.code;
  };

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (cmdParse->parsed()) {
      commandName = "parse";
      std::string text = parseInput;
      if (text == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
      }
      TermPtr t = cliParseTerm(text);
      emit(out, format == "json", "parse", Json{{"term", text}},
           Json{{"term", render(t)}, {"nodes", t->size}}, render(t) + "\n");
      return 0;
    }

    if (cmdDerive->parsed()) {
      commandName = "derive";
      TermPtr t = cliParseTerm(deriveTerm);
      DeriveCache cache;
      const TransitionSet& ts = cache.derive(t);
      Json result{{"term", render(t)}, {"transitions", jsonTransitions(ts)}};
      std::ostringstream text;
      text << render(t) << "\n";
      for (const auto& [a, dists] : ts.byAction)
        for (const auto& dist : dists) {
          text << "  --" << a << "--> {";
          bool first = true;
          for (const auto& [u, p] : dist.m) {
            if (!first) text << ", ";
            first = false;
            text << render(u) << " : " << ratToString(p);
          }
          text << "}\n";
        }
      if (deriveDepth > 0) {
        ReachResult rr = reachable(t, deriveDepth, deriveBudget, cache);
        Json terms = Json::array();
        for (const auto& u : rr.terms) terms.push_back(render(u));
        result["reachable"] = Json{{"terms", std::move(terms)}, {"truncated", rr.truncated}};
        text << "reachable(depth " << deriveDepth << "): " << rr.terms.size() << " states"
             << (rr.truncated ? " [truncated]" : "") << "\n";
      }
      emit(out, format == "json", "derive",
           Json{{"term", deriveTerm}, {"depth", deriveDepth}}, result, text.str());
      return 0;
    }

    if (cmdDist->parsed()) {
      commandName = "dist";
      TermPtr l = cliParseTerm(distLeft);
      TermPtr r = cliParseTerm(distRight);
      Rat lambda = cliParseRat(distLambda, "--lambda");
      MetricOptions opts;
      opts.pairBudget = distBudget;
      opts.iterBudget = distIters;
      int modes = (distUptoSet ? 1 : 0) + (distEps.empty() ? 0 : 1) + (distExact ? 1 : 0);
      if (modes != 1)
        throw CliError{1, "usage", "choose exactly one of --upto K, --epsilon R, --exact"};
      Json inputs{{"left", distLeft}, {"right", distRight}, {"lambda", ratToString(lambda)}};
      if (distUptoSet) {
        Rat v = uptoK(l, r, distUpto, lambda, opts);
        inputs["k"] = distUpto;
        std::ostringstream text;
        text << "d_" << distUpto << " = " << ratToString(v) << " (= " << ratToDouble(v) << ")\n";
        emit(out, format == "json", "dist", inputs, Json{{"mode", "upto"}, {"value", jsonRat(v)}},
             text.str());
        return 0;
      }
      DistanceResult res;
      if (distExact) {
        res = exactDistance(l, r, lambda, opts);
        inputs["mode"] = "exact";
      } else {
        Rat tol = cliParseRat(distEps, "--epsilon");
        res = approx(l, r, lambda, tol, opts);
        inputs["tolerance"] = ratToString(tol);
      }
      std::ostringstream text;
      if (res.exact) {
        text << "value " << ratToString(res.lower) << " (= " << ratToDouble(res.lower)
             << "), exact, depth " << res.depthUsed << "\n";
      } else {
        text << "value in [" << ratToString(res.lower) << ", " << ratToString(res.upper)
             << "] (~ [" << ratToDouble(res.lower) << ", " << ratToDouble(res.upper)
             << "]), depth " << res.depthUsed << "\n";
      }
      emit(out, format == "json", "dist", inputs, jsonResult(res), text.str());
      return 0;
    }

    if (cmdBound->parsed()) {
      commandName = "bound";
      CombinatorId id = combinatorFromFlags(boundOp, boundP, boundN, boundSync, boundWeights);
      Rat lambda = cliParseRat(boundLambda, "--lambda");
      std::vector<Rat> eps = cliParseRatList(boundEps, "--eps");
      Rat v = bound(id, lambda, eps);
      auto lip = lipschitzFactor(id, lambda);
      Json result{{"op", describeCombinator(id)}, {"value", jsonRat(v)}};
      result["lipschitz"] = lip ? Json(ratToString(*lip)) : Json(nullptr);
      std::ostringstream text;
      text << ratToString(v) << " (= " << ratToDouble(v) << ")\n";
      if (lip)
        text << "lipschitz factor: " << ratToString(*lip) << "\n";
      else
        text << "lipschitz factor: none\n";
      emit(out, format == "json", "bound",
           Json{{"op", boundOp}, {"lambda", boundLambda}, {"eps", boundEps}}, result, text.str());
      return 0;
    }

    if (cmdWitness->parsed()) {
      commandName = "witness";
      CombinatorId id = combinatorFromFlags(witOp, witP, witN, witSync, witWeights);
      Rat lambda = cliParseRat(witLambda, "--lambda");
      std::vector<Rat> eps = cliParseRatList(witEps, "--eps");
      Witnesses w = witness(id, lambda, eps);
      Json pairs = Json::array();
      std::ostringstream text;
      for (size_t i = 0; i < w.left.size(); ++i) {
        pairs.push_back(Json{{"s", render(w.left[i])}, {"t", render(w.right[i])}});
        text << "s" << i + 1 << " = " << render(w.left[i]) << "\n";
        text << "t" << i + 1 << " = " << render(w.right[i]) << "\n";
      }
      Json result{{"op", describeCombinator(id)}, {"pairs", std::move(pairs)}};
      int code = 0;
      if (witVerify) {
        BoundReport rep = verifyTightness(id, lambda, eps, witDepth);
        result["report"] = Json{{"formula", jsonRat(rep.formulaValue)},
                                {"engineLower", jsonRat(rep.engineLower)},
                                {"engineUpper", jsonRat(rep.engineUpper)},
                                {"tight", rep.tight},
                                {"sound", rep.sound()},
                                {"depthUsed", rep.depthUsed}};
        text << "formula " << ratToString(rep.formulaValue) << ", engine ["
             << ratToString(rep.engineLower) << ", " << ratToString(rep.engineUpper) << "], "
             << (rep.tight ? "tight" : "NOT tight") << "\n";
        if (!rep.tight || !rep.sound()) code = 4;
      }
      emit(out, format == "json", "witness",
           Json{{"op", witOp}, {"lambda", witLambda}, {"eps", witEps}}, result, text.str());
      return code;
    }

    if (cmdReport->parsed()) {
      commandName = "brp report";
      BrpParams params;
      params.N = brpN;
      params.T = brpT;
      params.p = cliParseRat(brpP, "--p");
      params.q = cliParseRat(brpQ, "--q");
      params.domainSize = brpDomain;
      try {
        params.validate();
      } catch (const ParamError& e) {
        throw CliError{3, "parameter", e.what()};
      }
      Rat lambda = cliParseRat(brpLambda, "--lambda");
      Rat delta = chBound(params.p, params.q);
      Rat epsB = brpBound(params.N, params.p, params.q);
      Rat uni = uniformBound(params.N, params.p, params.q);
      double eps = ratToDouble(epsB);
      StreamPerf sp = perfFromEpsilon(eps, params.N, params.T);
      ChannelPerf cp = perfChannelFromDelta(ratToDouble(delta), params.T);
      Json result{
          {"chBound", jsonRat(delta)},
          {"brpBound", jsonRat(epsB)},
          {"uniformBound", jsonRat(uni)},
          {"epsilon", eps},
          {"stream",
           Json{{"noRetry", sp.noRetry},
                {"exactlyK", sp.exactlyK},
                {"atMostK", sp.atMostK},
                {"atLeastN", sp.atLeastN},
                {"allItems", sp.allItems},
                {"k", sp.k},
                {"n", sp.n}}},
          {"channel",
           Json{{"noRetry", cp.noRetry},
                {"exactlyK", cp.exactlyK},
                {"atMostK", cp.atMostK},
                {"overall", cp.overall},
                {"k", cp.k}}},
      };
      std::ostringstream text;
      text << "channel distance bound p+q-pq = " << ratToString(delta) << " (= "
           << ratToDouble(delta) << ")\n";
      text << "system distance bound 1-((1-p)(1-q))^N = " << ratToString(epsB) << " (= " << eps
           << ")\n";
      text << "uniform-continuity bound N(p+q-pq) = " << ratToString(uni) << "\n";
      text << "likelihood all " << params.N << " items delivered >= " << sp.allItems << "\n";
      text << "likelihood one datum delivered >= " << cp.overall << "\n";
      int code = 0;
      if (brpVerify) {
        BrpVerifyReport rep = verifyBrpBound(params, lambda, brpDepth);
        result["verify"] = Json{{"chDistK", jsonRat(rep.chDistK)},
                                {"brpDistK", jsonRat(rep.brpDistK)},
                                {"specSelfDist", jsonRat(rep.specSelfDist)},
                                {"depth", rep.depth},
                                {"ok", rep.ok}};
        text << "engine d_" << rep.depth << "(CH spec, CH impl) = " << ratToString(rep.chDistK)
             << (rep.chDistK <= rep.chBoundValue ? " <= bound" : " BOUND VIOLATED") << "\n";
        text << "engine d_" << rep.depth << "(BRP spec, BRP impl) = " << ratToString(rep.brpDistK)
             << (rep.brpDistK <= rep.brpBoundValue ? " <= bound" : " BOUND VIOLATED") << "\n";
        if (!rep.ok) code = 4;
      }
      emit(out, format == "json", "brp report",
           Json{{"N", params.N},
                {"T", params.T},
                {"p", ratToString(params.p)},
                {"q", ratToString(params.q)},
                {"lambda", ratToString(lambda)}},
           result, text.str());
      return code;
    }

    if (cmdSolve->parsed()) {
      commandName = "brp solve";
      double eps = solveForEpsilon(solveTarget, solveN, solveT);
      double delta = 1.0 - std::pow(1.0 - eps, 1.0 / solveN);
      Json result{{"epsilon", eps}, {"channelDelta", delta}};
      std::ostringstream text;
      text << "epsilon = " << eps << "\n";
      text << "channel delta requirement 1-(1-eps)^(1/N) = " << delta << "\n";
      emit(out, format == "json", "brp solve",
           Json{{"target", solveTarget}, {"N", solveN}, {"T", solveT}}, result, text.str());
      return 0;
    }

    if (cmdSelftest->parsed()) {
      commandName = "selftest";
      int failures = runAcceptance(out);
      return failures == 0 ? 0 : 4;
    }
  } catch (const CliError& ce) {
    return emitError(ce);
  } catch (const BudgetExceededError& e) {
    return emitError(CliError{2, "budget", e.what()});
  } catch (const ParseError& e) {
    return emitError(CliError{1, "parse", e.what()});
  } catch (const WeightSumError& e) {
    return emitError(CliError{1, "weight-sum", e.what()});
  } catch (const ArityError& e) {
    return emitError(CliError{3, "arity", e.what()});
  } catch (const NoSolutionError& e) {
    return emitError(CliError{3, "no-solution", e.what()});
  } catch (const Error& e) {
    return emitError(CliError{3, "domain", e.what()});
  }
  err << "no command\n";
  return 1;
}

}  // namespace pbm
