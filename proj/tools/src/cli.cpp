#include "spbw/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <optional>

#include "spbw/annihilator.hpp"
#include "spbw/cli/instance.hpp"
#include "spbw/literal.hpp"
#include "spbw/properties.hpp"

#ifndef SPBW_VERSION
#define SPBW_VERSION "0.0.0"
#endif

namespace spbw::cli {

using ojson = nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxListedAnnihilators = 32;

struct Options {
  std::string instance;
  unsigned degree = 2;
  std::uint64_t max_space = ScanLimits{}.max_space;
  std::optional<std::string> order;
  std::optional<std::uint64_t> seed;
  bool json_only = false;
};

struct Outcome {
  ojson result = ojson::object();
  std::string status = "ok";
  int exit_code = 0;
};

ojson verdict_json(const PropertyVerdict& v) {
  ojson out{{"property", v.property}, {"verdict", std::string(verdict_name(v.verdict))}};
  if (v.bound) out["bound"] = *v.bound;
  if (!v.witness.empty()) {
    ojson w = ojson::object();
    for (const auto& item : v.witness) w[item.key] = item.value;
    out["witness"] = w;
  }
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

ojson theorem_json(const TheoremReport& t) {
  ojson hyps = ojson::array();
  for (const auto& h : t.hypotheses) hyps.push_back(verdict_json(h));
  return ojson{{"id", t.id},
               {"statement", t.statement},
               {"status", std::string(theorem_status_name(t.status))},
               {"hypotheses", hyps},
               {"conclusion", verdict_json(t.conclusion)}};
}

ojson names_json(const std::vector<std::string>& names, ElementSet s) {
  ojson out = ojson::array();
  for (Elem e : s.members()) out.push_back(names[e]);
  return out;
}

Outcome cmd_validate(const Instance& inst) {
  const Presentation& P = *inst.presentation;
  const RightModule& M = *inst.module;
  Outcome o;
  ojson prec = ojson::array();
  for (std::size_t p : P.order().precedence()) prec.push_back(p + 1);
  const auto& cert = P.certificate();
  o.result = ojson{
      {"ring", {{"label", P.ring().label()}, {"order", P.ring().order()}, {"elements", P.ring().names()}}},
      {"variables", P.n()},
      {"order", {{"kind", P.order().kind() == OrderKind::DegLex ? "deglex" : "lex"}, {"precedence", prec}}},
      {"quasi_commutative", P.quasi_commutative()},
      {"bijective", P.bijective()},
      {"module", {{"label", M.label()}, {"order", M.order()}, {"regular", M.is_regular()}}},
      {"consistency",
       {{"bound", cert.bound}, {"overlaps", cert.overlaps}, {"fuzz_triples", cert.fuzz_triples}, {"seed", cert.seed}}}};
  if (inst.embedding) o.result["embedding"] = M.name(*inst.embedding);
  return o;
}

Outcome cmd_mul(const Instance& inst, const std::string& f, const std::string& g) {
  const Presentation& P = *inst.presentation;
  const SkewPoly a = parse_poly(P, f), b = parse_poly(P, g);
  Outcome o;
  o.result = ojson{{"f", to_string(a)}, {"g", to_string(b)}, {"product", to_string(mul(a, b))}};
  return o;
}

Outcome cmd_act(const Instance& inst, const std::string& m, const std::string& f) {
  const Presentation& P = *inst.presentation;
  const ModulePoly a = parse_module_poly(*inst.module, P, m);
  const SkewPoly b = parse_poly(P, f);
  Outcome o;
  o.result = ojson{{"m", to_string(a)}, {"f", to_string(b)}, {"product", to_string(act(a, b))}};
  return o;
}

Outcome cmd_ann(const Instance& inst, const std::vector<std::string>& elements, const Options& opt) {
  const RightModule& M = *inst.module;
  const Presentation& P = *inst.presentation;
  ElementSet X;
  std::vector<ModulePoly> constants;
  for (const auto& name : elements) {
    const auto e = M.find(name);
    if (!e) throw Error(Errc::UnknownName, "unknown module element '" + name + "'");
    X.insert(*e);
    constants.push_back(ModulePoly::constant(M, P, *e));
  }
  const RightIdeal I = ann_in_R(M, X);
  const auto gen = is_idempotent_generated(M.ring(), I);
  Outcome o;
  o.result["elements"] = names_json(M.names(), X);
  o.result["ann_R"] = names_json(M.ring().names(), I.elements());
  o.result["idempotent_generator"] = gen ? ojson(M.ring().name(*gen)) : ojson(nullptr);
  ojson inA{{"bound", opt.degree}};
  try {
    const auto polys = ann_in_A_bounded(constants, P, opt.degree, opt.max_space);
    inA["count"] = polys.size();
    ojson listed = ojson::array();
    for (std::size_t k = 0; k < polys.size() && k < kMaxListedAnnihilators; ++k) listed.push_back(to_string(polys[k]));
    inA["listed"] = listed;
    inA["truncated"] = polys.size() > kMaxListedAnnihilators;
  } catch (const Error& e) {
    if (e.code() != Errc::SearchSpaceTooLarge) throw;
    inA["inconclusive"] = e.what();
  }
  o.result["ann_A"] = inA;
  return o;
}

Outcome cmd_check(const Instance& inst, const std::string& property, const Options& opt) {
  ScanLimits limits;
  limits.max_space = opt.max_space;
  const PropertyVerdict v = check_property(*inst.module, *inst.presentation, property, opt.degree, limits);
  Outcome o;
  o.result = verdict_json(v);
  o.status = std::string(verdict_name(v.verdict));
  o.exit_code = v.fails() ? 1 : v.inconclusive() ? 2 : 0;
  return o;
}

Outcome cmd_theorems(const Instance& inst, const Options& opt) {
  SuiteOptions so;
  so.degree = opt.degree;
  so.limits.max_space = opt.max_space;
  so.embedding = inst.embedding;
  const auto reports = theorem_suite(*inst.module, *inst.presentation, so);
  Outcome o;
  ojson list = ojson::array();
  std::map<std::string, std::size_t> tally;
  for (const auto& name : {"Confirmed", "HypothesisNotMet", "Inconclusive", "VIOLATION"}) tally[name] = 0;
  for (const auto& t : reports) {
    list.push_back(theorem_json(t));
    ++tally[std::string(theorem_status_name(t.status))];
  }
  ojson summary = ojson::object();
  for (const auto& name : {"Confirmed", "HypothesisNotMet", "Inconclusive", "VIOLATION"}) summary[name] = tally[name];
  o.result = ojson{{"theorems", list}, {"summary", summary}};
  if (tally["VIOLATION"] > 0) {
    o.status = "VIOLATION";
    o.exit_code = 3;
  }
  return o;
}

int error_exit_code(Errc code) { return code == Errc::VerificationFailed ? 3 : 2; }

void human_table(const ojson& report, std::ostream& err) {
  err << "spbw " << report["command"].get<std::string>() << "  status " << report["status"].get<std::string>()
      << "  exit " << report["exit_code"].get<int>() << "\n";
  if (report.contains("error")) {
    err << "  " << report["error"]["code"].get<std::string>() << ": " << report["error"]["message"].get<std::string>()
        << "\n";
    return;
  }
  const ojson& r = report["result"];
  if (r.contains("theorems")) {
    for (const auto& t : r["theorems"])
      err << "  " << std::left << std::setw(18) << t["status"].get<std::string>() << t["id"].get<std::string>() << "\n";
    return;
  }
  for (const auto& [key, value] : r.items())
    err << "  " << std::left << std::setw(22) << key << (value.is_string() ? value.get<std::string>() : value.dump())
        << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool human) {
  Options opt;
  CLI::App app{"Computer algebra for skew PBW extensions over finite rings", "spbw"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("instance", opt.instance, "instance JSON file")->required();
  app.add_option("--degree", opt.degree, "degree bound for bounded checks")->check(CLI::Range(0u, 16u));
  app.add_option("--max-space", opt.max_space, "search space cap");
  app.add_option("--order", opt.order, "monomial order")->check(CLI::IsMember({"deglex", "lex"}));
  app.add_option("--seed", opt.seed, "seed for associativity fuzzing");
  app.add_flag("--json-only", opt.json_only, "no table on standard error");

  std::string f, g, property;
  std::vector<std::string> elements;
  auto* validate = app.add_subcommand("validate", "structural checks and consistency certificate");
  auto* mul_cmd = app.add_subcommand("mul", "product of two polynomials");
  mul_cmd->add_option("f", f)->required();
  mul_cmd->add_option("g", g)->required();
  auto* act_cmd = app.add_subcommand("act", "module polynomial times polynomial");
  act_cmd->add_option("m", f)->required();
  act_cmd->add_option("f", g)->required();
  auto* ann = app.add_subcommand("ann", "annihilators of module elements");
  ann->add_option("elements", elements)->required();
  auto* check = app.add_subcommand("check", "decide one property");
  check->add_option("property", property)->required();
  auto* theorems = app.add_subcommand("theorems", "run the theorem suite");
  auto* serialize = app.add_subcommand("serialize", "canonical instance JSON");

  ojson report;
  report["schema"] = 1;
  report["engine"] = ojson{{"name", "spbw"}, {"version", SPBW_VERSION}};

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report["instance"] = nullptr;
    report["command"] = nullptr;
    report["arguments"] = args;
    report["options"] = ojson::object();
    report["status"] = "error";
    report["exit_code"] = 2;
    report["error"] = ojson{{"code", "UsageError"}, {"message", e.what()}, {"witness", ojson::array()}};
    out << report.dump(2) << "\n";
    if (human && !opt.json_only) human_table(report, err);
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  std::vector<std::string> cmd_args;
  if (chosen == mul_cmd || chosen == act_cmd) cmd_args = {f, g};
  if (chosen == ann) cmd_args = elements;
  if (chosen == check) cmd_args = {property};

  ojson options{{"degree", opt.degree}, {"max_space", opt.max_space}};
  if (opt.order) options["order"] = *opt.order;
  if (opt.seed) options["seed"] = *opt.seed;
  report["instance"] = ojson{{"name", nullptr}, {"digest", nullptr}};
  report["command"] = chosen->get_name();
  report["arguments"] = cmd_args;
  report["options"] = options;

  Outcome o;
  try {
    LoadOptions lo;
    if (opt.order) lo.order = *opt.order == "lex" ? OrderKind::Lex : OrderKind::DegLex;
    lo.seed = opt.seed;
    const Instance inst = load_instance(opt.instance, lo);
    report["instance"] = ojson{{"name", inst.name}, {"digest", inst.digest}};
    if (chosen == validate) o = cmd_validate(inst);
    if (chosen == mul_cmd) o = cmd_mul(inst, f, g);
    if (chosen == act_cmd) o = cmd_act(inst, f, g);
    if (chosen == ann) o = cmd_ann(inst, elements, opt);
    if (chosen == check) o = cmd_check(inst, property, opt);
    if (chosen == theorems) o = cmd_theorems(inst, opt);
    if (chosen == serialize) o.result = ojson{{"canonical", ojson::parse(inst.canonical)}};
  } catch (const Error& e) {
    o.status = "error";
    o.exit_code = error_exit_code(e.code());
    o.result = nullptr;
    report["error"] =
        ojson{{"code", std::string(errc_name(e.code()))}, {"message", e.what()}, {"witness", e.witness()}};
  }
  report["result"] = o.result;
  report["status"] = o.status;
  report["exit_code"] = o.exit_code;
  if (report.contains("error")) {
    // keep "error" last
    ojson e = report["error"];
    report.erase("error");
    report["error"] = e;
  }
  out << report.dump(2) << "\n";
  if (human && !opt.json_only) human_table(report, err);
  return o.exit_code;
}

}  // namespace spbw::cli
