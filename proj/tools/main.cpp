// rieszterm command-line front end.
//
// One binary, eight subcommands:
//   eval      exact rational evaluation of a term at a point
//   certify   linear bound certificate k + sum(lambda_j * |x_j|)
//   classify  integrability-preservation flags + certificate or box bound
//   witness   search for a divergence witness (atoms + weights) for a term
//   verify    re-check a witness file and print the divergence report
//   synth     emit indicator / simple-function terms as DSL text
//   axioms    randomized identity catalog checks over exact models
//   free-eq   randomized equality of two terms on sampled points
//
// Exit codes: 0 success, 1 negative analysis verdict (not certifiable,
// witness not found / inconclusive, identity fails, terms differ), 2 usage
// or input-parse errors.  All output is deterministic for fixed seeds.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rieszterm/rieszterm.hpp"

namespace rz = rieszterm;
using nlohmann::json;

namespace {

int g_exit = 0;

struct Emitter {
  // Points at the --format flag's storage; callbacks run while parse() is
  // still on the stack, so the value is read lazily.
  const std::string* fmt = nullptr;
  bool jsonl() const { return fmt != nullptr && *fmt == "json-lines"; }
  void line(const std::string& text, const json& j) const {
    if (jsonl())
      std::cout << j.dump() << "\n";
    else
      std::cout << text << "\n";
  }
};

rz::Signature parse_sig(const std::string& s) {
  if (s == "t") return rz::Signature::Base;
  if (s == "u") return rz::Signature::Unital;
  if (s == "ext") return rz::Signature::Extended;
  throw rz::ParseError("unknown signature '" + s + "' (expected t, u, or ext)", 0);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rz::ParseError("cannot open file: " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Term text from --expr or --term (file); exactly one must be given.
std::string term_text(const std::string& expr, const std::string& file) {
  if (!expr.empty() && !file.empty())
    throw rz::ParseError("give either --expr or --term, not both", 0);
  if (expr.empty() && file.empty()) throw rz::ParseError("missing --expr or --term", 0);
  return expr.empty() ? trim(slurp(file)) : expr;
}

rz::VarIndex parse_var_name(const std::string& tok) {
  std::string t = trim(tok);
  if (!t.empty() && (t[0] == 'x' || t[0] == 'X')) t = t.substr(1);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw rz::ParseError("bad variable name '" + tok + "'", 0);
  if (t.size() > 9) throw rz::ParseError("variable index too large: " + tok, 0);
  return static_cast<rz::VarIndex>(std::stoul(t));
}

// "x0=1,x1=1/2" -> Point.
rz::Point parse_point_arg(const std::string& s) {
  rz::Point p;
  if (trim(s).empty()) return p;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw rz::ParseError("bad --at entry '" + item + "'", 0);
    p[parse_var_name(item.substr(0, eq))] = rz::parse_rational(trim(item.substr(eq + 1)));
  }
  return p;
}

// Each entry "0=-3,3" or "x0=-3,3" -> one box axis.
rz::Box parse_box_args(const std::vector<std::string>& entries) {
  rz::Box b;
  for (const std::string& e : entries) {
    std::size_t eq = e.find('=');
    if (eq == std::string::npos) throw rz::ParseError("bad --box entry '" + e + "'", 0);
    std::string range = e.substr(eq + 1);
    std::size_t comma = range.find(',');
    if (comma == std::string::npos)
      throw rz::ParseError("bad --box range '" + range + "' (expected lo,hi)", 0);
    b[parse_var_name(e.substr(0, eq))] =
        rz::Interval(rz::parse_rational(trim(range.substr(0, comma))),
                     rz::parse_rational(trim(range.substr(comma + 1))));
  }
  return b;
}

// "r" | "power:K" | "quotient:K:N" (N = size of the null set; the null set is
// the first N coordinates).
rz::PowerModel parse_model_arg(const std::string& s) {
  if (s == "r") return rz::PowerModel::reals();
  auto num_after = [&](std::size_t pos) -> std::size_t {
    std::string t = s.substr(pos);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw rz::ParseError("bad --model '" + s + "'", 0);
    return std::stoul(t);
  };
  if (s.rfind("power:", 0) == 0) return rz::PowerModel::power(num_after(6));
  if (s.rfind("quotient:", 0) == 0) {
    std::size_t second = s.find(':', 9);
    if (second == std::string::npos)
      throw rz::ParseError("bad --model '" + s + "' (expected quotient:K:N)", 0);
    std::size_t k = std::stoul(s.substr(9, second - 9));
    std::size_t n = num_after(second + 1);
    if (n > k) throw rz::ParseError("null-set size exceeds dimension in '" + s + "'", 0);
    std::set<std::size_t> nulls;
    for (std::size_t i = 0; i < n; ++i) nulls.insert(i);
    return rz::PowerModel::quotient(k, std::move(nulls));
  }
  throw rz::ParseError("unknown --model '" + s + "' (expected r, power:K, quotient:K:N)", 0);
}

std::string point_str(const rz::Point& p) {
  std::string s;
  for (const auto& [v, val] : p) {
    if (!s.empty()) s += ",";
    s += "x" + std::to_string(v) + "=" + rz::to_string(val);
  }
  return s.empty() ? "(empty point)" : s;
}

json lambda_json(const rz::BoundCertificate& c) {
  json j = json::object();
  for (const auto& [v, l] : c.lambda) j[std::to_string(v)] = rz::to_string(l);
  return j;
}

// --- region / simple-spec text parsing ------------------------------------------------

// region := all( region, ... ) | any( region, ... ) | x<idx> (>=|>) rational
rz::Region parse_region_text(const std::string& text);

std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

rz::Region parse_region_text(const std::string& text) {
  std::string s = trim(text);
  for (const char* kw : {"all", "any"}) {
    std::string prefix = std::string(kw) + "(";
    if (s.rfind(prefix, 0) == 0 && s.back() == ')') {
      std::vector<rz::Region> parts;
      for (const std::string& piece :
           split_top_level(s.substr(prefix.size(), s.size() - prefix.size() - 1)))
        parts.push_back(parse_region_text(piece));
      return kw == std::string("all") ? rz::Region::all(std::move(parts))
                                      : rz::Region::any(std::move(parts));
    }
  }
  std::size_t rel = s.find(">=");
  rz::ThresholdSet ts;
  if (rel != std::string::npos) {
    ts.rel = rz::ThresholdSet::Rel::Ge;
    ts.threshold = rz::parse_rational(trim(s.substr(rel + 2)));
  } else {
    rel = s.find('>');
    if (rel == std::string::npos)
      throw rz::ParseError("bad region '" + s + "' (expected x<i> > c or x<i> >= c)", 0);
    ts.rel = rz::ThresholdSet::Rel::Gt;
    ts.threshold = rz::parse_rational(trim(s.substr(rel + 1)));
  }
  ts.var = parse_var_name(s.substr(0, rel));
  return rz::Region::of(ts);
}

// Line-oriented simple-function spec:
//   dominator <term DSL>
//   hint <positive integer>          (optional)
//   entry <rational> : <region>      (zero or more)
// Blank lines and lines starting with '#' are ignored.
rz::SimpleFunctionSpec parse_simple_spec(const std::string& text) {
  rz::SimpleFunctionSpec spec;
  bool have_dominator = false;
  std::stringstream ss(text);
  std::string raw;
  while (std::getline(ss, raw)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::size_t sp = line.find_first_of(" \t");
    std::string head = sp == std::string::npos ? line : line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
    if (head == "dominator") {
      spec.dominator = rz::parse(rest, rz::Signature::Base);
      have_dominator = true;
    } else if (head == "hint") {
      spec.hint = static_cast<unsigned>(std::stoul(rest));
    } else if (head == "entry") {
      std::size_t colon = rest.find(':');
      if (colon == std::string::npos)
        throw rz::ParseError("entry line needs '<coeff> : <region>': " + line, 0);
      spec.entries.emplace_back(rz::parse_rational(trim(rest.substr(0, colon))),
                                parse_region_text(rest.substr(colon + 1)));
    } else {
      throw rz::ParseError("unknown spec line: " + line, 0);
    }
  }
  if (!have_dominator) throw rz::ParseError("spec file is missing a 'dominator' line", 0);
  return spec;
}

void require_seed(bool strict, const CLI::Option* seed_opt) {
  if (strict && seed_opt->count() == 0)
    throw CLI::ValidationError("--strict requires an explicit --seed for randomized commands");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rieszterm: symbolic terms over truncated vector-lattice operations --\n"
      "exact evaluation, linear growth certificates for p-integrability\n"
      "preservation, divergence witnesses, indicator synthesis, and an\n"
      "identity catalog over exact rational models."};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json-lines"}))
      ->capture_default_str();
  bool strict = false;
  app.add_flag("--strict", strict, "require an explicit --seed on randomized commands");

  // Shared option storage (each subcommand binds what it needs).
  std::string expr, term_file, sig_name = "t", at_arg, out_file, witness_file;
  std::vector<std::string> box_args;
  std::string join_rule = "max", mode_name = "arbitrary", model_arg, id_arg;
  std::string p_arg = "1", threshold_arg, lambda_arg, lhs_arg, rhs_arg, spec_file;
  std::uint64_t seed = 0;
  std::size_t samples = 10000, count = 8;
  unsigned var_index = 0, hint = rz::kDefaultStabilizationHint;
  bool mutants = false;

  Emitter em;
  em.fmt = &format;

  // --- eval ---
  auto* eval_cmd = app.add_subcommand(
      "eval", "Evaluate a term at a rational point; prints the exact rational value.");
  eval_cmd->add_option("--expr", expr, "term in DSL syntax");
  eval_cmd->add_option("--term", term_file, "file containing the term");
  eval_cmd->add_option("--sig", sig_name, "operation signature: t, u, ext")
      ->check(CLI::IsMember({"t", "u", "ext"}))
      ->capture_default_str();
  eval_cmd->add_option("--at", at_arg, "point, e.g. x0=1,x1=1/2");
  eval_cmd->callback([&] {
    rz::Term t = rz::parse(term_text(expr, term_file), parse_sig(sig_name));
    rz::EvalDiagnostics diag;
    rz::Rational v = rz::eval(t, parse_point_arg(at_arg), &diag);
    json j{{"cmd", "eval"}, {"value", rz::to_string(v)}, {"stability_warning", diag.stability_warning}};
    em.line(rz::to_string(v), j);
    for (const std::string& n : diag.notes) std::cerr << "warning: " << n << "\n";
  });

  // --- certify ---
  auto* cert_cmd = app.add_subcommand(
      "certify",
      "Infer a certificate |t(x)| <= k + sum(lambda_j*|x_j|); such a bound "
      "witnesses preservation of p-integrability (finite measures; k = 0: all "
      "measures).");
  cert_cmd->add_option("--expr", expr, "term in DSL syntax");
  cert_cmd->add_option("--term", term_file, "file containing the term");
  cert_cmd->add_option("--sig", sig_name, "operation signature: t, u, ext")
      ->check(CLI::IsMember({"t", "u", "ext"}))
      ->capture_default_str();
  cert_cmd->add_option("--join-rule", join_rule, "lambda combination at joins")
      ->check(CLI::IsMember({"max", "sum"}))
      ->capture_default_str();
  cert_cmd->callback([&] {
    rz::Term t = rz::parse(term_text(expr, term_file), parse_sig(sig_name));
    try {
      rz::BoundCertificate c =
          rz::infer_bound(t, join_rule == "sum" ? rz::JoinRule::Sum : rz::JoinRule::Max);
      json j{{"cmd", "certify"}, {"certifiable", true}, {"k", rz::to_string(c.k)},
             {"lambda", lambda_json(c)}};
      em.line(rz::to_string(c), j);
    } catch (const rz::NotCertifiable& e) {
      json j{{"cmd", "certify"}, {"certifiable", false}, {"reason", e.what()}};
      em.line(std::string("not certifiable: ") + e.what(), j);
      g_exit = 1;
    }
  });

  // --- classify ---
  auto* cls_cmd = app.add_subcommand(
      "classify",
      "Report which integrability classes the term preserves (arbitrary-measure "
      "p, finite-measure p, boundedness), with a certificate or a box bound.");
  cls_cmd->add_option("--expr", expr, "term in DSL syntax");
  cls_cmd->add_option("--term", term_file, "file containing the term");
  cls_cmd->add_option("--sig", sig_name, "operation signature: t, u, ext")
      ->check(CLI::IsMember({"t", "u", "ext"}))
      ->capture_default_str();
  cls_cmd->add_option("--box", box_args, "box axis i=lo,hi (repeatable)");
  cls_cmd->callback([&] {
    rz::Term t = rz::parse(term_text(expr, term_file), parse_sig(sig_name));
    std::optional<rz::Box> box;
    if (!box_args.empty()) box = parse_box_args(box_args);
    rz::Classification c = rz::classify(t, box);
    std::string flags = std::string("p=") + (c.preserves_p_integrability ? "true" : "false") +
                        " finite=" + (c.preserves_finite_p_integrability ? "true" : "false") +
                        " infty=" + (c.preserves_infty_integrability ? "true" : "false");
    json j{{"cmd", "classify"},
           {"p", c.preserves_p_integrability},
           {"finite", c.preserves_finite_p_integrability},
           {"infty", c.preserves_infty_integrability}};
    std::string second;
    if (c.certificate) {
      second = rz::to_string(*c.certificate);
      j["k"] = rz::to_string(c.certificate->k);
      j["lambda"] = lambda_json(*c.certificate);
    } else if (c.box_bound) {
      second = "box=" + rz::to_string(c.box_bound->second);
      j["box_lo"] = rz::to_string(c.box_bound->second.lo);
      j["box_hi"] = rz::to_string(c.box_bound->second.hi);
    }
    em.line(flags, j);
    if (!second.empty()) em.line(second, json{{"cmd", "classify_detail"}, {"detail", second}});
  });

  // --- witness ---
  auto* wit_cmd = app.add_subcommand(
      "witness",
      "Search for points v^0..v^{N-1} whose growth defeats every linear bound, "
      "and assemble the discrete measure (atom weights 1/|t(v^n)|^p) on which "
      "the term maps a p-integrable family to a divergent image.");
  wit_cmd->add_option("--expr", expr, "term in DSL syntax");
  wit_cmd->add_option("--term", term_file, "file containing the term");
  wit_cmd->add_option("--sig", sig_name, "operation signature: t, u, ext")
      ->check(CLI::IsMember({"t", "u", "ext"}))
      ->capture_default_str();
  wit_cmd->add_option("--p", p_arg, "integrability exponent p >= 1")->capture_default_str();
  wit_cmd->add_option("--mode", mode_name, "measure-space mode")
      ->check(CLI::IsMember({"arbitrary", "finite"}))
      ->capture_default_str();
  wit_cmd->add_option("--count", count, "number of stages N")->capture_default_str();
  auto* wit_seed = wit_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  wit_cmd->add_option("--out", out_file, "write the witness file here (else stdout)");
  wit_cmd->callback([&] {
    require_seed(strict, wit_seed);
    rz::Term t = rz::parse(term_text(expr, term_file), parse_sig(sig_name));
    rz::WitnessConfig cfg;
    cfg.p = rz::parse_rational(p_arg);
    cfg.mode = mode_name == "finite" ? rz::WitnessMode::Finite : rz::WitnessMode::Arbitrary;
    cfg.count = count;
    cfg.seed = seed;
    try {
      rz::ViolationWitness w = rz::build_witness(rz::term_operation(t), cfg);
      std::string text = rz::write_witness(w);
      std::string summary = "witness built: N=" + std::to_string(w.count()) +
                            " p=" + rz::to_string(w.p) +
                            " mode=" + (w.mode == rz::WitnessMode::Finite ? "F" : "A") +
                            " arity=" + std::to_string(w.arity);
      json j{{"cmd", "witness"},  {"built", true},
             {"count", w.count()}, {"p", rz::to_string(w.p)},
             {"mode", w.mode == rz::WitnessMode::Finite ? "F" : "A"}, {"arity", w.arity}};
      if (out_file.empty() && em.jsonl()) j["witness_text"] = text;
      em.line(summary, j);
      if (!out_file.empty()) {
        std::ofstream out(out_file);
        out << text;
      } else if (!em.jsonl()) {
        std::cout << text;
      }
    } catch (const rz::WitnessError& e) {
      json j{{"cmd", "witness"}, {"built", false}, {"reason", e.what()}};
      em.line(std::string("not found: ") + e.what() +
                  " (inconclusive: an exhausted search budget proves nothing)",
              j);
      g_exit = 1;
    }
  });

  // --- verify ---
  auto* ver_cmd = app.add_subcommand(
      "verify",
      "Re-check a witness file with exact arithmetic: image partial sum vs the "
      "threshold, and each source partial sum vs its exhibited bound.");
  ver_cmd->add_option("--file", witness_file, "witness file path")->required();
  ver_cmd->add_option("--threshold", threshold_arg, "image-sum threshold (default N/2)");
  ver_cmd->callback([&] {
    rz::ViolationWitness w = rz::read_witness(slurp(witness_file));
    std::optional<rz::Rational> thr;
    if (!threshold_arg.empty()) thr = rz::parse_rational(threshold_arg);
    rz::WitnessReport rep = rz::verify_witness(w, thr);
    em.line("image_sum=" + rz::to_string(rep.image_sum) + " threshold=" + rz::to_string(rep.threshold),
            json{{"cmd", "verify"},
                 {"image_lo", rz::to_string(rep.image_sum.lo)},
                 {"image_hi", rz::to_string(rep.image_sum.hi)},
                 {"threshold", rz::to_string(rep.threshold)}});
    for (const auto& s : rep.sources) {
      em.line("source i=" + std::to_string(s.i) + " sum=" + rz::to_string(s.sum) +
                  " bound=" + rz::to_string(s.bound) + " within=" + (s.within ? "true" : "false"),
              json{{"cmd", "verify_source"},
                   {"i", s.i},
                   {"sum_lo", rz::to_string(s.sum.lo)},
                   {"sum_hi", rz::to_string(s.sum.hi)},
                   {"bound", rz::to_string(s.bound)},
                   {"within", s.within}});
    }
    em.line(rep.diverges ? "verdict: DIVERGES" : "verdict: INCONCLUSIVE",
            json{{"cmd", "verify_verdict"}, {"diverges", rep.diverges}});
    if (!rep.diverges) g_exit = 1;
  });

  // --- synth ---
  auto* synth_cmd = app.add_subcommand(
      "synth", "Emit indicator and simple-function terms as DSL text (consumable by eval/certify).");
  synth_cmd->require_subcommand(1);

  auto* gt_cmd = synth_cmd->add_subcommand(
      "ind-gt", "Indicator of {x_var > lambda}: exactly 1 inside, 0 elsewhere.");
  gt_cmd->add_option("--var", var_index, "variable index")->capture_default_str();
  gt_cmd->add_option("--lambda", lambda_arg, "threshold (positive rational)")->required();
  gt_cmd->callback([&] {
    rz::Term t = rz::indicator_gt(var_index, rz::parse_rational(lambda_arg));
    em.line(rz::print(t), json{{"cmd", "synth"}, {"kind", "ind-gt"}, {"term", rz::print(t)}});
  });

  auto* ge_cmd = synth_cmd->add_subcommand(
      "ind-ge", "Indicator of {x_var >= lambda}: exactly 1 inside, 0 elsewhere.");
  ge_cmd->add_option("--var", var_index, "variable index")->capture_default_str();
  ge_cmd->add_option("--lambda", lambda_arg, "threshold (positive rational)")->required();
  ge_cmd->add_option("--hint", hint, "stabilization window for the inner meet")
      ->capture_default_str();
  ge_cmd->callback([&] {
    rz::Term t = rz::indicator_ge(var_index, rz::parse_rational(lambda_arg), hint);
    em.line(rz::print(t), json{{"cmd", "synth"}, {"kind", "ind-ge"}, {"term", rz::print(t)}});
  });

  auto* simple_cmd = synth_cmd->add_subcommand(
      "simple",
      "Simple function sum(c_i * ind(region_i)) dominated by a term; spec file "
      "lines: 'dominator <term>', optional 'hint <n>', 'entry <coeff> : <region>' "
      "with regions x<i> > c, x<i> >= c, all(...), any(...).");
  simple_cmd->add_option("--spec", spec_file, "spec file path")->required();
  simple_cmd->callback([&] {
    rz::Term t = rz::simple_term(parse_simple_spec(slurp(spec_file)));
    em.line(rz::print(t), json{{"cmd", "synth"}, {"kind", "simple"}, {"term", rz::print(t)}});
  });

  // --- axioms ---
  auto* ax_cmd = app.add_subcommand(
      "axioms",
      "Check the 16-law catalog of truncated vector-lattice identities on an "
      "exact model by randomized instantiation; --mutants checks that each "
      "law's documented broken variant is refuted.");
  ax_cmd->add_option("--model", model_arg, "r | power:K | quotient:K:N (null set = first N coords)")
      ->required();
  ax_cmd->add_option("--samples", samples, "instantiations per law")->capture_default_str();
  auto* ax_seed = ax_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  ax_cmd->add_option("--id", id_arg, "check a single law (e.g. TS1, T4P, DOUBLESUP)");
  ax_cmd->add_flag("--mutants", mutants, "check the documented mutations instead");
  ax_cmd->callback([&] {
    require_seed(strict, ax_seed);
    rz::PowerModel m = parse_model_arg(model_arg);
    std::vector<rz::IdentityId> ids =
        id_arg.empty() ? rz::all_identities() : std::vector<rz::IdentityId>{rz::identity_from_name(id_arg)};
    bool bad = false;
    for (rz::IdentityId id : ids) {
      rz::CheckResult r = rz::check_identity(m, id, samples, seed, mutants);
      std::string name = rz::identity_name(id);
      if (!mutants) {
        if (r.holds) {
          em.line(name + " holds samples=" + std::to_string(samples),
                  json{{"id", name}, {"holds", true}, {"samples", samples}});
        } else {
          em.line(name + " FAILS at=" + r.counterexample +
                      " sample=" + std::to_string(r.counterexample_index),
                  json{{"id", name},
                       {"holds", false},
                       {"sample", r.counterexample_index},
                       {"at", r.counterexample}});
          bad = true;
        }
      } else {
        if (!r.holds) {
          em.line(name + " mutant refuted sample=" + std::to_string(r.counterexample_index),
                  json{{"id", name}, {"mutant", true}, {"refuted", true},
                       {"sample", r.counterexample_index}});
        } else {
          em.line(name + " mutant HOLDS samples=" + std::to_string(samples),
                  json{{"id", name}, {"mutant", true}, {"refuted", false}, {"samples", samples}});
          bad = true;
        }
      }
    }
    if (bad) g_exit = 1;
  });

  // --- free-eq ---
  auto* fe_cmd = app.add_subcommand(
      "free-eq",
      "Compare two terms by exact evaluation on seeded random points; terms "
      "over projections agree as functions iff they denote the same element "
      "of the free algebra.");
  fe_cmd->add_option("--lhs", lhs_arg, "left term")->required();
  fe_cmd->add_option("--rhs", rhs_arg, "right term")->required();
  fe_cmd->add_option("--sig", sig_name, "operation signature: t, u, ext")
      ->check(CLI::IsMember({"t", "u", "ext"}))
      ->capture_default_str();
  fe_cmd->add_option("--samples", samples, "number of sample points")->capture_default_str();
  auto* fe_seed = fe_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  fe_cmd->callback([&] {
    require_seed(strict, fe_seed);
    rz::Signature sig = parse_sig(sig_name);
    rz::Term a = rz::parse(lhs_arg, sig);
    rz::Term b = rz::parse(rhs_arg, sig);
    rz::FreeEqResult r = rz::free_eq(a, b, samples, seed);
    if (r.agree) {
      em.line("agree samples=" + std::to_string(r.samples_run),
              json{{"cmd", "free-eq"}, {"agree", true}, {"samples", r.samples_run}});
    } else {
      em.line("differ at=" + point_str(r.witness) + " lhs=" + rz::to_string(r.lhs) +
                  " rhs=" + rz::to_string(r.rhs),
              json{{"cmd", "free-eq"},
                   {"agree", false},
                   {"at", point_str(r.witness)},
                   {"lhs", rz::to_string(r.lhs)},
                   {"rhs", rz::to_string(r.rhs)}});
      g_exit = 1;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const rz::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const rz::MissingVariable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rz::MalformedWitnessFile& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g_exit;
}
