// Copyright 2026 The lowdeg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lowdeg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "lowdeg/bivariate.hpp"
#include "lowdeg/exactchar.hpp"
#include "lowdeg/io.hpp"
#include "lowdeg/plcode.hpp"
#include "lowdeg/runtime.hpp"
#include "lowdeg/tester.hpp"

namespace lowdeg::cli {

namespace {

// A report plus whether every asserted invariant held.
struct Outcome {
  nlohmann::json result;
  bool ok = true;
  std::string text;  // non-JSON payload (codeword files, CSV)
  bool raw = false;
};

struct Context {
  const RunConfig& cfg;
  std::uint64_t budget;
  std::istream& in;
  FieldPtr field;
};

CorruptionSpec parse_corruption(const std::string& text, const FieldSpec& F, std::uint64_t instance_seed) {
  if (text.rfind("point:", 0) == 0) {
    const auto rest = text.substr(6);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("--corrupt point:INDEX:VALUE");
    return CorruptionSpec::single_point(std::stoull(rest.substr(0, colon)),
                                        F.from_index(std::stoull(rest.substr(colon + 1))));
  }
  const Rational fraction = parse_rational(text);
  if (fraction < Rational(0) || fraction > Rational(1)) throw std::invalid_argument("--corrupt must lie in [0, 1]");
  return CorruptionSpec::random_points(fraction, instance_seed);
}

Rational corrupt_fraction(const RunConfig& cfg) {
  const Rational fraction = parse_rational(cfg.corrupt);
  if (fraction < Rational(0) || fraction > Rational(1)) throw std::invalid_argument("--corrupt must lie in [0, 1]");
  return fraction;
}

std::string slurp_input(Context& ctx) {
  if (ctx.cfg.input == "-") return std::string(std::istreambuf_iterator<char>(ctx.in), {});
  std::ifstream file(ctx.cfg.input);
  if (!file) throw std::invalid_argument("cannot open input '" + ctx.cfg.input + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

MultiPoly instance_poly(const Context& ctx) {
  Rng rng(ctx.cfg.instance_seed, 0);
  return random_poly(ctx.field, ctx.cfg.m, ctx.cfg.d, rng);
}

nlohmann::json degree_json(int deg) { return deg == kNegInfDegree ? nlohmann::json("-inf") : nlohmann::json(deg); }

Outcome cmd_char_census(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  Outcome o;
  if (c.samples > 0) {
    const SearchResult r = characterization_random_search(ctx.field, c.m, c.d, c.samples, c.seed, ctx.budget);
    o.result = r.to_json();
    o.ok = r.violations == 0;
    return o;
  }
  const CensusResult r = characterization_census(ctx.field, c.m, c.d, ctx.budget);
  o.result = r.to_json();
  o.result["mode"] = "exhaustive";
  o.ok = r.violations == 0;
  return o;
}

Outcome cmd_counterexample(Context& ctx) {
  const FunctionTable g = build_counterexample(ctx.field, ctx.cfg.d);
  const CharVerdict v = characterization_check(g, ctx.cfg.d, ctx.budget);
  Outcome o;
  o.result = v.to_json();
  o.result["polynomial"] = poly_to_json(counterexample_poly(ctx.field));
  o.ok = v.passes_line_test && v.total_deg == static_cast<int>(ctx.field->q());
  return o;
}

Outcome cmd_char_check(Context& ctx) {
  if (ctx.cfg.input.empty()) throw std::invalid_argument("char-check needs --input with a function table");
  std::istringstream text(slurp_input(ctx));
  const FunctionTable g = read_table(text);
  const CharVerdict v = characterization_check(g, ctx.cfg.d, ctx.budget);
  Outcome o;
  o.result = v.to_json();
  o.ok = v.theorem_consistent;
  return o;
}

Outcome cmd_binom_sweep(Context& ctx) {
  const BinomSweep r = lemma_binom_sweep(ctx.cfg.p, ctx.cfg.s, ctx.budget);
  Outcome o;
  o.result = r.to_json();
  o.ok = r.ok();
  if (ctx.cfg.format == "csv") {
    std::ostringstream csv;
    csv << "p,s,pairs_checked,failures,ok\n"
        << r.p << ',' << r.s << ',' << r.pairs_checked << ',' << r.failures.size() << ',' << (r.ok() ? "true" : "false")
        << '\n';
    o.text = csv.str();
    o.raw = true;
  }
  return o;
}

// The input table, or a random degree-d polynomial plus the requested
// corruption.
struct Instance {
  std::optional<MultiPoly> g;
  FunctionTable f;
};

Instance load_instance(Context& ctx) {
  if (!ctx.cfg.input.empty()) {
    std::istringstream text(slurp_input(ctx));
    FunctionTable f = read_table(text);
    if (f.arity() != ctx.cfg.m || !same_field(f.field(), ctx.field)) {
      throw std::invalid_argument("input table does not match --p --s --m");
    }
    return Instance{std::nullopt, std::move(f)};
  }
  MultiPoly g = instance_poly(ctx);
  FunctionTable f = apply_corruption(FunctionTable::of(g), parse_corruption(ctx.cfg.corrupt, *ctx.field, ctx.cfg.instance_seed));
  return Instance{std::move(g), std::move(f)};
}

Outcome cmd_lowdeg_exact(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const Instance inst = load_instance(ctx);
  const LineSurvey survey = survey_lines(inst.f, c.d, parse_backend(c.backend), ctx.budget);
  const Rational delta = exact_delta(survey);
  const Rational df = delta_f(survey, inst.f);
  const FunctionTable corrected = corr(survey, inst.f);
  const Rational dist_corr = distance(inst.f, corrected);
  Outcome o;
  o.result = {{"exact_delta", to_string(delta)},
              {"delta_f", to_string(df)},
              {"plurality_disagreement", to_string(exact_plurality_disagreement(survey))},
              {"corr_vote_loss", to_string(corr_vote_loss(survey))},
              {"dist_f_corr", to_string(dist_corr)},
              {"delta_ge_delta_f", delta >= df},
              {"two_delta_f_ok", dist_corr <= Rational(2) * df},
              {"hypothesis", hypothesis_note(delta, ctx.field->q(), c.m)}};
  o.ok = delta >= df && dist_corr <= Rational(2) * df;
  if (inst.g) {
    const Rational dist_g = distance(inst.f, FunctionTable::of(*inst.g));
    o.result["dist_f_g"] = to_string(dist_g);
    o.result["corr_equals_g"] = corrected == FunctionTable::of(*inst.g);
    if (delta <= Rational(1, 8)) o.result["two_delta_distance_ok"] = dist_g <= Rational(2) * delta;
  }
  return o;
}

Outcome cmd_lowdeg_mc(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  if (c.trials == 0) throw std::invalid_argument("--trials must be >= 1");
  const Instance inst = load_instance(ctx);
  const TestReport r = estimate_delta(inst.f, c.d, c.trials, c.seed, parse_backend(c.backend));
  Outcome o;
  o.result = r.to_json();
  return o;
}

Outcome cmd_self_correct(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  if (!c.input.empty()) throw std::invalid_argument("self-correct generates its instance; drop --input");
  const MultiPoly g = instance_poly(ctx);
  const ContractionReport r = contraction_experiment(
      g, parse_corruption(c.corrupt, *ctx.field, c.instance_seed), c.d, parse_backend(c.backend), ctx.budget);
  Outcome o;
  o.result = r.to_json();
  o.result["hypothesis"] = hypothesis_note(r.delta_f_before, ctx.field->q(), c.m);
  o.ok = r.bounds_ok;
  return o;
}

Outcome cmd_plane_diag(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const Instance inst = load_instance(ctx);
  const FieldSpec& F = *ctx.field;
  Rng rng(c.seed, 0);
  auto draw = [&] {
    Point p(c.m);
    for (auto& e : p) e = Elem{static_cast<std::uint32_t>(rng.below(F.q()))};
    return p;
  };
  const Point x = draw();
  const Point h1 = draw();
  const Point h2 = draw();
  const Point h3 = draw();
  const PlaneSample s = affine_plane_sample(inst.f, x, h1, h2, h3, c.d, parse_backend(c.backend));
  auto points = [](const Point& p) {
    nlohmann::json j = nlohmann::json::array();
    for (Elem e : p) j.push_back(e.idx);
    return j;
  };
  auto deltas = [](const std::vector<Rational>& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : v) j.push_back(to_string(r));
    return j;
  };
  nlohmann::json matrix = nlohmann::json::array();
  for (Elem e : s.matrix) matrix.push_back(e.idx);
  Outcome o;
  o.result = {{"x", points(x)},         {"h1", points(h1)},
              {"h2", points(h2)},       {"h3", points(h3)},
              {"matrix", matrix},       {"row_deltas", deltas(s.row_deltas)},
              {"col_deltas", deltas(s.col_deltas)}};
  return o;
}

Outcome cmd_bivariate_check(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const FieldSpec& F = *ctx.field;
  RowColFamily fam;
  Outcome o;
  if (!c.input.empty()) {
    fam = RowColFamily::from_json(ctx.field, c.d, nlohmann::json::parse(slurp_input(ctx)));
  } else {
    Rng rng(c.instance_seed, 0);
    const BivariatePoly q0 = random_bivariate(ctx.field, c.d, rng);
    const std::uint64_t bad = round_count(corrupt_fraction(c), F.q());
    std::vector<std::uint32_t> rows(F.q());
    for (std::uint32_t i = 0; i < F.q(); ++i) rows[i] = i;
    for (std::uint64_t i = 0; i < bad; ++i) std::swap(rows[i], rows[i + rng.below(F.q() - i)]);
    rows.resize(bad);
    std::sort(rows.begin(), rows.end());
    fam = corrupt_family(q0, rows, {}, rng);
    nlohmann::json r = nlohmann::json::array();
    for (auto i : rows) r.push_back(i);
    o.result["corrupted_rows"] = r;
  }
  const Rational eps = c.epsilon.empty() ? Rational(c.d, F.q()) : parse_rational(c.epsilon);
  const StrengthenReport r = strengthen_check(fam, eps);
  o.result.update(r.to_json());
  o.ok = r.ok();
  return o;
}

PLCodeSpec code_spec(const Context& ctx) {
  PLCodeSpec spec{ctx.field, ctx.cfg.m, ctx.cfg.d, std::nullopt, std::nullopt};
  spec.validate();
  return spec;
}

// The input codeword, or the encoding of the instance polynomial with the
// requested fraction of letters corrupted.
struct CodeInstance {
  std::optional<MultiPoly> message;
  Codeword word;
};

CodeInstance load_codeword(Context& ctx) {
  if (!ctx.cfg.input.empty()) {
    std::istringstream text(slurp_input(ctx));
    Codeword w = read_codeword(text);
    return CodeInstance{std::nullopt, std::move(w)};
  }
  MultiPoly f = instance_poly(ctx);
  Codeword w = corrupt_codeword(encode(f, code_spec(ctx), ctx.budget), corrupt_fraction(ctx.cfg), ctx.cfg.instance_seed);
  return CodeInstance{std::move(f), std::move(w)};
}

Outcome cmd_plcode_encode(Context& ctx) {
  MultiPoly f = ctx.cfg.input.empty() ? instance_poly(ctx)
                                      : poly_from_json(ctx.field, ctx.cfg.m, nlohmann::json::parse(slurp_input(ctx)));
  std::ostringstream text;
  write_codeword(text, encode(f, code_spec(ctx), ctx.budget));
  Outcome o;
  o.text = text.str();
  o.raw = true;
  return o;
}

Outcome cmd_plcode_test(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  if (c.trials == 0) throw std::invalid_argument("--trials must be >= 1");
  const CodeInstance inst = load_codeword(ctx);
  TestReport r = local_test(inst.word, c.trials, c.seed);
  const std::uint64_t space = ipow(inst.word.spec().field->q(), static_cast<std::uint32_t>(3 * inst.word.spec().m + 2));
  if (space <= ctx.budget) r.exact = exact_local_rejection(inst.word, ctx.budget);
  Outcome o;
  o.result = r.to_json();
  const bool clean = inst.message && corrupt_fraction(c) == Rational(0);
  if (clean) o.ok = r.rejections == 0 && (!r.exact || *r.exact == Rational(0));
  return o;
}

Outcome cmd_plcode_decode(Context& ctx) {
  const CodeInstance inst = load_codeword(ctx);
  Outcome o;
  try {
    const MultiPoly f = decode(inst.word, ctx.budget);
    o.result = {{"decoded", true}, {"message", poly_to_json(f)}, {"total_degree", degree_json(total_degree(f))}};
    if (inst.message) o.result["matches_original"] = f == *inst.message;
  } catch (const DecodeFailure& e) {
    o.result = {{"decoded", false}, {"reason", e.what()}};
  }
  return o;
}

Outcome cmd_params(Context& ctx) {
  Outcome o;
  o.result = code_params(code_spec(ctx), ctx.budget).to_json();
  return o;
}

const std::map<std::string, std::function<Outcome(Context&)>>& dispatch() {
  static const std::map<std::string, std::function<Outcome(Context&)>> table = {
      {"char-census", cmd_char_census},       {"counterexample", cmd_counterexample},
      {"char-check", cmd_char_check},         {"binom-sweep", cmd_binom_sweep},
      {"lowdeg-exact", cmd_lowdeg_exact},     {"lowdeg-mc", cmd_lowdeg_mc},
      {"self-correct", cmd_self_correct},     {"plane-diag", cmd_plane_diag},
      {"bivariate-check", cmd_bivariate_check}, {"plcode-encode", cmd_plcode_encode},
      {"plcode-test", cmd_plcode_test},       {"plcode-decode", cmd_plcode_decode},
      {"params", cmd_params},
  };
  return table;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output '" + cfg.output + "'");
  file << text;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {
      "char-census",     "counterexample", "char-check",    "binom-sweep",  "lowdeg-exact",
      "lowdeg-mc",       "self-correct",   "plane-diag",    "bivariate-check", "plcode-encode",
      "plcode-test",     "plcode-decode",  "params"};
  return names;
}

void RunConfig::validate() const {
  if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
    throw std::invalid_argument("unknown command '" + command + "'");
  }
  if (format != "json" && format != "csv") throw std::invalid_argument("--format must be json or csv");
  if (format == "csv" && command != "binom-sweep") throw std::invalid_argument("csv output is only offered for binom-sweep");
  if (m < 1) throw std::invalid_argument("--m must be >= 1");
  if (d < 0) throw std::invalid_argument("--d must be >= 0");
  parse_backend(backend);
}

nlohmann::json RunConfig::to_json() const {
  return {{"command", command}, {"p", p},
          {"s", s},             {"m", m},
          {"d", d},             {"trials", trials},
          {"seed", seed},       {"instance_seed", instance_seed},
          {"samples", samples}, {"corrupt", corrupt},
          {"epsilon", epsilon}, {"budget", budget == 0 ? default_budget() : budget},
          {"format", format},   {"input", input},
          {"backend", backend}};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err, std::istream& in) {
  try {
    config.validate();
    set_worker_count(config.workers);
    Context ctx{config, config.budget == 0 ? default_budget() : config.budget, in, FieldSpec::make(config.p, config.s)};
    Outcome o = dispatch().at(config.command)(ctx);
    if (o.raw) {
      emit(config, o.text, out);
    } else {
      const nlohmann::json report = {{"config", config.to_json()}, {"result", o.result}, {"ok", o.ok}};
      emit(config, report.dump(2) + "\n", out);
    }
    if (!o.ok) {
      err << "assertion failed: a guaranteed invariant was violated\n";
      return kExitAssertion;
    }
    return kExitOk;
  } catch (const BudgetExceeded& e) {
    err << "budget: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "usage: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err, std::istream& in) {
  RunConfig cfg;
  CLI::App app{"Low-degree testing toolkit over GF(p^s)", "lowdeg"};
  app.add_option("command", cfg.command, "Experiment to run")->required()->check(CLI::IsMember(commands()));
  app.add_option("--p", cfg.p, "Field characteristic");
  app.add_option("--s", cfg.s, "Extension degree");
  app.add_option("--m", cfg.m, "Number of variables");
  app.add_option("--d", cfg.d, "Degree bound");
  app.add_option("--trials", cfg.trials, "Monte-Carlo trials");
  app.add_option("--seed", cfg.seed, "Seed for sampled randomness");
  app.add_option("--instance-seed", cfg.instance_seed, "Seed for the generated instance");
  app.add_option("--samples", cfg.samples, "char-census: random search sample count");
  app.add_option("--corrupt", cfg.corrupt, "Fraction (a/b or decimal) or point:INDEX:VALUE");
  app.add_option("--epsilon", cfg.epsilon, "bivariate-check: epsilon (default d/q)");
  app.add_option("--budget", cfg.budget, "Enumeration cap (default LOWDEG_BUDGET or 1000000)");
  app.add_option("--format", cfg.format, "json or csv");
  app.add_option("--output", cfg.output, "Report path (default stdout)");
  app.add_option("--input", cfg.input, "Input file, - for stdin");
  app.add_option("--backend", cfg.backend, "Line fitting backend: exact or decode");
  app.add_option("--workers", cfg.workers, "Worker threads (0 = hardware)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(cfg, out, err, in);
}

}  // namespace lowdeg::cli
