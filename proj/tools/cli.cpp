#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qcycle/json_io.hpp"
#include "qcycle/qcycle.hpp"

namespace qcycle::cli {
namespace {

using json_io::json;

struct Config {
  int n = 0, v0 = 1, pad = 2;
  std::string params, lambdas, mu;
  std::string tensor_path, emit_path, report_json;
  bool full = false, solution = false;
  std::uint64_t seed = kDefaultSeed;
};

void print_structure(std::ostream& out, const QCycleStructure& s) {
  auto dump = [&](const char* name, const CoeffTensor& t) {
    out << name << " nonzero entries (i,j,k): value\n";
    for (int k = 1; k < t.n(); ++k)
      for (int i = 0; i < t.n(); ++i)
        for (int j = 0; j < t.n(); ++j)
          if (!is_zero(t(i, j, k))) out << "  " << idx({i, j, k}) << ": " << format_scalar(t(i, j, k)) << '\n';
  };
  dump("p", s.p);
  if (!s.involutive()) dump("d", s.d);
}

void add_braid(Report& r, const std::string& name, const BraidReport& br) {
  std::string detail;
  if (!br.violations.empty()) {
    const auto& v = br.violations.front();
    detail = "family " + std::to_string(v.family) + " at (i,j,k,m)=" + idx({v.i, v.j, v.k, v.m}) + ": " +
             format_scalar(v.lhs) + " vs " + format_scalar(v.rhs);
  }
  r.add(name, br.ok(), detail);
}

// Everything `verify` checks; the same list backs `scc` and `family`.
Report verify_structure(const QCycleStructure& s, bool full, bool solution, std::ostream& out) {
  Report r;
  const auto mp = is_coalgebra_morphism(s.p), md = is_coalgebra_morphism(s.d);
  r.add("p_comultiplicative", mp.ok, mp.where);
  r.add("d_comultiplicative", md.ok, md.where);
  if (!mp.ok || !md.ok) return r;
  r.merge(structural_lemma_suite(s.p), "p.");
  if (!s.involutive()) r.merge(structural_lemma_suite(s.d), "d.");
  const BraidReport reduced = check_braid_reduced(s);
  add_braid(r, "braid_reduced", reduced);
  if (!reduced.ok()) {
    out << "braid violations (first " << reduced.violations.size() << "):\n";
    for (const auto& v : reduced.violations)
      out << "  family " << v.family << " " << idx({v.i, v.j, v.k, v.m}) << ": " << format_scalar(v.lhs) << " vs "
          << format_scalar(v.rhs) << '\n';
  }
  if (full) add_braid(r, "braid_full", check_braid_full(s));
  if (solution) {
    try {
      const LinearMap2 sol = build_solution(s);
      r.add("solution_coalgebra_endomorphism", is_coalgebra_endomorphism(sol));
      r.add("solution_braid", check_braid_on_map(sol));
      r.add("solution_bijective", is_bijective(sol));
      const bool inv = is_involutive(sol);
      r.add("solution_involutive_iff_p_eq_d", inv == s.involutive(), inv ? "s o s = id" : "s o s != id");
    } catch (const Error& e) {
      r.add("solution_built", false, e.what());
    }
  }
  return r;
}

int finish(const Report& r, const std::string& what, const Config& c, std::ostream& out) {
  out << what << ": " << (r.ok() ? "PASS" : "FAIL") << '\n';
  r.print(out);
  if (!c.report_json.empty()) json_io::write_file(c.report_json, json_io::report_to_json(r, what));
  return r.ok() ? kOk : kCheckFailed;
}

QCycleStructure load(const Config& c) {
  if (c.tensor_path.empty()) fail("ValidationError", "--tensor is required");
  return json_io::structure_from_json(json_io::read_file(c.tensor_path));
}

int cmd_scc(const Config& c, std::ostream& out) {
  const SccInput in = SccInput::make(c.n, c.v0, parse_scalar_list(c.params));
  const SccBundle b = build_scc(in);
  const QCycleStructure s(b.tensor);
  print_structure(out, s);
  if (!c.emit_path.empty()) {
    json j = json_io::structure_to_json(s);
    j["series"] = {{"f", json_io::series_to_json(b.f)}, {"g", json_io::series_to_json(b.g)},
                   {"G", json_io::series_to_json(b.G)}};
    json_io::write_file(c.emit_path, j);
  }
  Report r = scc_invariant_suite_v0(b);
  r.merge(verify_structure(s, c.full, c.solution, out));
  return finish(r, "scc", c, out);
}

int cmd_verify(const Config& c, std::ostream& out) {
  return finish(verify_structure(load(c), c.full, c.solution, out), "verify", c, out);
}

int cmd_ops(const Config& c, std::ostream& out) {
  if (c.pad < 0) fail("ValidationError", "--pad must be non-negative");
  const SccBundle b = build_scc(SccInput::make(c.n, c.v0, parse_scalar_list(c.params)));
  const OperatorContext ctx = build_context(b, c.n + c.pad);
  out << "truncation N = " << ctx.N << ", seed " << c.seed << '\n';
  return finish(identity_suite(ctx, c.seed), "ops-check", c, out);
}

int cmd_classify(const Config& c, std::ostream& out) {
  const QCycleStructure s = load(c);
  ClassificationVerdict v;
  try {
    v = classify(s);
  } catch (const Error& e) {
    if (e.kind() != "UnverifiedStructure") throw;
    out << "classify: FAIL\n  " << e.what() << '\n';
    return kCheckFailed;
  }
  out << "row: " << row_name(v.row) << "\nnotes: " << v.notes << '\n';
  for (const auto& ref : v.references) out << "  - " << ref << '\n';
  if (!c.report_json.empty())
    json_io::write_file(c.report_json, json{{"schema", json_io::kSchema},
                                            {"kind", "classification"},
                                            {"row", row_name(v.row)},
                                            {"references", v.references},
                                            {"notes", v.notes}});
  return kOk;
}

int cmd_nonroot(const Config& c, std::ostream& out) {
  if (c.mu.empty()) fail("ValidationError", "--mu is required");
  const QCycleStructure s = build_nonroot_family({c.n, parse_scalar_list(c.lambdas), parse_scalar(c.mu)});
  print_structure(out, s);
  if (!c.emit_path.empty()) json_io::write_file(c.emit_path, json_io::structure_to_json(s));
  Report r = verify_structure(s, c.full, c.solution, out);
  r.merge(nonunit_vanishing_check(s, c.n));
  return finish(r, "family nonroot", c, out);
}

int cmd_fixtures(const Config& c, std::ostream& out) {
  if (c.n != 3) fail("ValidationError", "fixtures exist only for n = 3");
  if (!c.emit_path.empty()) std::filesystem::create_directories(c.emit_path);
  Report r;
  for (const auto& f : fixtures_n3()) {
    std::string file = f.family + "_" + f.label;
    for (char& ch : file)
      if (ch == '=' || ch == ',') ch = '_';
    out << f.family << " " << f.label << ": " << row_name(classify(f.s).row) << '\n';
    r.add(f.family + "[" + f.label + "]", check_braid_reduced(f.s).ok());
    if (!c.emit_path.empty())
      json_io::write_file((std::filesystem::path(c.emit_path) / (file + ".json")).string(),
                          json_io::structure_to_json(f.s));
  }
  return finish(r, "fixtures", c, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Exact verifier for q-cycle coalgebras and the braid solutions they define", "qcycle"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", c.seed, "seed for randomized checks");
  app.add_option("--report-json", c.report_json, "also write the report as JSON");

  auto* scc = app.add_subcommand("scc", "build a standard cycle coalgebra and verify it");
  scc->add_option("--n", c.n, "dimension")->required();
  scc->add_option("--v0", c.v0, "degree")->required();
  scc->add_option("--params", c.params, "p_{v0+1},...,p_{n-1} as rationals");
  scc->add_option("--emit,--emit-json", c.emit_path, "write the tensor and f, g, G as JSON");
  scc->add_flag("--full", c.full, "also check the full braid equations");
  scc->add_flag("--solution", c.solution, "also build and check the solution s");

  auto* verify = app.add_subcommand("verify", "verify a structure read from JSON");
  verify->add_option("--tensor", c.tensor_path, "structure JSON")->required();
  verify->add_flag("--full", c.full, "also check the full braid equations");
  verify->add_flag("--solution", c.solution, "also build and check the solution s");

  auto* ops = app.add_subcommand("ops-check", "run the operator identity suite");
  ops->add_option("--n", c.n, "dimension")->required();
  ops->add_option("--v0", c.v0, "degree")->required();
  ops->add_option("--params", c.params, "p_{v0+1},...,p_{n-1} as rationals");
  ops->add_option("--pad", c.pad, "truncation N = n + pad");

  auto* cls = app.add_subcommand("classify", "place a structure in the classification table");
  cls->add_option("--tensor", c.tensor_path, "structure JSON")->required();

  auto* family = app.add_subcommand("family", "build a parameterized family");
  family->require_subcommand(1);
  auto* nonroot = family->add_subcommand("nonroot", "family with p10 not a root of unity");
  nonroot->add_option("--n", c.n, "dimension")->required();
  nonroot->add_option("--lambdas", c.lambdas, "p_{i0}^1 for i = 1..n-1")->required();
  nonroot->add_option("--mu", c.mu, "d_{10}^1")->required();
  nonroot->add_option("--emit", c.emit_path, "write the structure as JSON");
  nonroot->add_flag("--full", c.full, "also check the full braid equations");
  nonroot->add_flag("--solution", c.solution, "also build and check the solution s");

  auto* fixtures = app.add_subcommand("fixtures", "emit and check the n = 3 example families");
  fixtures->add_option("--n", c.n, "dimension (only 3)")->required();
  fixtures->add_option("--emit", c.emit_path, "output directory");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (scc->parsed()) return cmd_scc(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
    if (ops->parsed()) return cmd_ops(c, out);
    if (cls->parsed()) return cmd_classify(c, out);
    if (nonroot->parsed()) return cmd_nonroot(c, out);
    if (fixtures->parsed()) return cmd_fixtures(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace qcycle::cli
