// Command-line front end: quotients, congruence quotients, transfer,
// obstruction spaces, golden-data verification and DOT export.
#include "btq/congruence.hpp"
#include "btq/io.hpp"
#include "btq/obstruction.hpp"
#include "btq/transfer.hpp"
#include "btq/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace btq;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ojson matrix_json(const QMatrix& m, const std::vector<std::string>& names) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson r = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
    rows.push_back(r);
  }
  ojson j;
  j["index"] = names;
  j["rows"] = rows;
  return j;
}

std::vector<std::string> shell_names(const WCFG& w, const std::vector<int>& vs) {
  std::vector<std::string> out;
  for (int v : vs) out.push_back(w.name(v));
  return out;
}

// {"vertices": [labels], "edges": [[u, v], ...], "generators": [{"vertex_perm": [...], "edge_perm"?: [...]}]}
// Edge k of the list is the directed pair (2k: u->v, 2k+1: v->u).
int cmd_quotient(const std::string& input, bool dot) {
  const std::string text = read_file(input);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(input + ": syntax error: " + e.what());
  }
  for (const auto& [k, v] : j.items())
    if (k != "vertices" && k != "edges" && k != "generators") throw DocumentError("/" + k + ": unknown field");
  Graph g;
  std::map<std::string, int> idx;
  for (const auto& v : j.at("vertices")) {
    std::string nm = v.get<std::string>();
    if (idx.count(nm)) throw DocumentError("/vertices: duplicate vertex " + nm);
    idx[nm] = g.add_vertex(nm);
  }
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw DocumentError("/edges: each edge is a pair of vertex names");
    g.add_edge(idx.at(e[0].get<std::string>()), idx.at(e[1].get<std::string>()));
  }
  std::vector<std::pair<Perm, Perm>> gens;
  for (const auto& gen : j.value("generators", nlohmann::json::array())) {
    Perm vp = gen.at("vertex_perm").get<Perm>();
    if (static_cast<int>(vp.size()) != g.num_vertices) throw DocumentError("/generators: vertex_perm has wrong size");
    Perm ep = gen.contains("edge_perm") ? gen["edge_perm"].get<Perm>() : induced_edge_perm(g, vp);
    gens.push_back({vp, ep});
  }
  GroupAction act = GroupAction::generate(g, gens);
  FineQuotient fq = fine_quotient(g, act);
  WeightMap wm = quotient_weights(g, act);
  WCFG w = reduction(fq.fg, wm);
  // Name each class after its first member.
  std::map<int, int> pos;
  for (int v : fq.fg.actual_vertices()) pos.emplace(v, static_cast<int>(pos.size()));
  std::vector<std::string> names(w.num_core());
  for (int v = g.num_vertices - 1; v >= 0; --v) names[pos.at(fq.vertex_class[v])] = g.label(v);
  w = make_wcfg(names, w.weights, {}, std::nullopt);
  std::cout << (dot ? export_dot(w, "quotient") : emit_wcfg(w));
  return kOk;
}

int cmd_congruence(int q, const std::string& fs, int depth, const std::string& mod, bool dot) {
  const Fq& F = Fq::get(q);
  Poly f = Poly::parse(F, fs);
  CongruenceQuotient cq = congruence_quotient(q, f, depth);
  WCFG w;
  if (mod.empty() || mod == "full") {
    w = to_wcfg(truncated(cq));
  } else {
    auto gens = gamma0_generators(cq);
    if (mod == "normalizer")
      for (const auto& g : atkin_lehner_generators(F, f)) gens.push_back(g);
    w = quotient_by_overgroup(cq, gens);
  }
  w.q = q;
  std::cout << (dot ? export_dot(w, "congruence") : emit_wcfg(w));
  return kOk;
}

int cmd_transfer(const std::string& input, int n, bool resolve, bool dot) {
  WCFG wp = load_wcfg(input);
  TransferReport r = assemble_candidate(wp, n);
  ObstructionBasis basis;
  if (resolve) {
    basis = obstruction_space(r.p_graph, candidate_shell(r.p_graph));
    r = resolve_ambiguity(r, basis);
  }
  if (dot) {
    const CFMatrix& m = r.resolution ? *r.resolution : r.candidate;
    std::cout << export_dot(from_matrix(m), "transfer");
    return kOk;
  }
  ojson j;
  j["n"] = n;
  j["q"] = r.q;
  j["polynomial"] = r.poly.to_string();
  j["candidate"] = ojson::parse(emit_wcfg(from_matrix(r.candidate)));
  ojson bad = ojson::array();
  for (const auto& [from, to] : r.bad_pairs) bad.push_back({r.candidate.names[from], r.candidate.names[to]});
  j["bad_pairs"] = bad;
  ojson neg = ojson::array();
  for (const auto& [from, to, v] : r.negative_entries) {
    ojson x;
    x["from"] = r.candidate.names[from];
    x["to"] = r.candidate.names[to];
    x["value"] = to_string(v);
    neg.push_back(x);
  }
  j["negative_entries"] = neg;
  static const char* status[] = {"not_run", "unique", "multiple", "infeasible"};
  j["status"] = status[static_cast<int>(r.status)];
  if (resolve) j["feasible_corrections"] = r.feasible_corrections.size();
  if (r.resolution) j["resolution"] = ojson::parse(emit_wcfg(from_matrix(*r.resolution)));
  j["notes"] = r.notes;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_obstruction(const std::string& input, const std::vector<std::string>& shell_opt, bool no_colsum) {
  WCFG w = load_wcfg(input);
  Shell sh;
  if (shell_opt.empty()) {
    sh = candidate_shell(w);
  } else {
    for (const auto& nm : shell_opt) {
      auto v = w.find(nm);
      if (!v) throw DocumentError("--shell: unknown vertex " + nm);
      sh.vertices.push_back(*v);
    }
    std::sort(sh.vertices.begin(), sh.vertices.end());
  }
  ObstructionOptions opt;
  opt.column_sums_zero = !no_colsum;
  ObstructionBasis b = obstruction_space(w, sh, opt);
  ojson j;
  auto names = shell_names(w, sh.vertices);
  j["t3_criterion"] = t3_criterion(w);
  j["shell"] = names;
  j["projected_char_poly"] = projected_char_poly(w, sh).to_string();
  j["dimension"] = b.dimension;
  j["stable"] = b.stable;
  auto bs = bad_set(b);
  j["bad_set"] = shell_names(w, std::vector<int>(bs.begin(), bs.end()));
  ojson basis = ojson::array();
  for (const auto& f : b.basis) basis.push_back(matrix_json(f, names));
  j["basis"] = basis;
  ObstructionBasis fam = annihilator_family(w, sh);
  j["annihilator_family_dimension"] = fam.dimension;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_verify(std::vector<std::string> ids, const std::string& dir, bool as_json) {
  if (ids.empty()) ids = verification_case_ids();
  std::sort(ids.begin(), ids.end());
  std::vector<CaseReport> reps;
  for (const auto& id : ids) reps.push_back(run_verification_case(id, dir));
  bool all = true;
  for (const auto& r : reps) all = all && r.pass();
  if (as_json) {
    std::cout << report_json(reps);
  } else {
    for (const auto& r : reps) {
      std::cout << (r.pass() ? "PASS " : "FAIL ") << r.id << "  [" << r.source << "]\n";
      for (const auto& c : r.checks)
        std::cout << "    " << (c.ok ? "ok   " : "FAIL ") << c.what << (c.detail.empty() ? "" : ": " + c.detail)
                  << "\n";
      for (const auto& n : r.notes) std::cout << "    note: " << n << "\n";
    }
  }
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted quotients of Bruhat-Tits trees and their transfer between places"};
  app.require_subcommand(1);

  std::string input, fpoly = "t", mod, fixtures = default_fixture_dir();
  int q = 2, depth = 4, n = 1;
  bool dot = false, resolve = false, as_json = false, no_colsum = false;
  std::vector<std::string> ids, shell;

  auto* quo = app.add_subcommand("quotient", "fine quotient of a graph by a finite action");
  quo->add_option("--input", input, "graph and generators (JSON)")->required()->check(CLI::ExistingFile);
  quo->add_flag("--dot", dot, "emit DOT instead of JSON");

  auto* con = app.add_subcommand("congruence", "quotient of the tree by a congruence group");
  con->add_option("--q", q, "field size")->check(CLI::IsMember({2, 3, 4, 5}));
  con->add_option("--f", fpoly, "level polynomial, e.g. t^2+t+1");
  con->add_option("--depth", depth, "last type kept before detecting cusps");
  con->add_option("--mod-group", mod, "full (default), gamma0 or normalizer")
      ->check(CLI::IsMember({"full", "gamma0", "normalizer"}));
  con->add_flag("--dot", dot, "emit DOT instead of JSON");

  auto* tra = app.add_subcommand("transfer", "candidate quotient at a place of degree n");
  tra->add_option("--input", input, "WCFG document at P")->required()->check(CLI::ExistingFile);
  tra->add_option("--n", n, "degree ratio")->required()->check(CLI::PositiveNumber);
  tra->add_flag("--resolve", resolve, "search nonnegative completions");
  tra->add_flag("--dot", dot, "emit DOT of the (resolved) graph");

  auto* obs = app.add_subcommand("obstruction", "obstruction space, shell and bad set");
  obs->add_option("--input", input, "WCFG document")->required()->check(CLI::ExistingFile);
  obs->add_option("--shell", shell, "explicit shell, vertex names")->delimiter(',');
  obs->add_flag("--no-column-sums", no_colsum, "drop the zero column sum constraint");

  auto* ver = app.add_subcommand("verify", "replay the golden cases");
  ver->add_option("ids", ids, "case ids (default: all)");
  ver->add_option("--fixtures", fixtures, "fixture directory")->check(CLI::ExistingDirectory);
  ver->add_flag("--json", as_json, "JSON report");
  ver->add_flag("--list", [&](std::int64_t) {
    for (const auto& id : verification_case_ids()) std::cout << id << "\n";
    std::exit(kOk);
  }, "list case ids");

  auto* dt = app.add_subcommand("export-dot", "DOT rendering of a WCFG document");
  dt->add_option("--input", input, "WCFG document")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*quo) return cmd_quotient(input, dot);
    if (*con) return cmd_congruence(q, fpoly, depth, mod, dot);
    if (*tra) return cmd_transfer(input, n, resolve, dot);
    if (*obs) return cmd_obstruction(input, shell, no_colsum);
    if (*ver) return cmd_verify(ids, fixtures, as_json);
    if (*dt) {
      std::cout << export_dot(load_wcfg(input));
      return kOk;
    }
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: unknown name (" << e.what() << ")\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kInputError;
}
