#include "nilkit/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilkit/geomequiv.hpp"

namespace nilkit {

namespace {

using nlohmann::json;

json json_int(const Int& v) {
  if (v.fits_slong_p()) return static_cast<long>(v.get_si());
  return v.get_str();
}

json json_vec(const IntVec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(json_int(v(i)));
  return a;
}

json json_mat(const IntMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(json_int(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

json json_subgroup(const Subgroup& s) {
  json rows = json::array();
  for (const Element& r : s.rows()) rows.push_back(r.str());
  return rows;
}

json json_index(const IndexValue& v) {
  return v.finite ? json_int(v.value) : json("infinite");
}

json json_witness(const EmbeddingWitness& w) {
  json j;
  j["m"] = json_int(w.m);
  json imgs = json::array();
  for (const Element& im : w.images) imgs.push_back(im.str());
  j["images"] = imgs;
  json trans = json::array();
  for (const auto& rc : w.relations.transcript)
    trans.push_back({{"relation", rc.relation},
                     {"lhs", rc.lhs_nf},
                     {"rhs", rc.rhs_nf},
                     {"ok", rc.ok}});
  j["relations"] = trans;
  j["homomorphism"] = w.relations.homomorphism;
  j["injective"] = w.injective;
  j["image_in_power_subgroup"] = w.image_contained;
  j["verified"] = w.verified();
  j["notes"] = w.notes;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GroupPtr load_group(const std::string& spec) {
  try {
    return Group::create(builtin(spec));
  } catch (const InvalidArgument&) {
    if (spec.find(':') != std::string::npos) throw;
  }
  return Group::create(parse_presentation(read_file(spec)));
}

FiniteGroup load_finite(const std::string& named, const std::string& table_path) {
  if (!named.empty()) return FiniteGroup::named(named);
  if (!table_path.empty()) return FiniteGroup::parse_table(read_file(table_path));
  throw InvalidArgument("provide --finite NAME or --table FILE");
}

std::vector<Element> parse_element_list(const GroupPtr& g, const std::string& csv) {
  std::vector<Element> out;
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(g->collect(parse_word(tok, g->presentation())));
  }
  return out;
}

std::vector<FreeWord> parse_word_list(const std::string& csv) {
  std::vector<FreeWord> out;
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(FreeWord::parse(tok));
  }
  return out;
}

// "x->x^2,y->y^2"; images of unlisted derived generators follow their
// commutator definitions
std::vector<Element> parse_endo(const GroupPtr& g, const std::string& text) {
  std::vector<std::optional<Element>> imgs(g->ngens());
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    auto arrow = tok.find("->");
    if (arrow == std::string::npos) throw InvalidArgument("endo entries look like g->word");
    std::string name = tok.substr(0, arrow);
    int idx = g->presentation().index_of(name);
    if (idx < 0) throw InvalidArgument("unknown generator " + name);
    imgs[idx] = g->collect(parse_word(tok.substr(arrow + 2), g->presentation()));
  }
  std::vector<Element> out;
  for (int i = 0; i < g->ngens(); ++i) {
    if (imgs[i].has_value()) {
      out.push_back(*imgs[i]);
      continue;
    }
    const auto& def = g->presentation().gens[i].definition;
    if (!def.has_value() || def->hi >= i || def->lo >= i)
      throw InvalidArgument("no image given for generator " + g->presentation().gens[i].name);
    out.push_back(commutator(out[def->hi], out[def->lo]).pow(def->sign));
  }
  return out;
}

IntMat parse_matrix(const std::string& text) {
  std::vector<std::vector<Int>> rows;
  std::istringstream lines(text);
  std::string row;
  size_t width = 0;
  while (std::getline(lines, row, ';')) {
    std::istringstream is(row);
    std::vector<Int> r;
    std::string cell;
    while (is >> cell) r.emplace_back(cell);
    if (r.empty()) continue;
    if (width == 0) width = r.size();
    if (r.size() != width) throw InvalidArgument("ragged relation matrix");
    rows.push_back(std::move(r));
  }
  if (width == 0) throw InvalidArgument("empty relation matrix");
  IntMat m(static_cast<int>(rows.size()), static_cast<int>(width));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < width; ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

struct Output {
  bool as_json = false;
  std::string command;
  json inputs = json::object();
  json result = json::object();
  std::vector<std::string> lines;

  void line(const std::string& s) { lines.push_back(s); }
  void flush(std::ostream& out) const {
    if (as_json) {
      json j{{"command", command}, {"inputs", inputs}, {"result", result}};
      out << j.dump(2) << "\n";
    } else {
      for (const auto& l : lines) out << l << "\n";
    }
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nilkit - exact computations in finitely generated nilpotent groups"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string group_spec, pi_spec = "all", sub_csv, gens_csv, central_csv, endo_spec;
  std::string finite_name, table_path, system_csv, word_text, matrix_text, ms_csv;
  std::string word_a, word_b;
  long m_value = 2, n_value = 2, k_value = 2;
  int rank = 0;
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a single JSON object");

  auto add_group = [&](CLI::App* cmd) {
    cmd->add_option("--group", group_spec, "presentation file or builtin name")->required();
  };
  auto add_pi = [&](CLI::App* cmd) {
    cmd->add_option("--pi", pi_spec, "prime set: all, all\\{2,5}, {2,3}");
  };

  auto* nf = app.add_subcommand("nf", "normal form of a word");
  add_group(nf);
  nf->add_option("word", word_a)->required();

  auto* mul = app.add_subcommand("mul", "product of two words");
  add_group(mul);
  mul->add_option("lhs", word_a)->required();
  mul->add_option("rhs", word_b)->required();

  auto* pw = app.add_subcommand("pow", "k-th power of a word");
  add_group(pw);
  pw->add_option("word", word_a)->required();
  pw->add_option("--k", k_value, "exponent")->required();

  auto* comm = app.add_subcommand("comm", "commutator of two words");
  add_group(comm);
  comm->add_option("lhs", word_a)->required();
  comm->add_option("rhs", word_b)->required();

  auto* lcs = app.add_subcommand("lcs", "lower central series");
  add_group(lcs);

  auto* member = app.add_subcommand("member", "membership in a subgroup");
  add_group(member);
  member->add_option("--sub", sub_csv, "comma-separated generator words")->required();
  member->add_option("word", word_a)->required();

  auto* index = app.add_subcommand("index", "index of a subgroup");
  add_group(index);
  index->add_option("--sub", sub_csv, "comma-separated generator words")->required();

  auto* power = app.add_subcommand("power-subgroup", "the verbal subgroup G^m");
  add_group(power);
  power->add_option("--m", m_value)->required();

  auto* iso = app.add_subcommand("isolator", "pi-isolator of a normal subgroup");
  add_group(iso);
  add_pi(iso);
  iso->add_option("--sub", sub_csv, "comma-separated generator words")->required();

  auto* torsion = app.add_subcommand("torsion", "torsion subgroup and its pi-part");
  add_group(torsion);
  add_pi(torsion);

  auto* root = app.add_subcommand("root", "n-th root of an element");
  add_group(root);
  root->add_option("--n", n_value)->required();
  root->add_option("word", word_a)->required();

  auto* li = app.add_subcommand("li-bound", "smallest pi-number r with H^r inside G");
  add_group(li);
  add_pi(li);
  li->add_option("--gens", gens_csv, "comma-separated rational words")->required();

  auto* lie = app.add_subcommand("liering", "graded Lie ring of the isolator filtration");
  add_group(lie);
  add_pi(lie);
  lie->add_option("--endo", endo_spec, "generator images g->word,...");

  auto* verify = app.add_subcommand("verify", "geometric-equivalence verifiers");
  auto* relfr = verify->add_subcommand("relfr", "power endomorphism of a relatively free group");
  add_group(relfr);
  add_pi(relfr);
  relfr->add_option("--m", m_value)->required();
  auto* a2 = verify->add_subcommand("a2", "class-2 embedding over a chosen central subgroup");
  add_group(a2);
  add_pi(a2);
  a2->add_option("--m", m_value)->required();
  a2->add_option("--central", central_csv, "comma-separated generator words")->required();
  auto* crit = verify->add_subcommand("criterion", "witnesses for G ~ G^m over a list of m");
  add_group(crit);
  add_pi(crit);
  crit->add_option("--ms", ms_csv, "comma-separated pi-numbers")->required();

  auto* closure = app.add_subcommand("closure-member", "membership in the double closure T''");
  closure->add_option("--finite", finite_name, "builtin finite group, e.g. Z/2, S3");
  closure->add_option("--table", table_path, "Cayley table file");
  closure->add_option("--system", system_csv, "comma-separated words of T")->required();
  closure->add_option("--word", word_text)->required();
  closure->add_option("--rank", rank, "free rank (default: inferred)");

  auto* structure = app.add_subcommand("structure", "abelian structure and pi-completion");
  add_pi(structure);
  structure->add_option("--matrix", matrix_text, "relation rows, e.g. \"0 5; 2 0\"")->required();

  auto* pic = app.add_subcommand("pi-complete", "pi-completeness of a finite group");
  add_pi(pic);
  pic->add_option("--finite", finite_name, "builtin finite group");
  pic->add_option("--table", table_path, "Cayley table file");

  try {
    std::vector<const char*> argv;
    argv.push_back("nilkit");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Output o;
  o.as_json = as_json;
  int exit_code = 0;
  try {
    PrimeSet pi = PrimeSet::parse(pi_spec);
    o.inputs["pi"] = pi_spec;
    if (!group_spec.empty()) o.inputs["group"] = group_spec;

    if (nf->parsed()) {
      o.command = "nf";
      o.inputs["word"] = word_a;
      auto g = load_group(group_spec);
      Element e = g->collect(word_a);
      o.result["normal_form"] = e.str();
      o.result["exponents"] = json_vec(e.exponents());
      o.line(e.str());
    } else if (mul->parsed() || comm->parsed()) {
      bool is_mul = mul->parsed();
      o.command = is_mul ? "mul" : "comm";
      o.inputs["lhs"] = word_a;
      o.inputs["rhs"] = word_b;
      auto g = load_group(group_spec);
      Element a = g->collect(word_a), b = g->collect(word_b);
      Element e = is_mul ? a * b : commutator(a, b);
      o.result["normal_form"] = e.str();
      o.result["exponents"] = json_vec(e.exponents());
      o.line(e.str());
    } else if (pw->parsed()) {
      o.command = "pow";
      o.inputs["word"] = word_a;
      o.inputs["k"] = k_value;
      auto g = load_group(group_spec);
      Element e = g->collect(word_a).pow(k_value);
      o.result["normal_form"] = e.str();
      o.result["exponents"] = json_vec(e.exponents());
      o.line(e.str());
    } else if (lcs->parsed()) {
      o.command = "lcs";
      auto g = load_group(group_spec);
      json terms = json::array();
      int i = 1;
      for (const Subgroup& s : lower_central_series(g)) {
        terms.push_back(json_subgroup(s));
        o.line("gamma_" + std::to_string(i++) + " = <" + s.str() + ">");
      }
      o.result["series"] = terms;
    } else if (member->parsed()) {
      o.command = "member";
      o.inputs["sub"] = sub_csv;
      o.inputs["word"] = word_a;
      auto g = load_group(group_spec);
      Subgroup h = Subgroup::generated(g, parse_element_list(g, sub_csv));
      Element e = g->collect(word_a);
      auto w = h.membership(e);
      o.result["member"] = w.has_value();
      if (w.has_value()) {
        json factors = json::array();
        for (auto& [ri, q] : w->factors)
          factors.push_back({{"row", h.rows()[ri].str()}, {"exponent", json_int(q)}});
        o.result["witness"] = factors;
        o.line("member (witness over the echelon rows)");
      } else {
        o.line("not a member");
        exit_code = 1;
      }
    } else if (index->parsed()) {
      o.command = "index";
      o.inputs["sub"] = sub_csv;
      auto g = load_group(group_spec);
      Subgroup h = Subgroup::generated(g, parse_element_list(g, sub_csv));
      IndexValue v = subgroup_index(Subgroup::whole(g), h);
      o.result["index"] = json_index(v);
      o.line(v.str());
    } else if (power->parsed()) {
      o.command = "power-subgroup";
      o.inputs["m"] = m_value;
      auto g = load_group(group_spec);
      Subgroup h = power_subgroup(g, m_value);
      o.result["rows"] = json_subgroup(h);
      o.result["index"] = json_index(subgroup_index(Subgroup::whole(g), h));
      o.line("G^" + std::to_string(m_value) + " = <" + h.str() + ">");
      o.line("index " + subgroup_index(Subgroup::whole(g), h).str());
    } else if (iso->parsed()) {
      o.command = "isolator";
      o.inputs["sub"] = sub_csv;
      auto g = load_group(group_spec);
      Subgroup h = Subgroup::generated(g, parse_element_list(g, sub_csv), true);
      IsolatorResult r = pi_isolator(g, h, pi);
      o.result["rows"] = json_subgroup(r.isolator);
      json certs = json::array();
      for (auto& [row, n] : r.certificates)
        certs.push_back({{"row", row.str()}, {"pi_power", json_int(n)}});
      o.result["certificates"] = certs;
      o.line("I_pi = <" + r.isolator.str() + ">");
      for (auto& [row, n] : r.certificates)
        o.line("  (" + row.str() + ")^" + n.get_str() + " lies in H");
    } else if (torsion->parsed()) {
      o.command = "torsion";
      auto g = load_group(group_spec);
      TorsionReport r = torsion_subgroup(g, pi);
      o.result["torsion"] = json_subgroup(r.torsion);
      o.result["pi_part"] = json_subgroup(r.pi_part);
      json orders = json::array();
      for (auto& [e, ord] : r.element_orders)
        orders.push_back({{"element", e.str()}, {"order", json_int(ord)}});
      o.result["element_orders"] = orders;
      o.line("torsion = <" + r.torsion.str() + ">");
      o.line("pi-part = <" + r.pi_part.str() + ">");
    } else if (root->parsed()) {
      o.command = "root";
      o.inputs["n"] = n_value;
      o.inputs["word"] = word_a;
      auto g = load_group(group_spec);
      auto r = nth_root(g->collect(word_a), n_value);
      o.result["exists"] = r.has_value();
      if (r.has_value()) {
        o.result["root"] = r->str();
        o.line(r->str());
      } else {
        o.line("no root");
        exit_code = 1;
      }
    } else if (li->parsed()) {
      o.command = "li-bound";
      o.inputs["gens"] = gens_csv;
      auto g = load_group(group_spec);
      std::vector<RationalElement> gens;
      std::istringstream is(gens_csv);
      std::string tok;
      while (std::getline(is, tok, ','))
        if (!tok.empty()) gens.push_back(parse_rational_element(tok, g, pi));
      LiBoundResult r = lemma_li_bound(gens, pi);
      o.result["r"] = json_int(r.r);
      o.result["proof_bound"] = json_index(r.proof_bound);
      json gp = json::array();
      for (const Int& t : r.generator_powers) gp.push_back(json_int(t));
      o.result["generator_powers"] = gp;
      json rej = json::array();
      for (auto& [cand, note] : r.rejected) rej.push_back({{"r", json_int(cand)}, {"why", note}});
      o.result["rejected"] = rej;
      o.line("r = " + r.r.get_str());
      o.line("subnormal-chain bound |H:D| = " + r.proof_bound.str());
    } else if (lie->parsed()) {
      o.command = "liering";
      auto g = load_group(group_spec);
      GradedLieRing l = graded_ring(g, pi);
      json comps = json::array();
      for (const LieComponent& c : l.components) {
        json inv = json::array();
        for (const Int& d : c.invariants) inv.push_back(json_int(d));
        json basis = json::array();
        for (const Element& b : c.basis) basis.push_back(b.str());
        comps.push_back({{"degree", c.degree}, {"invariants", inv}, {"basis", basis}});
        std::ostringstream line;
        line << "degree " << c.degree << ": invariants [";
        for (size_t k = 0; k < c.invariants.size(); ++k)
          line << (k ? "," : "") << c.invariants[k].get_str();
        line << "]";
        o.line(line.str());
      }
      o.result["components"] = comps;
      json brackets = json::array();
      for (const auto& [key, coords] : l.brackets) {
        auto [i, a, j, b] = key;
        if (coords.isZero()) continue;
        brackets.push_back({{"deg_lhs", i},
                            {"basis_lhs", a},
                            {"deg_rhs", j},
                            {"basis_rhs", b},
                            {"value", json_vec(coords)}});
        std::ostringstream line;
        line << "[" << l.component(i).basis[a].str() << ", " << l.component(j).basis[b].str()
             << "] -> degree " << i + j << " coords (";
        for (int t = 0; t < coords.size(); ++t) line << (t ? "," : "") << coords(t).get_str();
        line << ")";
        o.line(line.str());
      }
      o.result["brackets"] = brackets;
      o.result["warnings"] = l.warnings;
      for (const auto& w : l.warnings) o.line("warning: " + w);
      if (!endo_spec.empty()) {
        o.inputs["endo"] = endo_spec;
        InducedEndomorphism endo = induced_endomorphism(l, parse_endo(g, endo_spec));
        json mats = json::array();
        for (const IntMat& m : endo.matrices) mats.push_back(json_mat(m));
        o.result["endo_matrices"] = mats;
        o.result["kernel_trivial"] = endo.kernel_trivial;
        o.line(endo.kernel_trivial ? "induced kernel trivial" : "induced kernel NONTRIVIAL");
        if (!endo.kernel_trivial) exit_code = 1;
      }
    } else if (relfr->parsed()) {
      o.command = "verify relfr";
      o.inputs["m"] = m_value;
      auto g = load_group(group_spec);
      EmbeddingWitness w = power_endo_verify(g, m_value, pi);
      o.result = json_witness(w);
      o.line(std::string("relfr witness m=") + std::to_string(m_value) + ": " +
             (w.verified() ? "verified" : "FAILED"));
      for (const auto& n : w.notes) o.line("  " + n);
      if (!w.verified()) exit_code = 1;
    } else if (a2->parsed()) {
      o.command = "verify a2";
      o.inputs["m"] = m_value;
      o.inputs["central"] = central_csv;
      auto g = load_group(group_spec);
      Subgroup central = Subgroup::generated(g, parse_element_list(g, central_csv), true);
      EmbeddingWitness w = a2_verify(g, pi, m_value, central);
      o.result = json_witness(w);
      o.line(std::string("a2 witness m=") + std::to_string(m_value) + ": " +
             (w.verified() ? "verified" : "FAILED"));
      for (const auto& rc : w.relations.transcript)
        o.line("  " + rc.relation + "  |->  " + rc.lhs_nf + " = " + rc.rhs_nf +
               (rc.ok ? "" : "  MISMATCH"));
      for (const auto& n : w.notes) o.line("  " + n);
      if (!w.verified()) exit_code = 1;
    } else if (crit->parsed()) {
      o.command = "verify criterion";
      o.inputs["ms"] = ms_csv;
      auto g = load_group(group_spec);
      std::vector<Int> ms;
      std::istringstream is(ms_csv);
      std::string tok;
      while (std::getline(is, tok, ','))
        if (!tok.empty()) ms.emplace_back(tok);
      CriterionReport rep = criterion_run(g, pi, ms);
      json ws = json::array();
      for (const auto& w : rep.witnesses) ws.push_back(json_witness(w));
      o.result["witnesses"] = ws;
      o.result["central"] = rep.central_note;
      o.result["statement"] = rep.statement;
      o.result["all_verified"] = rep.all_verified;
      for (const auto& w : rep.witnesses)
        o.line("m=" + w.m.get_str() + ": " + (w.verified() ? "verified" : "FAILED"));
      if (!rep.central_note.empty()) o.line(rep.central_note);
      o.line(rep.statement);
      if (!rep.all_verified) exit_code = 1;
    } else if (closure->parsed()) {
      o.command = "closure-member";
      o.inputs["system"] = system_csv;
      o.inputs["word"] = word_text;
      if (!finite_name.empty()) o.inputs["finite"] = finite_name;
      FiniteGroup g = load_finite(finite_name, table_path);
      bool member_res =
          closure_membership(parse_word_list(system_csv), FreeWord::parse(word_text), g, rank);
      o.result["member"] = member_res;
      o.line(member_res ? "in the closure" : "not in the closure");
      if (!member_res) exit_code = 1;
    } else if (structure->parsed()) {
      o.command = "structure";
      o.inputs["matrix"] = matrix_text;
      AbelianStructure s = abelian_structure(parse_matrix(matrix_text), pi);
      o.result["rank"] = json_int(s.rank);
      json inv = json::array(), pp = json::array();
      for (const Int& d : s.invariant_factors) inv.push_back(json_int(d));
      for (const Int& d : s.prime_power_factors) pp.push_back(json_int(d));
      o.result["invariant_factors"] = inv;
      o.result["prime_power_factors"] = pp;
      o.result["pi_valid"] = s.pi_valid;
      o.result["completion"] = s.completion;
      o.line("rank " + s.rank.get_str() + ", torsion " +
             (s.invariant_factors.empty() ? "none" : "") + [&] {
               std::string t;
               for (size_t i = 0; i < s.invariant_factors.size(); ++i)
                 t += (i ? "," : "") + s.invariant_factors[i].get_str();
               return t;
             }());
      o.line("completion: " + s.completion);
      o.line(std::string("pi_valid: ") + (s.pi_valid ? "true" : "false"));
    } else if (pic->parsed()) {
      o.command = "pi-complete";
      if (!finite_name.empty()) o.inputs["finite"] = finite_name;
      FiniteGroup g = load_finite(finite_name, table_path);
      bool res = is_pi_complete_finite(g, pi);
      o.result["pi_complete"] = res;
      o.line(res ? "pi-complete" : "not pi-complete");
      if (!res) exit_code = 1;
    }
  } catch (const HypothesisFailed& e) {
    if (as_json) {
      json j{{"command", o.command},
             {"inputs", o.inputs},
             {"result", {{"error", e.what()}, {"certificate", e.certificate()}}}};
      out << j.dump(2) << "\n";
    } else {
      out << e.what() << "\n  certificate: " << e.certificate() << "\n";
    }
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  o.flush(out);
  return exit_code;
}

}  // namespace nilkit
