#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <json.hpp>

#include "lgmf/adjunction.hpp"
#include "lgmf/residue.hpp"
#include "lgmf/tft.hpp"
#include "lgmf/workspace.hpp"

using namespace lgmf;
using nlohmann::json;

namespace {

// input problems map to exit code 2, mathematical failures to 1
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  std::vector<std::string> warnings;
  bool failure = false;
  std::string text;  // replaces the key/value listing when set
};

json poly_json(const Poly& p) { return p.to_string(); }

json matrix_json(const PolyMatrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) r.push_back(M(i, j).to_string());
    rows.push_back(r);
  }
  return rows;
}

json dense_json(const DenseMatrix& M) {
  json rows = json::array();
  for (const auto& row : M) {
    json r = json::array();
    for (const auto& c : row) r.push_back(to_string(c));
    rows.push_back(r);
  }
  return rows;
}

json basis_json(const JacobiRing& J) {
  json b = json::array();
  for (std::size_t i = 0; i < J.dimension(); ++i) b.push_back(J.basis_element(i).to_string());
  return b;
}

json vars_json(const Ctx& ctx, const std::vector<std::size_t>& vs) {
  json a = json::array();
  for (auto v : vs) a.push_back(ctx->name(v));
  return a;
}

struct Options {
  std::string file;
  bool json_out = false;
  bool no_timing = false;
  int degree_bound = -1;
  unsigned jobs = 1;
};

const Workspace::MfEntry& need_mf(const Workspace& ws, const std::string& n) {
  auto it = ws.mfs.find(n);
  if (it == ws.mfs.end()) throw InputError("unknown factorisation '" + n + "'");
  return it->second;
}
const Workspace::PotentialEntry& need_potential(const Workspace& ws, const std::string& n) {
  auto it = ws.potentials.find(n);
  if (it == ws.potentials.end()) throw InputError("unknown potential '" + n + "'");
  return it->second;
}
PolyMatrix need_endo(const Workspace& ws, const std::string& n, const MatrixFactorisation& X) {
  if (n == "id") return PolyMatrix::identity(X.rank(), X.ctx);
  auto it = ws.morphisms.find(n);
  if (it == ws.morphisms.end()) throw InputError("unknown morphism '" + n + "'");
  const Morphism& f = it->second.morphism;
  if (f.map.rows() != X.rank() || f.map.cols() != X.rank() || f.source.ctx != X.ctx)
    throw InputError("morphism '" + n + "' is not an endomorphism of the factorisation");
  return f.map;
}
Poly need_poly(const std::string& text, const Ctx& ctx) {
  try {
    return parse_poly(text, ctx).with_context(ctx);
  } catch (const ParseError& e) {
    throw InputError("in '" + text + "': " + std::string(e.what()));
  }
}

Report cmd_check_potential(const Workspace& ws, const std::string& pot) {
  Report r;
  const auto& P = need_potential(ws, pot);
  r.inputs = {{"potential", pot}, {"W", poly_json(P.W)}};
  auto cert = check_potential(P.W);
  r.outputs["is_potential"] = cert.is_potential;
  r.outputs["variables"] = vars_json(ws.ring(P.ring), cert.variables);
  json g = json::array();
  for (const auto& p : cert.gb.generators) g.push_back(p.to_string());
  r.outputs["groebner_basis"] = g;
  if (cert.is_potential) {
    r.outputs["jacobi_dimension"] = cert.jacobi_dimension();
    json b = json::array();
    for (const auto& e : cert.basis.monomials) b.push_back(Poly::monomial(cert.W.context(), e).to_string());
    r.outputs["jacobi_basis"] = b;
  } else {
    r.outputs["witness"] = cert.witness;
    r.failure = true;
  }
  return r;
}

Report cmd_validate(const Workspace& ws) {
  Report r;
  r.inputs = {{"file", ws.file}};
  json rings = json::object(), pots = json::object(), mfs = json::object(), mors = json::object();
  for (const auto& [n, c] : ws.rings) rings[n] = c->names();
  for (const auto& [n, p] : ws.potentials) {
    auto cert = check_potential(p.W);
    pots[n] = {{"ring", p.ring}, {"W", poly_json(p.W)}, {"is_potential", cert.is_potential}};
    if (!cert.is_potential) r.warnings.push_back("'" + n + "' is not a potential: " + cert.witness);
  }
  for (const auto& [n, m] : ws.mfs)
    mfs[n] = {{"ring", m.ring},
              {"rank_even", m.mf.rank_even()},
              {"rank_odd", m.mf.rank_odd()},
              {"potential", poly_json(m.mf.potential)},
              {"source", vars_json(m.mf.ctx, m.mf.source_vars)},
              {"target", vars_json(m.mf.ctx, m.mf.target_vars)},
              {"valid", m.mf.is_valid()}};
  for (const auto& [n, f] : ws.morphisms)
    mors[n] = {{"source", f.source}, {"target", f.target}, {"parity", f.morphism.parity},
               {"closed", f.morphism.is_closed()}};
  r.outputs = {{"rings", rings}, {"potentials", pots}, {"factorisations", mfs}, {"morphisms", mors}};
  return r;
}

Report cmd_unit(const Workspace& ws, const std::string& pot) {
  Report r;
  const auto& P = need_potential(ws, pot);
  r.inputs = {{"potential", pot}, {"W", poly_json(P.W)}};
  auto u = koszul_unit(P.W);
  r.outputs["ring"] = u.ctx->names();
  json basis = json::array();
  for (std::size_t i = 0; i < u.subsets.size(); ++i) {
    std::string label = "theta{";
    auto el = elements(u.subsets[i]);
    for (std::size_t k = 0; k < el.size(); ++k) label += (k ? "," : "") + std::to_string(el[k] + 1);
    basis.push_back({{"label", label + "}"}, {"parity", u.mf.parity(i)}});
  }
  r.outputs["basis"] = basis;
  r.outputs["d"] = matrix_json(u.mf.d);
  r.outputs["d0"] = matrix_json(u.mf.d0());
  r.outputs["d1"] = matrix_json(u.mf.d1());
  r.outputs["potential"] = poly_json(u.mf.potential);
  r.outputs["valid"] = u.mf.is_valid();
  return r;
}

Report cmd_residue(const Workspace& ws, const std::string& ring, const std::string& num,
                   const std::vector<std::string>& dens, const std::vector<std::string>& vars) {
  Report r;
  const Ctx& ctx = ws.rings.count(ring) ? ws.rings.at(ring) : throw InputError("unknown ring '" + ring + "'");
  std::vector<Poly> fs;
  for (const auto& d : dens) fs.push_back(need_poly(d, ctx));
  std::vector<std::size_t> vs;
  if (vars.empty()) {
    for (std::size_t i = 0; i < ctx->size(); ++i) vs.push_back(i);
  } else {
    for (const auto& v : vars) {
      auto i = ctx->find(v);
      if (!i) throw InputError("unknown variable '" + v + "'");
      vs.push_back(*i);
    }
  }
  if (vs.size() != fs.size()) throw InputError("need as many denominators as integration variables");
  r.inputs = {{"ring", ring}, {"numerator", num}, {"denominators", dens}, {"variables", vars_json(ctx, vs)}};
  ResiduePlan plan(fs, vs);
  Poly res = plan(need_poly(num, ctx));
  r.outputs["residue"] = poly_json(res);
  return r;
}

Report cmd_evcoev_dump(const Workspace& ws, const std::string& name) {
  Report r;
  const auto& X = need_mf(ws, name).mf;
  r.inputs = {{"factorisation", name}};
  auto maps = ev_coev(X);
  const std::string ring = "A";
  std::string text = "# evaluation and coevaluation maps of " + name + "\n" + ring_statement(ring, maps.ring.ctx);
  json closed = json::object(), mats = json::object();
  auto add = [&](const std::string& n, const MatrixFactorisation& S, const MatrixFactorisation& T,
                 const PolyMatrix& map, bool is_closed) {
    text += mf_block(n + "_source", ring, S) + mf_block(n + "_target", ring, T);
    Morphism f{S, T, 0, map};
    text += morphism_statement(n, n + "_source", n + "_target", f, true);
    closed[n] = is_closed;
    mats[n] = matrix_json(map);
    if (!is_closed) r.failure = true;
  };
  add("coev_tilde", maps.coev_tilde.source, maps.coev_tilde.target, maps.coev_tilde.map, maps.coev_tilde.is_closed());
  add("coev", maps.coev.source, maps.coev.target, maps.coev.map, maps.coev.is_closed());
  add("ev_tilde", maps.ev_tilde.source.mf, maps.ev_tilde.target, maps.ev_tilde.map, maps.ev_tilde.is_closed());
  add("ev", maps.ev.source.mf, maps.ev.target, maps.ev.map, maps.ev.is_closed());
  r.outputs = {{"closed", closed}, {"maps", mats}, {"workspace", text}, {"ring", maps.ring.ctx->names()}};
  r.text = text;
  return r;
}

Report cmd_zorro(const Workspace& ws, const std::string& name, int bound) {
  Report r;
  const auto& X = need_mf(ws, name).mf;
  r.inputs = {{"factorisation", name}, {"degree_bound", bound < 0 ? json("default") : json(bound)}};
  for (auto [v, label] : {std::pair{ZorroVariant::Right, "right"}, std::pair{ZorroVariant::Left, "left"}}) {
    auto z = zorro_check(X, v, bound);
    json o = {{"composite", matrix_json(z.composite)},
              {"degree_bound", z.degree_bound},
              {"witness_found", z.witness.has_value()}};
    if (z.witness) o["witness"] = matrix_json(z.witness->h);
    else r.failure = true;
    r.outputs[label] = o;
  }
  return r;
}

Report cmd_qdim(const Workspace& ws, const std::string& name) {
  Report r;
  const auto& X = need_mf(ws, name).mf;
  r.inputs = {{"factorisation", name}};
  r.outputs["left"] = poly_json(quantum_dim(X, Side::Left));
  r.outputs["right"] = poly_json(quantum_dim(X, Side::Right));
  if (X.source_vars.size() % 2 || X.target_vars.size() % 2)
    r.warnings.push_back("odd number of variables on a side; the closed formula is asserted only for even n and m");
  return r;
}

Report cmd_chern(const Workspace& ws, const std::string& name) {
  Report r;
  const auto& X = need_mf(ws, name).mf;
  r.inputs = {{"factorisation", name}};
  r.outputs["chern_character"] = poly_json(chern_character(X));
  return r;
}

Report cmd_pair_bulk(const Workspace& ws, const std::string& pot, const std::string& a, const std::string& b) {
  Report r;
  const auto& P = need_potential(ws, pot);
  const Ctx& ctx = ws.ring(P.ring);
  r.inputs = {{"potential", pot}, {"phi1", a}, {"phi2", b}};
  auto J = jacobi_ring(P.W);
  r.outputs["pairing"] = to_string(bulk_pairing(need_poly(a, ctx), need_poly(b, ctx), J));
  return r;
}

Report cmd_pair_kl(const Workspace& ws, const std::string& name, const std::string& a, const std::string& b) {
  Report r;
  const auto& X = need_mf(ws, name).mf;
  r.inputs = {{"factorisation", name}, {"psi1", a}, {"psi2", b}};
  r.outputs["pairing"] = to_string(kapustin_li_pairing(need_endo(ws, a, X), need_endo(ws, b, X), X));
  return r;
}

Report cmd_defect_act(const Workspace& ws, const std::string& name, const std::string& side,
                      const std::string& field, const std::string& phi, unsigned jobs) {
  Report r;
  const auto& X = need_mf(ws, name).mf;
  if (side != "left" && side != "right") throw InputError("--side must be 'left' or 'right'");
  r.inputs = {{"factorisation", name}, {"side", side}, {"decoration", phi.empty() ? "id" : phi}};
  std::optional<PolyMatrix> Phi;
  if (!phi.empty()) Phi = need_endo(ws, phi, X);
  auto D = defect_operator(X, side == "left" ? Side::Left : Side::Right, Phi, jobs);
  r.outputs["source_basis"] = basis_json(D.source);
  r.outputs["target_basis"] = basis_json(D.target);
  r.outputs["matrix"] = dense_json(D.matrix);
  if (!field.empty()) {
    r.inputs["field"] = field;
    r.outputs["image"] = poly_json(D.apply(need_poly(field, X.ctx)));
  }
  r.warnings = D.warnings;
  return r;
}

Report cmd_cardy(const Workspace& ws, const std::string& xn, const std::string& yn, const std::string& phi,
                 const std::string& psi, int bound) {
  Report r;
  const auto& X = need_mf(ws, xn).mf;
  const auto& Y = need_mf(ws, yn).mf;
  if (X.ctx != Y.ctx || X.potential != Y.potential) throw InputError("cardy needs two factorisations of one potential");
  r.inputs = {{"X", xn}, {"Y", yn}, {"phi", phi}, {"psi", psi},
              {"degree_bound", bound < 0 ? json("default") : json(bound)}};
  auto c = cardy_check(X, Y, need_endo(ws, phi, X), need_endo(ws, psi, Y), bound);
  r.outputs = {{"lhs", to_string(c.lhs)},
               {"rhs", to_string(c.rhs)},
               {"equal", c.equal},
               {"stable", c.stable},
               {"degree_bound", c.degree_bound}};
  r.warnings = c.warnings;
  r.failure = !c.equal;
  return r;
}

void emit(const Report& r, const Options& o, double ms) {
  if (o.json_out) {
    json j = {{"command", r.command},
              {"inputs", r.inputs},
              {"outputs", r.outputs},
              {"warnings", r.warnings},
              {"status", r.failure ? "failure" : "ok"}};
    if (!o.no_timing) j["timing_ms"] = static_cast<long>(ms);
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (!r.text.empty()) {
    std::cout << r.text;
  } else {
    for (const auto& [k, v] : r.outputs.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  if (r.failure) std::cerr << r.command << ": check failed\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with matrix factorisations of Landau-Ginzburg potentials"};
  app.require_subcommand(1);
  Options o;
  std::string a1, a2, a3, side = "right", field, phi, psi = "id";
  std::vector<std::string> rest, vars;

  auto common = [&](CLI::App* s) {
    s->add_option("file", o.file, "workspace file")->required();
    s->add_flag("--json", o.json_out, "machine-readable report");
    s->add_flag("--no-timing", o.no_timing, "omit the timing field from JSON reports");
    s->add_option("--degree-bound", o.degree_bound, "degree bound for homotopy and cohomology searches");
    s->add_option("--jobs", o.jobs, "worker threads for defect operator evaluation")->check(CLI::PositiveNumber);
  };
  auto* check = app.add_subcommand("check-potential", "isolated-singularity check and Jacobi basis");
  common(check);
  check->add_option("potential", a1)->required();
  auto* validate = app.add_subcommand("validate", "load and validate every declaration");
  common(validate);
  auto* unit = app.add_subcommand("unit", "the Koszul unit factorisation of a potential");
  common(unit);
  unit->add_option("potential", a1)->required();
  auto* residue = app.add_subcommand("residue", "Grothendieck residue Res[g dx / (f1, ..., fn)]");
  common(residue);
  residue->add_option("ring", a1)->required();
  residue->add_option("numerator", a2)->required();
  residue->add_option("denominators", rest)->required();
  residue->add_option("--vars", vars, "integration variables (default: all ring variables)")->delimiter(',');
  auto* dump = app.add_subcommand("evcoev-dump", "the four adjunction maps as a re-parsable workspace");
  common(dump);
  dump->add_option("mf", a1)->required();
  auto* zorro = app.add_subcommand("zorro-check", "both Zorro composites with homotopy witnesses");
  common(zorro);
  zorro->add_option("mf", a1)->required();
  auto* qdim = app.add_subcommand("qdim", "left and right quantum dimensions of a defect");
  common(qdim);
  qdim->add_option("mf", a1)->required();
  auto* chern = app.add_subcommand("chern", "Chern character of a boundary condition");
  common(chern);
  chern->add_option("mf", a1)->required();
  auto* pb = app.add_subcommand("pair-bulk", "bulk pairing Res[phi1 phi2 dx / dW]");
  common(pb);
  pb->add_option("potential", a1)->required();
  pb->add_option("phi1", a2)->required();
  pb->add_option("phi2", a3)->required();
  auto* pk = app.add_subcommand("pair-kl", "boundary pairing of two endomorphisms ('id' for the identity)");
  common(pk);
  pk->add_option("mf", a1)->required();
  pk->add_option("psi1", a2)->required();
  pk->add_option("psi2", a3)->required();
  auto* da = app.add_subcommand("defect-act", "defect operator on Jacobi rings");
  common(da);
  da->add_option("mf", a1)->required();
  da->add_option("--side", side, "left or right")->capture_default_str();
  da->add_option("--field", field, "bulk field to act on");
  da->add_option("--phi", phi, "decorating endomorphism");
  auto* cardy = app.add_subcommand("cardy", "both sides of the Cardy condition");
  common(cardy);
  cardy->add_option("X", a1)->required();
  cardy->add_option("Y", a2)->required();
  cardy->add_option("--phi", phi, "endomorphism of X (default id)");
  cardy->add_option("--psi", psi, "endomorphism of Y (default id)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  auto t0 = std::chrono::steady_clock::now();
  try {
    Workspace ws = load_workspace(o.file);
    Report r;
    if (sub == check) r = cmd_check_potential(ws, a1);
    else if (sub == validate) r = cmd_validate(ws);
    else if (sub == unit) r = cmd_unit(ws, a1);
    else if (sub == residue) r = cmd_residue(ws, a1, a2, rest, vars);
    else if (sub == dump) r = cmd_evcoev_dump(ws, a1);
    else if (sub == zorro) r = cmd_zorro(ws, a1, o.degree_bound);
    else if (sub == qdim) r = cmd_qdim(ws, a1);
    else if (sub == chern) r = cmd_chern(ws, a1);
    else if (sub == pb) r = cmd_pair_bulk(ws, a1, a2, a3);
    else if (sub == pk) r = cmd_pair_kl(ws, a1, a2, a3);
    else if (sub == da) r = cmd_defect_act(ws, a1, side, field, phi, o.jobs);
    else r = cmd_cardy(ws, a1, a2, phi.empty() ? "id" : phi, psi, o.degree_bound);
    r.command = cmd;
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(r, o, ms);
    return r.failure ? 1 : 0;
  } catch (const WorkspaceError& e) {
    if (e.line()) std::cerr << "error: " << o.file << ":" << e.what() << "\n";
    else std::cerr << "error: " << e.bare_message() << "\n";
    if (o.json_out)
      std::cout << json{{"command", cmd},
                        {"status", "input-error"},
                        {"error", {{"file", o.file}, {"line", e.line()}, {"column", e.column()}, {"message", e.bare_message()}}}}
                       .dump(2)
                << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (o.json_out)
      std::cout << json{{"command", cmd}, {"status", "input-error"}, {"error", {{"message", e.what()}}}}.dump(2) << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (o.json_out)
      std::cout << json{{"command", cmd}, {"status", "input-error"}, {"error", {{"message", e.what()}}}}.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (o.json_out)
      std::cout << json{{"command", cmd}, {"status", "failure"}, {"error", {{"message", e.what()}}}}.dump(2) << "\n";
    return 1;
  }
}
