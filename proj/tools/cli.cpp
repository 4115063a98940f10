#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "formcalc/cohomology.hpp"
#include "formcalc/error.hpp"
#include "formcalc/form.hpp"
#include "formcalc/geometry.hpp"
#include "formcalc/integration.hpp"
#include "formcalc/io.hpp"
#include "formcalc/parser.hpp"
#include "formcalc/poincare.hpp"
#include "formcalc/smooth_map.hpp"

namespace formcalc::cli {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

template <class T>
std::string list(const std::vector<T>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    if constexpr (std::is_same_v<T, std::optional<long>>) {
      s += values[i] ? std::to_string(*values[i]) : "?";
    } else {
      s += std::to_string(values[i]);
    }
  }
  return s + "]";
}

ordered_json optional_list(const std::vector<std::optional<long>>& values) {
  ordered_json a = ordered_json::array();
  for (const auto& v : values) a.push_back(v ? ordered_json(*v) : ordered_json(nullptr));
  return a;
}

struct Options {
  std::vector<std::string> forms;
  std::string map, chain, nerve, problem, loop, loop1, loop2, domain, codomain, surface, at, topic;
  int dim = 3;
  int quad = 16;
  int panels = 0;
  int sphere = -1;
  int chi = 0;
  double tol = 1e-8;
  bool tol_given = false;
  bool dim_given = false;
  bool json = false;
};

struct Outcome {
  std::vector<std::string> lines;
  ordered_json inputs = ordered_json::object();
  ordered_json result;
  std::optional<double> residual;
  double tolerance = 1e-8;
};

QuadratureSpec spec_of(const Options& o, int default_panels = 1) {
  QuadratureSpec s{o.quad, o.panels > 0 ? o.panels : default_panels};
  s.validate();
  return s;
}

int chain_dimension(const Options& o, const Chain& c) {
  if (o.dim_given && o.dim != c.ambient()) {
    throw DimensionError("--dim " + std::to_string(o.dim) + " but the chain lives in R^" + std::to_string(c.ambient()));
  }
  return c.ambient();
}

const std::string& single_form(const Options& o) {
  if (o.forms.size() != 1) throw InputError("expected exactly one --form");
  return o.forms.front();
}

Loop single_loop(const std::string& path) {
  const Chain c = load_chain(path);
  if (c.terms().size() != 1) throw InputError(path + ": a loop is a chain with one 1-cell");
  const ChainTerm& t = c.terms().front();
  if (t.cell.dimension() != 1) throw InputError(path + ": a loop is a chain with one 1-cell");
  return Loop(t.weight < 0 ? t.cell.with_orientation(-t.cell.orientation()) : t.cell);
}

void add_quad(Outcome& r, const QuadratureSpec& s) {
  r.inputs["quad"] = s.points;
  r.inputs["panels"] = s.panels;
}

Outcome eval_verb(const Options& o) {
  Outcome r;
  const DifferentialForm a = parse_form(single_form(o), o.dim);
  r.inputs = {{"form", single_form(o)}, {"dim", o.dim}};
  if (o.at.empty()) {
    r.lines.push_back(a.to_string());
    r.result = a.to_string();
    return r;
  }
  std::vector<double> point;
  std::stringstream ss(o.at);
  for (std::string item; std::getline(ss, item, ',');) point.push_back(parse_number(item));
  if (static_cast<int>(point.size()) != o.dim) {
    throw DimensionError("--at has " + std::to_string(point.size()) + " coordinates, expected " + std::to_string(o.dim));
  }
  r.inputs["at"] = point;
  if (a.degree() == 0) {
    const double v = evaluate(a.coefficient({}), point);
    r.lines.push_back(num(v));
    r.result = v;
    return r;
  }
  r.result = ordered_json::object();
  for (const auto& [index, f] : a.terms()) {
    const std::string basis = DifferentialForm::monomial(o.dim, index).to_string();
    const double v = evaluate(f, point);
    r.lines.push_back(basis + " = " + num(v));
    r.result[basis] = v;
  }
  if (a.is_zero()) {
    r.lines.push_back("0");
  }
  return r;
}

Outcome d_verb(const Options& o) {
  Outcome r;
  const DifferentialForm da = exterior_derivative(parse_form(single_form(o), o.dim));
  r.inputs = {{"form", single_form(o)}, {"dim", o.dim}};
  r.lines.push_back(da.to_string());
  r.result = da.to_string();
  return r;
}

Outcome wedge_verb(const Options& o) {
  if (o.forms.size() != 2) throw InputError("wedge takes two --form options");
  Outcome r;
  const DifferentialForm w = wedge(parse_form(o.forms[0], o.dim), parse_form(o.forms[1], o.dim));
  r.inputs = {{"forms", o.forms}, {"dim", o.dim}};
  r.lines.push_back(w.to_string());
  r.result = w.to_string();
  return r;
}

Outcome pullback_verb(const Options& o) {
  if (o.map.empty()) throw InputError("pullback needs --map");
  Outcome r;
  const SmoothMap g = parse_map(o.map);
  const std::vector<std::string> names = map_variables(o.map);
  const DifferentialForm a = parse_form(single_form(o), g.codomain_dimension());
  const DifferentialForm p = pullback_form(g, a);
  r.inputs = {{"form", single_form(o)}, {"map", o.map}};
  r.lines.push_back(p.to_string(names));
  r.result = p.to_string(names);
  return r;
}

Outcome integrate_verb(const Options& o) {
  if (o.chain.empty()) throw InputError("integrate needs --chain");
  Outcome r;
  const Chain c = load_chain(o.chain);
  const QuadratureSpec s = spec_of(o);
  const double v = integrate_chain(parse_form(single_form(o), chain_dimension(o, c)), c, s);
  r.inputs = {{"form", single_form(o)}, {"chain", o.chain}};
  add_quad(r, s);
  r.lines.push_back(num(v));
  r.result = v;
  return r;
}

Outcome stokes_verb(const Options& o) {
  if (o.chain.empty()) throw InputError("stokes needs --chain");
  Outcome r;
  const Chain c = load_chain(o.chain);
  const QuadratureSpec s = spec_of(o);
  const StokesResult st = stokes_check(parse_form(single_form(o), chain_dimension(o, c)), c, s);
  r.inputs = {{"form", single_form(o)}, {"chain", o.chain}};
  add_quad(r, s);
  r.lines.push_back("integral of dw over chain = " + num(st.lhs));
  r.lines.push_back("integral of w over boundary = " + num(st.rhs));
  r.lines.push_back("residual = " + sci(st.residual));
  r.result = {{"lhs", st.lhs}, {"rhs", st.rhs}};
  r.residual = st.residual;
  return r;
}

Outcome primitive_verb(const Options& o) {
  Outcome r;
  const DifferentialForm a = parse_form(single_form(o), o.dim);
  const DifferentialForm b = primitive(a);
  r.inputs = {{"form", single_form(o)}, {"dim", o.dim}};
  r.lines.push_back(b.to_string());
  r.lines.push_back("d(primitive) - form = " + (exterior_derivative(b) - a).to_string());
  r.result = b.to_string();
  return r;
}

Outcome cohomology_verb(const Options& o) {
  Outcome r;
  std::vector<long> betti;
  if (o.sphere >= 0) {
    if (!o.nerve.empty()) throw InputError("--sphere and --nerve are exclusive");
    betti = sphere_betti(o.sphere);
    r.inputs = {{"sphere", o.sphere}};
  } else if (!o.nerve.empty()) {
    betti = cech_cohomology(load_nerve(o.nerve));
    r.inputs = {{"nerve", o.nerve}};
  } else {
    throw InputError("cohomology needs --sphere or --nerve");
  }
  long chi = 0;
  for (std::size_t k = 0; k < betti.size(); ++k) chi += (k % 2 ? -1 : 1) * betti[k];
  r.lines.push_back("b = " + list(betti));
  r.lines.push_back("chi = " + std::to_string(chi));
  r.result = {{"betti", betti}, {"euler_characteristic", chi}};
  return r;
}

Outcome mv_solve_verb(const Options& o) {
  if (o.problem.empty()) throw InputError("mv-solve needs --problem");
  Outcome r;
  const ExactSequenceSolution s = mv_solve(load_problem(o.problem));
  r.inputs = {{"problem", o.problem}};
  if (s.status == SolveStatus::Inconsistent) throw DomainError("inconsistent sequence: " + s.message);
  const std::string status = s.status == SolveStatus::Solved ? "solved" : "under-determined";
  r.lines.push_back("status = " + status);
  r.lines.push_back("slots = " + list(s.slots));
  r.lines.push_back("ranks = " + list(s.ranks));
  if (!s.message.empty()) r.lines.push_back("note = " + s.message);
  r.result = {{"status", status}, {"slots", optional_list(s.slots)}, {"ranks", optional_list(s.ranks)}};
  return r;
}

Outcome integer_outcome(const std::string& name, const IntegerEstimate& e) {
  Outcome r;
  r.lines.push_back(name + " = " + std::to_string(e.rounded));
  r.lines.push_back("value = " + num(e.value));
  r.lines.push_back("residual = " + sci(e.gap()));
  r.result = {{name, e.rounded}, {"value", e.value}};
  r.residual = e.gap();
  return r;
}

Outcome winding_verb(const Options& o) {
  if (o.loop.empty()) throw InputError("winding needs --loop");
  const QuadratureSpec s = spec_of(o, 4);
  Outcome r = integer_outcome("winding", winding_number(single_loop(o.loop), s));
  r.inputs = {{"loop", o.loop}};
  add_quad(r, s);
  return r;
}

Outcome linking_verb(const Options& o) {
  if (o.loop1.empty() || o.loop2.empty()) throw InputError("linking needs --loop1 and --loop2");
  const QuadratureSpec s = spec_of(o, 2);
  Outcome r = integer_outcome("linking", linking_number(single_loop(o.loop1), single_loop(o.loop2), s));
  r.inputs = {{"loop1", o.loop1}, {"loop2", o.loop2}};
  add_quad(r, s);
  r.tolerance = 1e-3;
  return r;
}

Outcome degree_verb(const Options& o) {
  if (o.map.empty() || o.domain.empty() || o.codomain.empty()) {
    throw InputError("degree needs --map, --domain and --codomain");
  }
  const SmoothMap f = load_map(o.map);
  const Chain domain = load_chain(o.domain);
  const Chain codomain = load_chain(o.codomain);
  const int n = codomain.ambient();
  DifferentialForm a = n == 2 ? angular_form() : n == 3 ? solid_angle_form() : volume_form(n);
  if (!o.forms.empty()) a = parse_form(single_form(o), n);
  const QuadratureSpec s = spec_of(o);
  Outcome r = integer_outcome("degree", degree_by_integration(f, domain, codomain, a, s));
  r.inputs = {{"map", o.map}, {"domain", o.domain}, {"codomain", o.codomain}, {"form", a.to_string()}};
  add_quad(r, s);
  return r;
}

Outcome gauss_bonnet_verb(const Options& o) {
  if (o.surface.empty()) throw InputError("gauss-bonnet needs --surface");
  Outcome r;
  const QuadratureSpec s = spec_of(o);
  const GaussBonnetResult g = gauss_bonnet_check(load_chain(o.surface), o.chi, s);
  r.inputs = {{"surface", o.surface}, {"chi", o.chi}};
  add_quad(r, s);
  r.lines.push_back("integral of K dA = " + num(g.integral));
  r.lines.push_back("2 pi chi = " + num(g.expected));
  r.lines.push_back("residual = " + sci(g.residual));
  r.result = {{"integral", g.integral}, {"expected", g.expected}};
  r.residual = g.residual;
  r.tolerance = 1e-4;
  return r;
}

Outcome explain_verb(const Options& o) {
  Outcome r;
  r.inputs = {{"topic", o.topic}};
  r.result = ordered_json::array();
  for (const KnownValue& k : known_value_tables()) {
    if (!o.topic.empty() && k.space.find(o.topic) == std::string::npos && k.group.find(o.topic) == std::string::npos) {
      continue;
    }
    r.lines.push_back(k.group + "(" + k.space + ") = " + std::to_string(k.dimension) + "  " + k.statement);
    r.result.push_back({{"space", k.space}, {"group", k.group}, {"dimension", k.dimension}, {"statement", k.statement}});
  }
  if (r.lines.empty()) throw InputError("no known values match '" + o.topic + "'");
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential forms, integration and cohomology", "formcalc"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Print a JSON result object");
    sub->add_option("--tol", o.tol, "Residual tolerance (default 1e-8; 1e-3 for linking, 1e-4 for gauss-bonnet)")
        ->each([&](const std::string&) { o.tol_given = true; });
  };
  auto quad = [&](CLI::App* sub) {
    sub->add_option("--quad", o.quad, "Gauss-Legendre points per axis")->capture_default_str();
    sub->add_option("--panels", o.panels, "Panels per axis (0: verb default)");
  };
  auto form = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--form", o.forms, "Differential form");
    if (required) opt->required();
  };
  auto dim = [&](CLI::App* sub) {
    sub->add_option("--dim", o.dim, "Ambient dimension")->capture_default_str()->each([&](const std::string&) { o.dim_given = true; });
  };

  auto chain_dim = [&](CLI::App* sub) {
    sub->add_option("--dim", o.dim, "Ambient dimension, checked against the chain")->each([&](const std::string&) { o.dim_given = true; });
  };

  auto* eval = app.add_subcommand("eval", "Normalize a form, or evaluate it at a point");
  form(eval, true), dim(eval), common(eval);
  eval->add_option("--at", o.at, "Comma-separated coordinates");
  auto* d = app.add_subcommand("d", "Exterior derivative");
  form(d, true), dim(d), common(d);
  auto* wedge_cmd = app.add_subcommand("wedge", "Wedge product of two forms");
  form(wedge_cmd, true), dim(wedge_cmd), common(wedge_cmd);
  auto* pullback = app.add_subcommand("pullback", "Pull a form back through a map literal");
  form(pullback, true), common(pullback);
  pullback->add_option("--map", o.map, "Map literal, e.g. map(r,theta) = r*cos(theta); r*sin(theta)")->required();
  auto* integrate = app.add_subcommand("integrate", "Integrate a form over a chain");
  form(integrate, true), chain_dim(integrate), quad(integrate), common(integrate);
  integrate->add_option("--chain", o.chain, "Chain JSON file")->required();
  auto* stokes = app.add_subcommand("stokes", "Compare the integral of dw over a chain with w over its boundary");
  form(stokes, true), chain_dim(stokes), quad(stokes), common(stokes);
  stokes->add_option("--chain", o.chain, "Chain JSON file")->required();
  auto* prim = app.add_subcommand("primitive", "Primitive of a closed polynomial form");
  form(prim, true), dim(prim), common(prim);
  auto* coh = app.add_subcommand("cohomology", "Betti numbers of a nerve or a sphere");
  common(coh);
  coh->add_option("--nerve", o.nerve, "Nerve JSON file");
  coh->add_option("--sphere", o.sphere, "Sphere dimension")->check(CLI::Range(0, 64));
  auto* mv = app.add_subcommand("mv-solve", "Fill in unknowns of an exact sequence");
  common(mv);
  mv->add_option("--problem", o.problem, "Problem JSON file")->required();
  auto* winding = app.add_subcommand("winding", "Winding number of a loop in the plane about the origin");
  quad(winding), common(winding);
  winding->add_option("--loop", o.loop, "Loop JSON file")->required();
  auto* linking = app.add_subcommand("linking", "Gauss linking number of two loops in space");
  quad(linking), common(linking);
  linking->add_option("--loop1", o.loop1, "Loop JSON file")->required();
  linking->add_option("--loop2", o.loop2, "Loop JSON file")->required();
  auto* degree = app.add_subcommand("degree", "Degree of a map between closed chains");
  form(degree, false), quad(degree), common(degree);
  degree->add_option("--map", o.map, "Map JSON file")->required();
  degree->add_option("--domain", o.domain, "Domain chain JSON file")->required();
  degree->add_option("--codomain", o.codomain, "Codomain chain JSON file")->required();
  auto* gb = app.add_subcommand("gauss-bonnet", "Integral of Gauss curvature over a closed surface");
  quad(gb), common(gb);
  gb->add_option("--surface", o.surface, "Surface chain JSON file")->required();
  gb->add_option("--chi", o.chi, "Euler characteristic")->required();
  auto* explain = app.add_subcommand("explain", "Known cohomology values");
  common(explain);
  explain->add_option("--topic", o.topic, "Filter by space or group");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  Outcome r;
  try {
    if (verb == "eval") r = eval_verb(o);
    else if (verb == "d") r = d_verb(o);
    else if (verb == "wedge") r = wedge_verb(o);
    else if (verb == "pullback") r = pullback_verb(o);
    else if (verb == "integrate") r = integrate_verb(o);
    else if (verb == "stokes") r = stokes_verb(o);
    else if (verb == "primitive") r = primitive_verb(o);
    else if (verb == "cohomology") r = cohomology_verb(o);
    else if (verb == "mv-solve") r = mv_solve_verb(o);
    else if (verb == "winding") r = winding_verb(o);
    else if (verb == "linking") r = linking_verb(o);
    else if (verb == "degree") r = degree_verb(o);
    else if (verb == "gauss-bonnet") r = gauss_bonnet_verb(o);
    else r = explain_verb(o);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (o.json) {
    ordered_json j;
    j["verb"] = verb;
    j["inputs"] = r.inputs;
    j["result"] = r.result;
    if (r.residual) j["residual"] = *r.residual;
    j["provenance"] = "computed";
    out << j.dump(2) << "\n";
  } else {
    for (const std::string& line : r.lines) out << line << "\n";
  }
  const double tol = o.tol_given ? o.tol : r.tolerance;
  if (r.residual && *r.residual > tol) {
    err << "residual " << sci(*r.residual) << " exceeds tolerance " << sci(tol) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace formcalc::cli
