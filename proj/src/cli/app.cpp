#include "flopgw/cli.hpp"

#include "flopgw/chow_verify.hpp"
#include "flopgw/errors.hpp"
#include "flopgw/flop.hpp"
#include "flopgw/localization.hpp"
#include "flopgw/ruan.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>

namespace flopgw::cli {

namespace {

using nlohmann::json;

struct Options {
  int n = 2;
  int nmax = 6;
  int d = 1;
  int dmax = 2;
  int marks = -1;
  std::vector<int> insertions;
  std::string obstruction = "none";
  std::string lift = "standard";
  std::string convention = "paper";
  std::string cls;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  unsigned jobs = 1;
  std::string format = "json";
  std::string trace;
  std::string query;
  std::size_t max_graphs = gw::EnumerationLimits{}.max_graphs;
  int max_vertices = gw::EnumerationLimits{}.max_vertices;
};

// Signals a failure that must exit with the internal status even though it
// is not a SeedDisagreement.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json error_object(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

gw::LiftChoice parse_lift(const std::string& s) {
  if (s == "standard") return gw::LiftChoice::Standard;
  if (s == "antidiagonal") return gw::LiftChoice::Antidiagonal;
  throw std::invalid_argument("unknown lift '" + s + "' (expected standard or antidiagonal)");
}

gw::InvariantOptions invariant_options(const Options& o) {
  gw::InvariantOptions opts;
  opts.seeds = o.seeds;
  opts.jobs = o.jobs;
  opts.limits.max_graphs = o.max_graphs;
  opts.limits.max_vertices = o.max_vertices;
  return opts;
}

void require_json(const Options& o) {
  if (o.format != "json") throw InvalidQuery("this subcommand only produces json output");
}

std::string quote_csv(const std::string& s) { return "\"" + s + "\""; }

int cmd_chow_verify(const Options& o, std::ostream& out) {
  require_json(o);
  if (o.nmax < 2) throw InvalidGeometry("--nmax must be >= 2");
  const auto rep = chow::verify(o.nmax);
  emit(out, chow::to_json(rep));
  return rep.all_pass() ? Ok : InternalFailure;
}

int cmd_flop_map(const Options& o, std::ostream& out) {
  require_json(o);
  const auto conv = flop::ExceptionalCorrectionConvention{flop::parse_convention(o.convention)};
  const auto g = flop::build_geometry(o.n);
  if (o.cls.empty()) {
    emit(out, flop::t_map_json(g, conv));
    return Ok;
  }
  std::string digits = o.cls;
  if (digits.rfind("P^", 0) == 0)
    digits = digits.substr(2);
  else if (digits.rfind("P", 0) == 0)
    digits = digits.substr(1);
  else
    throw InvalidQuery("--class must look like P<k> or P^<k>");
  std::size_t used = 0;
  int k = -1;
  try {
    k = std::stoi(digits, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != digits.size() || k < 0 || k > o.n)
    throw InvalidQuery("--class must be P<k> with 0 <= k <= n");
  const auto x = g.cycle(k);
  emit(out, {{"n", o.n},
             {"class", "P^" + std::to_string(k)},
             {"convention", flop::to_string(conv.mode)},
             {"pushforward", flop::describe_dual_cycle(g.dual_cycle_coefficient(flop::flop_image(g, x), k), k)},
             {"image", flop::describe_dual_cycle(g.dual_cycle_coefficient(flop::flop_T(g, x, conv), k), k)}});
  return Ok;
}

int cmd_loc_graphs(const Options& o, std::ostream& out) {
  const int k = std::max(o.marks, 0);
  const gw::EnumerationLimits limits{o.max_graphs, o.max_vertices};
  const auto graphs = gw::enumerate_fixed_graphs(o.n, o.d, k, limits);
  if (o.format == "csv") {
    out << "graph,multiplicity\n";
    for (const auto& g : graphs) out << quote_csv(g.canonical()) << ',' << gw::automorphism_multiplicity(g, limits) << '\n';
    return Ok;
  }
  json list = json::array();
  for (const auto& g : graphs)
    list.push_back({{"graph", g.canonical()}, {"multiplicity", gw::automorphism_multiplicity(g, limits).str()}});
  emit(out, {{"n", o.n}, {"d", o.d}, {"k", k}, {"graph_count", graphs.size()}, {"graphs", list}});
  return Ok;
}

int cmd_loc_invariant(const Options& o, std::ostream& out) {
  require_json(o);
  gw::InvariantQuery q;
  if (!o.query.empty()) {
    std::ifstream in(o.query);
    if (!in) throw InvalidQuery("cannot open query file " + o.query);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw InvalidQuery(std::string("query file is not valid JSON: ") + e.what());
    }
    q = gw::query_from_json(j);
  } else {
    q.n = o.n;
    q.d = o.d;
    q.insertions = o.insertions;
    q.k = o.marks < 0 ? static_cast<int>(o.insertions.size()) : o.marks;
    q.obstruction = gw::BundleSpec::parse(o.obstruction, parse_lift(o.lift), o.n);
  }
  auto opts = invariant_options(o);
  std::ofstream trace;
  if (!o.trace.empty()) {
    trace.open(o.trace);
    if (!trace) throw InvalidQuery("cannot write trace file " + o.trace);
    trace << "graph,multiplicity,contribution,zero_obstruction\n";
    opts.trace = [&trace](const gw::TraceRow& r) {
      trace << quote_csv(r.canonical) << ',' << r.multiplicity << ',' << r.contribution << ','
            << (r.obstruction_has_zero ? 1 : 0) << '\n';
    };
  }
  const auto r = gw::invariant(q, opts);
  emit(out, gw::to_json(q, r));
  return Ok;
}

int cmd_mcover(const Options& o, std::ostream& out) {
  require_json(o);
  const auto q = gw::multiple_cover_query(o.d, parse_lift(o.lift));
  const auto r = gw::invariant(q, invariant_options(o));
  emit(out, {{"d", o.d}, {"lift", o.lift}, {"value", r.value.str()}, {"graph_count", r.graph_count}, {"seeds", r.seeds}});
  return Ok;
}

int cmd_vanishing(const Options& o, std::ostream& out) {
  require_json(o);
  const auto rep = gw::vanishing_scan(o.n, o.dmax, o.marks < 0 ? 3 : o.marks, invariant_options(o));
  emit(out, gw::to_json(rep));
  if (!rep.all_zero() || !rep.full_zero_incidence()) throw InternalError("vanishing scan found a nonzero row");
  return Ok;
}

int cmd_ruan_triple(const Options& o, std::ostream& out) {
  require_json(o);
  const auto rep = ruan::ruan_collapse(o.n, o.dmax, invariant_options(o));
  emit(out, ruan::to_json(rep));
  return rep.collapsed() ? Ok : InternalFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact Chow-ring and torus-localization computations for Mukai flops", "flopgw"};
  app.require_subcommand(1);

  auto add_seeds = [&](CLI::App* s) {
    s->add_option("--seeds", o.seeds, "comma-separated weight seeds (at least two)")->delimiter(',');
    s->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--max-graphs", o.max_graphs, "cap on the number of fixed graphs");
    s->add_option("--max-vertices", o.max_vertices, "cap on vertices per graph");
  };
  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* chow_cmd = app.add_subcommand("chow-verify", "check ring properties and the flop identities");
  chow_cmd->add_option("--nmax", o.nmax, "largest n to check");
  add_format(chow_cmd);

  auto* flop_cmd = app.add_subcommand("flop-map", "image of [P^k] under the flop correspondence");
  flop_cmd->add_option("--n", o.n, "dimension of the flopped P^n")->required();
  flop_cmd->add_option("--class", o.cls, "cycle P<k>; omit for the whole table");
  flop_cmd->add_option("--convention", o.convention, "self-intersection convention")->check(CLI::IsMember({"paper", "chern"}));
  add_format(flop_cmd);

  auto* graphs_cmd = app.add_subcommand("loc-graphs", "list fixed graphs of M_{0,k}(P^n, d)");
  graphs_cmd->add_option("--n", o.n)->required();
  graphs_cmd->add_option("--d", o.d)->required();
  graphs_cmd->add_option("--marks", o.marks, "number of marked points");
  graphs_cmd->add_option("--max-graphs", o.max_graphs);
  graphs_cmd->add_option("--max-vertices", o.max_vertices);
  add_format(graphs_cmd);

  auto* inv_cmd = app.add_subcommand("loc-invariant", "genus-0 invariant by localization");
  inv_cmd->add_option("--n", o.n);
  inv_cmd->add_option("--d", o.d);
  inv_cmd->add_option("--marks", o.marks);
  inv_cmd->add_option("--insertions", o.insertions, "comma-separated hyperplane powers")->delimiter(',');
  inv_cmd->add_option("--obstruction", o.obstruction, "none, cotangent or linesum:a1,a2,...");
  inv_cmd->add_option("--lift", o.lift, "lift of line bundle summands")->check(CLI::IsMember({"standard", "antidiagonal"}));
  inv_cmd->add_option("--query", o.query, "JSON query file (overrides the other query flags)");
  inv_cmd->add_option("--trace", o.trace, "write per-graph contributions as CSV");
  add_seeds(inv_cmd);
  add_format(inv_cmd);

  auto* mc_cmd = app.add_subcommand("mcover", "multiple-cover contribution of a (-1,-1) curve");
  mc_cmd->add_option("--d", o.d)->required();
  mc_cmd->add_option("--lift", o.lift)->check(CLI::IsMember({"standard", "antidiagonal"}));
  add_seeds(mc_cmd);
  add_format(mc_cmd);

  auto* van_cmd = app.add_subcommand("vanishing", "scan three-point invariants against the cotangent obstruction");
  van_cmd->add_option("--n", o.n)->required();
  van_cmd->add_option("--dmax", o.dmax);
  van_cmd->add_option("--marks", o.marks);
  add_seeds(van_cmd);
  add_format(van_cmd);

  auto* ruan_cmd = app.add_subcommand("ruan-triple", "compare corrected and ordinary triple products");
  ruan_cmd->add_option("--n", o.n);
  ruan_cmd->add_option("--dmax", o.dmax);
  add_seeds(ruan_cmd);
  add_format(ruan_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, err, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, err, err);
  } catch (const CLI::ParseError& e) {
    emit(out, error_object("UsageError", e.what()));
    return ValidationFailure;
  }

  try {
    if (chow_cmd->parsed()) return cmd_chow_verify(o, out);
    if (flop_cmd->parsed()) return cmd_flop_map(o, out);
    if (graphs_cmd->parsed()) return cmd_loc_graphs(o, out);
    if (inv_cmd->parsed()) return cmd_loc_invariant(o, out);
    if (mc_cmd->parsed()) return cmd_mcover(o, out);
    if (van_cmd->parsed()) return cmd_vanishing(o, out);
    if (ruan_cmd->parsed()) return cmd_ruan_triple(o, out);
  } catch (const SeedDisagreement& e) {
    emit(out, error_object(e.kind(), e.what()));
    return InternalFailure;
  } catch (const GenericityFailure& e) {
    emit(out, error_object(e.kind(), e.what()));
    return InternalFailure;
  } catch (const Error& e) {
    emit(out, error_object(e.kind(), e.what()));
    return ValidationFailure;
  } catch (const InternalError& e) {
    emit(out, error_object("InternalError", e.what()));
    return InternalFailure;
  } catch (const std::invalid_argument& e) {
    emit(out, error_object("InvalidArgument", e.what()));
    return ValidationFailure;
  } catch (const std::out_of_range& e) {
    emit(out, error_object("InvalidArgument", e.what()));
    return ValidationFailure;
  } catch (const std::exception& e) {
    emit(out, error_object("InternalError", e.what()));
    return InternalFailure;
  }
  return InternalFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"flopgw"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace flopgw::cli
