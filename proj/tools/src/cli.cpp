#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "routecog/choice.hpp"
#include "routecog/config.hpp"
#include "routecog/error.hpp"
#include "routecog/output.hpp"
#include "routecog/routing.hpp"

namespace routecog::cli {

namespace {

namespace fs = std::filesystem;

struct Inputs {
  std::string network_path;
  std::string od_path;
  std::string config_path;
  std::string library_path;
};

// Flag overrides for run/compare; an option only applies when given.
struct Overrides {
  std::string mode, cognition, model, averaging;
  double sensitivity = 0.0, epsilon = 0.0;
  std::size_t k_routes = 0, max_iter = 0;
  std::uint64_t seed = 0;
  CLI::Option *o_mode = nullptr, *o_cognition = nullptr, *o_model = nullptr,
              *o_averaging = nullptr, *o_sensitivity = nullptr, *o_epsilon = nullptr,
              *o_k = nullptr, *o_max_iter = nullptr, *o_seed = nullptr;
};

void add_network_option(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--network", in.network_path, "network JSON document (default: bundled fixture)");
}

void add_run_options(CLI::App* cmd, Inputs& in, Overrides& o, bool with_cognition) {
  add_network_option(cmd, in);
  cmd->add_option("--od", in.od_path, "OD demand file (default: bundled flat-time table)");
  cmd->add_option("--config", in.config_path, "JSON run configuration; flags win on conflict");
  o.o_mode = cmd->add_option("--mode", o.mode, "demand regime")
                 ->check(CLI::IsMember({"flat", "peak"}));
  if (with_cognition) {
    o.o_cognition = cmd->add_option("--cognition", o.cognition, "feature library on or off")
                        ->check(CLI::IsMember({"on", "off"}));
  }
  o.o_model = cmd->add_option("--model", o.model, "choice model")
                  ->check(CLI::IsMember({"logit", "kirchhoff"}));
  o.o_sensitivity = cmd->add_option("--sensitivity", o.sensitivity, "mu (logit) or k (kirchhoff)");
  o.o_k = cmd->add_option("--k-routes", o.k_routes, "candidate routes per OD pair")
              ->check(CLI::PositiveNumber);
  o.o_seed = cmd->add_option("--seed", o.seed, "random seed");
  o.o_max_iter = cmd->add_option("--max-iter", o.max_iter, "iteration cap")
                     ->check(CLI::PositiveNumber);
  o.o_epsilon = cmd->add_option("--epsilon", o.epsilon, "relative-change convergence threshold");
  o.o_averaging = cmd->add_option("--averaging", o.averaging, "volume blending")
                      ->check(CLI::IsMember({"none", "successive"}));
}

Network load_network_input(const Inputs& in) {
  return in.network_path.empty() ? fixture_network() : load_network(read_file(in.network_path));
}

ODMatrix load_od_input(const Inputs& in) {
  return in.od_path.empty() ? flat_time_od() : parse_od(read_file(in.od_path));
}

SimulationConfig build_config(const Inputs& in, const Overrides& o) {
  SimulationConfig c =
      in.config_path.empty() ? default_config() : parse_config(read_file(in.config_path));
  if (o.o_mode && *o.o_mode) c.mode = *parse_demand_mode(o.mode);
  if (o.o_cognition && *o.o_cognition) c.cognition = o.cognition == "on";
  if (o.o_model && *o.o_model) c.choice.model = *parse_choice_model(o.model);
  if (o.o_sensitivity && *o.o_sensitivity) c.choice.sensitivity = o.sensitivity;
  if (o.o_k && *o.o_k) c.k_routes = o.k_routes;
  if (o.o_seed && *o.o_seed) c.seed = o.seed;
  if (o.o_max_iter && *o.o_max_iter) c.max_iterations = o.max_iter;
  if (o.o_epsilon && *o.o_epsilon) c.epsilon = o.epsilon;
  if (o.o_averaging && *o.o_averaging) c.averaging = *parse_averaging(o.averaging);
  validate(c);
  return c;
}

std::vector<double> parse_costs(const std::string& text) {
  std::vector<double> costs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string cell = text.substr(pos, comma - pos);
    cell.erase(0, cell.find_first_not_of(' '));
    cell.erase(cell.find_last_not_of(' ') + 1);
    double value = 0.0;
    auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc{} || end != cell.data() + cell.size())
      throw InputError("--costs: '" + cell + "' is not a number");
    costs.push_back(value);
    pos = comma + 1;
  }
  return costs;
}

std::string format_probabilities(std::span<const double> p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p[i]);
    if (i) s += ", ";
    s += buf;
  }
  return s;
}

ZoneIndex zone_arg(const Network& net, const std::string& id, const char* flag) {
  auto z = net.find_zone(id);
  if (!z) throw InputError(std::string(flag) + ": unknown zone '" + id + "'");
  return *z;
}

// Creates the output directory only once everything to be written exists.
void write_outputs(const std::string& dir,
                   const std::vector<std::pair<std::string, std::string>>& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("--out: cannot create directory " + dir + ": " + ec.message());
  for (const auto& [name, content] : files) write_file_atomic(fs::path(dir) / name, content);
}

double mean_of(const std::vector<IterationReport>& reports, double IterationReport::*field) {
  if (reports.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : reports) sum += r.*field;
  return sum / static_cast<double>(reports.size());
}

int cmd_run(const Inputs& in, const Overrides& o, const std::string& out_dir, std::ostream& out) {
  const Network net = load_network_input(in);
  const ODMatrix od = load_od_input(in);
  const SimulationConfig config = build_config(in, o);
  FeatureLibrary library;
  if (!in.library_path.empty()) library = import_library(read_file(in.library_path), net);

  const AssignmentResult result = run_assignment(net, od, config, std::move(library));
  write_outputs(out_dir, {{"iterations.csv", iterations_csv(result.reports)},
                          {"flows.csv", flows_csv(net, result.route_flows)},
                          {"library.json", export_library(result.library, net)}});
  const auto& last = result.reports.back();
  out << (result.converged ? "converged" : "not converged") << " after " << last.iteration
      << " iterations; avg_travel_cost " << format_number(last.average_travel_cost) << "; wrote "
      << out_dir << "\n";
  return 0;
}

int cmd_validate(const Inputs& in, std::ostream& out) {
  std::vector<Diagnostic> diagnostics;
  Network net;
  if (in.network_path.empty()) {
    net = fixture_network();
  } else {
    net = parse_network(read_file(in.network_path));
  }
  diagnostics = validate_network(net);
  for (const auto& d : diagnostics) out << d.entity << ": " << d.rule << ": " << d.message << "\n";
  if (!diagnostics.empty()) return 1;
  out << "ok: " << net.zones().size() << " zones, " << net.nodes().size() << " nodes, "
      << net.links().size() << " links, " << net.edges().size() << " edges\n";
  return 0;
}

int cmd_routes(const Inputs& in, const Overrides& o, const std::string& origin,
               const std::string& dest, std::size_t k, const std::string& driver,
               std::ostream& out) {
  const Network net = load_network_input(in);
  const SimulationConfig config = build_config(in, o);
  const auto costs = edge_general_costs(net, free_flow_state(net).edge_travel_time,
                                        weights_for(config, driver));
  const auto routes = k_shortest_routes(
      net, {zone_arg(net, origin, "--origin"), zone_arg(net, dest, "--dest"), k, costs});
  std::vector<double> route_costs;
  for (const auto& r : routes) route_costs.push_back(route_general_cost(net, r, costs));
  const auto p = choice_probabilities(route_costs, config.choice);
  out << "rank,cost,probability,route_edge_ids\n";
  for (std::size_t i = 0; i < routes.size(); ++i) {
    out << i + 1 << ',' << format_number(route_costs[i]) << ',' << format_number(p[i]) << ',';
    const auto ids = route_edge_ids(net, routes[i]);
    for (std::size_t j = 0; j < ids.size(); ++j) out << (j ? ";" : "") << ids[j];
    out << "\n";
  }
  return 0;
}

int cmd_choice(const std::string& costs_text, double sensitivity, const std::string& model,
               std::ostream& out) {
  const auto costs = parse_costs(costs_text);
  if (!model.empty()) {
    const ChoiceParams params{*parse_choice_model(model), sensitivity};
    validate(params);
    out << format_probabilities(choice_probabilities(costs, params)) << "\n";
    return 0;
  }
  const ChoiceParams logit{ChoiceModel::logit, sensitivity};
  const ChoiceParams kirchhoff{ChoiceModel::kirchhoff, sensitivity};
  validate(logit);
  validate(kirchhoff);
  out << "logit: " << format_probabilities(choice_probabilities(costs, logit)) << "\n";
  out << "kirchhoff: " << format_probabilities(choice_probabilities(costs, kirchhoff)) << "\n";
  return 0;
}

int cmd_compare(const Inputs& in, const Overrides& o, std::size_t iterations,
                const std::string& out_dir, std::ostream& out) {
  const Network net = load_network_input(in);
  const ODMatrix od = load_od_input(in);
  const CompareResult r = run_compare(net, od, build_config(in, o), iterations);
  std::string summary;
  summary += "metric,cognition_on,cognition_off\n";
  summary += "iterations," + std::to_string(r.on.reports.size()) + "," +
             std::to_string(r.off.reports.size()) + "\n";
  summary += "converged_at," + std::to_string(r.on.converged_at) + "," +
             std::to_string(r.off.converged_at) + "\n";
  summary += "mean_avg_travel_cost," + format_number(r.on_mean_cost) + "," +
             format_number(r.off_mean_cost) + "\n";
  summary += "mean_cost_variance," + format_number(r.on_mean_variance) + "," +
             format_number(r.off_mean_variance) + "\n";
  summary += "route_search_cv_last" + std::to_string(r.search_window) + "," +
             format_number(r.on_search_cv) + ",\n";
  write_outputs(out_dir, {{"compare.csv", compare_csv(r)}, {"summary.csv", summary}});
  out << summary;
  return 0;
}

}  // namespace

CompareResult run_compare(const Network& network, const ODMatrix& od, SimulationConfig config,
                          std::size_t iterations, std::size_t window) {
  CompareResult r;
  config.max_iterations = iterations;
  config.stop_at_convergence = false;
  config.cognition = true;
  r.on = run_assignment(network, od, config);
  config.cognition = false;
  r.off = run_assignment(network, od, config);
  r.on_mean_cost = mean_of(r.on.reports, &IterationReport::average_travel_cost);
  r.off_mean_cost = mean_of(r.off.reports, &IterationReport::average_travel_cost);
  r.on_mean_variance = mean_of(r.on.reports, &IterationReport::cost_variance);
  r.off_mean_variance = mean_of(r.off.reports, &IterationReport::cost_variance);

  r.search_window = std::min(window, r.on.reports.size());
  const auto tail = std::span(r.on.reports).last(r.search_window);
  double mean = 0.0;
  for (const auto& rep : tail) mean += rep.route_search_time;
  mean /= static_cast<double>(tail.size());
  double spread = 0.0;
  for (const auto& rep : tail) spread += (rep.route_search_time - mean) * (rep.route_search_time - mean);
  r.on_search_cv = mean > 0.0 ? std::sqrt(spread / static_cast<double>(tail.size())) / mean : 0.0;
  return r;
}

std::string compare_csv(const CompareResult& r) {
  std::string s =
      "iteration,on_avg_travel_cost,off_avg_travel_cost,on_cost_variance,off_cost_variance,"
      "on_route_search_ms,off_route_search_ms,on_cache_hit_rate\n";
  const std::size_t n = std::max(r.on.reports.size(), r.off.reports.size());
  for (std::size_t i = 0; i < n; ++i) {
    const IterationReport* on = i < r.on.reports.size() ? &r.on.reports[i] : nullptr;
    const IterationReport* off = i < r.off.reports.size() ? &r.off.reports[i] : nullptr;
    auto cell = [](const IterationReport* rep, double v) { return rep ? format_number(v) : ""; };
    s += std::to_string(i + 1);
    s += ',' + cell(on, on ? on->average_travel_cost : 0);
    s += ',' + cell(off, off ? off->average_travel_cost : 0);
    s += ',' + cell(on, on ? on->cost_variance : 0);
    s += ',' + cell(off, off ? off->cost_variance : 0);
    s += ',' + cell(on, on ? on->route_search_time * 1000.0 : 0);
    s += ',' + cell(off, off ? off->route_search_time * 1000.0 : 0);
    s += ',' + cell(on, on ? on->cache_hit_rate : 0);
    s += '\n';
  }
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Route-choice assignment with a driver cognition library", "routecog"};
  app.require_subcommand(1);

  Inputs in;
  Overrides o;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "iterate the assignment to convergence");
  add_run_options(run, in, o, true);
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--library-in", in.library_path, "feature library to start from");

  auto* val = app.add_subcommand("validate", "print network diagnostics");
  add_network_option(val, in);

  std::string origin, dest, driver = "experienced";
  std::size_t k = 5;
  auto* routes = app.add_subcommand("routes", "print the priced route set of one OD pair");
  add_network_option(routes, in);
  routes->add_option("--config", in.config_path, "JSON run configuration");
  routes->add_option("--origin", origin, "origin zone id")->required();
  routes->add_option("--dest", dest, "destination zone id")->required();
  routes->add_option("--k", k, "number of routes")->check(CLI::PositiveNumber);
  routes->add_option("--class", driver, "driver class whose weights price the routes");
  Overrides orr;
  orr.o_model = routes->add_option("--model", orr.model, "choice model")
                    ->check(CLI::IsMember({"logit", "kirchhoff"}));
  orr.o_sensitivity = routes->add_option("--sensitivity", orr.sensitivity, "mu or k");

  std::string costs_text, model;
  double sensitivity = 3.0;
  auto* choice = app.add_subcommand("choice", "print route-choice probabilities for a cost list");
  choice->add_option("--costs", costs_text, "comma-separated route costs, e.g. 5,10")->required();
  choice->add_option("--sensitivity", sensitivity, "mu (logit) or k (kirchhoff)");
  choice->add_option("--model", model, "print only this model")
      ->check(CLI::IsMember({"logit", "kirchhoff"}));

  auto* compare = app.add_subcommand("compare", "run cognition on and off with one configuration");
  Overrides oc;
  add_run_options(compare, in, oc, false);
  std::size_t compare_iterations = 50;
  compare->add_option("--iterations", compare_iterations, "iterations per arm")
      ->check(CLI::PositiveNumber);
  compare->add_option("--out", out_dir, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(in, o, out_dir, out);
    if (*val) return cmd_validate(in, out);
    if (*routes) return cmd_routes(in, orr, origin, dest, k, driver, out);
    if (*choice) return cmd_choice(costs_text, sensitivity, model, out);
    if (*compare) return cmd_compare(in, oc, compare_iterations, out_dir, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace routecog::cli
