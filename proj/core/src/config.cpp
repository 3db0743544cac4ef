#include "routecog/config.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "routecog/error.hpp"

namespace routecog {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

void only_keys(const json& obj, const std::string& where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where, "expected a finite number");
  return d;
}

std::size_t count(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) fail(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

template <class T>
T choose(std::optional<T> parsed, const json& v, const std::string& where, std::string_view options) {
  if (!parsed) fail(where, "expected one of " + std::string(options) + ", got '" + v.get<std::string>() + "'");
  return *parsed;
}

}  // namespace

SimulationConfig parse_config(std::string_view json_text, SimulationConfig base) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  only_keys(doc, "",
            {"seed", "choice", "weights", "volume_delay", "k_routes", "work_period",
             "max_iterations", "epsilon", "averaging", "mode", "peak_factor", "cognition",
             "packets_per_od", "environment", "events"});
  SimulationConfig c = std::move(base);

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("choice")) {
    const auto& ch = doc["choice"];
    only_keys(ch, "choice", {"model", "sensitivity"});
    if (ch.contains("model")) {
      c.choice.model = choose(parse_choice_model(text(ch["model"], "choice.model")), ch["model"],
                              "choice.model", "logit|kirchhoff");
    }
    if (ch.contains("sensitivity")) c.choice.sensitivity = number(ch["sensitivity"], "choice.sensitivity");
  }
  if (doc.contains("weights")) {
    const auto& ws = doc["weights"];
    if (!ws.is_object() || ws.empty()) fail("weights", "expected a non-empty object");
    c.weights.clear();
    for (const auto& [cls, w] : ws.items()) {
      const std::string where = "weights." + cls;
      only_keys(w, where, {"alpha", "beta", "gamma", "delta"});
      CostWeights cw{cls, 0.0, 0.0, 0.0, 0.0};
      if (w.contains("alpha")) cw.alpha = number(w["alpha"], where + ".alpha");
      if (w.contains("beta")) cw.beta = number(w["beta"], where + ".beta");
      if (w.contains("gamma")) cw.gamma = number(w["gamma"], where + ".gamma");
      if (w.contains("delta")) cw.delta = number(w["delta"], where + ".delta");
      c.weights[cls] = cw;
    }
  }
  if (doc.contains("volume_delay")) {
    const auto& vd = doc["volume_delay"];
    only_keys(vd, "volume_delay", {"a", "b"});
    if (vd.contains("a")) c.volume_delay.a = number(vd["a"], "volume_delay.a");
    if (vd.contains("b")) c.volume_delay.b = number(vd["b"], "volume_delay.b");
  }
  if (doc.contains("k_routes")) c.k_routes = count(doc["k_routes"], "k_routes");
  if (doc.contains("work_period")) c.work_period = number(doc["work_period"], "work_period");
  if (doc.contains("max_iterations")) c.max_iterations = count(doc["max_iterations"], "max_iterations");
  if (doc.contains("epsilon")) c.epsilon = number(doc["epsilon"], "epsilon");
  if (doc.contains("averaging")) {
    c.averaging = choose(parse_averaging(text(doc["averaging"], "averaging")), doc["averaging"],
                         "averaging", "none|successive");
  }
  if (doc.contains("mode")) {
    c.mode = choose(parse_demand_mode(text(doc["mode"], "mode")), doc["mode"], "mode", "flat|peak");
  }
  if (doc.contains("peak_factor")) c.peak_factor = number(doc["peak_factor"], "peak_factor");
  if (doc.contains("cognition")) {
    const std::string v = text(doc["cognition"], "cognition");
    if (v != "on" && v != "off") fail("cognition", "expected one of on|off, got '" + v + "'");
    c.cognition = v == "on";
  }
  if (doc.contains("packets_per_od")) c.packets_per_od = count(doc["packets_per_od"], "packets_per_od");
  if (doc.contains("environment")) {
    const auto& env = doc["environment"];
    only_keys(env, "environment", {"weather", "road_condition"});
    if (env.contains("weather")) {
      c.environment.weather = choose(parse_weather(text(env["weather"], "environment.weather")),
                                     env["weather"], "environment.weather", "clear|rain");
    }
    if (env.contains("road_condition")) {
      c.environment.road_condition =
          choose(parse_road_condition(text(env["road_condition"], "environment.road_condition")),
                 env["road_condition"], "environment.road_condition", "normal|incident");
    }
  }
  if (doc.contains("events")) {
    const auto& evs = doc["events"];
    if (!evs.is_array()) fail("events", "expected an array");
    c.events.clear();
    for (std::size_t i = 0; i < evs.size(); ++i) {
      const std::string where = "events[" + std::to_string(i) + "]";
      const auto& ev = evs[i];
      only_keys(ev, where, {"time", "weather", "road_condition", "incident_edges", "incident_factor"});
      if (!ev.contains("time")) fail(where + ".time", "required");
      EnvironmentEvent e;
      e.time = number(ev["time"], where + ".time");
      if (ev.contains("weather")) {
        e.weather = choose(parse_weather(text(ev["weather"], where + ".weather")), ev["weather"],
                           where + ".weather", "clear|rain");
      }
      if (ev.contains("road_condition")) {
        e.road_condition =
            choose(parse_road_condition(text(ev["road_condition"], where + ".road_condition")),
                   ev["road_condition"], where + ".road_condition", "normal|incident");
      }
      if (ev.contains("incident_edges")) {
        const auto& ids = ev["incident_edges"];
        if (!ids.is_array()) fail(where + ".incident_edges", "expected an array of edge ids");
        for (const auto& id : ids) e.incident_edges.push_back(text(id, where + ".incident_edges"));
      }
      if (ev.contains("incident_factor"))
        e.incident_factor = number(ev["incident_factor"], where + ".incident_factor");
      c.events.push_back(std::move(e));
    }
  }
  validate(c);
  return c;
}

std::string serialize_config(const SimulationConfig& c) {
  nlohmann::ordered_json doc;
  doc["seed"] = c.seed;
  doc["choice"] = {{"model", to_string(c.choice.model)}, {"sensitivity", c.choice.sensitivity}};
  doc["weights"] = nlohmann::ordered_json::object();
  for (const auto& [cls, w] : c.weights) {
    doc["weights"][cls] = {{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}, {"delta", w.delta}};
  }
  doc["volume_delay"] = {{"a", c.volume_delay.a}, {"b", c.volume_delay.b}};
  doc["k_routes"] = c.k_routes;
  doc["work_period"] = c.work_period;
  doc["max_iterations"] = c.max_iterations;
  doc["epsilon"] = c.epsilon;
  doc["averaging"] = to_string(c.averaging);
  doc["mode"] = to_string(c.mode);
  doc["peak_factor"] = c.peak_factor;
  doc["cognition"] = c.cognition ? "on" : "off";
  doc["packets_per_od"] = c.packets_per_od;
  doc["environment"] = {{"weather", to_string(c.environment.weather)},
                        {"road_condition", to_string(c.environment.road_condition)}};
  doc["events"] = nlohmann::ordered_json::array();
  for (const auto& e : c.events) {
    nlohmann::ordered_json ev;
    ev["time"] = e.time;
    if (e.weather) ev["weather"] = to_string(*e.weather);
    if (e.road_condition) ev["road_condition"] = to_string(*e.road_condition);
    ev["incident_edges"] = e.incident_edges;
    ev["incident_factor"] = e.incident_factor;
    doc["events"].push_back(std::move(ev));
  }
  return doc.dump(2) + "\n";
}

}  // namespace routecog
