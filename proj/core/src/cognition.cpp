#include "routecog/cognition.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "routecog/error.hpp"

namespace routecog {

namespace {

template <class Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view text, const std::string_view (&names)[N]) {
  for (std::size_t i = 0; i < N; ++i)
    if (names[i] == text) return static_cast<Enum>(i);
  return std::nullopt;
}

constexpr std::string_view kAge[] = {"young", "middle", "senior"};
constexpr std::string_view kGender[] = {"female", "male"};
constexpr std::string_view kExperience[] = {"novice", "experienced"};
constexpr std::string_view kUrgency[] = {"low", "high"};
constexpr std::string_view kPhysiological[] = {"normal", "fatigued"};
constexpr std::string_view kWeather[] = {"clear", "rain"};
constexpr std::string_view kRoadCondition[] = {"normal", "incident"};

template <class T>
T require(std::optional<T> value, std::string_view field, std::string_view text) {
  if (!value)
    throw InputError("feature key: invalid " + std::string(field) + " '" + std::string(text) + "'");
  return *value;
}

}  // namespace

std::string_view to_string(AgeBand v) { return kAge[static_cast<int>(v)]; }
std::string_view to_string(Gender v) { return kGender[static_cast<int>(v)]; }
std::string_view to_string(ExperienceBand v) { return kExperience[static_cast<int>(v)]; }
std::string_view to_string(Urgency v) { return kUrgency[static_cast<int>(v)]; }
std::string_view to_string(Physiological v) { return kPhysiological[static_cast<int>(v)]; }
std::string_view to_string(Weather v) { return kWeather[static_cast<int>(v)]; }
std::string_view to_string(RoadCondition v) { return kRoadCondition[static_cast<int>(v)]; }

std::optional<AgeBand> parse_age_band(std::string_view t) { return parse_enum<AgeBand>(t, kAge); }
std::optional<Gender> parse_gender(std::string_view t) { return parse_enum<Gender>(t, kGender); }
std::optional<ExperienceBand> parse_experience_band(std::string_view t) {
  return parse_enum<ExperienceBand>(t, kExperience);
}
std::optional<Urgency> parse_urgency(std::string_view t) {
  return parse_enum<Urgency>(t, kUrgency);
}
std::optional<Physiological> parse_physiological(std::string_view t) {
  return parse_enum<Physiological>(t, kPhysiological);
}
std::optional<Weather> parse_weather(std::string_view t) {
  return parse_enum<Weather>(t, kWeather);
}
std::optional<RoadCondition> parse_road_condition(std::string_view t) {
  return parse_enum<RoadCondition>(t, kRoadCondition);
}

std::string to_string(const FeatureKey& key) {
  std::string s = key.origin_zone;
  for (std::string_view part :
       {to_string(key.static_attributes.age), to_string(key.static_attributes.gender),
        to_string(key.static_attributes.experience), std::string_view(key.temporary.dest_zone),
        to_string(key.temporary.urgency), to_string(key.temporary.physiological),
        to_string(key.environment.weather), to_string(key.environment.road_condition)}) {
    s += '|';
    s += part;
  }
  return s;
}

FeatureKey parse_feature_key(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t bar = text.find('|', pos);
    parts.push_back(text.substr(pos, bar == std::string_view::npos ? bar : bar - pos));
    if (bar == std::string_view::npos) break;
    pos = bar + 1;
  }
  if (parts.size() != 9)
    throw InputError("feature key '" + std::string(text) + "': expected 9 '|'-separated fields");
  if (parts[0].empty() || parts[4].empty())
    throw InputError("feature key '" + std::string(text) + "': empty zone id");
  FeatureKey key;
  key.origin_zone = std::string(parts[0]);
  key.static_attributes.age = require(parse_age_band(parts[1]), "age band", parts[1]);
  key.static_attributes.gender = require(parse_gender(parts[2]), "gender", parts[2]);
  key.static_attributes.experience =
      require(parse_experience_band(parts[3]), "experience band", parts[3]);
  key.temporary.dest_zone = std::string(parts[4]);
  key.temporary.urgency = require(parse_urgency(parts[5]), "urgency", parts[5]);
  key.temporary.physiological =
      require(parse_physiological(parts[6]), "physiological state", parts[6]);
  key.environment.weather = require(parse_weather(parts[7]), "weather", parts[7]);
  key.environment.road_condition =
      require(parse_road_condition(parts[8]), "road condition", parts[8]);
  return key;
}

std::string driver_class(const FeatureKey& key) {
  return std::string(to_string(key.static_attributes.experience));
}

// ---- library ------------------------------------------------------------------

const LibraryEntry* FeatureLibrary::find(const FeatureKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<LibraryEntry> FeatureLibrary::retrieve(const FeatureKey& key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  ++it->second.hits;
  return it->second;
}

StoreOutcome FeatureLibrary::evaluate_and_store(const FeatureKey& key, const Route& route,
                                                double realized_cost) {
  if (!(realized_cost > 0.0) || !std::isfinite(realized_cost))
    throw std::invalid_argument("evaluate_and_store: realized cost must be finite and > 0");
  auto [it, inserted] = entries_.try_emplace(key, LibraryEntry{route, realized_cost, 0});
  if (inserted) return StoreOutcome::inserted;
  if (realized_cost < it->second.score) {
    it->second.route = route;
    it->second.score = realized_cost;
    return StoreOutcome::replaced;
  }
  return StoreOutcome::kept;
}

// ---- cognition cycle ----------------------------------------------------------

FeatureKey perceive(const DriverPacket& packet) {
  return FeatureKey{packet.origin_zone, packet.static_attributes, packet.temporary,
                    packet.environment};
}

std::optional<LibraryEntry> retrieve(FeatureLibrary& library, const FeatureKey& key) {
  return library.retrieve(key);
}

Route reason(const FeatureKey& key, const ChoiceSet& candidates, const ChoiceParams& params,
             RandomStream& stream) {
  if (candidates.routes.empty())
    throw ChoiceError("no candidate routes for " + key.origin_zone + " -> " +
                      key.temporary.dest_zone);
  if (candidates.routes.size() != candidates.costs.size())
    throw ChoiceError("candidate routes and costs differ in length");
  const auto probabilities = choice_probabilities(candidates.costs, params);
  return candidates.routes[sample_route(probabilities, stream)];
}

TripPlan plan_trip(const DriverPacket& packet, FeatureLibrary& library,
                   const ChoiceSet& candidates, const ChoiceParams& params, RandomStream& stream) {
  TripPlan plan{perceive(packet), {}, false};
  if (auto entry = retrieve(library, plan.key)) {
    plan.route = std::move(entry->route);
    plan.from_library = true;
  } else {
    plan.route = reason(plan.key, candidates, params, stream);
  }
  return plan;
}

Route resense(DriverPacket& packet, const AttributeChange& change, FeatureLibrary& library,
              const ChoiceSet& candidates, const ChoiceParams& params, RandomStream& stream) {
  if (change.weather) packet.environment.weather = *change.weather;
  if (change.road_condition) packet.environment.road_condition = *change.road_condition;
  if (change.urgency) packet.temporary.urgency = *change.urgency;
  if (change.physiological) packet.temporary.physiological = *change.physiological;
  packet.chosen_route = plan_trip(packet, library, candidates, params, stream).route;
  return *packet.chosen_route;
}

StoreOutcome evaluate_and_store(FeatureLibrary& library, const FeatureKey& key, const Route& route,
                                double realized_cost) {
  return library.evaluate_and_store(key, route, realized_cost);
}

// ---- persistence --------------------------------------------------------------

std::string export_library(const FeatureLibrary& library, const Network& network) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [key, entry] : library.entries()) {
    nlohmann::ordered_json e;
    e["route"] = route_edge_ids(network, entry.route);
    e["score"] = entry.score;
    e["hits"] = entry.hits;
    doc[to_string(key)] = std::move(e);
  }
  return doc.dump(2) + "\n";
}

FeatureLibrary import_library(std::string_view json_text, const Network& network) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("library document: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("library document: expected an object");
  FeatureLibrary library;
  for (const auto& [text, value] : doc.items()) {
    const std::string where = "library document: entry '" + text + "'";
    FeatureKey key = parse_feature_key(text);
    if (!value.is_object() || value.size() != 3 || !value.contains("route") ||
        !value.contains("score") || !value.contains("hits")) {
      throw InputError(where + ": expected exactly the fields route, score, hits");
    }
    const auto& jr = value["route"];
    if (!jr.is_array() || jr.empty()) throw InputError(where + ": route must be a non-empty array");
    Route route;
    const auto origin = network.find_zone(key.origin_zone);
    const auto dest = network.find_zone(key.temporary.dest_zone);
    if (!origin || !dest) throw InputError(where + ": zone not in the network");
    route.origin_zone = *origin;
    route.dest_zone = *dest;
    for (const auto& id : jr) {
      if (!id.is_string()) throw InputError(where + ": route edge ids must be strings");
      auto e = network.find_edge(id.get<std::string>());
      if (!e) throw InputError(where + ": unknown edge '" + id.get<std::string>() + "'");
      route.edges.push_back(*e);
    }
    if (!validate_route(network, route).empty())
      throw InputError(where + ": route is not a loopless path between its zones");
    if (!value["score"].is_number() || !value["hits"].is_number_unsigned())
      throw InputError(where + ": score must be a number and hits a non-negative integer");
    const double score = value["score"].get<double>();
    if (!(score > 0.0) || !std::isfinite(score)) throw InputError(where + ": score must be > 0");
    library.restore(key, LibraryEntry{std::move(route), score, value["hits"].get<std::uint64_t>()});
  }
  return library;
}

}  // namespace routecog
