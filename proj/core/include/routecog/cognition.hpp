#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "routecog/choice.hpp"
#include "routecog/network.hpp"
#include "routecog/random.hpp"

namespace routecog {

// Discretized driver attributes. Continuous quantities (age, driving age)
// are binned so that the feature library can use exact-match lookup.
enum class AgeBand { young, middle, senior };
enum class Gender { female, male };
enum class ExperienceBand { novice, experienced };
enum class Urgency { low, high };
enum class Physiological { normal, fatigued };
enum class Weather { clear, rain };
enum class RoadCondition { normal, incident };

std::string_view to_string(AgeBand v);
std::string_view to_string(Gender v);
std::string_view to_string(ExperienceBand v);
std::string_view to_string(Urgency v);
std::string_view to_string(Physiological v);
std::string_view to_string(Weather v);
std::string_view to_string(RoadCondition v);

std::optional<AgeBand> parse_age_band(std::string_view text);
std::optional<Gender> parse_gender(std::string_view text);
std::optional<ExperienceBand> parse_experience_band(std::string_view text);
std::optional<Urgency> parse_urgency(std::string_view text);
std::optional<Physiological> parse_physiological(std::string_view text);
std::optional<Weather> parse_weather(std::string_view text);
std::optional<RoadCondition> parse_road_condition(std::string_view text);

struct StaticAttributes {
  AgeBand age = AgeBand::middle;
  Gender gender = Gender::female;
  ExperienceBand experience = ExperienceBand::experienced;

  friend auto operator<=>(const StaticAttributes&, const StaticAttributes&) = default;
};

struct TemporaryAttributes {
  std::string dest_zone;
  Urgency urgency = Urgency::low;
  Physiological physiological = Physiological::normal;

  friend auto operator<=>(const TemporaryAttributes&, const TemporaryAttributes&) = default;
};

struct EnvironmentState {
  Weather weather = Weather::clear;
  RoadCondition road_condition = RoadCondition::normal;

  friend auto operator<=>(const EnvironmentState&, const EnvironmentState&) = default;
};

/// Canonical library key. Field order is fixed and defines both the
/// comparison order and the canonical string form.
struct FeatureKey {
  std::string origin_zone;
  StaticAttributes static_attributes;
  TemporaryAttributes temporary;
  EnvironmentState environment;

  friend auto operator<=>(const FeatureKey&, const FeatureKey&) = default;
};

/// "Z1|young|female|novice|Z11|low|normal|clear|normal"
std::string to_string(const FeatureKey& key);
/// Inverse of to_string; throws InputError on malformed text.
FeatureKey parse_feature_key(std::string_view text);

/// Weights class used to price routes for this key.
std::string driver_class(const FeatureKey& key);

struct LibraryEntry {
  Route route;
  double score = 0.0;  // realized general cost when last evaluated
  std::uint64_t hits = 0;

  friend bool operator==(const LibraryEntry&, const LibraryEntry&) = default;
};

enum class StoreOutcome { inserted, replaced, kept };

/// Persistent map from feature sets to remembered routes. Scores only ever
/// decrease for a given key.
class FeatureLibrary {
 public:
  const std::map<FeatureKey, LibraryEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const LibraryEntry* find(const FeatureKey& key) const;

  /// Lookup that counts a hit on presence.
  std::optional<LibraryEntry> retrieve(const FeatureKey& key);

  /// Inserts when absent, replaces when realized_cost beats the stored
  /// score, otherwise keeps the incumbent (ties included).
  StoreOutcome evaluate_and_store(const FeatureKey& key, const Route& route, double realized_cost);

  /// Puts an entry in verbatim (import path).
  void restore(const FeatureKey& key, LibraryEntry entry) { entries_[key] = std::move(entry); }

  friend bool operator==(const FeatureLibrary&, const FeatureLibrary&) = default;

 private:
  std::map<FeatureKey, LibraryEntry> entries_;
};

/// A group of drivers sharing one feature set and one OD pair, simulated as
/// a unit.
struct DriverPacket {
  std::size_t id = 0;
  std::string origin_zone;
  StaticAttributes static_attributes;
  TemporaryAttributes temporary;
  EnvironmentState environment;
  double demand = 0.0;  // veh/h
  std::optional<Route> chosen_route;
};

/// Candidate routes of one OD pair priced for one driver class.
struct ChoiceSet {
  std::vector<Route> routes;
  std::vector<double> costs;
};

/// Changes sensed at a work-period boundary. Unset fields stay as they are.
struct AttributeChange {
  std::optional<Weather> weather;
  std::optional<RoadCondition> road_condition;
  std::optional<Urgency> urgency;
  std::optional<Physiological> physiological;

  bool empty() const { return !weather && !road_condition && !urgency && !physiological; }
};

struct TripPlan {
  FeatureKey key;
  Route route;
  bool from_library = false;
};

FeatureKey perceive(const DriverPacket& packet);

std::optional<LibraryEntry> retrieve(FeatureLibrary& library, const FeatureKey& key);

/// Samples a route from the candidates with the configured choice model.
/// Throws ChoiceError on an empty or inconsistent candidate set.
Route reason(const FeatureKey& key, const ChoiceSet& candidates, const ChoiceParams& params,
             RandomStream& stream);

/// perceive -> retrieve -> reason on a miss.
TripPlan plan_trip(const DriverPacket& packet, FeatureLibrary& library,
                   const ChoiceSet& candidates, const ChoiceParams& params, RandomStream& stream);

/// Applies the sensed change to the packet and plans again.
Route resense(DriverPacket& packet, const AttributeChange& change, FeatureLibrary& library,
              const ChoiceSet& candidates, const ChoiceParams& params, RandomStream& stream);

StoreOutcome evaluate_and_store(FeatureLibrary& library, const FeatureKey& key,
                                const Route& route, double realized_cost);

/// JSON export: {"<canonical key>": {"route": [edge ids], "score": x, "hits": n}, ...}
/// in key order.
std::string export_library(const FeatureLibrary& library, const Network& network);
/// Inverse of export_library; routes are resolved and checked against the
/// network. Throws InputError on malformed documents.
FeatureLibrary import_library(std::string_view json_text, const Network& network);

}  // namespace routecog
