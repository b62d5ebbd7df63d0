#include "caret/strategy.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "caret/errors.hpp"
#include "caret/text.hpp"

namespace caret {

namespace {

// First whitespace-delimited word and the trimmed remainder.
std::pair<std::string, std::string> keyword_and_rest(const std::string& text) {
  const std::string_view t = trim(text);
  std::size_t i = 0;
  while (i < t.size() && t[i] != ' ' && t[i] != '\t') ++i;
  return {std::string(t.substr(0, i)), std::string(trim(t.substr(i)))};
}

std::vector<std::string> comma_items(const std::string& payload, const char* what) {
  std::vector<std::string> items;
  for (const auto& raw : split(payload, ',')) {
    const auto item = trim(raw);
    if (item.empty()) throw ParseError(std::string("empty ") + what + " entry in '" + payload + "'");
    items.emplace_back(item);
  }
  return items;
}

}  // namespace

SelectionStrategy parse_selection(const std::string& text) {
  const auto [keyword, rest] = keyword_and_rest(text);
  SelectionStrategy s;
  if (keyword == "ALL") {
    if (!rest.empty()) throw ParseError("unexpected token after ALL: '" + rest + "'");
    s.kind = SelectionStrategy::Kind::kAll;
    return s;
  }
  if (keyword == "LIST") {
    if (rest.empty()) throw ParseError("LIST requires at least one id");
    s.kind = SelectionStrategy::Kind::kExplicit;
    s.ids = comma_items(rest, "LIST");
    std::set<std::string> seen;
    for (const auto& id : s.ids) {
      if (!seen.insert(id).second) throw ParseError("duplicate id in LIST: '" + id + "'");
    }
    return s;
  }
  if (keyword == "HIGH") {
    const auto tokens = split_whitespace(rest);
    if (tokens.size() != 2 || tokens[0] != "TRAFFIC") {
      throw ParseError("expected 'HIGH TRAFFIC <percent>', got '" + std::string(trim(text)) + "'");
    }
    const auto percent = to_int(tokens[1]);
    if (!percent) throw ParseError("HIGH TRAFFIC percent must be an integer, got '" + tokens[1] + "'");
    if (*percent <= 0 || *percent > 100) {
      throw ParseError("HIGH TRAFFIC percent must be in (0,100], got " + tokens[1]);
    }
    s.kind = SelectionStrategy::Kind::kHighTraffic;
    s.percent = *percent;
    return s;
  }
  throw ParseError("unknown selection keyword '" + keyword + "'");
}

PlacementStrategy parse_placement(const std::string& text) {
  const auto [keyword, rest] = keyword_and_rest(text);
  PlacementStrategy p;
  if (keyword == "CENTRAL" || keyword == "DECENTRAL") {
    if (!rest.empty()) throw ParseError("unexpected token after " + keyword + ": '" + rest + "'");
    p.kind = keyword == "CENTRAL" ? PlacementStrategy::Kind::kCentral
                                  : PlacementStrategy::Kind::kDecentral;
    return p;
  }
  if (keyword == "MAP") {
    if (rest.empty()) throw ParseError("MAP requires at least one app=bs entry");
    p.kind = PlacementStrategy::Kind::kExplicit;
    for (const auto& entry : comma_items(rest, "MAP")) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
        throw ParseError("MAP entries must look like app=bs, got '" + entry + "'");
      }
      const std::string app(trim(entry.substr(0, eq)));
      const std::string bs(trim(entry.substr(eq + 1)));
      if (!p.assignments.emplace(app, bs).second) {
        throw ParseError("duplicate app in MAP: '" + app + "'");
      }
    }
    return p;
  }
  throw ParseError("unknown placement keyword '" + keyword + "'");
}

LinkStrategy parse_link(const std::string& text) {
  const auto [keyword, rest] = keyword_and_rest(text);
  LinkStrategy l;
  if (keyword == "MST") {
    if (!rest.empty()) throw ParseError("unexpected token after MST: '" + rest + "'");
    l.kind = LinkStrategy::Kind::kMst;
    return l;
  }
  if (keyword == "RADIUS") {
    const auto radius = to_double(rest);
    if (!radius) throw ParseError("RADIUS requires a numeric value in meters, got '" + rest + "'");
    if (!(*radius > 0.0)) throw ParseError("RADIUS must be positive, got " + rest);
    l.kind = LinkStrategy::Kind::kRadius;
    l.radius_m = *radius;
    return l;
  }
  if (keyword == "LINKS") {
    if (rest.empty()) throw ParseError("LINKS requires at least one a-b pair");
    l.kind = LinkStrategy::Kind::kExplicit;
    for (const auto& entry : comma_items(rest, "LINKS")) {
      const auto dash = entry.find('-');
      if (dash == std::string::npos || dash == 0 || dash + 1 == entry.size()) {
        throw ParseError("LINKS entries must look like a-b, got '" + entry + "'");
      }
      std::string a(trim(entry.substr(0, dash)));
      std::string b(trim(entry.substr(dash + 1)));
      if (a == b) throw ParseError("LINKS endpoints must differ, got '" + entry + "'");
      l.links.emplace_back(std::move(a), std::move(b));
    }
    return l;
  }
  throw ParseError("unknown link keyword '" + keyword + "'");
}

RoutingStrategy parse_routing(const std::string& text) {
  const auto tokens = split_whitespace(std::string(trim(text)));
  if (tokens.size() == 2 && tokens[0] == "MIN" && tokens[1] == "DISTANCE") {
    return RoutingStrategy{};
  }
  throw ParseError("unknown routing strategy '" + std::string(trim(text)) + "'");
}

ScenarioSpec load_scenario_file(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ParseError(path.string() + ": scenario must be a JSON object");

  static const char* kKeys[] = {"apps",        "base_stations", "edge_servers",
                                "app_servers", "links",         "routing"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw ParseError(path.string() + ": unknown scenario key '" + key + "'");
    }
  }
  ScenarioSpec spec;
  auto fetch = [&](const char* key) -> std::string {
    if (!doc.contains(key)) throw ParseError(path.string() + ": missing scenario key '" + std::string(key) + "'");
    if (!doc[key].is_string()) throw ParseError(path.string() + ": scenario key '" + std::string(key) + "' must be a string");
    return doc[key].get<std::string>();
  };
  spec.apps = fetch("apps");
  spec.base_stations = fetch("base_stations");
  spec.edge_servers = fetch("edge_servers");
  spec.app_servers = fetch("app_servers");
  spec.links = fetch("links");
  spec.routing = fetch("routing");
  return spec;
}

ScenarioConfig parse_scenario(const ScenarioSpec& spec) {
  ScenarioConfig config;
  config.apps = parse_selection(spec.apps);
  config.base_stations = parse_selection(spec.base_stations);
  config.edge_servers = parse_selection(spec.edge_servers);
  config.app_servers = parse_placement(spec.app_servers);
  config.links = parse_link(spec.links);
  config.routing = parse_routing(spec.routing);
  return config;
}

std::vector<std::string> resolve_selection(const SelectionStrategy& strategy,
                                           const std::map<std::string, std::uint64_t>& totals,
                                           const std::vector<std::string>& universe) {
  if (universe.empty()) throw ConfigError("selection universe is empty");
  std::vector<std::string> sorted(universe);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::string> result;
  switch (strategy.kind) {
    case SelectionStrategy::Kind::kAll:
      result = sorted;
      break;
    case SelectionStrategy::Kind::kExplicit: {
      for (const auto& id : strategy.ids) {
        if (!std::binary_search(sorted.begin(), sorted.end(), id)) {
          throw ConfigError("selected id '" + id + "' is not in the universe");
        }
      }
      result = strategy.ids;
      std::sort(result.begin(), result.end());
      break;
    }
    case SelectionStrategy::Kind::kHighTraffic: {
      const std::size_t n = sorted.size();
      const std::size_t count =
          (static_cast<std::size_t>(strategy.percent) * n + 99) / 100;  // ceil(p*n/100)
      auto total_of = [&](const std::string& id) -> std::uint64_t {
        const auto it = totals.find(id);
        return it == totals.end() ? 0 : it->second;
      };
      std::vector<std::string> ranked(sorted);
      std::sort(ranked.begin(), ranked.end(), [&](const std::string& a, const std::string& b) {
        const auto ta = total_of(a);
        const auto tb = total_of(b);
        if (ta != tb) return ta > tb;
        return a < b;
      });
      ranked.resize(count);
      std::sort(ranked.begin(), ranked.end());
      result = std::move(ranked);
      break;
    }
  }
  if (result.empty()) throw ConfigError("selection resolved to an empty set");
  return result;
}

std::map<std::string, std::string> place_servers(
    const PlacementStrategy& placement,
    const std::map<std::pair<std::string, std::string>, std::uint64_t>& per_station_app_totals,
    const std::set<std::string>& edge_set, const std::set<std::string>& apps) {
  if (edge_set.empty()) throw ConfigError("placement requires a non-empty edge set");
  if (apps.empty()) throw ConfigError("placement requires a non-empty app set");

  auto volume = [&](const std::string& station, const std::string& app) -> std::uint64_t {
    const auto it = per_station_app_totals.find({station, app});
    return it == per_station_app_totals.end() ? 0 : it->second;
  };

  std::map<std::string, std::string> result;
  switch (placement.kind) {
    case PlacementStrategy::Kind::kCentral: {
      std::string best;
      std::uint64_t best_total = 0;
      bool first = true;
      // Edge set iterates in id order, so the first maximum wins ties.
      for (const auto& station : edge_set) {
        std::uint64_t total = 0;
        for (const auto& app : apps) total += volume(station, app);
        if (first || total > best_total) {
          best = station;
          best_total = total;
          first = false;
        }
      }
      for (const auto& app : apps) result.emplace(app, best);
      break;
    }
    case PlacementStrategy::Kind::kDecentral: {
      for (const auto& app : apps) {
        std::string best;
        std::uint64_t best_total = 0;
        bool first = true;
        for (const auto& station : edge_set) {
          const std::uint64_t total = volume(station, app);
          if (first || total > best_total) {
            best = station;
            best_total = total;
            first = false;
          }
        }
        result.emplace(app, best);
      }
      break;
    }
    case PlacementStrategy::Kind::kExplicit: {
      for (const auto& app : apps) {
        const auto it = placement.assignments.find(app);
        if (it == placement.assignments.end()) {
          throw ConfigError("placement map does not cover app '" + app + "'");
        }
        if (!edge_set.contains(it->second)) {
          throw ConfigError("placement target '" + it->second + "' for app '" + app +
                            "' is not edge-capable");
        }
        result.emplace(app, it->second);
      }
      for (const auto& [app, station] : placement.assignments) {
        if (!apps.contains(app)) {
          throw ConfigError("placement map names unavailable app '" + app + "'");
        }
      }
      break;
    }
  }
  return result;
}

}  // namespace caret
