#include "cacheleak/statesets.hpp"

#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "cacheleak/mealy.hpp"

namespace cacheleak {

namespace {

void require_fillers(int assoc, const BlockUniverse& universe) {
    if (universe.filler_count() < assoc)
        throw ConfigError("initial state needs " + std::to_string(assoc) + " filler blocks, have " +
                          std::to_string(universe.filler_count()));
}

}  // namespace

std::string_view initial_state_name(InitialState s) {
    return s == InitialState::Filled ? "filled" : "empty";
}

CacheSetState initial_empty(int assoc, const BlockUniverse& universe) {
    require_fillers(assoc, universe);
    std::vector<Block> line = universe.filler_blocks();
    line.resize(static_cast<std::size_t>(assoc));
    return CacheSetState::from_line(line);
}

CacheSetState initial_filled(int assoc, const BlockUniverse& universe) {
    require_fillers(assoc, universe);
    const auto victims = universe.victim_blocks();
    const auto fillers = universe.filler_blocks();
    std::vector<Block> line;
    for (int i = 0; i < assoc && i < static_cast<int>(victims.size()); ++i)
        line.push_back(victims[static_cast<std::size_t>(i)]);
    for (int i = 0; static_cast<int>(line.size()) < assoc; ++i)
        line.push_back(fillers[static_cast<std::size_t>(i)]);
    return CacheSetState::from_line(line);
}

StateSet reachable_states(const CacheMachine& machine, const CacheSetState& start,
                          std::span<const Block> inputs, const ReachOptions& options) {
    for (Block b : inputs)
        if (!machine.universe().contains(b))
            throw ConfigError("reachable_states: input block outside the universe");

    std::unordered_set<CacheSetState, CacheSetStateHash> seen{start};
    std::deque<CacheSetState> frontier{start};
    while (!frontier.empty()) {
        CacheSetState current = frontier.front();
        frontier.pop_front();
        for (Block b : inputs) {
            CacheSetState next = machine.update(current, b);
            if (seen.insert(next).second) {
                if (seen.size() > options.max_states)
                    throw ConfigError("reachable_states: state-set cap of " +
                                      std::to_string(options.max_states) + " exceeded");
                frontier.push_back(std::move(next));
            }
        }
    }

    StateSet result{machine.policy(), machine.assoc(), machine.universe(), {}};
    result.states.assign(seen.begin(), seen.end());
    canonicalize(result.states);
    return result;
}

namespace {

constexpr int kFormatVersion = 1;

}  // namespace

void export_stateset(const StateSet& set, std::ostream& out) {
    nlohmann::json doc;
    doc["version"] = kFormatVersion;
    doc["policy"] = std::string(policy_name(set.policy));
    doc["assoc"] = set.assoc;
    auto names = [&set](const std::vector<Block>& blocks) {
        std::vector<std::string> out_names;
        for (Block b : blocks) out_names.emplace_back(set.universe.name(b));
        return out_names;
    };
    doc["victim_blocks"] = names(set.universe.victim_blocks());
    doc["filler_blocks"] = names(set.universe.filler_blocks());
    nlohmann::json states = nlohmann::json::array();
    std::vector<CacheSetState> ordered = set.states;
    canonicalize(ordered);
    for (const CacheSetState& s : ordered) {
        nlohmann::json line = nlohmann::json::array();
        for (int age = 0; age < s.assoc(); ++age)
            line.push_back(std::string(set.universe.name(s.block_at(age))));
        states.push_back(std::move(line));
    }
    doc["states"] = std::move(states);
    out << doc.dump(2) << '\n';
}

void export_stateset(const StateSet& set, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    export_stateset(set, out);
}

StateSet import_stateset(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("state-set document: ") + e.what());
    }

    auto field = [&doc](const char* key) -> const nlohmann::json& {
        if (!doc.contains(key))
            throw ParseError(std::string("state-set document: missing field '") + key + "'");
        return doc.at(key);
    };

    if (!field("version").is_number_integer() || field("version").get<int>() != kFormatVersion)
        throw ParseError("state-set document: unsupported version");

    StateSet set;
    set.policy = parse_policy(field("policy").get<std::string>());
    set.assoc = field("assoc").get<int>();
    require_valid_assoc(set.policy, set.assoc);

    auto read_names = [&field](const char* key) {
        const auto& arr = field(key);
        if (!arr.is_array()) throw ParseError(std::string("state-set document: '") + key +
                                              "' must be an array");
        std::vector<std::string> names;
        for (const auto& item : arr) names.push_back(item.get<std::string>());
        return names;
    };
    std::vector<std::string> victims = read_names("victim_blocks");
    std::vector<std::string> fillers = read_names("filler_blocks");
    if (static_cast<int>(fillers.size()) < set.assoc)
        throw ParseError("state-set document: fewer filler blocks than associativity");
    set.universe = BlockUniverse::from_names(std::move(victims), std::move(fillers), set.assoc);

    const auto& states = field("states");
    if (!states.is_array()) throw ParseError("state-set document: 'states' must be an array");
    std::size_t row = 0;
    for (const auto& entry : states) {
        ++row;
        const std::string where = "state " + std::to_string(row);
        if (!entry.is_array() || static_cast<int>(entry.size()) != set.assoc)
            throw ParseError("state-set document: " + where + " must list exactly " +
                             std::to_string(set.assoc) + " blocks");
        std::vector<Block> line;
        for (const auto& name : entry) {
            auto block = set.universe.find(name.get<std::string>());
            if (!block)
                throw ParseError("state-set document: " + where + " names unknown block '" +
                                 name.get<std::string>() + "'");
            line.push_back(*block);
        }
        try {
            set.states.push_back(CacheSetState::from_line(line));
        } catch (const InvariantError& e) {
            throw InvariantError("state-set document: " + where + ": " + e.what());
        }
    }
    canonicalize(set.states);
    return set;
}

StateSet import_stateset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    return import_stateset(in);
}

}  // namespace cacheleak
