#include "ipsim/prover.hpp"

#include <nlohmann/json.hpp>

namespace ipsim {

std::unique_ptr<ScriptedProver> load_prover_script(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    std::map<std::string, std::string> table;
    for (const auto& entry : j.value("script", nlohmann::json::array()))
        table[entry.at("prefix").get<std::string>()] = entry.at("symbol").get<std::string>();
    std::string fallback = j.value("default", std::string("_"));
    std::string label = j.value("name", std::string("scripted"));
    return std::make_unique<ScriptedProver>(std::move(table), std::move(fallback),
                                            std::move(label));
}

std::string prover_script_to_json(const ScriptedProver& p) {
    nlohmann::json j;
    j["name"] = p.name();
    j["default"] = p.fallback();
    j["script"] = nlohmann::json::array();
    for (const auto& [prefix, symbol] : p.script())
        j["script"].push_back({{"prefix", prefix}, {"symbol", symbol}});
    return j.dump(2);
}

} // namespace ipsim
