#include "fracsync/systems.hpp"

#include "fracsync/errors.hpp"

namespace fracsync {

namespace {

double require_param(const std::map<std::string, double>& params,
                     const std::string& key, const std::string& system) {
    auto it = params.find(key);
    if (it == params.end())
        throw ConfigError(system + " system requires parameter '" + key + "'");
    return it->second;
}

const std::vector<double> kPublishedOrders = {0.9, 0.5, 0.6};

}  // namespace

SystemDef t_system(const std::map<std::string, double>& params) {
    const double a1 = require_param(params, "a1", "t");
    const double b1 = require_param(params, "b1", "t");
    const double c1 = require_param(params, "c1", "t");
    SystemDef def;
    def.name = "t";
    def.dimension = 3;
    def.params = params;
    def.default_orders = kPublishedOrders;
    def.field = [a1, b1, c1](double, std::span<const double> s, std::span<double> d) {
        d[0] = a1 * (s[1] - s[0]);
        d[1] = (c1 - a1) * s[0] - a1 * s[0] * s[2];
        d[2] = s[0] * s[1] - b1 * s[2];
    };
    return def;
}

SystemDef rossler_system(const std::map<std::string, double>& params) {
    const double a2 = require_param(params, "a2", "rossler");
    const double b2 = require_param(params, "b2", "rossler");
    const double c2 = require_param(params, "c2", "rossler");
    SystemDef def;
    def.name = "rossler";
    def.dimension = 3;
    def.params = params;
    def.default_orders = kPublishedOrders;
    def.field = [a2, b2, c2](double, std::span<const double> s, std::span<double> d) {
        d[0] = -s[1] - s[2];
        d[1] = s[0] + a2 * s[1];
        d[2] = b2 + s[2] * (s[0] - c2);
    };
    return def;
}

const std::map<std::string, double>& t_preset() {
    static const std::map<std::string, double> preset = {
        {"a1", 2.1}, {"b1", 0.6}, {"c1", 30.0}};
    return preset;
}

const std::map<std::string, double>& rossler_preset() {
    static const std::map<std::string, double> preset = {
        {"a2", 0.2}, {"b2", 0.2}, {"c2", 5.7}};
    return preset;
}

SystemDef registry_lookup(const std::string& name,
                          const std::map<std::string, double>& overrides) {
    const std::map<std::string, double>* preset = nullptr;
    if (name == "t")
        preset = &t_preset();
    else if (name == "rossler")
        preset = &rossler_preset();
    else
        throw ConfigError("unknown system '" + name + "' (expected t or rossler)");

    std::map<std::string, double> params = *preset;
    for (const auto& [key, value] : overrides) {
        if (params.find(key) == params.end())
            throw ConfigError("system '" + name + "' has no parameter '" + key + "'");
        params[key] = value;
    }
    return name == "t" ? t_system(params) : rossler_system(params);
}

}  // namespace fracsync
