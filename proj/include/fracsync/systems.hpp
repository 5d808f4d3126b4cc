#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracsync/solver.hpp"

namespace fracsync {

struct SystemDef {
    std::string name;
    std::size_t dimension = 0;
    std::map<std::string, double> params;
    Field field;
    std::vector<double> default_orders;
};

// T system: dx = a1(y - x), dy = (c1 - a1)x - a1*x*z, dz = x*y - b1*z.
// Chaotic preset a1 = 2.1, b1 = 0.6, c1 = 30.
SystemDef t_system(const std::map<std::string, double>& params);

// Rossler system: dx = -y - z, dy = x + a2*y, dz = b2 + z(x - c2).
// Chaotic preset a2 = 0.2, b2 = 0.2, c2 = 5.7.
SystemDef rossler_system(const std::map<std::string, double>& params);

const std::map<std::string, double>& t_preset();
const std::map<std::string, double>& rossler_preset();

// name in {"t", "rossler"}; overrides replace preset values key by key.
SystemDef registry_lookup(const std::string& name,
                          const std::map<std::string, double>& overrides = {});

}  // namespace fracsync
