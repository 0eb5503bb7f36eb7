#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "schoenberg/knots.hpp"

namespace schoenberg {

using RealFunction = std::function<double(double)>;

/// Named test function from the fixed registry.  Every registry function
/// is continuous on [0,1].
struct FunctionSpec {
    std::string name;
    std::vector<double> params{};
};

inline const std::vector<std::string>& registry_names() {
    static const std::vector<std::string> names = {
        "const", "id", "x2", "kink", "sqrt", "sinpi", "x32", "runge", "nullspace",
    };
    return names;
}

/// Compile a FunctionSpec into a callable.  "nullspace" is generated per
/// knot vector as the polynomial prod_j (x - xi_j) over its Greville
/// nodes, which the operator annihilates; it requires kv.
inline RealFunction make_function(const FunctionSpec& spec, const KnotVector* kv = nullptr) {
    const std::string& name = spec.name;
    if (name == "const") return [](double) { return 1.0; };
    if (name == "id") return [](double x) { return x; };
    if (name == "x2") return [](double x) { return x * x; };
    if (name == "kink") return [](double x) { return std::fabs(x - 0.5); };
    if (name == "sqrt") return [](double x) { return std::sqrt(x); };
    if (name == "sinpi") return [](double x) { return std::sin(std::numbers::pi * x); };
    if (name == "x32") return [](double x) { return x * std::sqrt(x); };
    if (name == "runge") return [](double x) { return 1.0 / (1.0 + 25.0 * (x - 0.5) * (x - 0.5)); };
    if (name == "nullspace") {
        if (kv == nullptr)
            throw std::invalid_argument("make_function: nullspace requires a knot vector");
        auto nodes = greville_nodes(*kv).values();
        return [nodes = std::move(nodes)](double x) {
            double p = 1.0;
            for (double xi : nodes) p *= (x - xi);
            return p;
        };
    }
    throw std::invalid_argument("make_function: unknown function \"" + name + "\"");
}

}
