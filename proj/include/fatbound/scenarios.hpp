#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fatbound/potentials.hpp"

namespace fatbound {

struct ExpectedPoint {
    double x;
    double tol;
};

/// Preset potential with the envelope structure it is known to produce.
struct Scenario {
    std::string name;
    std::string alias;
    std::string potential;  // --potential grammar
    double lambda = 0.51;
    std::size_t period_max = 3;
    std::size_t preperiod_max = 2;
    std::optional<std::size_t> pieces;         // expected piece count
    std::vector<std::string> sequences;        // expected piece words in x order, "pre|per"
    std::vector<ExpectedPoint> switches;       // envelope switch points
    std::vector<ExpectedPoint> change_points;  // where the greedy itinerary changes
    bool symmetric_twist = false;

    Potential make_potential() const { return parse_potential(potential); }
};

const std::vector<Scenario>& scenarios();

/// Lookup by name or alias; nullopt when unknown.
std::optional<Scenario> find_scenario(std::string_view name);

}  // namespace fatbound
