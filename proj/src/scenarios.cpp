#include "fatbound/scenarios.hpp"

namespace fatbound {

const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> all = [] {
        std::vector<Scenario> s;
        {
            Scenario q;
            q.name = "quad_sym";
            q.alias = "ddd";
            q.potential = "quad_sym";
            q.pieces = 2;
            q.sequences = {"|10", "|01"};
            q.switches = {{0.5, 1e-6}};
            q.change_points = {{0.5, 1e-6}};
            q.symmetric_twist = true;
            s.push_back(q);
        }
        {
            // 0(10)^inf reduces to (01)^inf; the third piece follows 0 0 1 0 1 0 ...
            Scenario q;
            q.name = "quad_drift";
            q.alias = "drift";
            q.potential = "quad_drift";
            q.period_max = 2;
            q.preperiod_max = 1;
            q.pieces = 3;
            q.sequences = {"|10", "|01", "0|01"};
            s.push_back(q);
        }
        {
            Scenario q;
            q.name = "quad_eps";
            q.alias = "aaa";
            q.potential = "quad_eps:0.05,0.2";
            q.pieces = 3;
            q.sequences = {"1|10", "|10", "|01"};
            q.switches = {{0.21, 0.01}, {0.60, 0.01}};
            q.change_points = {{0.21, 0.01}, {0.60, 0.01}};
            s.push_back(q);
        }
        {
            Scenario q;
            q.name = "tent";
            q.alias = "bbb";
            q.potential = "tent";
            q.pieces = 2;
            q.sequences = {"|10", "|01"};
            s.push_back(q);
        }
        {
            Scenario q;
            q.name = "cosine";
            q.alias = "ccc";
            q.potential = "cosine";
            q.pieces = 2;
            q.sequences = {"|10", "|01"};
            s.push_back(q);
        }
        {
            // exported for inspection only
            Scenario q;
            q.name = "sine";
            q.alias = "sine";
            q.potential = "sine";
            s.push_back(q);
        }
        return s;
    }();
    return all;
}

std::optional<Scenario> find_scenario(std::string_view name) {
    for (const auto& s : scenarios())
        if (s.name == name || s.alias == name) return s;
    return std::nullopt;
}

}  // namespace fatbound
