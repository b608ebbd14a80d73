#pragma once

#include <string_view>
#include <vector>

namespace ionpnr {

/// Durations (seconds) of one detection cycle.
struct ProtocolBudget {
    double t_init = 25e-6;     ///< cooling + optical pumping into the shelving state
    double t_storage = 1e-6;   ///< probe pulse / storage window
    double t_collect = 200e-6; ///< fluorescence collection
    double t_recool = 100e-6;  ///< re-cooling after readout

    void validate() const;
    double total() const;

    bool operator==(const ProtocolBudget &) const = default;
};

struct Stage {
    std::string_view name;
    double duration;
};

std::vector<Stage> stages(const ProtocolBudget &b);

/// 1 / total cycle duration, in Hz. Throws InvalidParameter for a zero total.
double repetition_rate(const ProtocolBudget &b);

}  // namespace ionpnr
