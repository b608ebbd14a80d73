#include "ionpnr/timing.h"

#include <cmath>
#include <string>

#include "ionpnr/errors.h"

namespace ionpnr {

void ProtocolBudget::validate() const {
    for (const Stage &s : stages(*this)) {
        if (!(s.duration >= 0.0) || std::isinf(s.duration)) {
            throw InvalidParameter(std::string(s.name) + " duration must be finite and >= 0");
        }
    }
}

double ProtocolBudget::total() const { return t_init + t_storage + t_collect + t_recool; }

std::vector<Stage> stages(const ProtocolBudget &b) {
    return {{"init", b.t_init}, {"storage", b.t_storage}, {"collect", b.t_collect}, {"recool", b.t_recool}};
}

double repetition_rate(const ProtocolBudget &b) {
    b.validate();
    const double total = b.total();
    if (total <= 0.0) throw InvalidParameter("protocol budget has zero total duration");
    return 1.0 / total;
}

}  // namespace ionpnr
