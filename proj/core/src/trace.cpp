#include "superburst/trace.hpp"

#include <cmath>
#include <numeric>

#include "superburst/errors.hpp"

namespace superburst {

void EmissionTrace::validate() const {
    if (!(dt > 0.0)) throw ContractViolation("trace dt must be > 0");
    if (power.size() < 2) throw ContractViolation("trace needs at least two samples");
    if (!amplitude.empty() && amplitude.size() != power.size()) {
        throw ContractViolation("trace amplitude length differs from power length");
    }
}

EmissionTrace EmissionTrace::tail(double t_from) const {
    std::size_t first = 0;
    if (t_from > t0) first = static_cast<std::size_t>(std::ceil((t_from - t0) / dt - 1e-9));
    first = std::min(first, power.size());
    EmissionTrace out;
    out.t0 = time(first);
    out.dt = dt;
    out.power.assign(power.begin() + static_cast<std::ptrdiff_t>(first), power.end());
    if (!amplitude.empty()) {
        out.amplitude.assign(amplitude.begin() + static_cast<std::ptrdiff_t>(first), amplitude.end());
    }
    return out;
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace superburst
