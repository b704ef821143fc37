#include "cptsq/params.hpp"

#include <cmath>
#include <string>

#include "cptsq/error.hpp"

namespace cptsq {

namespace detail {
void require_finite(double value, const char* name)
{
    if (!std::isfinite(value)) {
        throw InvalidArgument(std::string(name) + " must be finite");
    }
}
}  // namespace detail

void SystemParams::validate() const
{
    detail::require_finite(C, "C");
    detail::require_finite(gamma, "gamma");
    detail::require_finite(kappa, "kappa");
    detail::require_finite(phi, "phi");
    detail::require_finite(delta_bar, "delta_bar");
    detail::require_finite(gamma0, "gamma0");
    if (C < 0.0) throw InvalidArgument("C must be >= 0");
    if (gamma <= 0.0) throw InvalidArgument("gamma must be > 0");
    if (kappa <= 0.0) throw InvalidArgument("kappa must be > 0");
    if (gamma0 < 0.0) throw InvalidArgument("gamma0 must be >= 0");
    if (N) {
        detail::require_finite(*N, "N");
        if (*N <= 0.0) throw InvalidArgument("N must be > 0");
    }
}

}  // namespace cptsq
