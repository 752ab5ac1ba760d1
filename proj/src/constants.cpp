// SPDX-License-Identifier: Apache-2.0
#include "bbkit/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace bbkit {

void PhysicalConstants::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::domain_error("constants: h must be > 0");
    if (!(c > 0.0) || !std::isfinite(c)) throw std::domain_error("constants: c must be > 0");
    if (!(k_B > 0.0) || !std::isfinite(k_B))
        throw std::domain_error("constants: k_B must be > 0");
}

}  // namespace bbkit
