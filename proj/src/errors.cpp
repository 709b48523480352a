#include "lsqb/errors.hpp"

namespace lsqb {

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const ParameterError*>(&e) != nullptr) return 2;
    if (dynamic_cast<const IoError*>(&e) != nullptr) return 3;
    if (dynamic_cast<const SimulationQualityError*>(&e) != nullptr) return 4;
    return 1;
}

}  // namespace lsqb
