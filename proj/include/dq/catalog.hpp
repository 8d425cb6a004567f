#pragma once

#include "dq/lie.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dq {

/// Abelian R^2 with omega = e^1 ^ e^2.
SymplecticLieAlgebra catalog_abelian2();

/// The nonabelian 2-dimensional algebra [e1, e2] = e1 with omega = e^1 ^ e^2.
SymplecticLieAlgebra catalog_n2();

/// N2 + R^2 in dimension 4, omega = e^1 ^ e^2 + e^3 ^ e^4 (the smallest
/// catalog entry with a nonzero Lambda^3).
SymplecticLieAlgebra catalog_n2_r2();

/// The central extensions of the 2-dimensional entries (Heisenberg and
/// the [e1, e2] = e1 - e3 algebra).
CentralExtension catalog_heisenberg();
CentralExtension catalog_e3();

/// The 2-dimensional symplectic entries with display names.
std::vector<std::pair<std::string, SymplecticLieAlgebra>> symplectic_catalog();

}  // namespace dq
