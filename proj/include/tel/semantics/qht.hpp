#pragma once

#include <cstddef>

#include "tel/formula.hpp"
#include "tel/semantics/trace.hpp"

namespace tel::semantics {

enum class World { here, there };

/// Satisfaction of a ground formula at (world, i) of an HT pair of the same
/// lasso shape. Implication and negation look at both worlds from `here`.
/// Throws DomainError on variables, quantifiers or mismatched shapes.
bool qht_eval(const syntax::Formula& phi, const HTPair& pair, World world, std::size_t i = 0);

/// Truth in the total pair (T, T).
bool ltl_holds(const syntax::Formula& phi, const LassoTrace& trace, std::size_t i = 0);

} // namespace tel::semantics
