#pragma once

#include <vector>

#include "expofield/field_elem.hpp"

namespace expofield {

/// Transcendence degree of Q(elems, over) over Q(over), by the Jacobian
/// criterion: rank J(elems + over) - rank J(over), derivatives taken along
/// every symbol that occurs.
std::size_t tdeg(const std::vector<FieldElem>& elems, const std::vector<FieldElem>& over = {});

/// The Jacobian of `elems` along `symbols`.
std::vector<std::vector<FieldElem>> jacobian(const std::vector<FieldElem>& elems,
                                             const std::vector<Symbol>& symbols);

/// All symbols occurring in the given elements, sorted.
std::vector<Symbol> occurring_symbols(const std::vector<FieldElem>& elems);

}  // namespace expofield
