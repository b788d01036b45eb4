#include "expofield/tdeg.hpp"

#include <set>

#include "expofield/linalg.hpp"

namespace expofield {

std::vector<Symbol> occurring_symbols(const std::vector<FieldElem>& elems) {
    std::set<Symbol> s;
    for (auto& e : elems) {
        auto v = e.symbols();
        s.insert(v.begin(), v.end());
    }
    return {s.begin(), s.end()};
}

std::vector<std::vector<FieldElem>> jacobian(const std::vector<FieldElem>& elems,
                                             const std::vector<Symbol>& symbols) {
    std::vector<std::vector<FieldElem>> j;
    for (auto& e : elems) {
        std::vector<FieldElem> row;
        for (auto& s : symbols) row.push_back(e.derivative(s));
        j.push_back(std::move(row));
    }
    return j;
}

std::size_t tdeg(const std::vector<FieldElem>& elems, const std::vector<FieldElem>& over) {
    std::vector<FieldElem> all = over;
    all.insert(all.end(), elems.begin(), elems.end());
    auto syms = occurring_symbols(all);
    if (syms.empty()) return 0;
    std::size_t whole = ff_rank(jacobian(all, syms));
    std::size_t base = over.empty() ? 0 : ff_rank(jacobian(over, syms));
    return whole - base;
}

}  // namespace expofield
