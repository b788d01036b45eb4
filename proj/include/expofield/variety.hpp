#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "expofield/exprlang.hpp"
#include "expofield/linalg.hpp"

namespace expofield {

/// Locus of a generic point of a subvariety of Ga^n x Gm^n, given by
/// rational functions of base parameters and locus parameters.
struct ParametricVariety {
    std::vector<Symbol> base_params;
    std::vector<Symbol> locus_params;
    std::vector<FieldElem> X;
    std::vector<FieldElem> Y;
    /// Y_i is a single locus parameter occurring nowhere else.
    std::vector<bool> free_Y;
    unsigned cyclotomic_order = 1;

    std::size_t dim() const { return X.size(); }
    /// Throws UsageError when an invariant is broken.
    void validate() const;
    /// Recomputes free_Y from X and Y.
    void recompute_flags();
};

struct FreenessCertificate {
    bool free = true;
    /// Relation sum m_i X_i = a, present when not free.
    std::vector<Int> m;
    FieldElem a;
};

struct ReductionResult {
    ParametricVariety vprime;
    QMatrix A;  // n x k
    std::vector<FieldElem> b;
    Int N = 1;
    std::vector<std::size_t> index_map;
    ParametricVariety original;
};

/// Reads a locus off a flat system whose x-part is affine over the base and
/// whose remaining equations each define one variable occurring nowhere else.
ParametricVariety from_flat(const FlatSystem& fs, const std::vector<Symbol>& base_params,
                            unsigned cyclotomic_order = 1);

FreenessCertificate additive_freeness(const ParametricVariety& v);
ReductionResult reduce(const ParametricVariety& v);

/// Exponential of a base element, or nullopt when unknown.
using BaseExp = std::function<std::optional<FieldElem>(const FieldElem&)>;

struct PulledBackPoint {
    std::vector<FieldElem> d;
    std::vector<FieldElem> Ed;
};
PulledBackPoint pullback(const ReductionResult& r, const std::vector<FieldElem>& c,
                         const std::vector<FieldElem>& Ec, const BaseExp& exp_of);

/// Replaces locus parameters by small integers at which no denominator
/// vanishes. Exact for elements that do not depend on them.
FieldElem drop_locus(const FieldElem& e, const std::vector<Symbol>& locus);

/// Exhaustive search of the box |m_i| <= bound for a nonzero m with
/// sum m_i X_i free of the locus parameters. Candidates are filtered on
/// sampled derivatives and confirmed exactly.
std::optional<std::vector<Int>> brute_force_relation(const ParametricVariety& v, int bound,
                                                     unsigned seed = 1);

/// X(s) == d and Y(s) == Ed for the given assignment s of locus parameters.
bool point_matches(const ParametricVariety& v, const std::map<Symbol, FieldElem>& s,
                   const std::vector<FieldElem>& d, const std::vector<FieldElem>& Ed);

}  // namespace expofield
