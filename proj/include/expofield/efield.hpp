#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "expofield/linalg.hpp"
#include "expofield/variety.hpp"

namespace expofield {

struct GraphPair {
    FieldElem arg;
    FieldElem val;
};

/// Q(zeta_m)(t_1, ..., t_k) with E known on the Z-span of finitely many
/// Q-linearly independent arguments.
struct EFieldPresentation {
    std::string name = "F";
    unsigned cyclotomic_order = 1;
    std::vector<Symbol> transcendentals;
    std::vector<GraphPair> egraph;

    std::vector<FieldElem> args() const;
    bool declares(const Symbol& s) const;
};

struct RootSpec {
    FieldElem val;
    Int den;
};

/// Value(v) when `value` is set; otherwise NeedsExtension, either listing the
/// roots of graph values that would be needed or, when the argument is
/// outside the Q-span of the graph, flagging that a fresh value is needed.
struct EEvalResult {
    std::optional<FieldElem> value;
    std::vector<RootSpec> roots;
    bool needs_fresh = false;
    /// Coordinates over the graph arguments when inside their Q-span.
    std::optional<QVector> coords;

    bool defined() const { return value.has_value(); }
};

EEvalResult e_eval(const EFieldPresentation& f, const FieldElem& a);

/// Adds graph pairs (and any symbols they introduce). Throws DomainError
/// "LinearDependence" with the integer relation among all arguments, or
/// "ZeroValue".
EFieldPresentation extend_graph(const EFieldPresentation& f, const std::vector<GraphPair>& pairs,
                                const std::vector<Symbol>& new_transcendentals = {});

struct SolveOptions {
    bool auto_extend = true;
    /// First counter for fresh _c/_r/_g names.
    unsigned fresh_start = 1;
};

struct SolveResult {
    EFieldPresentation field;
    std::vector<FieldElem> d;
    std::vector<FieldElem> Ed;
    /// Values given to the locus parameters of V.
    std::map<Symbol, FieldElem> assignment;
    ReductionResult reduction;
    /// Graph pairs added for E(b_i) that the input could not resolve.
    std::vector<GraphPair> auto_extended;
};

/// Realises an exponential point of V in a free extension of F.
SolveResult solve(const EFieldPresentation& f, const ParametricVariety& v,
                  const SolveOptions& opts = {});

struct HullPresentation {
    std::vector<FieldElem> generators;
    bool closed_under_graph = false;
};

/// Closes A under algebraic closure and the graph: whenever an integer
/// combination of graph arguments is algebraic over the current generators,
/// its value is adjoined.
HullPresentation hull(const EFieldPresentation& f, const std::vector<FieldElem>& a);

/// Graph {(1 -> tau)} + {(tau^n -> q_n)}. Throws DomainError "ZeroValue".
EFieldPresentation minimal_ea_family(const std::vector<Rat>& prefix);

/// An argument at which both presentations define E with different values.
struct GraphConflict {
    FieldElem arg;
    FieldElem left;
    FieldElem right;
};
std::optional<GraphConflict> joint_embedding_conflict(const EFieldPresentation& a,
                                                      const EFieldPresentation& b);

struct Violation {
    std::string kind;
    std::string message;
    nlohmann::json certificate;
};
struct PresentationReport {
    std::vector<Violation> violations;
    std::size_t spot_checks = 0;
    bool ok() const { return violations.empty(); }
};
PresentationReport check_presentation(const EFieldPresentation& f, unsigned seed = 1,
                                      std::size_t samples = 20);

/// prod base_i^exps_i.
FieldElem power_product(const std::vector<FieldElem>& base, const ZVector& exps);

/// Exact d-th root of a constant times a Laurent monomial, if one exists in
/// the field.
std::optional<FieldElem> exact_root(const FieldElem& t, const Int& d);

}  // namespace expofield
