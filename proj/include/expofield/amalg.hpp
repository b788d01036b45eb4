#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "expofield/efield.hpp"

namespace expofield {

/// True iff tdeg(A u C / B u C) == tdeg(A u C / C).
bool acf_indep(const std::vector<FieldElem>& a, const std::vector<FieldElem>& b,
               const std::vector<FieldElem>& c);

/// ACF-independence of the hulls of AC and BC over the hull of C inside f.
bool indep(const EFieldPresentation& f, const std::vector<FieldElem>& a,
           const std::vector<FieldElem>& b, const std::vector<FieldElem>& c);

/// An extension of a base presentation. The inclusion sends each base
/// transcendental to a transcendental of `amb`; unlisted ones map to the
/// symbol of the same name.
struct EmbeddedPresentation {
    EFieldPresentation amb;
    std::string base_name = "F";
    std::map<Symbol, FieldElem> inclusion;
};

/// Products of exponential values along the integer relations among the
/// concatenated graph arguments.
struct WellDefCheck {
    std::vector<FieldElem> args;
    std::vector<FieldElem> values;
    std::vector<ZVector> kernel_basis;
    std::vector<FieldElem> products;
    std::vector<bool> verdicts;

    bool ok() const;
};

struct MergedGraph {
    std::vector<GraphPair> pairs;
    WellDefCheck check;
};

/// Union of graphs whose arguments may be dependent. Throws DomainError
/// "WellDefFailure" when some relation has a product other than 1; otherwise
/// returns an independent graph with the same Z-span and values.
MergedGraph merge_graphs(const std::vector<GraphPair>& pairs);

struct Amalgam {
    EFieldPresentation field;
    std::map<Symbol, FieldElem> g1;
    std::map<Symbol, FieldElem> g2;
    WellDefCheck check;
};

/// Free composite of two extensions over a common base. Throws DomainError
/// "IllFormedExtension" or "WellDefFailure".
Amalgam amalgamate2(const EFieldPresentation& base, const EmbeddedPresentation& f1,
                    const EmbeddedPresentation& f2);

/// Subsets of {0..n-1} as bitmasks.
using Subset = unsigned;
inline constexpr unsigned kMaxSystemSize = 6;

std::string subset_name(Subset s);
/// Inverse of subset_name; throws UsageError.
Subset parse_subset(const std::string& text);

/// A system of presentations indexed by subsets of n. All nodes share one
/// symbol namespace, so every inclusion a <= b is the identity on symbols.
struct IndepSystem {
    unsigned n = 3;
    std::map<Subset, EFieldPresentation> nodes;

    Subset full() const { return (1u << n) - 1; }
    bool complete() const { return nodes.count(full()) != 0; }
};

struct SystemFailure {
    Subset a = 0;
    Subset b = 0;
    std::string reason;
    nlohmann::json certificate;
};

struct SystemReport {
    std::vector<SystemFailure> failures;
    std::size_t checked = 0;
    bool ok() const { return failures.empty(); }
};

/// Checks functoriality and, for every a < b, that F_a is independent from
/// the union of the F_d (d <= b, a not <= d) over the union of the F_c (c < a).
SystemReport verify_independent_system(const IndepSystem& s);

struct Completion {
    IndepSystem system;
    WellDefCheck check;
};

/// Adds the top node as the free composite of the codimension one nodes.
/// Throws DomainError "WellDefFailure" or UsageError.
Completion complete_system(const IndepSystem& s);

}  // namespace expofield
