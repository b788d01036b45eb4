#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "expofield/field_elem.hpp"

namespace expofield {

struct SourcePos {
    int line = 0;
    int col = 0;
};

struct ETerm;
using TermPtr = std::shared_ptr<const ETerm>;

/// Syntax tree of an exponential-ring term.
struct ETerm {
    enum class Kind { IntLit, RatLit, Var, Add, Sub, Mul, Pow, Exp, Neg };

    Kind kind;
    Int num;          // IntLit value, RatLit numerator (both non-negative)
    Int den = 1;      // RatLit denominator, kept as written
    Symbol name;      // Var
    unsigned exponent = 0;  // Pow
    TermPtr lhs;      // first operand, or the only one for Pow/Exp/Neg
    TermPtr rhs;
    SourcePos pos;

    static TermPtr integer(Int v, SourcePos p = {});
    static TermPtr rational(Int n, Int d, SourcePos p = {});
    static TermPtr var(Symbol s, SourcePos p = {});
    static TermPtr binary(Kind k, TermPtr a, TermPtr b, SourcePos p = {});
    static TermPtr power(TermPtr base, unsigned e, SourcePos p = {});
    static TermPtr exp(TermPtr arg, SourcePos p = {});
    static TermPtr neg(TermPtr arg, SourcePos p = {});
};

/// Structural equality, ignoring source positions.
bool same_term(const ETerm& a, const ETerm& b);

struct Atom {
    enum class Rel { Eq, Neq };
    TermPtr lhs;
    Rel rel = Rel::Eq;
    TermPtr rhs;
};

/// A finite conjunction of exponential-polynomial equations and inequations.
struct ESystem {
    std::vector<Atom> atoms;
};

bool same_system(const ESystem& a, const ESystem& b);

TermPtr parse_term(std::string_view text);
ESystem parse_system(std::string_view text);

/// Rational-function text as produced by FieldElem::str(); `zeta` denotes the
/// generator of the order-`order` cyclotomic layer.
FieldElem parse_elem(std::string_view text, unsigned order = 1);

std::string print(const ETerm& t);
std::string print(const ESystem& s);

/// Free variables in order of first occurrence.
std::vector<Symbol> free_symbols(const ESystem& s);
std::vector<Symbol> free_symbols(const ETerm& t);
/// Largest nesting depth of E.
int exp_depth(const ETerm& t);

/// Interprets a term in a field; `exp` supplies values of E.
using ExpOracle = std::function<FieldElem(const FieldElem&)>;
FieldElem evaluate_term(const ETerm& t, const std::map<Symbol, FieldElem>& env,
                        const ExpOracle& exp);
bool system_holds(const ESystem& s, const std::map<Symbol, FieldElem>& env,
                  const ExpOracle& exp);

// Normalisation ------------------------------------------------------------

struct FreshNames {
    /// First counter value used for every fresh prefix.
    unsigned start = 1;
};

/// Replaces each `l != r` by `(l - r) * _wK = 1` (or `l * _wK = 1` when r is 0).
ESystem eliminate_inequations(const ESystem& s, FreshNames fresh = {});

/// A polynomial system P(x, y) = 0 with every y_i standing for E(x_i).
struct FlatSystem {
    std::vector<Symbol> xvars;
    std::vector<Symbol> yvars;
    std::vector<MPoly> polys;
    /// Auxiliary unknowns introduced by normalisation (aliases and witnesses).
    std::size_t aux_count = 0;
    /// Defining term of every alias x-variable, over the original variables.
    std::map<Symbol, TermPtr> aliases;
    /// Symbols treated as coefficients rather than unknowns.
    std::vector<Symbol> params;
};

/// Replaces every E-subterm bottom-up by a paired (x, y) variable. Every
/// unknown (a free symbol not in `params`) ends up as an x-variable.
FlatSystem flatten(const ESystem& s, const std::vector<Symbol>& params = {},
                   FreshNames fresh = {});
/// eliminate_inequations followed by flatten.
FlatSystem normalize(const ESystem& s, const std::vector<Symbol>& params = {},
                     FreshNames fresh = {});

std::string print(const FlatSystem& f);
FlatSystem parse_flat(std::string_view text);

/// Checks P(x, E(x)) = 0 at an assignment of the x-variables.
bool flat_holds(const FlatSystem& f, const std::map<Symbol, FieldElem>& xvalues,
                const ExpOracle& exp);

}  // namespace expofield
