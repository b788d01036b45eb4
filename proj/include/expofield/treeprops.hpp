#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "expofield/efield.hpp"

namespace expofield {

/// "E(y*x) = z" and "y1 = y2 & z1 != z2".
ESystem default_phi();
ESystem default_psi();

struct Verdict {
    /// "pass", "fail", "unverified" or "vacuous".
    std::string status = "vacuous";
    nlohmann::json evidence;
};

struct BranchCheck {
    nlohmann::json label;
    ParametricVariety variety;
    FreenessCertificate freeness;
    bool realized = false;
    std::string error;
    /// Values of the object variables of phi at the realised point.
    std::map<Symbol, FieldElem> point;
    std::optional<EFieldPresentation> extension;
};

struct VerifyReport {
    Verdict condition_i;
    Verdict condition_ii;
    Verdict condition_iii;
    std::vector<BranchCheck> branches;
    std::optional<EFieldPresentation> realizing_extension;
    std::size_t pairs_checked = 0;
    /// Pairs on which psi is not required (equal columns in the array).
    std::size_t non_applicable = 0;

    bool ok() const;
};

/// Parameters a[i][j] = (b_i, c_j) for phi(x; y, z) over F = Q(b_1..b_n).
struct TP2Witness {
    unsigned n = 1;
    unsigned J = 1;
    EFieldPresentation field;
    std::vector<FieldElem> b;
    std::vector<FieldElem> c;
    ESystem phi = default_phi();
    ESystem psi = default_psi();
    std::vector<Symbol> phi_params{"y", "z"};

    std::vector<FieldElem> param(unsigned i, unsigned j) const { return {b[i], c[j]}; }
};

/// b_i are fresh transcendentals t1..tn; c defaults to 1..J.
TP2Witness make_tp2(unsigned n, unsigned J, std::vector<FieldElem> c = {});

/// `sigma` is 1-based, one entry per row.
std::pair<TP2Witness, VerifyReport> tp2_witness(unsigned n, unsigned J,
                                                const std::vector<unsigned>& sigma);

VerifyReport verify_finite_witness(const TP2Witness& w,
                                   const std::vector<std::vector<unsigned>>& branches);

/// Complete binary tree of parameter tuples, keyed by strings over {0,1} of
/// length < depth.
struct SOP1Candidate {
    unsigned depth = 0;
    EFieldPresentation field;
    std::map<std::string, std::vector<FieldElem>> tree;
    ESystem phi = default_phi();
    ESystem psi = default_psi();
    std::vector<Symbol> phi_params{"y", "z"};
};

/// A branch is a binary string; its nodes are its proper prefixes. With no
/// branches given, every string of length `depth` is checked.
VerifyReport verify_finite_witness(const SOP1Candidate& s, std::vector<std::string> branches = {});

struct StabilizerWitness {
    EFieldPresentation field;
    /// E(a) = 1 and E(c a) != 1.
    FieldElem c;
    FieldElem a;
    FieldElem e_a;
    FieldElem e_ca;
};

/// c = n/m with m > 1: adjoins b with E(b) = zeta_m and takes a = m b.
/// Throws DomainError "CyclotomicOrderMismatch" or "IntegerMultiplier".
StabilizerWitness z_stabilizer_rational(const EFieldPresentation& f, const Rat& c);
/// c nonconstant in F, d != 0, 1: realises E(a) = 1, E(c a) = d.
/// Throws DomainError "NotTranscendental".
StabilizerWitness z_stabilizer_transcendental(const EFieldPresentation& f, const FieldElem& c,
                                              const FieldElem& d);

struct Distinction {
    std::size_t left = 0;
    std::size_t right = 0;
    unsigned n = 0;
    FieldElem left_value;
    FieldElem right_value;
};

struct TypeFamily {
    Symbol x;
    std::vector<EFieldPresentation> fields;
    std::vector<Distinction> certificates;
};

/// One presentation per assignment, adjoining x with E(x^n) = v_n, and the
/// least differing n for every pair that differs. Throws DomainError "ZeroValue".
TypeFamily type_family(const EFieldPresentation& f,
                       const std::vector<std::map<unsigned, FieldElem>>& assignments);

/// Re-derives a certificate from the two graphs.
bool verify_distinction(const TypeFamily& t, const Distinction& d);

}  // namespace expofield
