#pragma once

#include <string>

#include <json.hpp>

#include "expofield/amalg.hpp"
#include "expofield/errors.hpp"
#include "expofield/treeprops.hpp"

namespace expofield {

using nlohmann::json;

/// Malformed JSON input; `pointer` locates the offending value.
class SchemaError : public UsageError {
public:
    SchemaError(std::string pointer, const std::string& what)
        : UsageError("schema error at " + (pointer.empty() ? std::string("/") : pointer) + ": " + what),
          pointer_(std::move(pointer)) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

/// Integers that fit in 64 bits become numbers, others decimal strings.
json int_json(const Int& v);

json to_json(const EFieldPresentation& f);
json to_json(const ParametricVariety& v);
json to_json(const FlatSystem& f);
json to_json(const FreenessCertificate& c);
json to_json(const ReductionResult& r);
json to_json(const SolveResult& s);
json to_json(const HullPresentation& h);
json to_json(const PresentationReport& r);
json to_json(const EmbeddedPresentation& e);
json to_json(const WellDefCheck& c);
json to_json(const Amalgam& a);
json to_json(const IndepSystem& s);
json to_json(const SystemReport& r);
json to_json(const Completion& c);
json to_json(const VerifyReport& r);
json to_json(const SOP1Candidate& s);
json to_json(const StabilizerWitness& w);
json to_json(const TypeFamily& t);

/// Readers throw SchemaError; `at` is the JSON pointer of `j`.
FieldElem elem_from_json(const json& j, unsigned order, const std::string& at);
EFieldPresentation presentation_from_json(const json& j, const std::string& at = "");
ParametricVariety variety_from_json(const json& j, const std::string& at = "");
EmbeddedPresentation embedded_from_json(const json& j, const std::string& at = "");
IndepSystem system_from_json(const json& j, const std::string& at = "");
SOP1Candidate sop1_from_json(const json& j, const std::string& at = "");

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical(const json& j);

}  // namespace expofield
