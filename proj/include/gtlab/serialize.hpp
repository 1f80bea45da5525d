#pragma once

#include <json.hpp>

#include "gtlab/forms.hpp"
#include "gtlab/lifting.hpp"
#include "gtlab/randmat.hpp"
#include "gtlab/search.hpp"
#include "gtlab/states.hpp"
#include "gtlab/witness.hpp"

namespace gtlab {

using json = nlohmann::json;

// Complex numbers are [re, im]; matrices are {"rows", "cols", "data"} with
// row-major [re, im] entries. Doubles are written in shortest round-trip
// form, so a parsed file reproduces the in-memory values exactly.

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

void to_json(json& j, const SchmidtState& s);
void from_json(const json& j, SchmidtState& s);

void to_json(json& j, const FormTensor& u);
void from_json(const json& j, FormTensor& u);

void to_json(json& j, const WitnessSequence& w);
void from_json(const json& j, WitnessSequence& w);

void to_json(json& j, const ConstraintReport& r);
void to_json(json& j, const NormEstimate& e);
void to_json(json& j, const SearchResult& r);
void to_json(json& j, const LiftedNorms& n);
void to_json(json& j, const LiftReport& r);
void to_json(json& j, const TruncateResult& r);
void to_json(json& j, const TruncationValues& v);
void to_json(json& j, const MCReport& r);
void to_json(json& j, const JPReport& r);
void to_json(json& j, const EmbezzleResult& r);

}  // namespace gtlab
