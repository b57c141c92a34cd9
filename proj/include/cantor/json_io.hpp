#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "cantor/borel_code.hpp"
#include "cantor/dyadic.hpp"
#include "cantor/gdelta.hpp"
#include "cantor/l1_name.hpp"
#include "cantor/measure.hpp"
#include "cantor/sampler.hpp"
#include "cantor/step_function.hpp"

namespace cantor {

using Json = nlohmann::json;

// Dyadics travel as "num/2^exp", bit strings as ASCII, clopen sets as arrays
// of generators. Every reader throws ParseError on malformed input.

Json to_json(const Dyadic& d);
Dyadic dyadic_from_json(const Json& j);

Json to_json(const ClopenSet& s);
ClopenSet clopen_from_json(const Json& j);

/// {"depth": d, "cells": [[prefix, value], ...]} with the maximal constant cylinders.
Json to_json(const StepFunction& f);
StepFunction step_function_from_json(const Json& j);

/// {"terms": [...], "stationary": b, "norms": [...]}; reading re-certifies.
Json to_json(const L1Name& n);
L1Name name_from_json(const Json& j);

/// {"kind", "rank"?, "label"? , "children": [{"index", "code"}]}.
Json to_json(const Code& c);
Code code_from_json(const Json& j);

Json to_json(const Estimate& e);

/// Address string -> name.
Json to_json(const MeasureDecomposition& d);

/// {"name", "levels": [{"level", "stages": [antichain...], "budgets": [...]}]}
/// for levels below `levels` and stages below `stages`, budget-checked.
Json to_json(const RapidGDelta& t, std::size_t levels, std::size_t stages);

/// Reads {"tests": [{"name", "levels": [[antichain per stage] per level]}]}.
std::vector<RapidGDelta> tests_from_json(const Json& j);

/// {"A": [[antichain per stage] per level], "C": ...}.
Json to_json(const RegularityApprox& r, std::size_t levels, std::size_t stages);

}  // namespace cantor
