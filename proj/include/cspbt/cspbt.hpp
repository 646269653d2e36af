// Umbrella header.
#pragma once

#include "cspbt/process.hpp"
#include "cspbt/syntax.hpp"
#include "cspbt/semantics.hpp"
#include "cspbt/fdmodel.hpp"
#include "cspbt/equivalences.hpp"
#include "cspbt/laws.hpp"
#include "cspbt/rewrite.hpp"
#include "cspbt/normal_form.hpp"
#include "cspbt/canonical.hpp"
#include "cspbt/generate.hpp"
#include "cspbt/axioms.hpp"
#include "cspbt/harness.hpp"
#include "cspbt/report.hpp"
