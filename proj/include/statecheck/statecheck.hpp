#pragma once

#include "statecheck/cli/commands.hpp"
#include "statecheck/core/condition.hpp"
#include "statecheck/core/constraints.hpp"
#include "statecheck/core/model.hpp"
#include "statecheck/core/predicates.hpp"
#include "statecheck/core/scope_tree.hpp"
#include "statecheck/core/value_set.hpp"
#include "statecheck/diagnostics.hpp"
#include "statecheck/exec/holonic.hpp"
#include "statecheck/exec/trace.hpp"
#include "statecheck/ingest/canonical.hpp"
#include "statecheck/ingest/common.hpp"
#include "statecheck/ingest/complex_matrix.hpp"
#include "statecheck/ingest/derivations.hpp"
#include "statecheck/ingest/preconditions.hpp"
#include "statecheck/ingest/project.hpp"
#include "statecheck/ingest/scopes.hpp"
#include "statecheck/ingest/simple_matrix.hpp"
#include "statecheck/ingest/state_types.hpp"
#include "statecheck/ingest/transitions.hpp"
#include "statecheck/modes/activation.hpp"
#include "statecheck/modes/derive.hpp"
#include "statecheck/modes/mode_structure.hpp"
#include "statecheck/report/modes.hpp"
#include "statecheck/report/statechart.hpp"
#include "statecheck/report/trace.hpp"
#include "statecheck/report/verification.hpp"
#include "statecheck/util/csv.hpp"
#include "statecheck/verify/enumerate.hpp"
#include "statecheck/verify/run_all.hpp"
#include "statecheck/verify/search.hpp"
#include "statecheck/verify/use_case.hpp"
