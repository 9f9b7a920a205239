#pragma once

#include <string>

#include "kdlab/errors.hpp"
#include "kdlab/harness/oracle.hpp"
#include "kdlab/harness/sharpness.hpp"
#include "kdlab/harness/spec.hpp"
#include "kdlab/harness/sweeps.hpp"
#include "kdlab/harness/theorems.hpp"

namespace kdlab::harness {

/// Dispatches on spec.suite.
inline SuiteReport run_suite(const SuiteSpec& spec) {
    if (const auto info = theorem_info(spec.suite)) {
        return info->condition == Condition::Size ? run_size_theorem_suite(spec) : run_spectral_theorem_suite(spec);
    }
    if (spec.suite == "sharpness") return run_sharpness_suite(spec);
    if (spec.suite == "oracle-equivalence") return run_oracle_equivalence(spec);
    if (spec.suite == "lemma-sweep") return run_lemma_sweep(spec);
    throw PreconditionError("unknown suite '" + spec.suite + "'");
}

}  // namespace kdlab::harness
