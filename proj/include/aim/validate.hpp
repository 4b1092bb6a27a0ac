#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aim {

struct ValidationOptions {
    std::uint64_t seed = 0x5eedc0de;
    int closed_form_states = 100;
    int erf_identity_tuples = 50;
    int theta_eq_states = 10000;
    // Test hook: additive perturbation applied to the closed-form tail before
    // comparison, to prove the suite actually has teeth.
    double s_tail_perturb = 0.0;
};

struct CheckResult {
    std::string name;
    bool pass;
    double worst;  // worst residual observed
    double tol;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Closed-form-versus-quadrature identities: tail/body entropies against
// their defining integrals, the erf product-integral identity, and the
// crossing-point residual in the truncated balance equation.
ValidationReport run_validation(const ValidationOptions& options = {});

std::string format_report(const ValidationReport& report);

}  // namespace aim
