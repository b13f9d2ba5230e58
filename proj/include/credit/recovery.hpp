#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "credit/portfolio.hpp"

namespace credit {

struct ConstantRecovery {
    double r_bar = 0.0; // in [0,1]
};

struct ProbitRecovery {
    double gamma = 0.0;
    double delta = 0.0;
};

struct StructuralRecovery {
    double b = 0.0; // > 0
};

using RecoveryModel = std::variant<ConstantRecovery, ProbitRecovery, StructuralRecovery>;

std::string model_name(const RecoveryModel& model);

/// Phi(-gamma * x_m - delta).
double probit_recovery(double x_m, double gamma, double delta);

/// The one-parameter recovery/default-probability relation:
///   (1/p) * exp(-B*Phi^-1(p) + B^2/2) * Phi(Phi^-1(p) - B).
/// Strictly decreasing in p and in B. Throws std::domain_error for
/// p outside (0,1) or B <= 0.
double structural_recovery(double p_d, double b);

/// Expected loss under the same relation:
///   p - exp(-B*Phi^-1(p) + B^2/2) * Phi(Phi^-1(p) - B),
/// identical to p * (1 - structural_recovery(p, B)).
double structural_expected_loss(double p_d, double b);

/// Model recovery for one scenario. The structural model clamps p_d to
/// [1e-12, 1 - 1e-12]; p_d = 0 returns the limit value 1.
double model_recovery(const RecoveryModel& model, const ScenarioRecord& record);

/// model.csv schema: variant,param1,param2 (param2 empty except probit).
void write_model_csv(std::ostream& out, const RecoveryModel& model);
void write_model_csv(const std::string& path, const RecoveryModel& model);
RecoveryModel read_model_csv(std::istream& in);
RecoveryModel read_model_csv(const std::string& path);

} // namespace credit
