#include "credit/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "credit/csv.hpp"
#include "credit/gaussmath.hpp"

namespace credit {

std::string model_name(const RecoveryModel& model) {
    struct Visitor {
        std::string operator()(const ConstantRecovery&) const { return "constant"; }
        std::string operator()(const ProbitRecovery&) const { return "probit"; }
        std::string operator()(const StructuralRecovery&) const { return "structural"; }
    };
    return std::visit(Visitor{}, model);
}

double probit_recovery(double x_m, double gamma, double delta) {
    return std_normal_cdf(-gamma * x_m - delta);
}

namespace {
void check_structural_domain(double p_d, double b) {
    if (!(p_d > 0.0 && p_d < 1.0))
        throw std::domain_error("structural recovery: p_d must lie in (0,1)");
    if (!(b > 0.0))
        throw std::domain_error("structural recovery: B must be positive");
}
} // namespace

double structural_recovery(double p_d, double b) {
    check_structural_domain(p_d, b);
    double q = std_normal_quantile(p_d);
    return std::exp(-b * q + 0.5 * b * b) * std_normal_cdf(q - b) / p_d;
}

double structural_expected_loss(double p_d, double b) {
    check_structural_domain(p_d, b);
    double q = std_normal_quantile(p_d);
    return p_d - std::exp(-b * q + 0.5 * b * b) * std_normal_cdf(q - b);
}

double model_recovery(const RecoveryModel& model, const ScenarioRecord& record) {
    struct Visitor {
        const ScenarioRecord& rec;
        double operator()(const ConstantRecovery& m) const { return m.r_bar; }
        double operator()(const ProbitRecovery& m) const {
            return probit_recovery(rec.x_m, m.gamma, m.delta);
        }
        double operator()(const StructuralRecovery& m) const {
            if (rec.p_d <= 0.0)
                return 1.0;
            double p = std::clamp(rec.p_d, 1e-12, 1.0 - 1e-12);
            return structural_recovery(p, m.b);
        }
    };
    return std::visit(Visitor{record}, model);
}

namespace {
const char kModelHeader[] = "variant,param1,param2";
}

void write_model_csv(std::ostream& out, const RecoveryModel& model) {
    out << kModelHeader << '\n' << model_name(model) << ',';
    if (const auto* c = std::get_if<ConstantRecovery>(&model))
        out << csv::format_double(c->r_bar) << ',';
    else if (const auto* p = std::get_if<ProbitRecovery>(&model))
        out << csv::format_double(p->gamma) << ',' << csv::format_double(p->delta);
    else
        out << csv::format_double(std::get<StructuralRecovery>(model).b) << ',';
    out << '\n';
}

void write_model_csv(const std::string& path, const RecoveryModel& model) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_model_csv(out, model);
}

RecoveryModel read_model_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || csv::split_line(line) != csv::split_line(kModelHeader))
        throw std::runtime_error("model.csv: missing or wrong header");
    if (!std::getline(in, line))
        throw std::runtime_error("model.csv: missing data row");
    auto f = csv::split_line(line);
    if (f.size() != 3)
        throw std::runtime_error("model.csv: expected 3 fields");
    if (f[0] == "constant")
        return ConstantRecovery{csv::parse_double(f[1])};
    if (f[0] == "probit")
        return ProbitRecovery{csv::parse_double(f[1]), csv::parse_double(f[2])};
    if (f[0] == "structural")
        return StructuralRecovery{csv::parse_double(f[1])};
    throw std::runtime_error("model.csv: unknown variant '" + f[0] + "'");
}

RecoveryModel read_model_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return read_model_csv(in);
}

} // namespace credit
