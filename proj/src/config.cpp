#include "credit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace credit {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos)
        return "";
    auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value, int line_no) {
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                          "': not a number: '" + value + "'");
    return v;
}

long long to_int(const std::string& key, const std::string& value, int line_no) {
    char* end = nullptr;
    long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                          "': not an integer: '" + value + "'");
    return v;
}

std::vector<double> to_list(const std::string& key, const std::string& value,
                            int line_no) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(to_double(key, trim(item), line_no));
    if (out.empty())
        throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                          "': empty list");
    return out;
}

void constraint(bool ok, const std::string& key, const std::string& what) {
    if (!ok)
        throw ConfigError("config constraint violated for key '" + key + "': " + what);
}

} // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    double jump_mu = 0.4, jump_sigma = 0.44;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "mu") cfg.params.mu = to_double(key, value, line_no);
        else if (key == "sigma") cfg.params.sigma = to_double(key, value, line_no);
        else if (key == "c") cfg.params.c = to_double(key, value, line_no);
        else if (key == "lambda") cfg.params.lambda = to_double(key, value, line_no);
        else if (key == "jump_mu") jump_mu = to_double(key, value, line_no);
        else if (key == "jump_sigma") jump_sigma = to_double(key, value, line_no);
        else if (key == "v0") cfg.params.v0 = to_double(key, value, line_no);
        else if (key == "face") cfg.params.face = to_double(key, value, line_no);
        else if (key == "maturity") cfg.params.maturity = to_double(key, value, line_no);
        else if (key == "steps") cfg.params.steps = static_cast<int>(to_int(key, value, line_no));
        else if (key == "firms") cfg.params.firms = static_cast<int>(to_int(key, value, line_no));
        else if (key == "scenarios") cfg.params.scenarios = to_int(key, value, line_no);
        else if (key == "seed") cfg.params.seed = static_cast<std::uint64_t>(to_int(key, value, line_no));
        else if (key == "process") {
            if (value == "diffusion") cfg.params.process_kind = ProcessKind::diffusion;
            else if (value == "jump_diffusion") cfg.params.process_kind = ProcessKind::jump_diffusion;
            else throw ConfigError("line " + std::to_string(line_no) +
                                   ": key 'process': expected diffusion or jump_diffusion");
        }
        else if (key == "alpha") cfg.alpha = to_double(key, value, line_no);
        else if (key == "window_lower") cfg.window.lower = to_double(key, value, line_no);
        else if (key == "window_upper") cfg.window.upper = to_double(key, value, line_no);
        else if (key == "bin_width") cfg.window.bin_width = to_double(key, value, line_no);
        else if (key == "min_bin_count") cfg.window.min_bin_count = static_cast<int>(to_int(key, value, line_no));
        else if (key == "lower_thresholds") cfg.lower_thresholds = to_list(key, value, line_no);
        else if (key == "output_dir") cfg.output_dir = value;
        else throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }

    constraint(cfg.params.c >= 0.0 && cfg.params.c <= 1.0, "c", "must lie in [0,1]");
    constraint(cfg.params.sigma >= 0.0, "sigma", "must be >= 0");
    constraint(cfg.params.lambda >= 0.0, "lambda", "must be >= 0");
    constraint(jump_sigma >= 0.0, "jump_sigma", "must be >= 0");
    constraint(cfg.params.v0 > 0.0, "v0", "must be > 0");
    constraint(cfg.params.face > 0.0, "face", "must be > 0");
    constraint(cfg.params.maturity > 0.0, "maturity", "must be > 0");
    constraint(cfg.params.steps >= 1, "steps", "must be >= 1");
    constraint(cfg.params.firms >= 1, "firms", "must be >= 1");
    constraint(cfg.params.scenarios >= 1, "scenarios", "must be >= 1");
    constraint(cfg.alpha > 0.0 && cfg.alpha < 1.0, "alpha", "must lie in (0,1)");
    constraint(cfg.window.lower < cfg.window.upper, "window_lower", "must be < window_upper");
    constraint(cfg.window.bin_width > 0.0, "bin_width", "must be > 0");
    constraint(cfg.window.min_bin_count >= 1, "min_bin_count", "must be >= 1");
    for (double t : cfg.lower_thresholds)
        constraint(t < cfg.window.upper, "lower_thresholds",
                   "every threshold must be below window_upper");

    cfg.params.jump = lognormal_jump_params(jump_mu, jump_sigma);
    return cfg;
}

RunConfig parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    return parse_config(in);
}

} // namespace credit
