#include "ldrwe/config.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "ldrwe/errors.hpp"

namespace ldrwe {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

StepSet ExperimentConfig::make_step_set() const {
    return StepSet(dim, steps);
}

EnvironmentSpec ExperimentConfig::make_environment() const {
    EnvironmentSpec spec;
    if (env_kind == "deterministic") spec.kind = EnvKind::Deterministic;
    else if (env_kind == "spatially-constant") spec.kind = EnvKind::SpatiallyConstant;
    else if (env_kind == "spatial-iid-field") spec.kind = EnvKind::SpatialIIDField;
    else throw ConfigError("env_kind", "unknown kind '" + env_kind + "'");
    spec.seed = seed;
    spec.mixture.weights = atom_weights;
    for (const auto& probs : atom_probs) spec.mixture.atoms.push_back(StepKernel{probs});
    spec.validate(static_cast<int>(steps.size()));
    return spec;
}

namespace {

// ---- minimal value parser for the flat TOML subset ----

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    std::string field;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) { throw ConfigError(field, what); }
};

std::string number_token(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.pos;
    while (c.pos < c.s.size() && (std::isdigit(static_cast<unsigned char>(c.s[c.pos])) ||
                                  c.s[c.pos] == '+' || c.s[c.pos] == '-' || c.s[c.pos] == '.' ||
                                  c.s[c.pos] == 'e' || c.s[c.pos] == 'E')) {
        ++c.pos;
    }
    if (c.pos == start) c.fail("expected a number");
    return c.s.substr(start, c.pos - start);
}

double parse_number(Cursor& c) {
    std::string tok = number_token(c);
    try {
        return std::stod(tok);
    } catch (const std::exception&) {
        c.fail("malformed number");
    }
}

std::uint64_t parse_u64(Cursor& c) {
    std::string tok = number_token(c);
    try {
        return std::stoull(tok);
    } catch (const std::exception&) {
        c.fail("expected an unsigned integer");
    }
}

std::int64_t parse_i64(Cursor& c) {
    std::string tok = number_token(c);
    try {
        return std::stoll(tok);
    } catch (const std::exception&) {
        c.fail("expected an integer");
    }
}

std::string parse_string(Cursor& c) {
    if (c.peek() != '"') c.fail("expected a quoted string");
    ++c.pos;
    std::size_t start = c.pos;
    while (c.pos < c.s.size() && c.s[c.pos] != '"') ++c.pos;
    if (c.pos >= c.s.size()) c.fail("unterminated string");
    std::string out = c.s.substr(start, c.pos - start);
    ++c.pos;
    return out;
}

std::vector<double> parse_flat_array(Cursor& c) {
    if (c.peek() != '[') c.fail("expected '['");
    ++c.pos;
    std::vector<double> out;
    while (true) {
        if (c.peek() == ']') { ++c.pos; break; }
        out.push_back(parse_number(c));
        if (c.peek() == ',') ++c.pos;
        else if (c.peek() != ']') c.fail("expected ',' or ']'");
    }
    return out;
}

std::vector<std::vector<double>> parse_nested_array(Cursor& c) {
    if (c.peek() != '[') c.fail("expected '['");
    ++c.pos;
    std::vector<std::vector<double>> out;
    while (true) {
        if (c.peek() == ']') { ++c.pos; break; }
        out.push_back(parse_flat_array(c));
        if (c.peek() == ',') ++c.pos;
        else if (c.peek() != ']') c.fail("expected ',' or ']'");
    }
    return out;
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

void emit_array(std::ostringstream& os, const std::vector<double>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << format_double(v[i]);
    }
    os << ']';
}

template <typename T>
void emit_int_array(std::ostringstream& os, const std::vector<T>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << ']';
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    cfg.steps.clear();
    std::istringstream in(text);
    std::string raw;
    bool saw_steps = false;
    while (std::getline(in, raw)) {
        std::string line = strip_comment(raw);
        std::size_t eq = line.find('=');
        // blank line?
        bool blank = true;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) { blank = false; break; }
        if (blank) continue;
        if (eq == std::string::npos) throw ConfigError("(line)", "expected 'key = value': " + raw);

        std::string key = line.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        std::string value = line.substr(eq + 1);
        Cursor c{value, 0, key};

        if (key == "dim") cfg.dim = static_cast<int>(parse_number(c));
        else if (key == "steps") {
            cfg.steps.clear();
            for (const auto& row : parse_nested_array(c)) {
                LatticePoint z;
                for (double v : row) {
                    auto iv = static_cast<std::int64_t>(v);
                    if (static_cast<double>(iv) != v)
                        throw ConfigError("steps", "steps must be integer vectors");
                    z.push_back(iv);
                }
                cfg.steps.push_back(z);
            }
            saw_steps = true;
        } else if (key == "env_kind") cfg.env_kind = parse_string(c);
        else if (key == "atom_weights") cfg.atom_weights = parse_flat_array(c);
        else if (key == "atom_probs") cfg.atom_probs = parse_nested_array(c);
        else if (key == "seed") cfg.seed = parse_u64(c);
        else if (key == "xi_grid") cfg.xi_grid = parse_nested_array(c);
        else if (key == "rho_grid") cfg.rho_grid = parse_nested_array(c);
        else if (key == "horizons") {
            cfg.horizons.clear();
            for (double v : parse_flat_array(c)) cfg.horizons.push_back(static_cast<int>(v));
        } else if (key == "replicas") cfg.replicas = parse_i64(c);
        else if (key == "window_radius") cfg.window_radius = parse_number(c);
        else if (key == "tol_newton") cfg.tol_newton = parse_number(c);
        else if (key == "tol_identity") cfg.tol_identity = parse_number(c);
        else if (key == "format") cfg.format = parse_string(c);
        else throw ConfigError(key, "unknown key");

        if (!c.done()) throw ConfigError(key, "trailing characters after value");
    }
    if (!saw_steps) throw ConfigError("steps", "missing required key");
    if (cfg.atom_probs.empty()) throw ConfigError("atom_probs", "missing required key");
    if (cfg.atom_weights.empty()) throw ConfigError("atom_weights", "missing required key");
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format", "must be 'csv' or 'json'");
    // construct once so invalid models are rejected at parse time
    (void)cfg.make_step_set();
    (void)cfg.make_environment();
    return cfg;
}

std::string emit_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "dim = " << cfg.dim << '\n';
    os << "steps = [";
    for (std::size_t i = 0; i < cfg.steps.size(); ++i) {
        if (i) os << ", ";
        emit_int_array(os, cfg.steps[i]);
    }
    os << "]\n";
    os << "env_kind = \"" << cfg.env_kind << "\"\n";
    os << "atom_weights = ";
    emit_array(os, cfg.atom_weights);
    os << '\n';
    os << "atom_probs = [";
    for (std::size_t i = 0; i < cfg.atom_probs.size(); ++i) {
        if (i) os << ", ";
        emit_array(os, cfg.atom_probs[i]);
    }
    os << "]\n";
    os << "seed = " << cfg.seed << '\n';
    if (!cfg.xi_grid.empty()) {
        os << "xi_grid = [";
        for (std::size_t i = 0; i < cfg.xi_grid.size(); ++i) {
            if (i) os << ", ";
            emit_array(os, cfg.xi_grid[i]);
        }
        os << "]\n";
    }
    if (!cfg.rho_grid.empty()) {
        os << "rho_grid = [";
        for (std::size_t i = 0; i < cfg.rho_grid.size(); ++i) {
            if (i) os << ", ";
            emit_array(os, cfg.rho_grid[i]);
        }
        os << "]\n";
    }
    if (!cfg.horizons.empty()) {
        os << "horizons = ";
        emit_int_array(os, cfg.horizons);
        os << '\n';
    }
    os << "replicas = " << cfg.replicas << '\n';
    os << "window_radius = " << format_double(cfg.window_radius) << '\n';
    os << "tol_newton = " << format_double(cfg.tol_newton) << '\n';
    os << "tol_identity = " << format_double(cfg.tol_identity) << '\n';
    os << "format = \"" << cfg.format << "\"\n";
    return os.str();
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig cfg;
    if (name == "symmetric-binary") {
        cfg.dim = 1;
        cfg.steps = {{1}, {-1}};
        cfg.env_kind = "spatially-constant";
        cfg.atom_weights = {0.5, 0.5};
        cfg.atom_probs = {{0.9, 0.1}, {0.1, 0.9}};
    } else if (name == "deterministic-uniform") {
        cfg.dim = 1;
        cfg.steps = {{1}, {-1}};
        cfg.env_kind = "deterministic";
        cfg.atom_weights = {1.0};
        cfg.atom_probs = {{0.5, 0.5}};
    } else if (name == "square-2d") {
        cfg.dim = 2;
        cfg.steps = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
        cfg.env_kind = "deterministic";
        cfg.atom_weights = {1.0};
        cfg.atom_probs = {{0.25, 0.25, 0.25, 0.25}};
    } else if (name == "nn-3d") {
        cfg.dim = 3;
        cfg.steps = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
        cfg.env_kind = "spatial-iid-field";
        cfg.atom_weights = {0.5, 0.5};
        cfg.atom_probs = {{0.3, 0.1, 0.15, 0.15, 0.15, 0.15},
                          {0.1, 0.3, 0.15, 0.15, 0.15, 0.15}};
    } else {
        throw ConfigError("preset", "unknown preset '" + name + "'");
    }
    return cfg;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "symmetric-binary", "deterministic-uniform", "square-2d", "nn-3d"};
    return names;
}

} // namespace ldrwe
