// SPDX-License-Identifier: Apache-2.0
#include "kinetica/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace kinetica {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail_line(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

bool valid_key(const std::string& key) {
    if (key.empty() || key.front() == '.' || key.back() == '.') return false;
    for (char c : key) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                        c == '-' || c == '.';
        if (!ok) return false;
    }
    return true;
}

/// Removes a trailing comment, honouring quoted strings.
std::string strip_comment(const std::string& s, int line) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    if (in_string) fail_line(line, "unterminated string");
    return s;
}

TomlValue parse_scalar(const std::string& text, int line) {
    TomlValue v;
    if (text.empty()) fail_line(line, "missing value");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"')
            fail_line(line, "unterminated string value");
        const std::string body = text.substr(1, text.size() - 2);
        if (body.find('"') != std::string::npos || body.find('\\') != std::string::npos)
            fail_line(line, "escapes and embedded quotes are not supported");
        v.kind = TomlValue::Kind::String;
        v.string_value = body;
        return v;
    }
    if (text == "true" || text == "false") {
        v.kind = TomlValue::Kind::Boolean;
        v.boolean_value = text == "true";
        return v;
    }
    // Integer: optional sign and digits only.
    const bool integer_shape =
        !text.empty() &&
        std::all_of(text.begin() + (text[0] == '+' || text[0] == '-' ? 1 : 0), text.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
        text != "+" && text != "-";
    if (integer_shape) {
        try {
            v.kind = TomlValue::Kind::Integer;
            v.integer_value = std::stoll(text);
            return v;
        } catch (const std::exception&) {
            fail_line(line, "integer out of range: " + text);
        }
    }
    // Float, including inf/nan spellings.
    try {
        std::size_t used = 0;
        const double d = std::stod(text, &used);
        if (used != text.size()) fail_line(line, "malformed value: " + text);
        v.kind = TomlValue::Kind::Float;
        v.float_value = d;
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail_line(line, "malformed value: " + text);
    }
}

TomlValue parse_value(const std::string& text, int line) {
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') fail_line(line, "unterminated array");
        TomlValue v;
        v.kind = TomlValue::Kind::Array;
        const std::string body = trim(text.substr(1, text.size() - 2));
        if (body.empty()) return v;
        if (body.find('[') != std::string::npos)
            fail_line(line, "nested arrays are not supported");
        std::size_t start = 0;
        bool in_string = false;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i < body.size() && body[i] == '"') in_string = !in_string;
            if (i == body.size() || (body[i] == ',' && !in_string)) {
                const std::string item = trim(body.substr(start, i - start));
                if (item.empty()) fail_line(line, "empty array element");
                v.array_value.push_back(parse_scalar(item, line));
                start = i + 1;
            }
        }
        return v;
    }
    return parse_scalar(text, line);
}

}  // namespace

double TomlValue::as_double() const {
    if (kind == Kind::Float) return float_value;
    if (kind == Kind::Integer) return static_cast<double>(integer_value);
    throw ConfigError("expected a number");
}

std::int64_t TomlValue::as_integer() const {
    if (kind != Kind::Integer) throw ConfigError("expected an integer");
    return integer_value;
}

bool TomlValue::as_boolean() const {
    if (kind != Kind::Boolean) throw ConfigError("expected true or false");
    return boolean_value;
}

const std::string& TomlValue::as_string() const {
    if (kind != Kind::String) throw ConfigError("expected a quoted string");
    return string_value;
}

std::vector<double> TomlValue::as_double_array() const {
    if (kind != Kind::Array) throw ConfigError("expected an array of numbers");
    std::vector<double> out;
    out.reserve(array_value.size());
    for (const TomlValue& v : array_value) out.push_back(v.as_double());
    return out;
}

std::map<std::string, TomlValue> parse_toml(const std::string& text) {
    std::map<std::string, TomlValue> out;
    std::string prefix;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string line = trim(strip_comment(raw, line_no));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail_line(line_no, "unterminated table header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (!valid_key(name)) fail_line(line_no, "invalid table name '" + name + "'");
            prefix = name;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail_line(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (!valid_key(key)) fail_line(line_no, "invalid key '" + key + "'");
        const std::string full = prefix.empty() ? key : prefix + "." + key;
        if (out.count(full)) fail_line(line_no, "duplicate key '" + full + "'");
        out[full] = parse_value(trim(line.substr(eq + 1)), line_no);
    }
    return out;
}

std::map<std::string, TomlValue> parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_toml(buffer.str());
}

namespace {

/// Pulls typed values out of the parsed map, tracking consumption so that
/// unknown keys can be rejected afterwards.
class KeyReader {
  public:
    explicit KeyReader(const std::map<std::string, TomlValue>& values) : values_(values) {}

    template <typename F>
    void with(const std::string& key, F&& apply) {
        const auto it = values_.find(key);
        if (it == values_.end()) return;
        consumed_.insert(key);
        try {
            apply(it->second);
        } catch (const ConfigError& e) {
            throw ConfigError("key '" + key + "': " + e.what());
        }
    }

    void number(const std::string& key, double& target) {
        with(key, [&](const TomlValue& v) { target = v.as_double(); });
    }
    void integer(const std::string& key, int& target) {
        with(key, [&](const TomlValue& v) { target = static_cast<int>(v.as_integer()); });
    }
    void boolean(const std::string& key, bool& target) {
        with(key, [&](const TomlValue& v) { target = v.as_boolean(); });
    }
    void text(const std::string& key, std::string& target) {
        with(key, [&](const TomlValue& v) { target = v.as_string(); });
    }
    void numbers(const std::string& key, std::vector<double>& target) {
        with(key, [&](const TomlValue& v) { target = v.as_double_array(); });
    }

    void reject_unconsumed() const {
        for (const auto& [key, value] : values_) {
            (void)value;
            if (!consumed_.count(key))
                throw ConfigError("unknown config key '" + key + "'");
        }
    }

  private:
    const std::map<std::string, TomlValue>& values_;
    std::set<std::string> consumed_;
};

Statistics statistics_from(const std::string& name) {
    if (name == "maxwell-boltzmann") return Statistics::MaxwellBoltzmann;
    if (name == "bose-einstein") return Statistics::BoseEinstein;
    if (name == "fermi-dirac") return Statistics::FermiDirac;
    if (name == "wave") return Statistics::Wave;
    if (name == "linear") return Statistics::Linear;
    throw ConfigError(
        "unknown statistics '" + name +
        "' (use maxwell-boltzmann, bose-einstein, fermi-dirac, wave, or linear)");
}

Dynamics dynamics_from(const std::string& name) {
    if (name == "classical") return Dynamics::Classical;
    if (name == "relativistic") return Dynamics::Relativistic;
    throw ConfigError("unknown dynamics '" + name + "' (use classical or relativistic)");
}

}  // namespace

void ScenarioConfig::validate() const {
    model.validate();
    if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (!(dt > 0.0) || dt > t_end) throw ConfigError("dt must lie in (0, t_end]");
    if (grid_nodes < 4) throw ConfigError("grid_nodes must be at least 4");
    if (!(grid_halfwidth > 0.0)) throw ConfigError("grid_halfwidth must be positive");
    if (space_nodes < 8) throw ConfigError("space_nodes must be at least 8");
    if (!(slab_length > 0.0)) throw ConfigError("slab_length must be positive");
    if (perturbation < 0.0) throw ConfigError("perturbation must be nonnegative");
    if (threads < 0) throw ConfigError("threads must be nonnegative");
    auto positive_list = [](const std::vector<double>& xs, const char* name) {
        if (xs.empty()) throw ConfigError(std::string(name) + " must not be empty");
        for (double x : xs)
            if (!(x > 0.0)) throw ConfigError(std::string(name) + " entries must be positive");
    };
    positive_list(epsilon_list, "epsilon_list");
    positive_list(c_list, "c_list");
    positive_list(hbar_list, "hbar_list");
    for (double e : epsilon_list)
        if (e > M_PI) throw ConfigError("epsilon_list entries must lie in (0, pi]");
    const bool fixture = initial.rfind("fixture:", 0) == 0;
    if (initial != "bimodal" && initial != "equilibrium" && !fixture)
        throw ConfigError("initial must be bimodal, equilibrium, or fixture:<n>");
    if (fixture) {
        const std::string index = initial.substr(8);
        if (index.empty() ||
            !std::all_of(index.begin(), index.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ConfigError("fixture index must be a nonnegative integer");
    }
    if (quadrature.box_nodes < 2 || quadrature.theta_panels < 1 ||
        quadrature.theta_nodes < 1 || quadrature.circle_nodes < 1 ||
        quadrature.mc_events < 1)
        throw ConfigError("quadrature node counts must be positive");
    if (!(quadrature.box_halfwidth > 0.0))
        throw ConfigError("quadrature box_halfwidth must be positive");
}

ScenarioConfig default_scenario_config(const std::string& scenario) {
    ScenarioConfig cfg;
    cfg.scenario = scenario;
    cfg.kernel = KernelSpec::standard(cfg.model.dim);
    if (scenario == "lorentz-selftest") {
        cfg.model.dynamics = Dynamics::Relativistic;
    } else if (scenario == "semiclassical" || scenario == "kinetic-limit") {
        cfg.model.statistics = Statistics::BoseEinstein;
    } else if (scenario == "linear-limit") {
        cfg.perturbation = 0.01;
    } else if (scenario == "relax" || scenario == "generic-audit") {
        cfg.initial = "bimodal";
        // Full angular range: the grid's lattice events span all deviation
        // angles, and relaxation needs the non-grazing part of the kernel.
        cfg.kernel.angular = rescale_angular(cfg.kernel.angular, M_PI);
    } else if (scenario == "slab") {
        cfg.t_end = 1.0;
        cfg.dt = 0.05;
        cfg.grid_nodes = 16;
        cfg.grid_halfwidth = 6.0;
        cfg.space_nodes = 32;
        cfg.kernel.angular = rescale_angular(cfg.kernel.angular, M_PI);
    }
    return cfg;
}

ScenarioConfig make_scenario_config(const std::string& scenario,
                                    const std::map<std::string, TomlValue>& values) {
    ScenarioConfig cfg = default_scenario_config(scenario);
    KeyReader reader(values);

    // Model.
    reader.with("model.dynamics",
                [&](const TomlValue& v) { cfg.model.dynamics = dynamics_from(v.as_string()); });
    reader.with("model.statistics", [&](const TomlValue& v) {
        cfg.model.statistics = statistics_from(v.as_string());
    });
    int dim = cfg.model.dim;
    reader.integer("model.dim", dim);
    if (dim != cfg.model.dim) {
        cfg.model.dim = dim;
        const double eps = cfg.kernel.angular.epsilon;
        const SigmaFamily sigma = cfg.kernel.sigma;
        cfg.kernel = KernelSpec::standard(dim);
        cfg.kernel.sigma = sigma;
        cfg.kernel.angular = rescale_angular(cfg.kernel.angular, eps);
    }
    reader.number("model.m", cfg.model.constants.m);
    reader.number("model.c", cfg.model.constants.c);
    reader.number("model.hbar", cfg.model.constants.hbar);

    // Kernel: rebuild the angular profile when its shape parameters change so
    // the theta^2-moment normalization stays exact.
    bool reshape = false;
    AngularProfile profile = cfg.kernel.angular;
    double epsilon = profile.epsilon;
    reader.with("kernel.family", [&](const TomlValue& v) {
        const std::string name = v.as_string();
        if (name == "singular-power") profile.family = AngularProfile::Family::SingularPower;
        else if (name == "bump") profile.family = AngularProfile::Family::Bump;
        else throw ConfigError("unknown angular family '" + name + "'");
        reshape = true;
    });
    reader.with("kernel.nu", [&](const TomlValue& v) {
        profile.nu = v.as_double();
        if (!(profile.nu > 0.0 && profile.nu < 2.0))
            throw ConfigError("nu must lie in (0, 2)");
        reshape = true;
    });
    reader.with("kernel.theta0", [&](const TomlValue& v) {
        profile.theta0 = v.as_double();
        if (!(profile.theta0 > 0.0 && profile.theta0 < M_PI / 2.0))
            throw ConfigError("theta0 must lie in (0, pi/2)");
        reshape = true;
    });
    reader.number("kernel.epsilon", epsilon);
    if (reshape) {
        profile.epsilon = 1.0;
        profile.k_norm = 1.0;
        profile.dim = cfg.model.dim;
        profile = angular_normalize(profile, cfg.model.dim);
    }
    cfg.kernel.angular = rescale_angular(profile, epsilon);
    reader.with("kernel.sigma", [&](const TomlValue& v) {
        const std::string name = v.as_string();
        if (name == "constant") cfg.kernel.sigma.kind = SigmaFamily::Kind::Constant;
        else if (name == "power-law") cfg.kernel.sigma.kind = SigmaFamily::Kind::PowerLaw;
        else throw ConfigError("unknown sigma family '" + name + "'");
    });
    reader.with("kernel.sigma0", [&](const TomlValue& v) {
        cfg.kernel.sigma.sigma0 = v.as_double();
        if (!(cfg.kernel.sigma.sigma0 > 0.0)) throw ConfigError("sigma0 must be positive");
    });
    reader.number("kernel.gamma_exp", cfg.kernel.sigma.gamma_exp);

    // Quadrature.
    reader.number("quadrature.box_halfwidth", cfg.quadrature.box_halfwidth);
    reader.integer("quadrature.box_nodes", cfg.quadrature.box_nodes);
    reader.integer("quadrature.theta_panels", cfg.quadrature.theta_panels);
    reader.integer("quadrature.theta_nodes", cfg.quadrature.theta_nodes);
    reader.integer("quadrature.circle_nodes", cfg.quadrature.circle_nodes);
    reader.with("quadrature.mc_events", [&](const TomlValue& v) {
        cfg.quadrature.mc_events = static_cast<std::size_t>(v.as_integer());
    });
    reader.boolean("quadrature.force_mc", cfg.quadrature.force_mc);

    // Run parameters.
    reader.text("initial", cfg.initial);
    reader.number("perturbation", cfg.perturbation);
    reader.number("t_end", cfg.t_end);
    reader.number("dt", cfg.dt);
    reader.integer("grid_nodes", cfg.grid_nodes);
    reader.number("grid_halfwidth", cfg.grid_halfwidth);
    reader.integer("space_nodes", cfg.space_nodes);
    reader.number("slab_length", cfg.slab_length);
    reader.boolean("collisions", cfg.collisions);
    reader.numbers("epsilon_list", cfg.epsilon_list);
    reader.numbers("c_list", cfg.c_list);
    reader.numbers("hbar_list", cfg.hbar_list);
    reader.with("seed", [&](const TomlValue& v) {
        const std::int64_t s = v.as_integer();
        if (s < 0) throw ConfigError("seed must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(s);
    });
    reader.integer("threads", cfg.threads);
    reader.text("out_dir", cfg.out_dir);

    reader.reject_unconsumed();
    // The quadrature seed follows the run seed so deterministic and Monte
    // Carlo paths share one knob.
    cfg.quadrature.seed = cfg.seed;
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& scenario, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    ScenarioConfig cfg = make_scenario_config(scenario, parse_toml(buffer.str()));
    cfg.source_text = buffer.str();
    return cfg;
}

std::string config_hash(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= static_cast<std::uint64_t>(c);
        hash *= 0x100000001b3ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

}  // namespace kinetica
