#include "qmbe/config.hpp"
#include "qmbe/errors.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qmbe {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

// strip a # comment that is not inside a basic string
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

json parse_toml_scalar(const std::string& tok, int lineno) {
    if (tok.empty()) throw ConfigError("toml line " + std::to_string(lineno) + ": empty value");
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"')
            throw ConfigError("toml line " + std::to_string(lineno) + ": unterminated string");
        return json(tok.substr(1, tok.size() - 2));
    }
    if (tok == "true") return json(true);
    if (tok == "false") return json(false);
    if (tok == "inf") return json(std::numeric_limits<double>::infinity());
    // number: integer if it round-trips as one
    try {
        std::size_t used = 0;
        if (tok.find_first_of(".eENif") == std::string::npos) {
            const long long v = std::stoll(tok, &used);
            if (used == tok.size()) return json(v);
        }
        const double v = std::stod(tok, &used);
        if (used == tok.size()) return json(v);
    } catch (const std::exception&) {
    }
    throw ConfigError("toml line " + std::to_string(lineno) + ": cannot parse value '" + tok +
                      "'");
}

json parse_toml_value(const std::string& tok, int lineno) {
    if (!tok.empty() && tok.front() == '[') {
        if (tok.back() != ']')
            throw ConfigError("toml line " + std::to_string(lineno) + ": unterminated array");
        json arr = json::array();
        std::string body = tok.substr(1, tok.size() - 2);
        std::string cur;
        bool in_str = false;
        for (char ch : body) {
            if (ch == '"') in_str = !in_str;
            if (ch == ',' && !in_str) {
                if (!trim(cur).empty()) arr.push_back(parse_toml_scalar(trim(cur), lineno));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!trim(cur).empty()) arr.push_back(parse_toml_scalar(trim(cur), lineno));
        return arr;
    }
    return parse_toml_scalar(tok, lineno);
}

void insert_dotted(json& obj, const std::string& dotted, json value, int lineno) {
    json* node = &obj;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dotted.find('.', start);
        const std::string part = trim(dotted.substr(start, dot - start));
        if (part.empty())
            throw ConfigError("toml line " + std::to_string(lineno) + ": bad key '" + dotted +
                              "'");
        if (dot == std::string::npos) {
            if (node->contains(part))
                throw ConfigError("toml line " + std::to_string(lineno) + ": duplicate key '" +
                                  dotted + "'");
            (*node)[part] = std::move(value);
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

} // namespace

json parse_toml(const std::string& text) {
    json root = json::object();
    json* section = &root;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("toml line " + std::to_string(lineno) + ": bad section");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty())
                throw ConfigError("toml line " + std::to_string(lineno) + ": empty section");
            section = &root;
            std::size_t start = 0;
            while (true) {
                const std::size_t dot = name.find('.', start);
                const std::string part = trim(name.substr(start, dot - start));
                section = &(*section)[part];
                if (dot == std::string::npos) break;
                start = dot + 1;
            }
            if (!section->is_object() && !section->is_null())
                throw ConfigError("toml line " + std::to_string(lineno) +
                                  ": section clashes with a key");
            if (section->is_null()) *section = json::object();
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("toml line " + std::to_string(lineno) + ": expected key = value");
        insert_dotted(*section, trim(line.substr(0, eq)),
                      parse_toml_value(trim(line.substr(eq + 1)), lineno), lineno);
    }
    return root;
}

namespace {

json parse_override_value(const std::string& v) {
    if (v == "true") return json(true);
    if (v == "false") return json(false);
    if (v == "inf") return json(std::numeric_limits<double>::infinity());
    try {
        std::size_t used = 0;
        if (v.find_first_of(".eEnif") == std::string::npos) {
            const long long iv = std::stoll(v, &used);
            if (used == v.size()) return json(iv);
        }
        const double dv = std::stod(v, &used);
        if (used == v.size()) return json(dv);
    } catch (const std::exception&) {
    }
    return json(v);  // plain string
}

} // namespace

json load_config_file(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    json root;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        try {
            root = json::parse(buf.str());
        } catch (const std::exception& e) {
            throw ConfigError(std::string("json parse error: ") + e.what());
        }
    } else {
        root = parse_toml(buf.str());
    }
    for (const std::string& ov : overrides) {
        const std::size_t eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + ov + "'");
        const std::string key = ov.substr(0, eq);
        json* node = &root;
        std::size_t start = 0;
        while (true) {
            const std::size_t dot = key.find('.', start);
            const std::string part = key.substr(start, dot - start);
            if (part.empty()) throw ConfigError("--set: bad key '" + key + "'");
            if (dot == std::string::npos) {
                (*node)[part] = parse_override_value(ov.substr(eq + 1));
                break;
            }
            node = &(*node)[part];
            start = dot + 1;
        }
    }
    return root;
}

namespace {

class StrictReader {
public:
    StrictReader(const json& obj, std::string scope)
        : obj_(obj), scope_(std::move(scope)) {
        if (!obj.is_object()) throw ConfigError(scope_ + ": expected a table/object");
    }

    ~StrictReader() = default;

    double number(const char* key, double fallback) {
        if (!obj_.contains(key)) return fallback;
        return as_number(key);
    }
    double required_number(const char* key) {
        if (!obj_.contains(key)) throw ConfigError(scope_ + ": missing required key '" + key + "'");
        return as_number(key);
    }
    long integer(const char* key, long fallback) {
        if (!obj_.contains(key)) return fallback;
        mark(key);
        const json& v = obj_.at(key);
        if (!v.is_number_integer())
            throw ConfigError(scope_ + "." + key + ": expected an integer");
        return v.get<long>();
    }
    bool boolean(const char* key, bool fallback) {
        if (!obj_.contains(key)) return fallback;
        mark(key);
        const json& v = obj_.at(key);
        if (!v.is_boolean()) throw ConfigError(scope_ + "." + key + ": expected a boolean");
        return v.get<bool>();
    }
    std::string text(const char* key, const std::string& fallback) {
        if (!obj_.contains(key)) return fallback;
        mark(key);
        const json& v = obj_.at(key);
        if (!v.is_string()) throw ConfigError(scope_ + "." + key + ": expected a string");
        return v.get<std::string>();
    }
    std::vector<double> number_list(const char* key, std::vector<double> fallback) {
        if (!obj_.contains(key)) return fallback;
        mark(key);
        const json& v = obj_.at(key);
        if (!v.is_array()) throw ConfigError(scope_ + "." + key + ": expected an array");
        std::vector<double> out;
        for (const json& e : v) {
            if (!e.is_number()) throw ConfigError(scope_ + "." + key + ": expected numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }
    const json* table(const char* key) {
        if (!obj_.contains(key)) return nullptr;
        mark(key);
        return &obj_.at(key);
    }

    // unknown keys are a hard error
    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (seen_.find(it.key()) == seen_.end())
                throw ConfigError(scope_ + ": unknown key '" + it.key() + "'");
    }

private:
    double as_number(const char* key) {
        mark(key);
        const json& v = obj_.at(key);
        if (!v.is_number()) throw ConfigError(scope_ + "." + key + ": expected a number");
        return v.get<double>();
    }
    void mark(const char* key) { seen_.insert(key); }

    const json& obj_;
    std::string scope_;
    std::set<std::string> seen_;
};

CurrentProfile read_profile(const json* node) {
    CurrentProfile prof;
    if (node == nullptr) return prof;
    StrictReader r(*node, "device.j_profile");
    const std::string kind = r.text("kind", "none");
    if (kind == "none") {
        prof.kind = CurrentProfile::Kind::none;
    } else if (kind == "uniform") {
        prof.kind = CurrentProfile::Kind::uniform;
    } else if (kind == "gaussian") {
        prof.kind = CurrentProfile::Kind::gaussian;
    } else {
        throw ConfigError("device.j_profile.kind: expected none|uniform|gaussian");
    }
    prof.amplitude = r.number("amplitude", 0.0);
    prof.center = r.number("center", 0.0);
    prof.width = r.number("width", 1.0);
    r.finish();
    return prof;
}

DeviceParams read_device(const json& node) {
    StrictReader r(node, "device");
    DeviceParams p;
    p.g0 = r.required_number("g0");
    p.nu0 = r.number("nu0", 1.0);
    p.gamma = r.number("gamma", 0.0);
    p.Gamma = r.required_number("Gamma");
    p.kappa = r.required_number("kappa");
    p.D_amb = r.number("D_amb", 0.0);
    p.m_e = r.required_number("m_e");
    p.m_h = r.required_number("m_h");
    p.omega0 = r.required_number("omega0");
    p.k0 = r.required_number("k0");
    p.W = r.number("W", 1.0);
    p.L = r.number("L", 1.0);
    p.sigma = r.number("sigma", 1.0);
    p.eps_r = r.number("eps_r", 1.0);
    p.T = r.number("T", 0.0);
    p.hbar = r.number("hbar", 1.0);
    p.kB = r.number("kB", 1.0);
    p.c_light = r.number("c_light", -1.0);
    p.j_profile = read_profile(r.table("j_profile"));
    r.finish();
    p.validate();
    return p;
}

NumericsConfig read_numerics(const json& node) {
    StrictReader r(node, "numerics");
    NumericsConfig n;
    n.n_x = static_cast<int>(r.integer("n_x", 32));
    n.n_k = static_cast<int>(r.integer("n_k", 24));
    n.dx = r.number("dx", 1.0);
    n.k_max = r.required_number("k_max");
    n.dt = r.number("dt", 0.0);
    n.t_end = r.number("t_end", 0.0);
    n.rtol = r.number("rtol", 1e-8);
    const std::string bc = r.text("boundary", "periodic");
    if (bc == "periodic")
        n.boundary = NumericsConfig::Boundary::periodic;
    else if (bc == "dirichlet")
        n.boundary = NumericsConfig::Boundary::dirichlet;
    else
        throw ConfigError("numerics.boundary: expected periodic|dirichlet");
    const std::string integ = r.text("integrator", "rk4");
    if (integ == "rk4")
        n.integrator = NumericsConfig::Integrator::rk4;
    else if (integ == "ifrk4")
        n.integrator = NumericsConfig::Integrator::ifrk4;
    else
        throw ConfigError("numerics.integrator: expected rk4|ifrk4");
    const std::string eng = r.text("engine", "parallel");
    if (eng == "serial")
        n.engine = NumericsConfig::Engine::serial;
    else if (eng == "parallel")
        n.engine = NumericsConfig::Engine::parallel;
    else
        throw ConfigError("numerics.engine: expected serial|parallel");
    n.freeze_carriers = r.boolean("freeze_carriers", false);
    n.snapshot_interval = r.number("snapshot_interval", 0.0);
    n.snapshot_full_correlation = r.boolean("snapshot_full_correlation", false);
    r.finish();
    n.validate();
    return n;
}

} // namespace

ResolvedConfig resolve_config(const json& root) {
    if (!root.is_object()) throw ConfigError("config root must be a table/object");
    static const std::set<std::string> known = {"device", "numerics", "beta_scan",
                                               "farfield", "evolve", "_provenance"};
    for (auto it = root.begin(); it != root.end(); ++it)
        if (known.find(it.key()) == known.end())
            throw ConfigError("config: unknown section '" + it.key() + "'");
    if (!root.contains("device")) throw ConfigError("config: missing [device] section");

    ResolvedConfig rc;
    rc.device = read_device(root.at("device"));
    const double s = rc.device.Gamma + rc.device.kappa;

    if (root.contains("numerics")) rc.numerics = read_numerics(root.at("numerics"));

    if (root.contains("beta_scan")) {
        StrictReader r(root.at("beta_scan"), "beta_scan");
        rc.beta_scan.omega_list = r.number_list("omega_list", {0.0, 0.5 * s, s});
        rc.beta_scan.Omega_f_min = r.number("Omega_f_min", 0.0);
        rc.beta_scan.Omega_f_max = r.number("Omega_f_max", 5.0 * s);
        rc.beta_scan.n_points = static_cast<int>(r.integer("n_points", 200));
        r.finish();
    } else {
        rc.beta_scan.omega_list = {0.0, 0.5 * s, s};
        rc.beta_scan.Omega_f_max = 5.0 * s;
    }

    if (root.contains("farfield")) {
        StrictReader r(root.at("farfield"), "farfield");
        rc.farfield.fractions = r.number_list(
            "fractions", {0.05, 0.10, 0.15, 0.25, 0.50, 0.75, 0.90, 0.95, 0.99});
        rc.farfield.theta_min_deg = r.number("theta_min_deg", -30.0);
        rc.farfield.theta_max_deg = r.number("theta_max_deg", 30.0);
        rc.farfield.n_theta = static_cast<int>(r.integer("n_theta", 241));
        rc.farfield.backend = r.text("backend", "auto");
        r.finish();
    }

    if (root.contains("evolve")) {
        StrictReader r(root.at("evolve"), "evolve");
        rc.evolve.N0 = r.number("N0", 0.0);
        r.finish();
    }

    // canonical resolved tree (defaults folded in) for sidecars; reloading
    // it reproduces the run byte for byte
    json dev;
    dev["g0"] = rc.device.g0;
    dev["nu0"] = rc.device.nu0;
    dev["gamma"] = rc.device.gamma;
    dev["Gamma"] = rc.device.Gamma;
    dev["kappa"] = rc.device.kappa;
    dev["D_amb"] = rc.device.D_amb;
    dev["m_e"] = rc.device.m_e;
    dev["m_h"] = rc.device.m_h;
    dev["omega0"] = rc.device.omega0;
    dev["k0"] = rc.device.k0;
    dev["W"] = rc.device.W;
    dev["L"] = rc.device.L;
    dev["sigma"] = rc.device.sigma;
    dev["eps_r"] = rc.device.eps_r;
    dev["T"] = rc.device.T;
    dev["hbar"] = rc.device.hbar;
    dev["kB"] = rc.device.kB;
    dev["c_light"] = rc.device.c_light;
    {
        json jp;
        switch (rc.device.j_profile.kind) {
            case CurrentProfile::Kind::none: jp["kind"] = "none"; break;
            case CurrentProfile::Kind::uniform: jp["kind"] = "uniform"; break;
            case CurrentProfile::Kind::gaussian: jp["kind"] = "gaussian"; break;
        }
        jp["amplitude"] = rc.device.j_profile.amplitude;
        jp["center"] = rc.device.j_profile.center;
        jp["width"] = rc.device.j_profile.width;
        dev["j_profile"] = jp;
    }
    json num;
    num["n_x"] = rc.numerics.n_x;
    num["n_k"] = rc.numerics.n_k;
    num["dx"] = rc.numerics.dx;
    num["k_max"] = rc.numerics.k_max;
    num["dt"] = rc.numerics.dt;
    num["t_end"] = rc.numerics.t_end;
    num["rtol"] = rc.numerics.rtol;
    num["boundary"] =
        rc.numerics.boundary == NumericsConfig::Boundary::periodic ? "periodic" : "dirichlet";
    num["integrator"] =
        rc.numerics.integrator == NumericsConfig::Integrator::rk4 ? "rk4" : "ifrk4";
    num["engine"] =
        rc.numerics.engine == NumericsConfig::Engine::parallel ? "parallel" : "serial";
    num["freeze_carriers"] = rc.numerics.freeze_carriers;
    num["snapshot_interval"] = rc.numerics.snapshot_interval;
    num["snapshot_full_correlation"] = rc.numerics.snapshot_full_correlation;

    json bs;
    bs["omega_list"] = rc.beta_scan.omega_list;
    bs["Omega_f_min"] = rc.beta_scan.Omega_f_min;
    bs["Omega_f_max"] = rc.beta_scan.Omega_f_max;
    bs["n_points"] = rc.beta_scan.n_points;

    json ff;
    ff["fractions"] = rc.farfield.fractions;
    ff["theta_min_deg"] = rc.farfield.theta_min_deg;
    ff["theta_max_deg"] = rc.farfield.theta_max_deg;
    ff["n_theta"] = rc.farfield.n_theta;
    ff["backend"] = rc.farfield.backend;

    json ev;
    ev["N0"] = rc.evolve.N0;

    rc.tree = json{{"device", dev}, {"numerics", num}, {"beta_scan", bs},
                   {"farfield", ff}, {"evolve", ev}};
    return rc;
}

std::uint64_t config_fingerprint(const json& tree) {
    const std::string s = tree.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace qmbe
