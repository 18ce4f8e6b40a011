#include <ww/config.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace ww {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    if (v == "inf" || v == "infinite" || v == "infinity")
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw config_error("config: field '" + key + "' expects a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw config_error("config: field '" + key + "' expects an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw config_error("config: field '" + key + "' expects a boolean, got '" + v + "'");
}

} // namespace

RunConfig RunConfig::from_pairs(const std::map<std::string, std::string>& pairs) {
    RunConfig c;
    std::map<std::string, bool> seen;
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        auto it = pairs.find(key);
        if (it == pairs.end()) return std::nullopt;
        seen[key] = true;
        return it->second;
    };

    if (auto v = get("physics.g")) c.g = parse_double("physics.g", *v);
    if (auto v = get("physics.h")) c.h = parse_double("physics.h", *v);
    if (auto v = get("physics.amplitude")) c.amplitude = parse_double("physics.amplitude", *v);
    if (auto v = get("data.kind")) c.data_kind = *v;
    if (auto v = get("data.mode_k")) c.mode_k = static_cast<int>(parse_int("data.mode_k", *v));
    if (auto v = get("data.packet_k0")) c.packet_k0 = parse_double("data.packet_k0", *v);
    if (auto v = get("data.packet_width")) c.packet_width = parse_double("data.packet_width", *v);
    if (auto v = get("data.packet_center")) c.packet_center = parse_double("data.packet_center", *v);
    if (auto v = get("data.file")) c.data_file = *v;
    if (auto v = get("grid.n")) c.grid_n = static_cast<int>(parse_int("grid.n", *v));
    if (auto v = get("grid.length")) c.grid_length = parse_double("grid.length", *v);
    if (auto v = get("model")) c.model = *v;
    if (auto v = get("time.cfl")) c.cfl = parse_double("time.cfl", *v);
    if (auto v = get("time.dt")) c.dt = parse_double("time.dt", *v);
    if (auto v = get("time.T")) c.T = parse_double("time.T", *v);
    if (auto v = get("time.snap_stride")) c.snap_stride = static_cast<int>(parse_int("time.snap_stride", *v));
    if (auto v = get("filter.strength")) c.filter_strength = parse_double("filter.strength", *v);
    if (auto v = get("dealias")) c.dealias = parse_bool("dealias", *v);
    if (auto v = get("diag.densities")) c.diag_densities = parse_bool("diag.densities", *v);
    if (auto v = get("diag.virial")) c.diag_virial = parse_bool("diag.virial", *v);
    if (auto v = get("diag.linear_identities")) c.diag_linear_identities = parse_bool("diag.linear_identities", *v);
    if (auto v = get("diag.kernel")) c.diag_kernel = parse_bool("diag.kernel", *v);
    if (auto v = get("diag.qm")) c.diag_qm = parse_bool("diag.qm", *v);
    if (auto v = get("diag.local_energy")) c.diag_local_energy = parse_bool("diag.local_energy", *v);
    if (auto v = get("diag.norms")) c.diag_norms = parse_bool("diag.norms", *v);
    if (auto v = get("weight.kind")) c.weight_kind = *v;
    if (auto v = get("weight.eps")) c.weight_eps = parse_double("weight.eps", *v);
    if (auto v = get("weight.r")) c.weight_r = parse_double("weight.r", *v);
    if (auto v = get("weight.width")) c.weight_width = parse_double("weight.width", *v);
    if (auto v = get("weight.sigma")) c.sigma = parse_double("weight.sigma", *v);
    if (auto v = get("out.dir")) c.out_dir = *v;
    if (auto v = get("seed")) c.seed = static_cast<unsigned long long>(parse_int("seed", *v));
    if (auto v = get("strict")) c.strict = parse_bool("strict", *v);

    for (const auto& [k, v] : pairs) {
        if (!seen.count(k)) throw config_error("config: unknown field '" + k + "'");
        (void)v;
    }

    // schema validation
    if (!(c.T > 0.0)) throw config_error("config: missing or invalid required field 'time.T'");
    if (c.grid_n <= 0 || c.grid_n % 2 != 0)
        throw config_error("config: 'grid.n' must be a positive even integer");
    if (!(c.grid_length > 0.0)) throw config_error("config: 'grid.length' must be positive");
    if (!(c.g > 0.0)) throw config_error("config: 'physics.g' must be positive");
    if (!(c.h > 0.0)) throw config_error("config: 'physics.h' must be positive or inf");
    if (c.model != "linear" && c.model != "nonlinear")
        throw config_error("config: 'model' must be linear or nonlinear");
    if (c.data_kind != "mode" && c.data_kind != "packet" && c.data_kind != "file" &&
        c.data_kind != "rest")
        throw config_error("config: 'data.kind' must be mode, packet, file or rest");
    if (c.data_kind == "file" && c.data_file.empty())
        throw config_error("config: missing required field 'data.file'");
    if (c.weight_kind != "bump" && c.weight_kind != "rational")
        throw config_error("config: 'weight.kind' must be bump or rational");
    if (!(c.sigma >= 0.0 && c.sigma <= 1.0)) throw config_error("config: 'weight.sigma' in [0,1]");
    if (c.snap_stride < 1) throw config_error("config: 'time.snap_stride' must be >= 1");

    // canonical echo, with defaults marked
    auto put = [&](const std::string& k, const std::string& v) {
        c.echo[k] = v;
        if (!pairs.count(k)) c.defaulted.push_back(k);
    };
    auto num = [](double d) {
        if (std::isinf(d)) return std::string("inf");
        std::ostringstream os;
        os.precision(17);
        os << d;
        return os.str();
    };
    put("physics.g", num(c.g));
    put("physics.h", num(c.h));
    put("physics.amplitude", num(c.amplitude));
    put("data.kind", c.data_kind);
    put("data.mode_k", std::to_string(c.mode_k));
    put("data.packet_k0", num(c.packet_k0));
    put("data.packet_width", num(c.packet_width));
    put("data.packet_center", num(c.packet_center));
    put("data.file", c.data_file);
    put("grid.n", std::to_string(c.grid_n));
    put("grid.length", num(c.grid_length));
    put("model", c.model);
    put("time.cfl", num(c.cfl));
    put("time.dt", num(c.dt));
    put("time.T", num(c.T));
    put("time.snap_stride", std::to_string(c.snap_stride));
    put("filter.strength", num(c.filter_strength));
    put("dealias", c.dealias ? "true" : "false");
    put("diag.densities", c.diag_densities ? "true" : "false");
    put("diag.virial", c.diag_virial ? "true" : "false");
    put("diag.linear_identities", c.diag_linear_identities ? "true" : "false");
    put("diag.kernel", c.diag_kernel ? "true" : "false");
    put("diag.qm", c.diag_qm ? "true" : "false");
    put("diag.local_energy", c.diag_local_energy ? "true" : "false");
    put("diag.norms", c.diag_norms ? "true" : "false");
    put("weight.kind", c.weight_kind);
    put("weight.eps", num(c.weight_eps));
    put("weight.r", num(c.weight_r));
    put("weight.width", num(c.weight_width));
    put("weight.sigma", num(c.sigma));
    put("out.dir", c.out_dir);
    put("seed", std::to_string(c.seed));
    put("strict", c.strict ? "true" : "false");
    return c;
}

RunConfig RunConfig::load(const std::string& path, const std::vector<std::string>& overrides) {
    std::map<std::string, std::string> pairs;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw config_error("config: cannot open '" + path + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                std::ostringstream os;
                os << "config: line " << lineno << " is not key=value: '" << line << "'";
                throw config_error(os.str());
            }
            pairs[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw config_error("config: --set expects key=value, got '" + ov + "'");
        pairs[trim(ov.substr(0, eq))] = trim(ov.substr(eq + 1));
    }
    return from_pairs(pairs);
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    for (const auto& [k, v] : echo) os << k << "=" << v << "\n";
    return os.str();
}

unsigned long long RunConfig::hash() const {
    const std::string s = canonical();
    unsigned long long h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace ww
