#include "hzreach/model_io.hpp"

#include <filesystem>
#include <fstream>

#include "hzreach/errors.hpp"

namespace hzreach
{

namespace
{

const nlohmann::json& require_field(const nlohmann::json& j, const char* key, const std::string& where)
{
    const auto it = j.find(key);
    if (it == j.end())
        throw ConfigError("missing field '" + std::string(key) + "' in " + where);
    return *it;
}

double number_field(const nlohmann::json& j, const char* key, const std::string& where)
{
    const nlohmann::json& f = require_field(j, key, where);
    if (!f.is_number())
        throw ConfigError("field '" + std::string(key) + "' in " + where + " must be a number");
    return f.get<double>();
}

Interval parse_interval(const nlohmann::json& j, const std::string& where)
{
    try
    {
        if (j.is_array())
        {
            // scalar shorthand [lo, hi]
            if (j.size() != 2 || !j.at(0).is_number())
                throw ConfigError("interval array in " + where + " must be [lo, hi]");
            return Interval(j.at(0).get<double>(), j.at(1).get<double>());
        }
        return Interval(vec_from_json(require_field(j, "lo", where)), vec_from_json(require_field(j, "hi", where)));
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError("bad interval in " + where + ": " + e.what());
    }
}

Vec parse_vec(const nlohmann::json& j, const char* key, const std::string& where)
{
    try
    {
        return vec_from_json(require_field(j, key, where));
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError("field '" + std::string(key) + "' in " + where + ": " + e.what());
    }
}

Mat parse_mat(const nlohmann::json& j, const char* key, const std::string& where)
{
    try
    {
        return mat_from_json(require_field(j, key, where));
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError("field '" + std::string(key) + "' in " + where + ": " + e.what());
    }
}

} // namespace

nlohmann::json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open " + path);
    try
    {
        return nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw ConfigError("parse error in " + path + ": " + e.what());
    }
}

EnclosedFunction parse_function(const nlohmann::json& j, const Interval& context_domain, const std::string& where)
{
    if (!j.is_object())
        throw ConfigError("function spec in " + where + " must be an object");

    if (j.contains("breakpoints") || j.contains("values"))
    {
        const Vec bp = parse_vec(j, "breakpoints", where);
        const Vec val = parse_vec(j, "values", where);
        std::optional<double> delta;
        if (j.contains("delta"))
            delta = j.at("delta").get<double>();
        return enclose_table(bp, val, delta);
    }

    const std::string name = require_field(j, "name", where).get<std::string>();
    Interval domain = context_domain;
    if (j.contains("domain"))
        domain = parse_interval(j.at("domain"), where);
    if (domain.dim() != 1)
        throw ConfigError("named function in " + where + " needs a scalar domain");

    if (name == "sin")
    {
        const int segments = j.contains("segments") ? j.at("segments").get<int>() : 20;
        return enclose_sin(domain, segments);
    }
    if (name == "sat")
    {
        const nlohmann::json& lim = require_field(j, "limits", where);
        if (!lim.is_array() || lim.size() != 2)
            throw ConfigError("field 'limits' in " + where + " must be [lo, hi]");
        const double gain = j.contains("gain") ? j.at("gain").get<double>() : 1.0;
        return enclose_sat(domain, lim.at(0).get<double>(), lim.at(1).get<double>(), gain);
    }
    if (name == "identity")
    {
        Vec bp(2), val(2);
        bp << domain.lo(0), domain.hi(0);
        val = bp;
        return enclose_table(bp, val);
    }
    throw ConfigError("unknown function name '" + name + "' in " + where);
}

SystemModel parse_system(const nlohmann::json& j, const std::string& where)
{
    SystemModel m;
    m.amat = parse_mat(j, "A", where);
    m.bmat = parse_mat(j, "B", where);
    if (m.bmat.rows() == 0)
        m.bmat = Mat::Zero(m.amat.rows(), m.bmat.cols());
    m.state_domain = parse_interval(require_field(j, "X", where), where + ".X");
    m.input_domain = parse_interval(require_field(j, "U", where), where + ".U");

    const Interval xu = Interval::concat(m.state_domain, m.input_domain);
    if (j.contains("terms"))
    {
        const nlohmann::json& terms = j.at("terms");
        if (!terms.is_array())
            throw ConfigError("field 'terms' in " + where + " must be an array");
        for (size_t i = 0; i < terms.size(); ++i)
        {
            const std::string twhere = where + ".terms[" + std::to_string(i) + "]";
            const nlohmann::json& tj = terms.at(i);
            NonlinearTerm t;
            t.gain = parse_vec(tj, "gain", twhere);
            t.arg = parse_vec(tj, "arg", twhere);
            if (t.arg.size() != xu.dim())
                throw ConfigError("field 'arg' in " + twhere + " must have length n + nu");
            // the natural default domain is the argument's range over X x U
            double lo = 0.0, hi = 0.0;
            for (Eigen::Index k = 0; k < t.arg.size(); ++k)
            {
                lo += std::min(t.arg(k) * xu.lo(k), t.arg(k) * xu.hi(k));
                hi += std::max(t.arg(k) * xu.lo(k), t.arg(k) * xu.hi(k));
            }
            t.func = parse_function(require_field(tj, "func", twhere), Interval(lo, hi), twhere + ".func");
            m.terms.push_back(std::move(t));
        }
    }
    validate(m);
    return m;
}

Controller parse_controller(const nlohmann::json& j, const SystemModel& system, const std::string& where)
{
    Controller ctrl;
    const nlohmann::json& kj = require_field(j, "K", where);
    ctrl.gain = kj.is_array() && kj.size() > 0 && kj.at(0).is_array() ? Vec(mat_from_json(kj).row(0).transpose())
                                                                      : vec_from_json(kj);
    if (ctrl.gain.size() != system.n())
        throw ConfigError("field 'K' in " + where + " must have length n");

    double lo = 0.0, hi = 0.0;
    for (Eigen::Index k = 0; k < ctrl.gain.size(); ++k)
    {
        lo += std::min(ctrl.gain(k) * system.state_domain.lo(k), ctrl.gain(k) * system.state_domain.hi(k));
        hi += std::max(ctrl.gain(k) * system.state_domain.lo(k), ctrl.gain(k) * system.state_domain.hi(k));
    }
    const Interval srange(lo, hi);

    if (j.contains("func"))
    {
        ctrl.pwl = parse_function(j.at("func"), srange, where + ".func");
        return ctrl;
    }
    const nlohmann::json& lim = require_field(j, "limits", where);
    if (!lim.is_array() || lim.size() != 2)
        throw ConfigError("field 'limits' in " + where + " must be [lo, hi]");
    ctrl.pwl = enclose_sat(srange, lim.at(0).get<double>(), lim.at(1).get<double>());
    return ctrl;
}

HybZono parse_initial_set(const nlohmann::json& j, const std::string& where)
{
    Mat g = parse_mat(j, "G", where);
    Vec c = parse_vec(j, "c", where);
    Mat gb = j.contains("gb") ? mat_from_json(j.at("gb")) : Mat(c.size(), 0);
    Mat ac = j.contains("ac") ? mat_from_json(j.at("ac")) : Mat(0, 0);
    Mat ab = j.contains("ab") ? mat_from_json(j.at("ab")) : Mat(0, 0);
    Vec b = j.contains("b") ? vec_from_json(j.at("b")) : Vec(0);
    try
    {
        return HybZono(std::move(g), std::move(gb), std::move(c), std::move(ac), std::move(ab), std::move(b));
    }
    catch (const std::exception& e)
    {
        throw ConfigError("bad initial set in " + where + ": " + e.what());
    }
}

RunConfig parse_run_config(const nlohmann::json& j, const std::string& base_dir, const std::string& where)
{
    RunConfig cfg;
    const auto resolve = [&base_dir](const std::string& p)
    {
        std::filesystem::path path(p);
        return path.is_absolute() ? path.string() : (std::filesystem::path(base_dir) / path).string();
    };

    const std::string system_path = resolve(require_field(j, "system", where).get<std::string>());
    cfg.system = parse_system(load_json_file(system_path), system_path);
    const std::string ctrl_path = resolve(require_field(j, "controller", where).get<std::string>());
    cfg.controller = parse_controller(load_json_file(ctrl_path), cfg.system, ctrl_path);
    cfg.initial_set = parse_initial_set(require_field(j, "initial_set", where), where + ".initial_set");

    cfg.steps = static_cast<int>(number_field(j, "steps", where));
    if (cfg.steps < 0)
        throw ConfigError("field 'steps' in " + where + " must be nonnegative");
    if (j.contains("samples"))
        cfg.samples = j.at("samples").get<long>();
    if (cfg.samples < 0)
        throw ConfigError("field 'samples' in " + where + " must be nonnegative");
    if (j.contains("seed"))
        cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("reduce"))
        cfg.reduce = j.at("reduce").get<bool>();
    if (j.contains("node_limit"))
        cfg.node_limit = j.at("node_limit").get<long>();
    if (j.contains("tol"))
        cfg.tol = j.at("tol").get<double>();
    if (j.contains("out"))
        cfg.out_dir = j.at("out").get<std::string>();

    if (j.contains("grid"))
    {
        const nlohmann::json& gj = j.at("grid");
        GridSpec grid;
        if (gj.contains("dims"))
        {
            grid.dims.first = gj.at("dims").at(0).get<Eigen::Index>();
            grid.dims.second = gj.at("dims").at(1).get<Eigen::Index>();
        }
        grid.window = parse_interval(require_field(gj, "window", where + ".grid"), where + ".grid.window");
        grid.resolution = number_field(gj, "resolution", where + ".grid");
        if (gj.contains("target"))
            grid.target = gj.at("target").get<std::string>();
        cfg.grid = grid;
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path)
{
    const nlohmann::json j = load_json_file(path);
    const std::string base = std::filesystem::path(path).parent_path().string();
    return parse_run_config(j, base.empty() ? "." : base, path);
}

} // namespace hzreach
