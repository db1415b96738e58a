#include "asymlab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "json.hpp"

#include "asymlab/inner_fold.hpp"
#include "asymlab/inner_riemann.hpp"
#include "asymlab/inner_weakshock.hpp"
#include "asymlab/large_gradient.hpp"
#include "asymlab/limit_solver.hpp"
#include "asymlab/viscous_solver.hpp"

namespace asymlab {

const char* scenario_kind_name(ScenarioKind kind) noexcept
{
    switch (kind) {
    case ScenarioKind::initial_jump: return "initial-jump";
    case ScenarioKind::collision: return "collision";
    case ScenarioKind::fold: return "fold";
    case ScenarioKind::weakshock: return "weakshock";
    case ScenarioKind::large_gradient: return "large-gradient";
    }
    return "unknown";
}

namespace {

std::string num(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num_list(const std::vector<double>& v)
{
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k)
        s += (k ? ", " : "") + num(v[k]);
    return s + "]";
}

[[noreturn]] void parse_fail(const std::string& field, const std::string& what)
{
    throw Error(ErrorCode::parse_error, "field " + field + ": " + what);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::validation_error, what); }

std::string trim(std::string s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& field, const std::string& text)
{
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf")
        return std::numeric_limits<double>::infinity();
    if (t == "-inf")
        return -std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        parse_fail(field, "'" + t + "' is not a number");
    return v;
}

int parse_int(const std::string& field, const std::string& text)
{
    const double v = parse_number(field, text);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        parse_fail(field, "'" + trim(text) + "' is not an integer");
    return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& field, const std::string& text)
{
    std::string t = trim(text);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']')
            parse_fail(field, "unterminated list");
        t = t.substr(1, t.size() - 2);
    }
    std::vector<double> out;
    if (trim(t).empty())
        return out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(field, item));
    return out;
}

ScenarioKind parse_kind(const std::string& field, std::string s)
{
    std::replace(s.begin(), s.end(), '_', '-');
    for (auto k : {ScenarioKind::initial_jump, ScenarioKind::collision, ScenarioKind::fold, ScenarioKind::weakshock,
                   ScenarioKind::large_gradient})
        if (s == scenario_kind_name(k))
            return k;
    parse_fail(field, "unknown scenario kind '" + s + "'");
}

FluxKind parse_flux_kind(const std::string& field, std::string s)
{
    std::replace(s.begin(), s.end(), '_', '-');
    for (auto k : {FluxKind::burgers, FluxKind::polynomial, FluxKind::composed_analytic})
        if (s == flux_kind_name(k))
            return k;
    parse_fail(field, "unknown flux kind '" + s + "'");
}

struct KindDefaults {
    WindowSpec window;
    InitialSpec initial;
    std::vector<double> epsilon;
    std::vector<double> rho;
    double band_lo;
    double band_hi;
};

KindDefaults defaults_for(ScenarioKind kind, const std::string& formula)
{
    KindDefaults d;
    d.band_hi = std::numeric_limits<double>::infinity();
    switch (kind) {
    case ScenarioKind::initial_jump:
        d.window = {-10.0, 10.0, 1.0, 10.0, 81, 10};
        d.initial.variant = "step";
        d.initial.width = 4.0;
        d.epsilon = {0.1, 0.05, 0.025};
        d.band_lo = 0.8;
        break;
    case ScenarioKind::collision:
        d.window = {-10.0, 10.0, -5.0, 5.0, 81, 21};
        d.initial.variant = "three_state";
        d.epsilon = {0.02, 0.01, 0.005};
        d.band_lo = 0.8;
        break;
    case ScenarioKind::fold:
        d.window = {-3.0, 3.0, -2.0, 2.0, 61, 41};
        d.initial.variant = "tanh";
        d.epsilon = {1e-2, 5e-3, 2.5e-3};
        d.band_lo = 0.4;
        break;
    case ScenarioKind::weakshock:
        d.window = {-3.0, 3.0, -2.0, 2.0, 61, 41};
        d.initial.variant = "weak";
        d.epsilon = {1e-2, 5e-3, 2.5e-3};
        d.band_lo = 0.1;
        break;
    case ScenarioKind::large_gradient:
        d.window = {-1.0, 1.0, 0.1, 1.0, 41, 10};
        d.initial.variant = "scaled_tanh";
        d.epsilon = {0.05};
        d.rho = {0.01, 0.005, 0.0025, 0.00125};
        d.band_lo = formula == "renormalized" ? 0.15 : 0.3;
        d.band_hi = formula == "renormalized" ? 0.5 : 0.8;
        break;
    }
    return d;
}

using boost::property_tree::ptree;

const std::map<std::string, std::set<std::string>>& known_fields()
{
    static const std::map<std::string, std::set<std::string>> fields{
        {"scenario", {"kind", "reference", "formula", "threads"}},
        {"scenario.window", {"xi_min", "xi_max", "tau_min", "tau_max", "nx", "ntau"}},
        {"flux", {"kind", "coefficients", "exp_amplitude", "exp_rate", "interval"}},
        {"initial",
         {"variant", "amplitude", "width", "value", "u_minus", "u_plus", "kappa", "a", "states", "jumps"}},
        {"sweep", {"epsilon", "eps", "rho"}},
        {"solver", {"cells", "half_width"}},
        {"report", {"out_dir", "slope_band"}},
    };
    return fields;
}

} // namespace

std::vector<double> ScenarioConfig::parameters() const
{
    if (kind != ScenarioKind::large_gradient)
        return epsilon;
    std::vector<double> mu;
    for (std::size_t k = 0; k < rho.size(); ++k)
        mu.push_back(rho[k] / eps_of_leg(k));
    return mu;
}

double ScenarioConfig::eps_of_leg(std::size_t k) const
{
    if (epsilon.empty())
        invalid("epsilon list is empty");
    return epsilon.size() == 1 ? epsilon.front() : epsilon.at(k);
}

double ScenarioConfig::rho_of_leg(std::size_t k) const { return rho.at(k); }

void ScenarioConfig::validate() const
{
    const bool lg = kind == ScenarioKind::large_gradient;
    if (lg) {
        if (rho.size() < 3)
            invalid("large-gradient sweeps need at least 3 rho values");
        if (epsilon.size() != 1 && epsilon.size() != rho.size())
            invalid("large-gradient epsilon list must have 1 entry or one per rho");
        for (double r : rho)
            if (!(r > 0.0))
                invalid("rho values must be positive");
    } else if (epsilon.size() < 3) {
        invalid("epsilon list needs at least 3 entries for a rate fit");
    }
    for (double e : epsilon)
        if (!(e > 0.0) || !std::isfinite(e))
            invalid("epsilon values must be positive and finite");
    const auto p = parameters();
    for (std::size_t k = 1; k < p.size(); ++k)
        if (!(p[k] < p[k - 1]))
            invalid(std::string(lg ? "mu = rho/eps" : "epsilon") + " list must be strictly decreasing");
    if (lg)
        for (double m : p)
            if (!(m < 1.0))
                invalid("mu = rho/eps must be below 1");

    const auto& w = window;
    for (double v : {w.x_min, w.x_max, w.t_min, w.t_max})
        if (!std::isfinite(v))
            invalid("window bounds must be finite");
    if (!(w.x_min < w.x_max) || !(w.t_min <= w.t_max))
        invalid("window needs xi_min < xi_max and tau_min <= tau_max");
    if (w.nx < 2 || w.nt < 1 || w.nx > 100000 || w.nt > 100000)
        invalid("window needs 2 <= nx and 1 <= ntau, both at most 1e5");
    if (kind == ScenarioKind::initial_jump && !(w.t_min > 0.0))
        invalid("initial-jump window needs tau_min > 0");
    if (lg && !(w.t_min > 0.0))
        invalid("large-gradient window needs t_min > 0");

    if (!(band_lo <= band_hi) || std::isnan(band_lo))
        invalid("slope_band needs lo <= hi");
    if (reference != "auto" && reference != "cole_hopf" && reference != "solver")
        invalid("reference must be auto, cole_hopf or solver");
    if (formula != "composite" && formula != "renormalized")
        invalid("formula must be composite or renormalized");
    if (solver_cells < 16)
        invalid("solver cells must be at least 16");
    if (!(solver_half_width >= 0.0))
        invalid("solver half_width must be non-negative");
    if (threads < 0)
        invalid("threads must be non-negative");

    FluxFunction f;
    try {
        f = make_flux(flux);
    } catch (const Error& e) {
        invalid(std::string("flux: ") + e.what());
    }
    const bool burgers = f.kind() == FluxKind::burgers;
    if (reference == "cole_hopf" && !burgers)
        invalid("the Cole-Hopf reference needs the Burgers flux");
    if (kind == ScenarioKind::collision && !burgers)
        invalid("collision scenarios compare against the exact Burgers layer and need the Burgers flux");

    const auto& v = initial.variant;
    static const std::map<ScenarioKind, std::string> allowed{{ScenarioKind::initial_jump, "step"},
                                                              {ScenarioKind::collision, "three_state"},
                                                              {ScenarioKind::fold, "tanh"},
                                                              {ScenarioKind::weakshock, "weak"},
                                                              {ScenarioKind::large_gradient, "scaled_tanh"}};
    if (v != "constant" && v != allowed.at(kind))
        invalid(std::string(scenario_kind_name(kind)) + " scenarios take initial variant " + allowed.at(kind) +
                " or constant, not " + v);
    if (v == "step" && !(initial.u_minus > initial.u_plus))
        invalid("step data needs u_minus > u_plus");
    if (v == "three_state") {
        const auto& s = initial.states;
        const auto& j = initial.jumps;
        if (s.size() != 3 || j.size() != 2)
            invalid("three_state data needs 3 states and 2 jumps");
        if (!(s[0] > s[1] && s[1] > s[2]) || !(j[0] < j[1]))
            invalid("three_state data needs decreasing states and increasing jumps");
    }
    if ((v == "tanh" || v == "scaled_tanh") && (!(initial.width > 0.0) || initial.amplitude == 0.0))
        invalid("tanh data needs width > 0 and a non-zero amplitude");
    if (v == "scaled_tanh" && !(initial.amplitude < 0.0))
        invalid("scaled_tanh data needs a negative amplitude so that nu0- > nu0+");
    if (v == "weak") {
        if (!(initial.a > 0.0))
            invalid("weak data needs a > 0");
        if (!f.is_normalized())
            invalid("weak-shock scenarios need phi(0) = phi'(0) = 0 and phi''(0) = 1");
        if (!(initial.a - f.d3(0.0) / 2.0 > 0.0))
            invalid("weak-shock scenarios need b = a - phi'''(0)/2 > 0");
    }
}

namespace {

// The ini reader only knows whole-line comments; drop "; ..." and "# ..." after a value too.
std::string strip_inline_comments(const std::string& text)
{
    std::istringstream lines(text);
    std::string out, line;
    while (std::getline(lines, line)) {
        for (std::size_t k = 1; k < line.size(); ++k)
            if ((line[k] == ';' || line[k] == '#') && std::isspace(static_cast<unsigned char>(line[k - 1]))) {
                line.erase(k);
                break;
            }
        out += line + "\n";
    }
    return out;
}

} // namespace

ScenarioConfig parse_config_text(const std::string& text)
{
    ptree pt;
    std::istringstream in(strip_inline_comments(text));
    try {
        boost::property_tree::ini_parser::read_ini(in, pt);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw Error(ErrorCode::parse_error, "line " + std::to_string(e.line()) + ": " + e.message());
    }

    std::map<std::string, std::string> values;
    for (const auto& [section, body] : pt) {
        if (body.empty())
            parse_fail(section, "top-level keys are not allowed; put them in a section");
        std::string name = section;
        if (name == "window")
            name = "scenario.window";
        const auto known = known_fields().find(name);
        if (known == known_fields().end())
            parse_fail("[" + section + "]", "unknown section");
        for (const auto& [key, leaf] : body) {
            if (!leaf.empty() || !known->second.count(key))
                parse_fail(name + "." + key, "unknown field");
            values[name + "." + (key == "eps" ? std::string("epsilon") : key)] = leaf.data();
        }
    }

    ScenarioConfig cfg;
    auto has = [&](const std::string& k) { return values.count(k) > 0; };
    auto get = [&](const std::string& k) { return values.at(k); };

    if (!has("scenario.kind"))
        parse_fail("scenario.kind", "missing");
    cfg.kind = parse_kind("scenario.kind", trim(get("scenario.kind")));
    if (has("scenario.formula"))
        cfg.formula = trim(get("scenario.formula"));
    const auto d = defaults_for(cfg.kind, cfg.formula);
    auto note = [&](const std::string& k) { cfg.defaults_applied.push_back(k); };
    if (!has("scenario.formula") && cfg.kind == ScenarioKind::large_gradient)
        note("scenario.formula");
    if (has("scenario.reference"))
        cfg.reference = trim(get("scenario.reference"));
    else
        note("scenario.reference");
    if (has("scenario.threads"))
        cfg.threads = parse_int("scenario.threads", get("scenario.threads"));

    auto number_or = [&](const std::string& k, double fallback) {
        if (has(k))
            return parse_number(k, get(k));
        note(k);
        return fallback;
    };
    auto int_or = [&](const std::string& k, int fallback) {
        if (has(k))
            return parse_int(k, get(k));
        note(k);
        return fallback;
    };
    auto list_or = [&](const std::string& k, const std::vector<double>& fallback) {
        if (has(k))
            return parse_list(k, get(k));
        note(k);
        return fallback;
    };

    cfg.window.x_min = number_or("scenario.window.xi_min", d.window.x_min);
    cfg.window.x_max = number_or("scenario.window.xi_max", d.window.x_max);
    cfg.window.t_min = number_or("scenario.window.tau_min", d.window.t_min);
    cfg.window.t_max = number_or("scenario.window.tau_max", d.window.t_max);
    cfg.window.nx = int_or("scenario.window.nx", d.window.nx);
    cfg.window.nt = int_or("scenario.window.ntau", d.window.nt);

    cfg.flux.kind = has("flux.kind") ? parse_flux_kind("flux.kind", trim(get("flux.kind"))) : FluxKind::burgers;
    if (!has("flux.kind"))
        note("flux.kind");
    cfg.flux.coefficients = has("flux.coefficients") ? parse_list("flux.coefficients", get("flux.coefficients"))
                                                     : std::vector<double>{};
    if (cfg.flux.kind != FluxKind::burgers && cfg.flux.coefficients.empty())
        parse_fail("flux.coefficients", "needed for polynomial and composed-analytic fluxes");
    cfg.flux.exp_amplitude = has("flux.exp_amplitude") ? parse_number("flux.exp_amplitude", get("flux.exp_amplitude")) : 0.0;
    cfg.flux.exp_rate = has("flux.exp_rate") ? parse_number("flux.exp_rate", get("flux.exp_rate")) : 0.0;
    const auto interval = list_or("flux.interval", {-1.0, 1.0});
    if (interval.size() != 2)
        parse_fail("flux.interval", "needs two entries [lo, hi]");
    cfg.flux.interval_lo = interval[0];
    cfg.flux.interval_hi = interval[1];

    InitialSpec& q = cfg.initial;
    q = d.initial;
    if (has("initial.variant"))
        q.variant = trim(get("initial.variant"));
    else
        note("initial.variant");
    static const std::set<std::string> variants{"tanh", "step", "three_state", "weak", "scaled_tanh", "constant"};
    if (!variants.count(q.variant))
        parse_fail("initial.variant", "unknown variant '" + q.variant + "'");
    q.amplitude = number_or("initial.amplitude", q.amplitude);
    q.width = number_or("initial.width", q.width);
    q.value = number_or("initial.value", q.value);
    q.u_minus = number_or("initial.u_minus", q.u_minus);
    q.u_plus = number_or("initial.u_plus", q.u_plus);
    q.kappa = number_or("initial.kappa", q.kappa);
    q.a = number_or("initial.a", q.a);
    q.states = list_or("initial.states", q.states);
    q.jumps = list_or("initial.jumps", q.jumps);

    cfg.epsilon = list_or("sweep.epsilon", d.epsilon);
    if (cfg.kind == ScenarioKind::large_gradient)
        cfg.rho = list_or("sweep.rho", d.rho);
    else if (has("sweep.rho"))
        parse_fail("sweep.rho", "only large-gradient scenarios take rho");

    cfg.solver_cells = int_or("solver.cells", cfg.solver_cells);
    cfg.solver_half_width = number_or("solver.half_width", 0.0);

    cfg.out_dir = has("report.out_dir") ? trim(get("report.out_dir")) : "";
    const auto band = list_or("report.slope_band", {d.band_lo, d.band_hi});
    if (band.size() != 2)
        parse_fail("report.slope_band", "needs two entries [lo, hi]");
    cfg.band_lo = band[0];
    cfg.band_hi = band[1];

    cfg.validate();
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string emit_config_text(const ScenarioConfig& cfg)
{
    std::ostringstream os;
    const auto& w = cfg.window;
    const auto& q = cfg.initial;
    os << "[scenario]\nkind = " << scenario_kind_name(cfg.kind) << "\nreference = " << cfg.reference
       << "\nformula = " << cfg.formula << "\nthreads = " << cfg.threads << "\n\n";
    os << "[scenario.window]\nxi_min = " << num(w.x_min) << "\nxi_max = " << num(w.x_max) << "\ntau_min = "
       << num(w.t_min) << "\ntau_max = " << num(w.t_max) << "\nnx = " << w.nx << "\nntau = " << w.nt << "\n\n";
    os << "[flux]\nkind = " << flux_kind_name(cfg.flux.kind) << "\n";
    if (!cfg.flux.coefficients.empty())
        os << "coefficients = " << num_list(cfg.flux.coefficients) << "\n";
    os << "exp_amplitude = " << num(cfg.flux.exp_amplitude) << "\nexp_rate = " << num(cfg.flux.exp_rate)
       << "\ninterval = " << num_list({cfg.flux.interval_lo, cfg.flux.interval_hi}) << "\n\n";
    os << "[initial]\nvariant = " << q.variant << "\namplitude = " << num(q.amplitude) << "\nwidth = " << num(q.width)
       << "\nvalue = " << num(q.value) << "\nu_minus = " << num(q.u_minus) << "\nu_plus = " << num(q.u_plus)
       << "\nkappa = " << num(q.kappa) << "\na = " << num(q.a) << "\nstates = " << num_list(q.states)
       << "\njumps = " << num_list(q.jumps) << "\n\n";
    os << "[sweep]\nepsilon = " << num_list(cfg.epsilon) << "\n";
    if (cfg.kind == ScenarioKind::large_gradient)
        os << "rho = " << num_list(cfg.rho) << "\n";
    os << "\n[solver]\ncells = " << cfg.solver_cells << "\nhalf_width = " << num(cfg.solver_half_width) << "\n\n";
    os << "[report]\n";
    if (!cfg.out_dir.empty())
        os << "out_dir = " << cfg.out_dir << "\n";
    os << "slope_band = " << num_list({cfg.band_lo, cfg.band_hi}) << "\n";
    return os.str();
}

namespace {

nlohmann::ordered_json json_number(double v)
{
    if (std::isfinite(v))
        return v;
    return num(v);
}

nlohmann::ordered_json config_json(const ScenarioConfig& cfg)
{
    nlohmann::ordered_json j;
    j["kind"] = scenario_kind_name(cfg.kind);
    j["reference"] = cfg.reference;
    if (cfg.kind == ScenarioKind::large_gradient)
        j["formula"] = cfg.formula;
    j["window"] = {{"xi_min", cfg.window.x_min}, {"xi_max", cfg.window.x_max}, {"tau_min", cfg.window.t_min},
                   {"tau_max", cfg.window.t_max}, {"nx", cfg.window.nx},       {"ntau", cfg.window.nt}};
    j["flux"] = {{"kind", flux_kind_name(cfg.flux.kind)},
                 {"coefficients", cfg.flux.coefficients},
                 {"exp_amplitude", cfg.flux.exp_amplitude},
                 {"exp_rate", cfg.flux.exp_rate},
                 {"interval", {cfg.flux.interval_lo, cfg.flux.interval_hi}}};
    const auto& q = cfg.initial;
    j["initial"] = {{"variant", q.variant}, {"amplitude", q.amplitude}, {"width", q.width},   {"value", q.value},
                    {"u_minus", q.u_minus}, {"u_plus", q.u_plus},       {"kappa", q.kappa},   {"a", q.a},
                    {"states", q.states},   {"jumps", q.jumps}};
    j["sweep"] = {{"epsilon", cfg.epsilon}};
    if (cfg.kind == ScenarioKind::large_gradient)
        j["sweep"]["rho"] = cfg.rho;
    j["solver"] = {{"cells", cfg.solver_cells}, {"half_width", cfg.solver_half_width}};
    j["report"] = {{"out_dir", cfg.out_dir}, {"slope_band", {json_number(cfg.band_lo), json_number(cfg.band_hi)}}};
    j["defaults_applied"] = cfg.defaults_applied;
    return j;
}

} // namespace

std::string resolved_config_json(const ScenarioConfig& cfg) { return config_json(cfg).dump(2); }

RateFit fit_rate(const std::vector<double>& parameters, const std::vector<double>& errors)
{
    if (parameters.size() != errors.size() || parameters.size() < 3)
        throw Error(ErrorCode::invalid_argument, "rate fit needs at least 3 (parameter, error) pairs");
    for (std::size_t k = 0; k < parameters.size(); ++k) {
        if (!(parameters[k] > 0.0))
            throw Error(ErrorCode::invalid_argument, "rate fit parameters must be positive");
        if (k > 0 && !(parameters[k] < parameters[k - 1]))
            throw Error(ErrorCode::invalid_argument, "rate fit parameters must be strictly decreasing");
        if (!(errors[k] >= 1e-14))
            throw Error(ErrorCode::degenerate_fit, "error " + num(errors[k]) + " is below the 1e-14 noise floor");
    }
    const double n = static_cast<double>(errors.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < errors.size(); ++k) {
        const double x = std::log(parameters[k]);
        const double y = std::log(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    RateFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t k = 0; k < errors.size(); ++k) {
        const double r = std::log(errors[k]) - intercept - fit.slope * std::log(parameters[k]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

namespace {

// Everything one leg needs: data, where the window sits, and the formula.
struct LegSetup {
    FluxFunction flux;
    InitialData data = InitialData::smooth(constant_profile(0.0), 0.0, 0.0);
    double eps = 0.0;
    double t0 = 0.0;
    double half_width = 1.0;
    double error_scale = 1.0;  // errors are divided by this (inner units)
    std::function<std::pair<double, double>(double, double)> to_physical;
    std::function<double(double, double)> asymptotic;
};

InitialData build_data(const ScenarioConfig& cfg, double rho)
{
    const auto& q = cfg.initial;
    if (q.variant == "constant")
        return InitialData::smooth(constant_profile(q.value), q.value, q.value);
    if (q.variant == "step")
        return InitialData::step_tanh(q.u_minus, q.u_plus, q.kappa, 0.0, q.width);
    if (q.variant == "three_state")
        return InitialData::piecewise_constant(q.jumps, q.states);
    if (q.variant == "tanh")
        return InitialData::smooth(tanh_profile(q.amplitude, q.width), -q.amplitude, q.amplitude, q.width);
    if (q.variant == "weak")
        return InitialData::weak_discontinuity(q.a);
    TailExpansion tails;
    tails.nu0_minus = -q.amplitude;
    tails.nu0_plus = q.amplitude;
    return InitialData::scaled(tanh_profile(q.amplitude, q.width), rho, tails);
}

LegSetup setup_leg(const ScenarioConfig& cfg, std::size_t leg)
{
    LegSetup s;
    s.flux = make_flux(cfg.flux);
    s.eps = cfg.eps_of_leg(leg);
    const double eps = s.eps;
    const bool constant = cfg.initial.variant == "constant";
    const double c = cfg.initial.value;
    const auto& q = cfg.initial;
    auto scaled = [](const InnerScaling& sc) {
        return [sc](double X, double T) { return sc.from_inner(X, T); };
    };

    switch (cfg.kind) {
    case ScenarioKind::initial_jump: {
        s.data = build_data(cfg, 1.0);
        const double um = constant ? c : q.u_minus;
        const double up = constant ? c : q.u_plus;
        const double speed = um == up ? s.flux.d1(um) : s.flux.chord_speed(um, up);
        s.to_physical = scaled(InnerScaling::initial_jump(eps, speed));
        TailExpansion tails;
        tails.nu0_minus = um;
        tails.nu0_plus = up;
        const FluxFunction flux = s.flux;
        s.asymptotic = [=](double x, double t) { return gamma_riemann(flux, tails, x / eps, t / eps); };
        break;
    }
    case ScenarioKind::collision: {
        s.data = build_data(cfg, 1.0);
        double xs = 0.0;
        double ts = 1.0;
        std::vector<double> st{c, c, c};
        if (!constant) {
            const auto births = jump_points(s.data, s.flux);
            const auto& u = q.states;
            const double reach = 2.0 * (q.jumps[1] - q.jumps[0]) / (u[0] - u[2]);
            const auto left = track_shock(s.data, s.flux, births.at(0), 1.5 * reach, 200);
            const auto right = track_shock(s.data, s.flux, births.at(1), 1.5 * reach, 200);
            const auto hit = detect_collision(left, right, s.flux);
            xs = hit.x_star;
            ts = hit.t_star;
            st = hit.states;
        }
        s.to_physical = scaled(InnerScaling::collision(eps, xs, ts));
        if (constant)
            s.asymptotic = [c](double, double) { return c; };
        else
            s.asymptotic = [=](double x, double t) {
                return merging_shocks_exact(st[0], st[1], st[2], 0.0, 0.0, (x - xs) / eps, (t - ts) / eps);
            };
        break;
    }
    case ScenarioKind::fold: {
        s.data = build_data(cfg, 1.0);
        if (constant) {
            s.to_physical = scaled(InnerScaling::fold(eps, 0.0, 1.0));
            s.asymptotic = [c](double, double) { return c; };
            break;
        }
        const auto norm = FoldNormalization::from(catastrophe_point(s.data, s.flux));
        s.to_physical = scaled(InnerScaling::fold(eps, norm.x_star, norm.t_star, norm.speed));
        s.asymptotic = [norm, eps](double x, double t) { return norm.leading(x, t, eps); };
        break;
    }
    case ScenarioKind::weakshock: {
        s.data = build_data(cfg, 1.0);
        s.t0 = -1.0;
        s.to_physical = scaled(InnerScaling::weak_shock(eps));
        s.error_scale = std::cbrt(eps);
        if (constant) {
            s.asymptotic = [c](double, double) { return c; };
            break;
        }
        const double b = WeakShockParams::from(q.a, s.flux.d3(0.0)).b;
        const double scale = std::cbrt(eps);
        s.asymptotic = [b, scale](double x, double t) {
            return scale * w20(x / (scale * scale), t / scale, b);
        };
        break;
    }
    case ScenarioKind::large_gradient: {
        const double rho = cfg.rho_of_leg(leg);
        s.data = build_data(cfg, rho);
        s.to_physical = [](double x, double t) { return std::pair{x, t}; };
        if (constant) {
            s.asymptotic = [c](double, double) { return c; };
            break;
        }
        const auto state = TwoParamState::from(eps, rho);
        const auto nu = tanh_profile(q.amplitude, q.width);
        TailExpansion tails;
        tails.nu0_minus = -q.amplitude;
        tails.nu0_plus = q.amplitude;
        const FluxFunction flux = s.flux;
        if (cfg.formula == "renormalized")
            s.asymptotic = [=](double x, double t) { return renormalized_u(x, t, state, nu, flux, tails); };
        else
            s.asymptotic = [=](double x, double t) { return composite_u(x, t, state, nu, flux, tails); };
        break;
    }
    }
    // solver box: far enough out that the data sit at their limits to rounding
    if (cfg.solver_half_width > 0.0)
        s.half_width = cfg.solver_half_width;
    else if (cfg.kind == ScenarioKind::weakshock)
        s.half_width = 1.0 / q.a;
    else if (cfg.kind == ScenarioKind::collision)
        s.half_width = std::max(std::abs(q.jumps.front()), std::abs(q.jumps.back())) + 4.0;
    else if (cfg.kind == ScenarioKind::large_gradient)
        s.half_width = 4.0;
    else
        s.half_width = 16.0 * q.width;
    return s;
}

bool use_cole_hopf(const ScenarioConfig& cfg, const FluxFunction& flux)
{
    if (cfg.reference == "auto")
        return flux.kind() == FluxKind::burgers;
    return cfg.reference == "cole_hopf";
}

double elapsed_seconds(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

LegResult evaluate_leg(const ScenarioConfig& cfg, std::size_t leg, bool reference, bool asymptotic)
{
    const auto start = std::chrono::steady_clock::now();
    const auto s = setup_leg(cfg, leg);
    const auto& w = cfg.window;

    std::vector<std::pair<double, double>> points;
    double t_last = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < w.nt; ++j) {
        const double T = w.nt == 1 ? w.t_min : w.t_min + (w.t_max - w.t_min) * j / (w.nt - 1);
        for (int i = 0; i < w.nx; ++i) {
            const double X = w.x_min + (w.x_max - w.x_min) * i / (w.nx - 1);
            points.emplace_back(X, T);
            const auto [x, t] = s.to_physical(X, T);
            if (!(t > s.t0))
                invalid("window point (" + num(X) + ", " + num(T) + ") lies at or before the data time");
            t_last = std::max(t_last, t);
        }
    }

    std::function<double(double, double)> ref;
    SpaceTimeField field;
    if (reference) {
        if (use_cole_hopf(cfg, s.flux)) {
            ref = [&](double x, double t) { return cole_hopf_burgers(s.data, x, t - s.t0, s.eps); };
        } else {
            ProblemConfig pc;
            pc.flux = s.flux;
            pc.initial = s.data;
            pc.epsilon = s.eps;
            pc.t0 = s.t0;
            pc.t_end = t_last;
            pc.half_width = s.half_width;
            pc.validate();
            const int nt = stable_time_steps(pc, cfg.solver_cells);
            field = solve_viscous(pc, cfg.solver_cells, nt);
            ref = [&](double x, double t) { return field.sample(x, t); };
        }
    }

    LegResult out;
    out.param = cfg.parameters().at(leg);
    out.rows.reserve(points.size());
    for (const auto& [X, T] : points) {
        const auto [x, t] = s.to_physical(X, T);
        FieldRow r;
        r.inner_x = X;
        r.inner_t = T;
        r.u_reference = reference ? ref(x, t) : std::nan("");
        r.u_asymptotic = asymptotic ? s.asymptotic(x, t) : std::nan("");
        r.abs_error = reference && asymptotic ? std::abs(r.u_reference - r.u_asymptotic) : std::nan("");
        if (reference && asymptotic) {
            out.sup_error_absolute = std::max(out.sup_error_absolute, r.abs_error);
            out.sup_error = std::max(out.sup_error, r.abs_error / s.error_scale);
        }
        out.rows.push_back(r);
    }
    out.runtime_s = elapsed_seconds(start);
    return out;
}

SweepReport run_scenario(const ScenarioConfig& cfg)
{
    cfg.validate();
    SweepReport rep;
    rep.config = cfg;
    const std::size_t legs = cfg.parameters().size();
    const std::size_t slots =
        cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads) : std::max<std::size_t>(1, legs);
    rep.legs.resize(legs);
    // each leg owns its solver; results land in their own slot so order never depends on timing
    for (std::size_t first = 0; first < legs; first += slots) {
        std::vector<std::future<LegResult>> running;
        for (std::size_t k = first; k < std::min(legs, first + slots); ++k)
            running.push_back(std::async(std::launch::async, [&cfg, k] { return evaluate_leg(cfg, k); }));
        for (std::size_t k = 0; k < running.size(); ++k)
            rep.legs[first + k] = running[k].get();
    }

    std::vector<double> params;
    std::vector<double> errors;
    for (const auto& l : rep.legs) {
        params.push_back(l.param);
        errors.push_back(l.sup_error);
    }
    try {
        const auto fit = fit_rate(params, errors);
        rep.slope = fit.slope;
        rep.residual = fit.residual;
        rep.pass = fit.slope >= cfg.band_lo && fit.slope <= cfg.band_hi;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::degenerate_fit)
            throw;
        // the asymptotics are exact to rounding: nothing to fit, nothing failed
        rep.degenerate = true;
        rep.pass = true;
    }
    return rep;
}

std::string SweepReport::json() const
{
    nlohmann::ordered_json j;
    j["scenario"] = scenario_kind_name(config.kind);
    j["resolved_config"] = config_json(config);
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& l : legs) {
        nlohmann::ordered_json r{{"param", l.param}, {"sup_error", l.sup_error}, {"runtime_s", l.runtime_s}};
        if (config.kind == ScenarioKind::weakshock)
            r["sup_error_absolute"] = l.sup_error_absolute;
        j["rows"].push_back(r);
    }
    if (degenerate) {
        j["slope"] = nullptr;
        j["residual"] = nullptr;
    } else {
        j["slope"] = slope;
        j["residual"] = residual;
    }
    j["degenerate_fit"] = degenerate;
    j["slope_band"] = {json_number(config.band_lo), json_number(config.band_hi)};
    j["pass"] = pass;
    return j.dump(2);
}

std::string field_csv(const std::vector<FieldRow>& rows)
{
    std::string s = "inner_x,inner_t,u_reference,u_asymptotic,abs_error\n";
    for (const auto& r : rows)
        s += num(r.inner_x) + "," + num(r.inner_t) + "," + num(r.u_reference) + "," + num(r.u_asymptotic) + "," +
             num(r.abs_error) + "\n";
    return s;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::io_error, "cannot write " + path.string());
    out << text;
    if (!out)
        throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

} // namespace

void write_report(const SweepReport& report)
{
    if (report.config.out_dir.empty())
        throw Error(ErrorCode::io_error, "report.out_dir is not set");
    const std::filesystem::path dir(report.config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorCode::io_error, "cannot create " + dir.string() + ": " + ec.message());
    for (std::size_t k = 0; k < report.legs.size(); ++k)
        write_file(dir / ("field_" + std::to_string(k) + ".csv"), field_csv(report.legs[k].rows));
    write_file(dir / "report.json", report.json() + "\n");
}

std::string limit_curves_csv(const ScenarioConfig& cfg, int characteristics, int samples)
{
    if (characteristics < 2 || samples < 1)
        throw Error(ErrorCode::invalid_argument, "need at least 2 characteristics and 1 sample");
    cfg.validate();
    const auto s = setup_leg(cfg, 0);
    // physical time span: from the data to a little past the singular point
    double t_end = 1.0;
    switch (cfg.kind) {
    case ScenarioKind::initial_jump: t_end = 1.0; break;
    case ScenarioKind::weakshock: t_end = 0.5; break;
    case ScenarioKind::large_gradient: t_end = cfg.window.t_max; break;
    case ScenarioKind::collision:
    case ScenarioKind::fold: t_end = 2.0 * s.to_physical(0.0, 0.0).second; break;
    }
    if (!(t_end > s.t0))
        t_end = s.t0 + 1.0;

    std::string out = "curve,id,t,x,u\n";
    const double L = s.half_width;
    for (int k = 0; k < characteristics; ++k) {
        const double foot = -L + 2.0 * L * k / (characteristics - 1);
        const double u = eval_initial(s.data, foot);
        for (int n = 0; n <= samples; ++n) {
            const double t = s.t0 + (t_end - s.t0) * n / samples;
            out += "characteristic," + std::to_string(k) + "," + num(t) + "," +
                   num(foot + s.flux.d1(u) * (t - s.t0)) + "," + num(u) + "\n";
        }
    }

    std::vector<SingularPoint> births;
    try {
        births = jump_points(s.data, s.flux, s.t0);
    } catch (const Error&) {
    }
    if (births.empty()) {
        try {
            births.push_back(catastrophe_point(s.data, s.flux, s.t0));
        } catch (const Error&) {
        }
    }
    std::vector<ShockCurve> curves;
    for (const auto& b : births) {
        try {
            curves.push_back(track_shock(s.data, s.flux, b, t_end, samples));
        } catch (const Error&) {
        }
    }
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const auto& c = curves[k];
        for (std::size_t n = 0; n < c.t.size(); ++n)
            out += "shock," + std::to_string(k) + "," + num(c.t[n]) + "," + num(c.s[n]) + "," +
                   num(0.5 * (c.u_minus[n] + c.u_plus[n])) + "\n";
    }
    for (std::size_t k = 0; k + 1 < curves.size(); ++k) {
        try {
            const auto hit = detect_collision(curves[k], curves[k + 1], s.flux);
            out += "collision," + std::to_string(k) + "," + num(hit.t_star) + "," + num(hit.x_star) + "," +
                   num(hit.states.empty() ? 0.0 : hit.states[1]) + "\n";
        } catch (const Error&) {
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// verify suite
// ---------------------------------------------------------------------------

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

Outcome bound_check(double worst, double limit, const std::string& what)
{
    return {worst <= limit, what + " " + num(worst) + " (limit " + num(limit) + ")"};
}

Outcome odd_cole_hopf()
{
    const auto q = InitialData::smooth(tanh_profile(-1.0), 1.0, -1.0);
    double worst = 0.0;
    for (double t : {0.5, 1.0, 1.5})
        for (double x = 0.1; x <= 3.0; x += 0.3)
            worst = std::max(worst, std::abs(cole_hopf_burgers(q, x, t, 0.05) + cole_hopf_burgers(q, -x, t, 0.05)));
    return bound_check(worst, 1e-12, "max |u(x) + u(-x)|");
}

Outcome odd_layers()
{
    double worst = 0.0;
    for (double x = 0.25; x <= 4.0; x += 0.5)
        for (double t = -3.0; t <= 3.0; t += 1.0) {
            worst = std::max(worst, std::abs(w10(x, t) + w10(-x, t)));
            worst = std::max(worst, std::abs(merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, x, t) +
                                             merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, -x, t)));
            if (t > 0.0)
                worst = std::max(worst, std::abs(burgers_step_exact(1.0, -1.0, x, t) +
                                                 burgers_step_exact(1.0, -1.0, -x, t)));
        }
    const auto nu = default_large_gradient_profile();
    for (double s = 0.3; s <= 3.0; s += 0.9)
        worst = std::max(worst, std::abs(h0(nu, s, 0.7) + h0(nu, -s, 0.7)));
    return bound_check(worst, 1e-12, "max odd-part defect");
}

Outcome positive_kernels()
{
    double lowest = 1.0;
    bool ok = true;
    for (double x = -5.0; x <= 5.0; x += 0.5)
        for (double t = -5.0; t <= 5.0; t += 0.5) {
            const auto l = lambda_scaled(x, t);
            ok = ok && l.value > 0.0;
            if (std::abs(x) <= 3.0 && std::abs(t) <= 3.0)
                for (double b : {0.5, 1.0}) {
                    const auto p = phi_scaled(x, t, b);
                    ok = ok && p.value > 0.0 && w20(x, t, b) > 0.0 && w30(x, t, b) < 0.0;
                    lowest = std::min(lowest, p.value);
                }
        }
    return {ok, ok ? "Lambda, Phi, w20 > 0 and w30 < 0 on the grid" : "a sign check failed"};
}

Outcome solver_conservation()
{
    ProblemConfig cfg;
    cfg.initial = InitialData::smooth(tanh_profile(-1.0), 1.0, -1.0);
    cfg.epsilon = 0.05;
    cfg.t_end = 1.5;
    cfg.half_width = 6.0;
    const auto f = solve_viscous(cfg, 800, stable_time_steps(cfg, 800));
    double worst = 0.0;
    for (int n = 0; n <= f.nt; ++n)
        worst = std::max(worst, std::abs(f.mass(n) - f.mass(0) - f.net_inflow[n]));
    return bound_check(worst, 1e-10, "mass balance defect");
}

Outcome solver_bounds_and_order()
{
    ProblemConfig lo;
    lo.initial = InitialData::smooth(tanh_profile(-0.8), 0.8, -0.8);
    lo.epsilon = 0.05;
    lo.t_end = 2.0;
    lo.half_width = 6.0;
    ProblemConfig hi = lo;
    hi.initial = InitialData::smooth(tanh_profile(-0.8, 1.0, 0.1), 0.9, -0.7);
    const int nx = 600;
    const int nt = std::max(stable_time_steps(lo, nx), stable_time_steps(hi, nx));
    const auto a = solve_viscous(lo, nx, nt);
    const auto b = solve_viscous(hi, nx, nt);
    double order = 0.0;
    double excess = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        order = std::max(order, a.values[k] - b.values[k]);
        excess = std::max(excess, std::abs(a.values[k]) - 0.8);
    }
    const bool ok = order <= 1e-12 && excess <= 1e-12;
    return {ok, "order violation " + num(order) + ", range excess " + num(excess)};
}

Outcome heat_comparison()
{
    const auto nu = default_large_gradient_profile();
    const auto higher = tanh_profile(-1.0, 1.0, 0.0, 0.5);
    double worst = 0.0;
    for (double s = -4.0; s <= 4.0; s += 0.5)
        for (double w : {0.01, 0.7, 9.0})
            worst = std::max(worst, h0(nu, s, w) - h0(higher, s, w));
    return bound_check(worst, 1e-14, "ordering defect");
}

Outcome rankine_hugoniot()
{
    const auto phi = burgers_flux(-2.0, 2.0);
    const auto skew = InitialData::smooth(tanh_profile(-1.0, 1.0, 0.3), 1.3, -0.7);
    const auto birth = catastrophe_point(skew, phi);
    const auto c = track_shock(skew, phi, birth, birth.t_star + 2.0, 400);
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < c.t.size(); ++k)
        worst = std::max(worst, std::abs(c.speed[k] - phi.chord_speed(c.u_minus[k], c.u_plus[k])));
    const auto q = InitialData::piecewise_constant({-1.0, 1.0}, {1.0, 0.0, -1.0});
    for (const auto& b : jump_points(q, phi)) {
        const auto s = track_shock(q, phi, b, 0.9, 50);
        for (std::size_t k = 0; k < s.t.size(); ++k)
            worst = std::max(worst, std::abs(s.speed[k] - phi.chord_speed(s.u_minus[k], s.u_plus[k])));
    }
    return bound_check(worst, 1e-6, "max |s' - chord speed|");
}

Outcome scaling_round_trip()
{
    double worst = 0.0;
    const std::vector<InnerScaling> scalings{InnerScaling::initial_jump(0.05, 0.3, 0.2, 0.1),
                                             InnerScaling::collision(0.02, -0.4, 1.5),
                                             InnerScaling::fold(1e-3, 0.0, 1.0, 0.7),
                                             InnerScaling::weak_shock(1e-4)};
    for (const auto& s : scalings)
        for (double x : {-1.3, 0.0, 2.1})
            for (double t : {0.4, 1.7}) {
                const auto [X, T] = s.to_inner(x, t);
                const auto [x2, t2] = s.from_inner(X, T);
                worst = std::max({worst, std::abs(x2 - x), std::abs(t2 - t)});
            }
    return bound_check(worst, 1e-12, "max round-trip defect");
}

const char* small_fold_config = R"([scenario]
kind = fold

[scenario.window]
nx = 7
ntau = 5

[sweep]
epsilon = [1e-2, 5e-3, 2.5e-3]
)";

Outcome config_round_trip()
{
    const auto a = parse_config_text(small_fold_config);
    const auto b = parse_config_text(emit_config_text(a));
    const bool same = emit_config_text(a) == emit_config_text(b) && config_json(a)["window"] == config_json(b)["window"];
    return {same, same ? "emit(parse(emit(cfg))) reproduces the config" : "config text changed on round trip"};
}

Outcome deterministic_sweep()
{
    const auto cfg = parse_config_text(small_fold_config);
    const auto a = run_scenario(cfg);
    const auto b = run_scenario(cfg);
    bool same = a.legs.size() == b.legs.size();
    for (std::size_t k = 0; same && k < a.legs.size(); ++k)
        same = field_csv(a.legs[k].rows) == field_csv(b.legs[k].rows);
    return {same, same ? "two runs wrote identical CSV bytes" : "CSV differs between runs"};
}

Outcome rate_fit_exact()
{
    const auto fit = fit_rate({1e-1, 5e-2, 2.5e-2}, {1e-1, 5e-2, 2.5e-2});
    const auto half = fit_rate({1.0, 0.5, 0.25}, {1e-2, 1e-2 / std::sqrt(2.0), 5e-3});
    const double worst = std::max(std::abs(fit.slope - 1.0), std::abs(half.slope - 0.5));
    return bound_check(worst, 1e-12, "slope defect");
}

} // namespace

std::vector<VerifyCheck> run_verify_suite()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
        {"symmetry: Cole-Hopf solution of odd data is odd", odd_cole_hopf},
        {"symmetry: w10, merging shocks, step layer and h0 are odd", odd_layers},
        {"positivity: Lambda, Phi, w20 positive; w30 negative", positive_kernels},
        {"conservation: solver mass change equals boundary inflow", solver_conservation},
        {"comparison principle: ordered data stay ordered and within range", solver_bounds_and_order},
        {"comparison principle: heat evolution h0 preserves order", heat_comparison},
        {"Rankine-Hugoniot speed on tracked shocks", rankine_hugoniot},
        {"round-trip: inner scalings invert", scaling_round_trip},
        {"round-trip: config text", config_round_trip},
        {"determinism: repeated sweep gives identical CSV", deterministic_sweep},
        {"rate fit: exact power laws", rate_fit_exact},
    };
    std::vector<VerifyCheck> out;
    for (const auto& [name, run] : checks) {
        const auto start = std::chrono::steady_clock::now();
        VerifyCheck c;
        c.name = name;
        try {
            const auto o = run();
            c.passed = o.passed;
            c.detail = o.detail;
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = e.what();
        }
        c.runtime_s = elapsed_seconds(start);
        out.push_back(c);
    }
    return out;
}

} // namespace asymlab
