// cli.cpp: command implementations behind the dressed tool

#include "dressed/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "dressed/amplitudes.hpp"
#include "dressed/brownian.hpp"
#include "dressed/error.hpp"
#include "dressed/oracle.hpp"
#include "dressed/spectrum.hpp"
#include "dressed/transform.hpp"

namespace dressed::cli {

namespace {

const std::set<std::string> kKnownKeys = {
    "bar_omega", "g",     "beta",    "cavity_L", "delta",  "light_speed",  "n_modes", "hbar", "t_max",
    "samples",   "k_max", "n_bar",   "theta",    "route",  "method",       "regime",  "eq11_variant",
    "out",
};

const std::vector<std::string> kRoutes = {"finite-n", "cavity", "small-l"};
const std::vector<std::string> kMethods = {"discrete", "closed", "quadrature"};
const std::vector<std::string> kRegimes = {"weak", "strong"};
const std::vector<std::string> kVariants = {"published", "rederived"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw InputError("config key " + key + ": not a number: '" + text + "'");
    }
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
    unsigned long long v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw InputError("config key " + key + ": not a non-negative integer: '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

void require_member(const std::string& key, const std::string& value,
                    const std::vector<std::string>& allowed) {
    if (std::find(allowed.begin(), allowed.end(), value) == allowed.end()) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        throw InputError(key + ": '" + value + "' is not one of {" + list + "}");
    }
}

std::vector<double> time_grid(double t_max, std::size_t samples) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InputError("t_max must be a positive number");
    if (samples < 2) throw InputError("samples must be at least 2");
    std::vector<double> t(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        t[i] = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    }
    return t;
}

CavityVariant variant_of(const RunConfig& cfg) {
    return cfg.eq11_variant == "rederived" ? CavityVariant::Rederived : CavityVariant::Published;
}

CouplingRegime regime_of(const RunConfig& cfg) {
    return cfg.regime == "strong" ? CouplingRegime::Strong : CouplingRegime::Weak;
}

// Decay and Brownian default horizon: five times the slower of the two decay scales.
double default_decay_horizon(const OhmicSystemSpec& spec) {
    const double pg = kPi * spec.g;
    return 5.0 * std::max(1.0 / pg, pg / (spec.bar_omega * spec.bar_omega));
}

CurveOutput base_output(const std::string& command, const OhmicSystemSpec& spec) {
    const DerivedParams p = derive_parameters(spec);
    CurveOutput out;
    out.add("code_version", kVersion);
    out.add("command", command);
    out.add("bar_omega", spec.bar_omega);
    out.add("g", spec.g);
    out.add("cavity_L", spec.cavity_L);
    out.add("light_speed", spec.light_speed);
    out.add("n_modes", std::to_string(spec.n_modes));
    out.add("hbar", spec.hbar);
    out.add("beta", p.beta);
    out.add("delta", p.delta);
    out.add("regime", std::string(to_string(classify_regime(spec).kind)));
    return out;
}

struct CavityModes {
    std::vector<double> frequencies;
    double particle_weight{};
    std::vector<double> bath_weights;
};

CavityModes cavity_modes(const RunConfig& cfg, const OhmicSystemSpec& spec, const std::string& route,
                         std::size_t k_max, CurveOutput& out) {
    CavityModes m;
    if (route == "small-l") {
        const SmallLSpectrum s = approx_small_L_spectrum(spec, k_max);
        const SmallLWeights w = small_L_weights(spec, regime_of(cfg), k_max);
        m.frequencies = s.as_mode_set(spec).frequencies;
        m.particle_weight = w.particle;
        m.bath_weights = w.bath;
        out.add("validity_factor", s.validity_factor);
        out.add("within_validity", s.within_validity ? "true" : "false");
        out.add("weights_degraded", w.degraded ? "true" : "false");
    } else {
        const NormalModeSet modes = solve_cavity_spectrum(spec, k_max, variant_of(cfg));
        const std::vector<double> w = cavity_weight_row(spec, modes);
        m.frequencies = modes.frequencies;
        m.particle_weight = w[0];
        m.bath_weights.assign(w.begin() + 1, w.end());
        out.add("eq11_variant", cfg.eq11_variant);
    }
    return m;
}

} // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InputError("config line " + std::to_string(number) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kKnownKeys.count(key)) {
            throw InputError("config line " + std::to_string(number) + ": unknown key '" + key + "'");
        }
        if (value.empty()) throw InputError("config key " + key + ": empty value");
        if (!kv.emplace(key, value).second) throw InputError("config key " + key + " given twice");
    }
    return kv;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

RunConfig config_from_map(const std::map<std::string, std::string>& kv) {
    RunConfig c;
    for (const auto& [key, value] : kv) {
        if (key == "bar_omega") c.bar_omega = parse_double(key, value);
        else if (key == "g") c.g = parse_double(key, value);
        else if (key == "beta") c.beta = parse_double(key, value);
        else if (key == "cavity_L") c.cavity_L = parse_double(key, value);
        else if (key == "delta") c.delta = parse_double(key, value);
        else if (key == "light_speed") c.light_speed = parse_double(key, value);
        else if (key == "hbar") c.hbar = parse_double(key, value);
        else if (key == "n_modes") c.n_modes = parse_count(key, value);
        else if (key == "t_max") c.t_max = parse_double(key, value);
        else if (key == "n_bar") c.n_bar = parse_double(key, value);
        else if (key == "theta") c.theta = parse_double(key, value);
        else if (key == "samples") c.samples = parse_count(key, value);
        else if (key == "k_max") c.k_max = parse_count(key, value);
        else if (key == "route") c.route = value;
        else if (key == "method") c.method = value;
        else if (key == "regime") c.regime = value;
        else if (key == "eq11_variant") c.eq11_variant = value;
        else if (key == "out") c.out = value;
        else throw InputError("unknown config key '" + key + "'");
    }
    return c;
}

OhmicSystemSpec resolve_spec(const RunConfig& cfg) {
    if (!cfg.bar_omega) throw InputError("missing required key: bar_omega");
    if (cfg.g && cfg.beta) throw InputError("over-specified coupling: give only one of g, beta");
    if (!cfg.g && !cfg.beta) throw InputError("missing required key: g or beta");
    if (cfg.cavity_L && cfg.delta) throw InputError("over-specified cavity: give only one of cavity_L, delta");
    if (!cfg.cavity_L && !cfg.delta) throw InputError("missing required key: cavity_L or delta");

    OhmicSystemSpec spec;
    spec.bar_omega = *cfg.bar_omega;
    if (cfg.light_speed) spec.light_speed = *cfg.light_speed;
    spec.n_modes = cfg.n_modes.value_or(8);
    spec.hbar = cfg.hbar.value_or(1.0);
    spec.g = cfg.g ? *cfg.g : *cfg.beta * spec.bar_omega;
    if (cfg.cavity_L) {
        spec.cavity_L = *cfg.cavity_L;
    } else {
        if (!(*cfg.delta > 0.0)) throw ParameterError("delta", "must be a finite positive number");
        spec.cavity_L = 2.0 * spec.light_speed * *cfg.delta / spec.g;
    }
    if (cfg.beta && !(*cfg.beta > 0.0)) throw ParameterError("beta", "must be a finite positive number");
    spec.validate();
    return spec;
}

void CurveOutput::add(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
}

void CurveOutput::add(const std::string& key, double value) {
    metadata.emplace_back(key, format_number(value));
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string CurveOutput::render() const {
    std::string s;
    for (const auto& [k, v] : metadata) s += "# " + k + "=" + v + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
    s += "\n";
    for (const auto& row : rows) {
        if (row.size() != columns.size()) throw InputError("row width differs from the column schema");
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
        s += "\n";
    }
    return s;
}

std::map<std::string, std::string> parse_header(const std::string& text) {
    std::map<std::string, std::string> h;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) != 0) break;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        h[line.substr(2, eq - 2)] = line.substr(eq + 1);
    }
    return h;
}

OhmicSystemSpec spec_from_header(const std::map<std::string, std::string>& header) {
    auto get = [&](const char* key) -> const std::string& {
        const auto it = header.find(key);
        if (it == header.end()) throw InputError(std::string("header lacks key ") + key);
        return it->second;
    };
    OhmicSystemSpec spec;
    spec.bar_omega = parse_double("bar_omega", get("bar_omega"));
    spec.g = parse_double("g", get("g"));
    spec.cavity_L = parse_double("cavity_L", get("cavity_L"));
    spec.light_speed = parse_double("light_speed", get("light_speed"));
    spec.n_modes = parse_count("n_modes", get("n_modes"));
    spec.hbar = parse_double("hbar", get("hbar"));
    spec.validate();
    return spec;
}

CurveOutput cmd_spectrum(const RunConfig& cfg) {
    const OhmicSystemSpec spec = resolve_spec(cfg);
    const std::string route = cfg.route.empty() ? "finite-n" : cfg.route;
    require_member("route", route, kRoutes);
    require_member("eq11_variant", cfg.eq11_variant, kVariants);
    require_member("regime", cfg.regime, kRegimes);
    CurveOutput out = base_output("spectrum", spec);
    out.add("route", route);
    out.columns = {"r", "omega", "weight"};
    std::vector<double> freq;
    std::vector<double> weight;
    if (route == "finite-n") {
        const NormalModeSet m = solve_finite_spectrum(spec);
        freq = m.frequencies;
        weight = m.weights;
    } else {
        const std::size_t k_max = cfg.k_max.value_or(10000);
        out.add("k_max", std::to_string(k_max));
        if (route == "small-l") out.add("weights_regime", cfg.regime);
        const CavityModes m = cavity_modes(cfg, spec, route, k_max, out);
        freq = m.frequencies;
        weight.push_back(m.particle_weight);
        weight.insert(weight.end(), m.bath_weights.begin(), m.bath_weights.end());
    }
    for (std::size_t r = 0; r < freq.size(); ++r) {
        out.rows.push_back({static_cast<double>(r), freq[r], weight[r]});
    }
    return out;
}

CurveOutput cmd_decay(const RunConfig& cfg) {
    const OhmicSystemSpec spec = resolve_spec(cfg);
    require_member("method", cfg.method, kMethods);
    const std::vector<double> times =
        time_grid(cfg.t_max.value_or(default_decay_horizon(spec)), cfg.samples.value_or(201));
    CurveOutput out = base_output("decay", spec);
    out.add("method", cfg.method);
    AmplitudeSeries series;
    if (cfg.method == "closed") {
        series = f00_closed(spec, times);
    } else if (cfg.method == "quadrature") {
        series = f00_quadrature(spec, times);
    } else {
        const std::string route = cfg.route.empty() ? "finite-n" : cfg.route;
        require_member("route", route, kRoutes);
        require_member("eq11_variant", cfg.eq11_variant, kVariants);
        require_member("regime", cfg.regime, kRegimes);
        out.add("route", route);
        NormalModeSet modes;
        std::vector<double> weights;
        if (route == "finite-n") {
            modes = solve_finite_spectrum(spec);
            weights = modes.weights;
        } else {
            const std::size_t k_max = cfg.k_max.value_or(10000);
            out.add("k_max", std::to_string(k_max));
            const CavityModes m = cavity_modes(cfg, spec, route, k_max, out);
            modes.spec_snapshot = spec;
            modes.frequencies = m.frequencies;
            weights.push_back(m.particle_weight);
            weights.insert(weights.end(), m.bath_weights.begin(), m.bath_weights.end());
        }
        series = f00_discrete(modes, weights, times);
    }
    out.add("samples", std::to_string(times.size()));
    out.columns = {"t", "re_f00", "im_f00", "prob"};
    const std::vector<double> p = survival_probability(series);
    for (std::size_t i = 0; i < times.size(); ++i) {
        out.rows.push_back({times[i], series.values[i].real(), series.values[i].imag(), p[i]});
    }
    return out;
}

CurveOutput cmd_brownian(const RunConfig& cfg) {
    const OhmicSystemSpec spec = resolve_spec(cfg);
    require_member("method", cfg.method, kMethods);
    CoherentPreparation prep;
    prep.n_bar = cfg.n_bar.value_or(1.0);
    prep.theta = cfg.theta.value_or(0.0);
    prep.validate();
    const std::vector<double> times =
        time_grid(cfg.t_max.value_or(default_decay_horizon(spec)), cfg.samples.value_or(201));
    CurveOutput out = base_output("brownian", spec);
    out.add("method", cfg.method);
    out.add("n_bar", prep.n_bar);
    out.add("theta", prep.theta);
    out.add("samples", std::to_string(times.size()));
    std::vector<double> q;
    if (cfg.method == "closed") {
        q = path_closed_forms(spec, prep, times);
    } else if (cfg.method == "quadrature") {
        q = classical_path(spec, prep, times, f00_quadrature(spec, times));
    } else {
        const NormalModeSet modes = solve_finite_spectrum(spec);
        q = classical_path(spec, prep, times, f00_discrete(modes, modes.weights, times));
    }
    out.columns = {"t", "position"};
    for (std::size_t i = 0; i < times.size(); ++i) out.rows.push_back({times[i], q[i]});
    return out;
}

CurveOutput cmd_cavity(const RunConfig& cfg) {
    const OhmicSystemSpec spec = resolve_spec(cfg);
    const std::string route = cfg.route.empty() ? "cavity" : cfg.route;
    require_member("route", route, {"cavity", "small-l"});
    require_member("regime", cfg.regime, kRegimes);
    require_member("eq11_variant", cfg.eq11_variant, kVariants);
    const DerivedParams p = derive_parameters(spec);
    const std::size_t k_max = cfg.k_max.value_or(10000);

    CurveOutput out = base_output("cavity", spec);
    out.add("route", route);
    out.add("cavity_regime", cfg.regime);
    out.add("k_max", std::to_string(k_max));
    const CavityModes m = cavity_modes(cfg, spec, route, k_max, out);

    // Default horizon: four beat periods of the lowest pair.
    const double beat = m.frequencies[1] - m.frequencies[0];
    const std::vector<double> times =
        time_grid(cfg.t_max.value_or(4.0 * 2.0 * kPi / beat), cfg.samples.value_or(2001));
    const std::vector<double> prob =
        cavity_survival_series(m.particle_weight, m.bath_weights, m.frequencies, times);

    const auto it = std::min_element(prob.begin(), prob.end());
    const CavitySurvivalBound bound = cavity_min_bound(p.delta, regime_of(cfg));
    out.add("samples", std::to_string(times.size()));
    out.add("min_probability_grid", *it);
    out.add("t_at_min", times[static_cast<std::size_t>(it - prob.begin())]);
    out.add("min_bound", bound.min_probability);
    out.add("min_bound_unphysical", bound.unphysical ? "true" : "false");
    if (regime_of(cfg) == CouplingRegime::Strong) {
        const double delta_max = solve_delta_max();
        out.add("delta_max", delta_max);
        out.add("L_max", 2.0 * spec.light_speed * delta_max / spec.g);
        out.add("status", p.delta > delta_max ? "unphysical: exceeds delta_max" : "ok");
    }
    out.columns = {"t", "prob"};
    for (std::size_t i = 0; i < times.size(); ++i) out.rows.push_back({times[i], prob[i]});
    return out;
}

std::pair<std::string, bool> cmd_validate(const RunConfig& cfg) {
    const OhmicSystemSpec spec = resolve_spec(cfg);
    if (spec.n_modes > 2000) throw InputError("validate supports n_modes <= 2000");
    const ValidationReport report = cross_validate(spec);
    CurveOutput header = base_output("validate", spec);
    std::string text;
    for (const auto& [k, v] : header.metadata) text += "# " + k + "=" + v + "\n";
    text += report.serialize();
    return {text, report.all_passed()};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dressed-states toolkit for an oscillator coupled to an ohmic bath", "dressed"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_path, route, method, regime, variant;
    std::optional<std::size_t> k_max, samples;
    std::optional<double> t_max, n_bar, theta;

    const char* names[] = {"spectrum", "decay", "brownian", "cavity", "validate"};
    const char* help[] = {"normal-mode frequencies and particle weights",
                          "survival amplitude f00(t) and probability",
                          "classical path of a dressed coherent state",
                          "cavity survival curve and analytic bounds",
                          "oracle cross-validation report"};
    std::vector<CLI::App*> subs;
    for (int i = 0; i < 5; ++i) {
        CLI::App* s = app.add_subcommand(names[i], help[i]);
        s->add_option("--config", config_path, "key=value parameter file");
        s->add_option("--out", out_path, "output file (default: standard output)");
        s->add_option("--route", route, "spectrum route")->check(CLI::IsMember(kRoutes));
        s->add_option("--method", method, "f00 method")->check(CLI::IsMember(kMethods));
        s->add_option("--regime", regime, "cavity coupling regime")->check(CLI::IsMember(kRegimes));
        s->add_option("--k-max", k_max, "cavity truncation index");
        s->add_option("--t-max", t_max, "time horizon, s");
        s->add_option("--samples", samples, "time samples including t = 0");
        s->add_option("--n-bar", n_bar, "coherent-state mean occupation");
        s->add_option("--theta", theta, "coherent-state phase, rad");
        s->add_option("--eq11-variant", variant, "cavity equation constant")->check(CLI::IsMember(kVariants));
        subs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = config_from_map(load_config_file(config_path));
        if (out_path) cfg.out = *out_path;
        if (route) cfg.route = *route;
        if (method) cfg.method = *method;
        if (regime) cfg.regime = *regime;
        if (variant) cfg.eq11_variant = *variant;
        if (k_max) cfg.k_max = *k_max;
        if (t_max) cfg.t_max = *t_max;
        if (samples) cfg.samples = *samples;
        if (n_bar) cfg.n_bar = *n_bar;
        if (theta) cfg.theta = *theta;

        std::string text;
        int code = kExitOk;
        const std::string which = app.get_subcommands().front()->get_name();
        if (which == "spectrum") text = cmd_spectrum(cfg).render();
        else if (which == "decay") text = cmd_decay(cfg).render();
        else if (which == "brownian") text = cmd_brownian(cfg).render();
        else if (which == "cavity") text = cmd_cavity(cfg).render();
        else {
            auto [report, ok] = cmd_validate(cfg);
            text = std::move(report);
            if (!ok) code = kExitValidation;
        }

        if (cfg.out.empty()) {
            out << text;
        } else {
            std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
            if (!f) throw InputError("cannot open output file '" + cfg.out + "'");
            f << text;
            if (!f) throw InputError("failed writing output file '" + cfg.out + "'");
        }
        if (code == kExitValidation) err << "error: validation failed\n";
        return code;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericalFailure& e) {
        err << "error: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace dressed::cli
