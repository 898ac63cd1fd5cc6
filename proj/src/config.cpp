#include "ttalab/config.hpp"

#include <set>

#include "ttalab/errors.hpp"
#include "ttalab/io.hpp"

namespace ttalab::config {

namespace {

// Fail-fast key checking: every consumer declares its known keys.
class StrictObject {
public:
    StrictObject(const json& j, std::string context) : j_(j), context_(std::move(context)) {
        if (!j.is_object()) throw BadParamsError(context_ + ": expected a JSON object");
    }

    ~StrictObject() = default;

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    template <typename T>
    T get(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key))
            throw BadParamsError(context_ + ": missing required key '" + key + "'");
        try {
            return j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw BadParamsError(context_ + ": bad value type for key '" + key + "'");
        }
    }

    template <typename T>
    T get_or(const std::string& key, T fallback) {
        if (!has(key)) return fallback;
        return get<T>(key);
    }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key))
            throw BadParamsError(context_ + ": missing required key '" + key + "'");
        return j_.at(key);
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                throw BadParamsError(context_ + ": unknown key '" + it.key() + "'");
    }

private:
    const json& j_;
    std::string context_;
    std::set<std::string> seen_;
};

adapt::BaselineConfig parse_baseline_fields(StrictObject& o) {
    adapt::BaselineConfig cfg;
    cfg.eta_rule = adapt::eta_rule_from_string(
        o.get_or<std::string>("eta_rule", "theorem2-prescription"));
    cfg.eta = o.get_or<double>("eta", 0.0);
    cfg.eta_c = o.get_or<double>("eta_c", 1.0);
    cfg.master_seed = o.get_or<std::uint64_t>("master_seed", 0);
    cfg.restore_on_boundary = o.get_or<bool>("restore_on_boundary", true);
    return cfg;
}

} // namespace

model::ProblemInstance parse_problem(const json& j) {
    StrictObject o(j, "instance");
    model::ProblemInstance p{};
    p.alpha = o.get<double>("alpha");
    p.zeta = o.get<double>("zeta");
    p.smooth_L = o.get<double>("smooth_L");
    p.pl_mu = o.get<double>("pl_mu");
    p.sigma = o.get<double>("sigma");
    p.radius_r = o.get<double>("radius_r");
    p.delta_W = o.get<double>("delta_W");
    p.eps = o.get<double>("eps");
    p.delta = o.get<double>("delta");
    p.batch_B = o.get<int>("batch_B");
    p.rho_mix = o.get<double>("rho_mix");
    p.lip_x = o.get_or<double>("lip_x", model::derived_lip_x(p));
    p.lip_grad_psi = o.get_or<double>("lip_grad_psi", model::derived_lip_grad_psi(p));
    p.grad_bound_G =
        o.get_or<double>("grad_bound_G",
                         model::derived_grad_bound(p, model::default_bias_xi(p)));
    o.finish();
    p.validate();
    return p;
}

json problem_to_json(const model::ProblemInstance& p) {
    return json{{"alpha", p.alpha},
                {"zeta", p.zeta},
                {"smooth_L", p.smooth_L},
                {"pl_mu", p.pl_mu},
                {"sigma", p.sigma},
                {"grad_bound_G", p.grad_bound_G},
                {"lip_x", p.lip_x},
                {"lip_grad_psi", p.lip_grad_psi},
                {"radius_r", p.radius_r},
                {"delta_W", p.delta_W},
                {"eps", p.eps},
                {"delta", p.delta},
                {"batch_B", p.batch_B},
                {"rho_mix", p.rho_mix}};
}

RecoverConfig parse_recover_config(const json& j) {
    StrictObject o(j, "recover config");
    RecoverConfig c;
    c.problem = parse_problem(o.raw("instance"));
    c.pre_shift_location = o.get_or<double>("pre_shift_location", 0.0);
    if (o.has("post_shift_location"))
        c.post_shift_location = o.get<double>("post_shift_location");
    if (o.has("theta_init")) c.theta_init = o.get<double>("theta_init");
    if (o.has("bias_xi")) c.bias_xi = o.get<double>("bias_xi");
    c.baseline = parse_baseline_fields(o);
    c.n_runs = o.get_or<int>("n_runs", 100);
    c.t_max = o.get_or<int>("t_max", 0);
    c.estimator =
        recovery::estimator_from_string(o.get_or<std::string>("estimator", "uniform-tail"));
    c.hitting_rule = recovery::hitting_rule_from_string(
        o.get_or<std::string>("hitting_rule", "sustained"));
    c.eps_override = o.get_or<double>("eps_override", 0.0);
    o.finish();
    return c;
}

json recover_config_to_json(const RecoverConfig& c) {
    json j{{"instance", problem_to_json(c.problem)},
           {"pre_shift_location", c.pre_shift_location},
           {"eta_rule", adapt::to_string(c.baseline.eta_rule)},
           {"eta", c.baseline.eta},
           {"eta_c", c.baseline.eta_c},
           {"master_seed", c.baseline.master_seed},
           {"restore_on_boundary", c.baseline.restore_on_boundary},
           {"n_runs", c.n_runs},
           {"t_max", c.t_max},
           {"estimator", recovery::to_string(c.estimator)},
           {"hitting_rule", recovery::to_string(c.hitting_rule)},
           {"eps_override", c.eps_override}};
    if (c.post_shift_location) j["post_shift_location"] = *c.post_shift_location;
    if (c.theta_init) j["theta_init"] = *c.theta_init;
    if (c.bias_xi) j["bias_xi"] = *c.bias_xi;
    return j;
}

namespace {

StreamSpec parse_stream_spec(const json& j) {
    StrictObject o(j, "stream");
    StreamSpec s;
    if (o.has("csv_path")) {
        s.csv_path = o.get<std::string>("csv_path");
        o.finish();
        return s;
    }
    s.kind = streams::trajectory_kind_from_string(
        o.get_or<std::string>("kind", "piecewise-constant"));
    s.horizon_T = o.get<int>("horizon_T");
    if (o.has("params")) {
        const json& pj = o.raw("params");
        if (!pj.is_object()) throw BadParamsError("stream params: expected an object");
        for (auto it = pj.begin(); it != pj.end(); ++it) {
            if (!it.value().is_number())
                throw BadParamsError("stream params: value for '" + it.key() +
                                     "' must be a number");
            s.params[it.key()] = it.value().get<double>();
        }
    }
    o.finish();
    return s;
}

json stream_spec_to_json(const StreamSpec& s) {
    if (s.csv_path) return json{{"csv_path", *s.csv_path}};
    json params = json::object();
    for (const auto& [k, v] : s.params) params[k] = v;
    return json{{"kind", streams::to_string(s.kind)},
                {"horizon_T", s.horizon_T},
                {"params", params}};
}

} // namespace

LearnabilityConfig parse_learnability_config(const json& j) {
    StrictObject o(j, "learnability config");
    LearnabilityConfig c;
    c.problem = parse_problem(o.raw("instance"));
    c.stream = parse_stream_spec(o.raw("stream"));
    if (o.has("theta_init")) c.theta_init = o.get<double>("theta_init");
    if (o.has("bias_xi")) c.bias_xi = o.get<double>("bias_xi");
    c.baseline = parse_baseline_fields(o);
    c.n_runs = o.get_or<int>("n_runs", 100);
    c.recovery_t_max = o.get_or<int>("recovery_t_max", 0);
    o.finish();
    return c;
}

json learnability_config_to_json(const LearnabilityConfig& c) {
    json j{{"instance", problem_to_json(c.problem)},
           {"stream", stream_spec_to_json(c.stream)},
           {"eta_rule", adapt::to_string(c.baseline.eta_rule)},
           {"eta", c.baseline.eta},
           {"eta_c", c.baseline.eta_c},
           {"master_seed", c.baseline.master_seed},
           {"restore_on_boundary", c.baseline.restore_on_boundary},
           {"n_runs", c.n_runs},
           {"recovery_t_max", c.recovery_t_max}};
    if (c.theta_init) j["theta_init"] = *c.theta_init;
    if (c.bias_xi) j["bias_xi"] = *c.bias_xi;
    return j;
}

BoundsConfig parse_bounds_config(const json& j) {
    StrictObject o(j, "bounds config");
    BoundsConfig c;
    c.problem = parse_problem(o.raw("instance"));
    c.shift_count_K = o.get_or<int>("shift_count_K", 0);
    c.horizon_T = o.get_or<int>("horizon_T", 1000);
    c.eta_c = o.get_or<double>("eta_c", 1.0);
    o.finish();
    return c;
}

json load_json_file(const std::string& path) {
    const std::string text = io::read_text_file(path);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw BadParamsError("invalid JSON in " + path);
    return j;
}

} // namespace ttalab::config
