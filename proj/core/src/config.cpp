#include "risktool/config.hpp"

#include <set>

#include <json.hpp>

#include "risktool/csv.hpp"
#include "risktool/errors.hpp"

namespace risktool {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw InputError(path + ": " + msg);
}

json parse_document(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw InputError("config is not valid JSON");
    }
    if (!doc.is_object()) {
        throw InputError("config must be a JSON object");
    }
    return doc;
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) {
            fail(path.empty() ? key : path + "." + key, "unknown key");
        }
    }
}

const json& require_key(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path.empty() ? key : path + "." + key, "missing required key");
    }
    return *it;
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
    const json& v = require_key(obj, path, key);
    if (!v.is_number()) {
        fail(path + "." + key, "must be a number");
    }
    return v.get<double>();
}

double get_number_or(const json& obj, const std::string& path, const std::string& key,
                     double fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) {
        fail(path + "." + key, "must be a number");
    }
    return it->get<double>();
}

std::size_t get_count(const json& obj, const std::string& path, const std::string& key) {
    const json& v = require_key(obj, path, key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) {
        fail(path + "." + key, "must be a positive integer");
    }
    return v.get<std::size_t>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key) {
    const json& v = require_key(obj, path, key);
    if (!v.is_string()) {
        fail(path + "." + key, "must be a string");
    }
    return v.get<std::string>();
}

std::uint64_t get_seed(const json& obj) {
    const json& v = require_key(obj, "", "seed");
    if (!v.is_number_unsigned()) {
        fail("seed", "must be an unsigned integer; runs never draw wall-clock entropy");
    }
    return v.get<std::uint64_t>();
}

template <typename F>
auto with_context(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const InputError& e) {
        std::string what = e.what();
        if (what.rfind(path, 0) == 0) {
            throw; // already carries the field path
        }
        throw InputError(path + ": " + what);
    }
}

ScalarFunction scalar_from_json(const json& obj, const std::string& path) {
    if (!obj.is_object()) {
        fail(path, "must be an object with a 'family' key");
    }
    const std::string family = get_string(obj, path, "family");
    return with_context(path, [&]() -> ScalarFunction {
        if (family == "squared") {
            reject_unknown(obj, path, {"family"});
            return ScalarFunction::squared();
        }
        if (family == "abs_power") {
            reject_unknown(obj, path, {"family", "p"});
            return ScalarFunction::abs_power(get_number(obj, path, "p"));
        }
        if (family == "huber") {
            reject_unknown(obj, path, {"family", "c"});
            return ScalarFunction::huber(get_number(obj, path, "c"));
        }
        if (family == "catoni") {
            reject_unknown(obj, path, {"family"});
            return ScalarFunction::catoni();
        }
        if (family == "pos_part_power") {
            reject_unknown(obj, path, {"family", "p"});
            return ScalarFunction::pos_part_power(get_number(obj, path, "p"));
        }
        if (family == "oce_cvar") {
            reject_unknown(obj, path, {"family", "beta"});
            return ScalarFunction::oce_cvar(get_number(obj, path, "beta"));
        }
        if (family == "oce_exp") {
            reject_unknown(obj, path, {"family", "gamma"});
            return ScalarFunction::oce_exp(get_number(obj, path, "gamma"));
        }
        if (family == "linear") {
            reject_unknown(obj, path, {"family"});
            return ScalarFunction::linear();
        }
        if (family == "log_utility") {
            reject_unknown(obj, path, {"family"});
            return ScalarFunction::log_utility();
        }
        if (family == "exp_utility") {
            reject_unknown(obj, path, {"family", "gamma"});
            return ScalarFunction::exp_utility(get_number(obj, path, "gamma"));
        }
        if (family == "tk_value") {
            reject_unknown(obj, path, {"family", "alpha", "lambda"});
            return ScalarFunction::tk_value(get_number(obj, path, "alpha"),
                                            get_number(obj, path, "lambda"));
        }
        if (family == "tk_weight") {
            reject_unknown(obj, path, {"family", "c"});
            return ScalarFunction::tk_weight(get_number(obj, path, "c"));
        }
        fail(path + ".family", "unknown scalar family '" + family + "'");
    });
}

SpectrumFunction spectrum_from_json(const json& obj, const std::string& path) {
    if (!obj.is_object()) {
        fail(path, "must be an object");
    }
    return with_context(path, [&]() -> SpectrumFunction {
        if (obj.contains("preset")) {
            const std::string preset = get_string(obj, path, "preset");
            if (preset == "uniform") {
                reject_unknown(obj, path, {"preset"});
                return SpectrumFunction::uniform();
            }
            if (preset == "cvar") {
                reject_unknown(obj, path, {"preset", "beta"});
                return SpectrumFunction::cvar(get_number(obj, path, "beta"));
            }
            fail(path + ".preset", "unknown spectrum preset '" + preset + "'");
        }
        reject_unknown(obj, path, {"breakpoints", "levels"});
        const json& bp = require_key(obj, path, "breakpoints");
        const json& lv = require_key(obj, path, "levels");
        if (!bp.is_array() || !lv.is_array()) {
            fail(path, "breakpoints and levels must be arrays");
        }
        return SpectrumFunction(bp.get<std::vector<double>>(), lv.get<std::vector<double>>());
    });
}

RiskSpec risk_from_json(const json& obj, const std::string& path) {
    if (!obj.is_object()) {
        fail(path, "must be an object with a 'kind' key");
    }
    const std::string kind = get_string(obj, path, "kind");
    return with_context(path, [&]() -> RiskSpec {
        if (kind == "mean") {
            reject_unknown(obj, path, {"kind"});
            return RiskSpec::mean();
        }
        if (kind == "var_quantile") {
            reject_unknown(obj, path, {"kind", "beta"});
            return RiskSpec::var_quantile(get_number(obj, path, "beta"));
        }
        if (kind == "cvar") {
            reject_unknown(obj, path, {"kind", "beta"});
            return RiskSpec::cvar(get_number(obj, path, "beta"));
        }
        if (kind == "cvar_tail") {
            reject_unknown(obj, path, {"kind", "beta"});
            return RiskSpec::cvar_tail(get_number(obj, path, "beta"));
        }
        if (kind == "l_risk") {
            reject_unknown(obj, path, {"kind", "spectrum"});
            return RiskSpec::l_risk(
                spectrum_from_json(require_key(obj, path, "spectrum"), path + ".spectrum"));
        }
        if (kind == "oce") {
            reject_unknown(obj, path, {"kind", "phi"});
            return RiskSpec::oce(scalar_from_json(require_key(obj, path, "phi"), path + ".phi"));
        }
        if (kind == "entropic") {
            reject_unknown(obj, path, {"kind", "gamma"});
            return RiskSpec::entropic(get_number(obj, path, "gamma"));
        }
        if (kind == "mean_deviation") {
            reject_unknown(obj, path, {"kind", "p", "mode", "theta"});
            const std::string mode = get_string(obj, path, "mode");
            std::optional<double> theta;
            if (obj.contains("theta")) {
                theta = get_number(obj, path, "theta");
            }
            DeviationMode m;
            if (mode == "centered") m = DeviationMode::centered;
            else if (mode == "semi") m = DeviationMode::semi;
            else if (mode == "threshold") m = DeviationMode::threshold;
            else if (mode == "optimized") m = DeviationMode::optimized;
            else fail(path + ".mode", "unknown deviation mode '" + mode + "'");
            return RiskSpec::mean_deviation(get_number(obj, path, "p"), m, theta);
        }
        if (kind == "m_risk") {
            reject_unknown(obj, path, {"kind", "rho"});
            return RiskSpec::m_risk(
                scalar_from_json(require_key(obj, path, "rho"), path + ".rho"));
        }
        if (kind == "centered_deviation") {
            reject_unknown(obj, path, {"kind", "base"});
            return RiskSpec::centered_deviation(
                risk_from_json(require_key(obj, path, "base"), path + ".base"));
        }
        if (kind == "cpt") {
            reject_unknown(obj, path, {"kind", "ref", "v_plus", "v_minus", "w_plus", "w_minus"});
            const double ref = get_number_or(obj, path, "ref", 0.0);
            if (!obj.contains("v_plus")) {
                return RiskSpec::cpt_default(ref);
            }
            return RiskSpec::cpt(
                scalar_from_json(require_key(obj, path, "v_plus"), path + ".v_plus"),
                scalar_from_json(require_key(obj, path, "v_minus"), path + ".v_minus"),
                scalar_from_json(require_key(obj, path, "w_plus"), path + ".w_plus"),
                scalar_from_json(require_key(obj, path, "w_minus"), path + ".w_minus"), ref);
        }
        if (kind == "dro_chi2") {
            reject_unknown(obj, path, {"kind", "delta"});
            return RiskSpec::dro_chi2(get_number(obj, path, "delta"));
        }
        if (kind == "fairness_mean_var") {
            reject_unknown(obj, path, {"kind"});
            return RiskSpec::fairness_mean_var();
        }
        fail(path + ".kind", "unknown risk kind '" + kind + "'");
    });
}

std::vector<RiskSpec> risks_from_json(const json& arr, const std::string& path) {
    if (!arr.is_array() || arr.empty()) {
        fail(path, "must be a non-empty array of risk specs");
    }
    std::vector<RiskSpec> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(risk_from_json(arr[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

ObjectiveSpec objective_from_json(const json& obj, const std::string& path) {
    if (!obj.is_object()) {
        fail(path, "must be an object with a 'kind' key");
    }
    const std::string kind = get_string(obj, path, "kind");
    return with_context(path, [&]() -> ObjectiveSpec {
        if (kind == "mean") {
            reject_unknown(obj, path, {"kind"});
            return ObjectiveSpec::mean();
        }
        if (kind == "m_estimator") {
            reject_unknown(obj, path, {"kind", "rho", "sigma"});
            std::optional<double> sigma;
            if (obj.contains("sigma")) {
                sigma = get_number(obj, path, "sigma");
            }
            return ObjectiveSpec::m_estimator(
                scalar_from_json(require_key(obj, path, "rho"), path + ".rho"), sigma);
        }
        if (kind == "l_statistic") {
            reject_unknown(obj, path, {"kind", "weights"});
            const json& w = require_key(obj, path, "weights");
            if (!w.is_array()) {
                fail(path + ".weights", "must be an array");
            }
            return ObjectiveSpec::l_statistic(w.get<std::vector<double>>());
        }
        if (kind == "kth_largest") {
            reject_unknown(obj, path, {"kind", "k"});
            return ObjectiveSpec::kth_largest(get_count(obj, path, "k"));
        }
        if (kind == "avg_top_k") {
            reject_unknown(obj, path, {"kind", "k"});
            return ObjectiveSpec::avg_top_k(get_count(obj, path, "k"));
        }
        if (kind == "exp_smooth") {
            reject_unknown(obj, path, {"kind", "gamma"});
            return ObjectiveSpec::exp_smooth(get_number(obj, path, "gamma"));
        }
        if (kind == "svp") {
            reject_unknown(obj, path, {"kind", "eta"});
            return ObjectiveSpec::svp(get_number(obj, path, "eta"));
        }
        if (kind == "cvar") {
            reject_unknown(obj, path, {"kind", "beta"});
            return ObjectiveSpec::cvar(get_number(obj, path, "beta"));
        }
        fail(path + ".kind", "unknown objective kind '" + kind + "'");
    });
}

DistSpec dist_from_json(const json& obj, const std::string& path) {
    if (!obj.is_object()) {
        fail(path, "must be an object with a 'family' key");
    }
    const std::string family = get_string(obj, path, "family");
    return with_context(path, [&]() -> DistSpec {
        if (family == "normal") {
            reject_unknown(obj, path, {"family", "mu", "sigma"});
            return DistSpec::normal(get_number(obj, path, "mu"), get_number(obj, path, "sigma"));
        }
        if (family == "pareto") {
            reject_unknown(obj, path, {"family", "alpha", "xm"});
            return DistSpec::pareto(get_number(obj, path, "alpha"), get_number(obj, path, "xm"));
        }
        if (family == "lognormal") {
            reject_unknown(obj, path, {"family", "mu", "sigma"});
            return DistSpec::lognormal(get_number(obj, path, "mu"),
                                       get_number(obj, path, "sigma"));
        }
        if (family == "bernoulli_scaled") {
            reject_unknown(obj, path, {"family", "p", "v0", "v1"});
            return DistSpec::bernoulli_scaled(get_number(obj, path, "p"),
                                              get_number(obj, path, "v0"),
                                              get_number(obj, path, "v1"));
        }
        if (family == "stpetersburg") {
            reject_unknown(obj, path, {"family"});
            return DistSpec::stpetersburg();
        }
        if (family == "finite") {
            reject_unknown(obj, path, {"family", "values", "probs"});
            const json& values = require_key(obj, path, "values");
            const json& probs = require_key(obj, path, "probs");
            if (!values.is_array() || !probs.is_array() || values.size() != probs.size()) {
                fail(path, "values and probs must be arrays of equal length");
            }
            std::vector<Atom> atoms;
            for (std::size_t i = 0; i < values.size(); ++i) {
                atoms.push_back({values[i].get<double>(), probs[i].get<double>()});
            }
            return DistSpec::finite(DiscreteDistribution::canonicalize(std::move(atoms)));
        }
        fail(path + ".family", "unknown distribution family '" + family + "'");
    });
}

DataSourceCfg data_source_from_json(const json& obj, const std::string& path) {
    if (!obj.is_object()) {
        fail(path, "must be an object with 'file' or 'generate'");
    }
    reject_unknown(obj, path, {"file", "generate"});
    DataSourceCfg cfg;
    if (obj.contains("file") == obj.contains("generate")) {
        fail(path, "exactly one of 'file' and 'generate' must be present");
    }
    if (obj.contains("file")) {
        cfg.file = get_string(obj, path, "file");
        return cfg;
    }
    const json& gen = obj.at("generate");
    const std::string gpath = path + ".generate";
    if (!gen.is_object()) {
        fail(gpath, "must be an object");
    }
    reject_unknown(gen, gpath, {"kind", "dim", "n", "w_star", "noise"});
    if (get_string(gen, gpath, "kind") != "regression") {
        fail(gpath + ".kind", "only 'regression' generators are supported");
    }
    GeneratedRegression g;
    g.dim = get_count(gen, gpath, "dim");
    g.n = get_count(gen, gpath, "n");
    const json& w = require_key(gen, gpath, "w_star");
    if (!w.is_array()) {
        fail(gpath + ".w_star", "must be an array");
    }
    g.w_star = w.get<std::vector<double>>();
    if (g.w_star.size() != g.dim) {
        fail(gpath + ".w_star", "length must equal dim");
    }
    g.noise = dist_from_json(require_key(gen, gpath, "noise"), gpath + ".noise");
    cfg.generate = std::move(g);
    return cfg;
}

LossKind loss_from_json(const json& obj) {
    const std::string loss = get_string(obj, "", "loss");
    if (loss == "squared") return LossKind::squared;
    if (loss == "logistic") return LossKind::logistic;
    if (loss == "hinge") return LossKind::hinge;
    fail("loss", "unknown loss kind '" + loss + "'");
}

TrainSection train_section_from_json(const json& obj, const std::string& path) {
    if (!obj.is_object()) {
        fail(path, "must be an object");
    }
    reject_unknown(obj, path, {"steps", "step_size", "batch", "averaging", "fit_bias"});
    TrainSection s;
    s.steps = get_count(obj, path, "steps");
    const json& step = require_key(obj, path, "step_size");
    const std::string spath = path + ".step_size";
    reject_unknown(step, spath, {"kind", "a"});
    const std::string skind = get_string(step, spath, "kind");
    if (skind == "constant") {
        s.step.kind = StepSchedule::Kind::constant;
    } else if (skind == "inv_sqrt") {
        s.step.kind = StepSchedule::Kind::inv_sqrt;
    } else {
        fail(spath + ".kind", "must be 'constant' or 'inv_sqrt'");
    }
    s.step.a = get_number(step, spath, "a");
    if (!(s.step.a > 0.0)) {
        fail(spath + ".a", "must be positive");
    }
    if (obj.contains("batch")) {
        const json& batch = obj.at("batch");
        const std::string bpath = path + ".batch";
        reject_unknown(batch, bpath, {"kind", "m"});
        const std::string bkind = get_string(batch, bpath, "kind");
        if (bkind == "full") {
            s.minibatch = 0;
        } else if (bkind == "minibatch") {
            s.minibatch = get_count(batch, bpath, "m");
        } else {
            fail(bpath + ".kind", "must be 'full' or 'minibatch'");
        }
    }
    if (obj.contains("averaging")) {
        const std::string avg = get_string(obj, path, "averaging");
        if (avg == "last") s.averaging = Averaging::last;
        else if (avg == "best") s.averaging = Averaging::best;
        else if (avg == "uniform_average") s.averaging = Averaging::uniform_average;
        else fail(path + ".averaging", "must be 'last', 'best' or 'uniform_average'");
    }
    if (obj.contains("fit_bias")) {
        const json& fb = obj.at("fit_bias");
        if (!fb.is_boolean()) {
            fail(path + ".fit_bias", "must be a boolean");
        }
        s.fit_bias = fb.get<bool>();
    }
    return s;
}

} // namespace

EvalRunConfig parse_eval_config(const std::string& json_text) {
    const json doc = parse_document(json_text);
    reject_unknown(doc, "", {"seed", "losses", "risks"});
    EvalRunConfig cfg;
    cfg.seed = get_seed(doc);
    cfg.losses_path = get_string(doc, "", "losses");
    cfg.risks = risks_from_json(require_key(doc, "", "risks"), "risks");
    return cfg;
}

TrainRunConfig parse_train_config(const std::string& json_text) {
    const json doc = parse_document(json_text);
    reject_unknown(doc, "",
                   {"seed", "data", "test", "loss", "objective", "train", "eval_risks",
                    "model_out"});
    TrainRunConfig cfg;
    cfg.seed = get_seed(doc);
    cfg.data = data_source_from_json(require_key(doc, "", "data"), "data");
    if (doc.contains("test")) {
        cfg.test = data_source_from_json(doc.at("test"), "test");
    }
    cfg.loss = loss_from_json(doc);
    cfg.objective = objective_from_json(require_key(doc, "", "objective"), "objective");
    cfg.train = train_section_from_json(require_key(doc, "", "train"), "train");
    if (doc.contains("eval_risks")) {
        cfg.eval_risks = risks_from_json(doc.at("eval_risks"), "eval_risks");
    }
    if (doc.contains("model_out")) {
        cfg.model_out = get_string(doc, "", "model_out");
    }
    return cfg;
}

CompareRunConfig parse_compare_config(const std::string& json_text) {
    const json doc = parse_document(json_text);
    reject_unknown(doc, "", {"seed", "data", "test", "loss", "objectives", "risks", "train"});
    CompareRunConfig cfg;
    cfg.seed = get_seed(doc);
    cfg.data = data_source_from_json(require_key(doc, "", "data"), "data");
    if (doc.contains("test")) {
        cfg.test = data_source_from_json(doc.at("test"), "test");
    }
    cfg.loss = loss_from_json(doc);
    const json& objectives = require_key(doc, "", "objectives");
    if (!objectives.is_array() || objectives.size() < 2) {
        fail("objectives", "compare needs at least two training objectives");
    }
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        cfg.objectives.push_back(
            objective_from_json(objectives[i], "objectives[" + std::to_string(i) + "]"));
    }
    cfg.risks = risks_from_json(require_key(doc, "", "risks"), "risks");
    cfg.train = train_section_from_json(require_key(doc, "", "train"), "train");
    return cfg;
}

DemoRunConfig parse_demo_config(const std::string& json_text) {
    const json doc = parse_document(json_text);
    reject_unknown(doc, "", {"seed", "sizes"});
    DemoRunConfig cfg;
    cfg.seed = get_seed(doc);
    if (doc.contains("sizes")) {
        const json& sizes = doc.at("sizes");
        if (!sizes.is_array() || sizes.empty()) {
            fail("sizes", "must be a non-empty array of sample sizes");
        }
        cfg.sizes.clear();
        for (const json& s : sizes) {
            if (!s.is_number_unsigned() || s.get<std::uint64_t>() < 1) {
                fail("sizes", "entries must be positive integers");
            }
            cfg.sizes.push_back(s.get<std::size_t>());
        }
    }
    return cfg;
}

Dataset realize_data(const DataSourceCfg& cfg, std::uint64_t seed, std::uint64_t stream) {
    if (cfg.file) {
        return read_dataset_csv(*cfg.file);
    }
    const GeneratedRegression& g = *cfg.generate;
    return gen_regression(g.dim, g.n, g.w_star, g.noise, SplitMix64::derive(seed, stream));
}

} // namespace risktool
