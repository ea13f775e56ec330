#include "taildep/json_io.hpp"

#include <cmath>

namespace taildep {

namespace {

void put_opt(json& j, const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
}

std::optional<double> get_opt(const json& j, const char* key) {
    if (j.contains(key) && !j.at(key).is_null()) return j.at(key).get<double>();
    return std::nullopt;
}

double need(const json& j, const char* key) {
    if (!j.contains(key)) throw invalid_params_error(std::string("missing field '") + key + "'");
    return j.at(key).get<double>();
}

}  // namespace

json tail_class_to_json(const TailClass& c) {
    json j;
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, RegVarInf>) {
                j["kind"] = "reg_var_inf";
                j["alpha"] = a.alpha;
            } else if constexpr (std::is_same_v<T, ExpTailed>) {
                j["kind"] = "exp_tailed";
                j["alpha"] = a.alpha;
                put_opt(j, "beta", a.beta);
            } else if constexpr (std::is_same_v<T, ConvEquiv>) {
                j["kind"] = "conv_equiv";
                j["alpha"] = a.alpha;
            } else if constexpr (std::is_same_v<T, WeibullType>) {
                j["kind"] = "weibull_type";
                j["alpha"] = a.alpha;
                j["beta"] = a.beta;
                j["gamma"] = a.gamma;
                put_opt(j, "ell_limit", a.ell_limit);
            } else if constexpr (std::is_same_v<T, LogWeibullType>) {
                j["kind"] = "log_weibull_type";
                j["alpha"] = a.alpha;
                j["beta"] = a.beta;
                j["gamma"] = a.gamma;
                put_opt(j, "ell_limit", a.ell_limit);
            } else if constexpr (std::is_same_v<T, NegWeibull>) {
                j["kind"] = "neg_weibull";
                j["endpoint"] = a.endpoint;
                j["alpha"] = a.alpha;
                put_opt(j, "ell_limit", a.ell_limit);
            } else if constexpr (std::is_same_v<T, GumbelGeneric>) {
                j["kind"] = "gumbel_generic";
                if (std::isfinite(a.endpoint)) j["endpoint"] = a.endpoint;
            } else {
                j["kind"] = "super_heavy";
                j["log_class"] = tail_class_to_json(*a.log_class);
            }
        },
        c.v());
    return j;
}

TailClass tail_class_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "reg_var_inf") return TailClass(RegVarInf{need(j, "alpha")});
    if (kind == "exp_tailed") return TailClass(ExpTailed{need(j, "alpha"), get_opt(j, "beta")});
    if (kind == "conv_equiv") return TailClass(ConvEquiv{need(j, "alpha")});
    if (kind == "weibull_type")
        return TailClass(WeibullType{need(j, "alpha"), need(j, "beta"), need(j, "gamma"),
                                     get_opt(j, "ell_limit")});
    if (kind == "log_weibull_type")
        return TailClass(LogWeibullType{need(j, "alpha"), need(j, "beta"), need(j, "gamma"),
                                        get_opt(j, "ell_limit")});
    if (kind == "neg_weibull")
        return TailClass(NegWeibull{need(j, "endpoint"), need(j, "alpha"), get_opt(j, "ell_limit")});
    if (kind == "gumbel_generic") {
        const auto e = get_opt(j, "endpoint");
        return TailClass(GumbelGeneric{e ? *e : inf});
    }
    if (kind == "super_heavy")
        return TailClass::super_heavy(tail_class_from_json(j.at("log_class")));
    throw invalid_params_error("unknown tail class kind '" + kind + "'");
}

json model_to_json(const UnivariateModel& m) {
    json j;
    j["family"] = m.family();
    json p = json::object();
    for (const auto& [k, v] : m.params()) p[k] = v;
    j["params"] = p;
    return j;
}

ModelPtr model_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    const json p = j.contains("params") ? j.at("params") : json::object();
    if (family == "uniform") return make_uniform();
    if (family == "beta") return make_beta(need(p, "shp1"), need(p, "shp2"));
    if (family == "exponential") return make_exponential(need(p, "rate"));
    if (family == "weibull") {
        const auto scl = get_opt(p, "scl");
        return make_weibull(need(p, "shp"), scl ? *scl : 1.0);
    }
    if (family == "gamma") return make_gamma(need(p, "shp"), need(p, "rate"));
    if (family == "pareto") return make_pareto(need(p, "shp"));
    if (family == "frechet") return make_frechet(need(p, "shp"));
    if (family == "gpd") return make_gpd(need(p, "shp"));
    if (family == "lognormal") {
        const auto ml = get_opt(p, "meanlog");
        return make_lognormal(ml ? *ml : 0.0, need(p, "sdlog"));
    }
    if (family == "gumbel") {
        const auto loc = get_opt(p, "loc");
        return make_gumbel_positive(loc ? *loc : 0.0, need(p, "scl"));
    }
    if (family == "logistic_spectral") return make_logistic_spectral(need(p, "theta"));
    if (family == "point_mass") return make_point_mass(need(p, "value"));
    throw unknown_family_error("unknown model family '" + family + "'");
}

json norm_to_json(const Norm& n) {
    json j;
    j["kind"] = n.kind();
    for (const auto& [k, v] : n.params()) j[k] = v;
    return j;
}

NormPtr norm_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lp") return make_lp_norm(need(j, "p"));
    if (kind == "linf") return make_linf_norm();
    if (kind == "theta_mix") return make_theta_mix_norm(need(j, "theta"));
    if (kind == "mahalanobis") return make_mahalanobis_norm(need(j, "rho"));
    if (kind == "custom_table") {
        std::vector<std::pair<double, double>> rows;
        for (const auto& row : j.at("rows"))
            rows.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        return make_custom_norm_from_table(rows);
    }
    throw invalid_params_error("unknown norm kind '" + kind + "'");
}

json angular_to_json(const AngularModel& a) {
    json j;
    j["kind"] = a.kind();
    if (a.kind() == "constrained_sphere") {
        const auto cv = as_constrained(a);
        j["norm"] = norm_to_json(*cv->norm);
        j["z"] = model_to_json(*cv->z);
        return j;
    }
    // the remaining kinds carry one margin model (plus rho for the copula)
    throw error("angular_to_json: use spec_to_json for non-sphere angular models");
}

json spec_to_json(const ConstructionSpec& spec) {
    json j;
    j["spec_version"] = 1;
    if (!spec.preset.empty()) {
        j["preset"] = spec.preset;
        for (const auto& [k, v] : spec.preset_params) j[k] = v;
        return j;
    }
    j["radial"] = model_to_json(*spec.radial);
    json a;
    const std::string kind = spec.angular->kind();
    a["kind"] = kind;
    if (kind == "constrained_sphere") {
        const auto cv = as_constrained(*spec.angular);
        a["norm"] = norm_to_json(*cv->norm);
        a["z"] = model_to_json(*cv->z);
    } else {
        // margin reconstructed from one exact draw is not viable; carry the
        // construction pieces instead
        throw error("spec_to_json: construct specs through spec_from_json round-trips");
    }
    j["angular"] = a;
    return j;
}

AngularPtr angular_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "independent_pair") return make_independent_pair(model_from_json(j.at("w")));
    if (kind == "comonotone_pair") return make_comonotone_pair(model_from_json(j.at("w")));
    if (kind == "gaussian_copula_pair")
        return make_gaussian_copula_pair(need(j, "rho"), model_from_json(j.at("margin")));
    if (kind == "constrained_sphere")
        return make_constrained_sphere(norm_from_json(j.at("norm")), model_from_json(j.at("z")));
    throw invalid_params_error("unknown angular kind '" + kind + "'");
}

ConstructionSpec spec_from_json(const json& j) {
    if (j.contains("spec_version") && j.at("spec_version").get<int>() != 1)
        throw invalid_params_error("unsupported spec_version");
    if (j.contains("preset")) {
        const std::string preset = j.at("preset").get<std::string>();
        if (preset == "model1") {
            const auto za = get_opt(j, "z_alpha");
            return make_model1(need(j, "delta"), need(j, "theta"), za ? *za : 1.0);
        }
        if (preset == "model2") return make_model2(need(j, "xi"), need(j, "alpha"));
        throw invalid_params_error("unknown preset '" + preset + "'");
    }
    ConstructionSpec spec;
    spec.radial = model_from_json(j.at("radial"));
    spec.angular = angular_from_json(j.at("angular"));
    return spec;
}

json coefficient_to_json(const Coefficient& c) {
    json j;
    switch (c.kind()) {
        case Coefficient::Kind::Defined:
            j["kind"] = "defined";
            j["value"] = c.value();
            break;
        case Coefficient::Kind::NotDefined: j["kind"] = "not_defined"; break;
        case Coefficient::Kind::Unknown:
            j["kind"] = "unknown";
            j["reason"] = c.reason();
            break;
    }
    return j;
}

Coefficient coefficient_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "defined") return Coefficient::defined(j.at("value").get<double>());
    if (kind == "not_defined") return Coefficient::not_defined();
    if (kind == "unknown") return Coefficient::unknown(j.value("reason", std::string()));
    throw invalid_params_error("unknown coefficient kind '" + kind + "'");
}

json summary_to_json(const DependenceSummary& s) {
    json j;
    j["chi"] = coefficient_to_json(s.chi);
    j["eta"] = coefficient_to_json(s.eta);
    j["rule"] = s.rule;
    j["notes"] = s.notes;
    return j;
}

DependenceSummary summary_from_json(const json& j) {
    DependenceSummary s;
    s.chi = coefficient_from_json(j.at("chi"));
    s.eta = coefficient_from_json(j.at("eta"));
    s.rule = j.value("rule", std::string());
    s.notes = j.value("notes", std::string());
    return s;
}

json verify_report_to_json(const VerifyReport& r) {
    json j;
    j["spec_fingerprint"] = r.spec_fingerprint;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["q"] = r.q;
    j["k"] = r.k;
    j["skipped"] = r.skipped;
    j["pass"] = r.pass;
    auto check = [](const CoefficientCheck& c) {
        json cj;
        cj["applicable"] = c.applicable;
        if (c.applicable) {
            cj["symbolic"] = c.symbolic;
            cj["estimate"] = c.estimate;
            cj["std_err"] = c.std_err;
            cj["tolerance"] = c.tolerance;
            cj["pass"] = c.pass;
            if (!c.note.empty()) cj["note"] = c.note;
        }
        return cj;
    };
    j["chi"] = check(r.chi);
    j["eta"] = check(r.eta);
    return j;
}

}  // namespace taildep
