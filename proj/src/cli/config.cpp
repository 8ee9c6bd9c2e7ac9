#include "twave/cli/config.hpp"

#include <fstream>
#include <set>

namespace twave::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
std::optional<T> read(const json& obj, const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
        return v.get<std::string>();
    } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
        return v.get<T>();
    } else {
        if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
        return v.get<T>();
    }
}

template <class T>
void assign(T& target, const std::optional<T>& file_value, const std::optional<T>& flag_value) {
    if (flag_value) target = *flag_value;
    else if (file_value) target = *file_value;
}

std::vector<PhasePoint> seeds_from_flat(const std::vector<double>& flat) {
    if (flat.size() % 2 != 0) throw ConfigError("--seeds expects u,y pairs");
    std::vector<PhasePoint> out;
    for (std::size_t i = 0; i < flat.size(); i += 2) out.push_back({flat[i], flat[i + 1]});
    return out;
}

std::vector<PhasePoint> seeds_from_json(const json& v) {
    if (!v.is_array()) throw ConfigError("'seeds' must be an array of [u, y] pairs");
    std::vector<PhasePoint> out;
    for (const auto& s : v) {
        if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
            throw ConfigError("each seed must be a [u, y] pair of numbers");
        out.push_back({s[0].get<double>(), s[1].get<double>()});
    }
    return out;
}

} // namespace

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
}

RunConfig resolve_config(const json& doc_in, const Overrides& flags) {
    const json doc = doc_in.is_null() ? json::object() : doc_in;
    reject_unknown(doc,
                   {"beta", "u0", "k", "n", "alpha0", "alphan", "epsilon", "ratio", "pde", "grid",
                    "tolerances", "seeds", "eta_span", "output"},
                   "config");
    RunConfig cfg;
    SystemParams& p = cfg.params;
    p.alpha0 = 0.0;
    p.alphan = 1.0;
    p.epsilon = 0.0;

    std::optional<double> u0 = flags.u0 ? flags.u0 : read<double>(doc, "u0");
    std::optional<double> k = flags.k ? flags.k : read<double>(doc, "k");
    if (!u0 || !k) throw ConfigError("u0 and k are required");
    p.u0 = *u0;
    p.k = *k;
    assign(p.n, read<int>(doc, "n"), flags.n);

    const bool has_pde = doc.contains("pde");
    const bool direct = doc.contains("beta") || doc.contains("alpha0") || doc.contains("alphan") ||
                        doc.contains("epsilon") || flags.beta || flags.alpha0 || flags.alphan ||
                        flags.epsilon;
    if (has_pde) {
        if (direct)
            throw ConfigError("a 'pde' block excludes beta, alpha0, alphan and epsilon");
        const json& b = doc.at("pde");
        reject_unknown(b, {"a0", "an", "D", "beta_tilde", "c", "epsilon"}, "pde");
        PdeParams pde;
        assign(pde.a0, read<double>(b, "a0"), std::optional<double>{});
        assign(pde.an, read<double>(b, "an"), std::optional<double>{});
        assign(pde.D, read<double>(b, "D"), std::optional<double>{});
        assign(pde.beta_tilde, read<double>(b, "beta_tilde"), std::optional<double>{});
        assign(pde.c, read<double>(b, "c"), std::optional<double>{});
        assign(pde.epsilon, read<double>(b, "epsilon"), std::optional<double>{});
        p = map_pde_params(pde, p.u0, p.k, p.n);
        cfg.pde = pde;
    } else {
        assign(p.beta, read<double>(doc, "beta"), flags.beta);
        assign(p.alpha0, read<double>(doc, "alpha0"), flags.alpha0);
        assign(p.alphan, read<double>(doc, "alphan"), flags.alphan);
        assign(p.epsilon, read<double>(doc, "epsilon"), flags.epsilon);
    }

    cfg.ratio = flags.ratio ? flags.ratio : read<double>(doc, "ratio");
    if (cfg.ratio) {
        if (has_pde) throw ConfigError("'ratio' cannot be combined with a 'pde' block");
        if (doc.contains("alpha0") || flags.alpha0)
            throw ConfigError("give either 'ratio' or 'alpha0', not both");
        p.alpha0 = *cfg.ratio * p.alphan;
    }

    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        reject_unknown(g, {"size", "margin"}, "grid");
        assign(cfg.grid_size, read<int>(g, "size"), std::optional<int>{});
        assign(cfg.grid_margin, read<double>(g, "margin"), std::optional<double>{});
    }
    assign(cfg.grid_size, std::optional<int>{}, flags.grid_size);
    assign(cfg.grid_margin, std::optional<double>{}, flags.grid_margin);

    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        reject_unknown(t, {"rel", "abs"}, "tolerances");
        assign(cfg.tol.rel, read<double>(t, "rel"), std::optional<double>{});
        assign(cfg.tol.abs, read<double>(t, "abs"), std::optional<double>{});
    }
    assign(cfg.tol.rel, std::optional<double>{}, flags.rel_tol);
    assign(cfg.tol.abs, std::optional<double>{}, flags.abs_tol);

    if (flags.seeds) cfg.seeds = seeds_from_flat(*flags.seeds);
    else if (doc.contains("seeds")) cfg.seeds = seeds_from_json(doc.at("seeds"));
    assign(cfg.eta_span, read<double>(doc, "eta_span"), flags.eta_span);

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        reject_unknown(o, {"out", "csv", "svg", "dir"}, "output");
        assign(cfg.out, read<std::string>(o, "out"), std::optional<std::string>{});
        assign(cfg.csv, read<std::string>(o, "csv"), std::optional<std::string>{});
        assign(cfg.svg, read<std::string>(o, "svg"), std::optional<std::string>{});
        assign(cfg.output_dir, read<std::string>(o, "dir"), std::optional<std::string>{});
    }
    assign(cfg.out, std::optional<std::string>{}, flags.out);
    assign(cfg.csv, std::optional<std::string>{}, flags.csv);
    assign(cfg.svg, std::optional<std::string>{}, flags.svg);
    assign(cfg.output_dir, std::optional<std::string>{}, flags.output_dir);

    if (!(cfg.tol.rel > 0.0) || !(cfg.tol.abs > 0.0)) throw ConfigError("tolerances must be positive");
    if (cfg.grid_size < 2) throw ConfigError("grid size must be at least 2");
    if (!(cfg.grid_margin > 0.0 && cfg.grid_margin < 0.5)) throw ConfigError("grid margin must lie in (0, 0.5)");
    if (!(cfg.eta_span > 0.0)) throw ConfigError("eta_span must be positive");
    p.validate();
    return cfg;
}

nlohmann::ordered_json echo_inputs(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    const SystemParams& p = cfg.params;
    j["beta"] = p.beta;
    j["u0"] = p.u0;
    j["k"] = p.k;
    j["n"] = p.n;
    j["alpha0"] = p.alpha0;
    j["alphan"] = p.alphan;
    j["epsilon"] = p.epsilon;
    if (cfg.ratio) j["ratio"] = *cfg.ratio;
    if (cfg.pde) {
        const PdeParams& d = *cfg.pde;
        j["pde"] = {{"a0", d.a0}, {"an", d.an}, {"D", d.D}, {"beta_tilde", d.beta_tilde}, {"c", d.c},
                    {"epsilon", d.epsilon}};
    }
    j["grid"] = {{"size", cfg.grid_size}, {"margin", cfg.grid_margin}};
    j["tolerances"] = {{"rel", cfg.tol.rel}, {"abs", cfg.tol.abs}};
    j["eta_span"] = cfg.eta_span;
    nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
    for (const auto& s : cfg.seeds) seeds.push_back({s.u, s.y});
    j["seeds"] = seeds;
    return j;
}

} // namespace twave::cli
