#include "fractalfn/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "fractalfn/seeds.hpp"

namespace fractalfn::cli {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
    return out;
}

class Checker {
public:
    void fail(const std::string& path, const std::string& msg) { violations.push_back(path + ": " + msg); }

    void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
        const std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& [key, value] : j.items())
            if (!ok.contains(key)) fail(path, "unknown key '" + key + "'");
    }

    bool is_object(const json& j, const std::string& path) {
        if (j.is_object()) return true;
        fail(path, "expected an object");
        return false;
    }

    std::optional<double> number(const json& j, const std::string& path) {
        if (!j.is_number()) {
            fail(path, "expected a number");
            return std::nullopt;
        }
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            fail(path, "must be finite");
            return std::nullopt;
        }
        return v;
    }

    std::optional<long long> integer(const json& j, const std::string& path, long long min) {
        if (!j.is_number_integer()) {
            fail(path, "expected an integer");
            return std::nullopt;
        }
        const auto v = j.get<long long>();
        if (v < min) {
            fail(path, "must be >= " + std::to_string(min));
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::vector<double>> numbers(const json& j, const std::string& path) {
        if (!j.is_array()) {
            fail(path, "expected an array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        bool ok = true;
        for (std::size_t i = 0; i < j.size(); ++i) {
            auto v = number(j[i], path + "[" + std::to_string(i) + "]");
            if (v) out.push_back(*v);
            else ok = false;
        }
        if (!ok) return std::nullopt;
        return out;
    }

    std::optional<bool> boolean(const json& j, const std::string& path) {
        if (!j.is_boolean()) {
            fail(path, "expected a boolean");
            return std::nullopt;
        }
        return j.get<bool>();
    }

    std::vector<std::string> violations;
};

std::optional<TrigPoly> parse_trig(Checker& c, const json& j, const std::string& path) {
    if (!c.is_object(j, path)) return std::nullopt;
    c.only_keys(j, path, {"a0", "cos", "sin"});
    double a0 = 0.0;
    std::vector<double> cs, sn;
    bool ok = true;
    if (j.contains("a0")) {
        auto v = c.number(j["a0"], path + ".a0");
        ok = ok && v.has_value();
        a0 = v.value_or(0.0);
    }
    if (j.contains("cos")) {
        auto v = c.numbers(j["cos"], path + ".cos");
        ok = ok && v.has_value();
        cs = v.value_or(std::vector<double>{});
    }
    if (j.contains("sin")) {
        auto v = c.numbers(j["sin"], path + ".sin");
        ok = ok && v.has_value();
        sn = v.value_or(std::vector<double>{});
    }
    if (!ok) return std::nullopt;
    return TrigPoly(a0, std::move(cs), std::move(sn));
}

std::optional<FunctionSpec> parse_function(Checker& c, const json& j, const std::string& path) {
    if (!c.is_object(j, path)) return std::nullopt;
    c.only_keys(j, path, {"builtin", "trig", "rational"});
    const int kinds = static_cast<int>(j.contains("builtin")) + static_cast<int>(j.contains("trig")) +
                      static_cast<int>(j.contains("rational"));
    if (kinds != 1) {
        c.fail(path, "exactly one of 'builtin', 'trig', 'rational' is required");
        return std::nullopt;
    }
    FunctionSpec out;
    if (j.contains("builtin")) {
        if (!j["builtin"].is_string()) {
            c.fail(path + ".builtin", "expected a string");
            return std::nullopt;
        }
        const std::string name = j["builtin"].get<std::string>();
        const auto b = seeds::find(name);
        if (!b) {
            std::string known;
            for (const auto& n : seeds::names()) known += (known.empty() ? "" : ", ") + n;
            c.fail(path + ".builtin", "unknown builtin '" + name + "' (known: " + known + ")");
            return std::nullopt;
        }
        out.label = name;
        out.fn = b->fn;
        out.default_interval = b->default_interval;
        out.periodic = b->periodic;
        if (name == "fig1") out.quotient = std::make_pair(seeds::fig1_numerator, seeds::fig1_denominator);
        return out;
    }
    if (j.contains("trig")) {
        auto t = parse_trig(c, j["trig"], path + ".trig");
        if (!t) return std::nullopt;
        out.label = "trig";
        out.fn = [t = *t](double x) { return t(x); };
        out.default_interval = Interval(-kPi, kPi);
        out.periodic = true;
        return out;
    }
    const json& r = j["rational"];
    const std::string rp = path + ".rational";
    if (!c.is_object(r, rp)) return std::nullopt;
    c.only_keys(r, rp, {"num", "den"});
    if (!r.contains("num") || !r.contains("den")) {
        c.fail(rp, "both 'num' and 'den' are required");
        return std::nullopt;
    }
    auto num = parse_trig(c, r["num"], rp + ".num");
    auto den = parse_trig(c, r["den"], rp + ".den");
    if (!num || !den) return std::nullopt;
    try {
        const RationalTrig q(*num, *den);
        out.label = "rational";
        out.fn = [q](double x) { return q(x); };
        out.default_interval = Interval(-kPi, kPi);
        out.periodic = true;
        out.quotient = std::make_pair(std::function<double(double)>([n = *num](double x) { return n(x); }),
                                      std::function<double(double)>([d = *den](double x) { return d(x); }));
    } catch (const std::exception& e) {
        c.fail(rp + ".den", e.what());
        return std::nullopt;
    }
    return out;
}

template <class F>
void guarded(Checker& c, const std::string& path, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        c.fail(path, e.what());
    }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error("invalid config: " + join(violations)), violations_(std::move(violations)) {}

std::string sha256_hex(const std::string& text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
    return os.str();
}

SampledFunction Config::seed_on_grid() const { return SampledFunction::sample(interval, grid, seed.fn); }

FractalSpec Config::spec() const {
    const SampledFunction f = seed_on_grid();
    if (const auto* op = std::get_if<BaseOperator>(&base)) return FractalSpec(f, partition, scaling, *op);
    const auto& b = std::get<FunctionSpec>(base);
    return FractalSpec(f, partition, scaling, SampledFunction::sample(interval, grid, b.fn));
}

Config parse_config(const json& j, std::optional<std::size_t> grid_override) {
    Checker c;
    Config cfg;
    if (!j.is_object()) throw ConfigError({"$: config must be a JSON object"});
    cfg.raw = j;
    cfg.hash = sha256_hex(j.dump());
    c.only_keys(j, "$", {"name", "description", "seed", "interval", "partition", "scaling", "base", "grid_M", "tol",
                         "max_iter", "render", "dimension", "minimax"});
    if (j.contains("name") && !j["name"].is_string()) c.fail("$.name", "expected a string");
    if (j.contains("description") && !j["description"].is_string()) c.fail("$.description", "expected a string");

    std::optional<FunctionSpec> seed;
    if (!j.contains("seed")) c.fail("$", "missing required key 'seed'");
    else seed = parse_function(c, j["seed"], "$.seed");

    std::optional<Interval> interval;
    if (j.contains("interval")) {
        auto v = c.numbers(j["interval"], "$.interval");
        if (v && v->size() != 2) c.fail("$.interval", "expected [lo, hi]");
        else if (v) guarded(c, "$.interval", [&] { interval = Interval((*v)[0], (*v)[1]); });
    } else if (seed) {
        interval = seed->default_interval;
    }

    std::optional<Partition> partition;
    if (!j.contains("partition")) {
        c.fail("$", "missing required key 'partition'");
    } else if (c.is_object(j["partition"], "$.partition")) {
        const json& p = j["partition"];
        c.only_keys(p, "$.partition", {"uniform", "nodes"});
        if (p.contains("uniform") == p.contains("nodes")) {
            c.fail("$.partition", "exactly one of 'uniform', 'nodes' is required");
        } else if (p.contains("uniform")) {
            auto n = c.integer(p["uniform"], "$.partition.uniform", 2);
            if (n && interval)
                guarded(c, "$.partition", [&] { partition = Partition::uniform(*interval, static_cast<std::size_t>(*n)); });
        } else if (auto nodes = c.numbers(p["nodes"], "$.partition.nodes")) {
            guarded(c, "$.partition.nodes", [&] { partition = Partition(*nodes); });
            if (partition && interval) {
                const Interval pi = partition->interval();
                const double tol = 1e-12 * std::max({1.0, std::abs(pi.lo), std::abs(pi.hi)});
                if (std::abs(pi.lo - interval->lo) > tol || std::abs(pi.hi - interval->hi) > tol) {
                    c.fail("$.partition.nodes", "first and last node must equal the interval end points");
                    partition.reset();
                }
            }
        }
    }

    std::optional<ScalingVector> scaling;
    if (!j.contains("scaling")) {
        c.fail("$", "missing required key 'scaling'");
    } else if (c.is_object(j["scaling"], "$.scaling")) {
        const json& s = j["scaling"];
        c.only_keys(s, "$.scaling", {"uniform", "values"});
        if (s.contains("uniform") == s.contains("values")) {
            c.fail("$.scaling", "exactly one of 'uniform', 'values' is required");
        } else if (s.contains("uniform")) {
            auto a = c.number(s["uniform"], "$.scaling.uniform");
            if (a && partition)
                guarded(c, "$.scaling", [&] { scaling = ScalingVector::uniform(partition->subinterval_count(), *a); });
        } else if (auto v = c.numbers(s["values"], "$.scaling.values")) {
            guarded(c, "$.scaling.values", [&] { scaling = ScalingVector(*v); });
            if (scaling && partition && scaling->size() != partition->subinterval_count()) {
                c.fail("$.scaling.values", "length " + std::to_string(scaling->size()) + " differs from the " +
                                               std::to_string(partition->subinterval_count()) + " subintervals");
                scaling.reset();
            }
        }
    }

    std::optional<std::variant<BaseOperator, FunctionSpec>> base;
    if (!j.contains("base")) {
        c.fail("$", "missing required key 'base'");
    } else if (c.is_object(j["base"], "$.base")) {
        const json& b = j["base"];
        c.only_keys(b, "$.base", {"kind", "order", "profile", "map", "function"});
        const std::string kind = b.contains("kind") && b["kind"].is_string() ? b["kind"].get<std::string>() : "";
        auto forbid = [&](std::initializer_list<const char*> keys) {
            for (const char* k : keys)
                if (b.contains(k)) c.fail("$.base", "key '" + std::string(k) + "' does not apply to kind '" + kind + "'");
        };
        if (kind == "bernstein") {
            forbid({"profile", "map", "function"});
            if (!b.contains("order")) c.fail("$.base", "kind 'bernstein' needs 'order'");
            else if (auto n = c.integer(b["order"], "$.base.order", 1)) {
                if (*n > kMaxBernsteinOrder) c.fail("$.base.order", "must be <= " + std::to_string(kMaxBernsteinOrder));
                else base = BaseOperator::bernstein(static_cast<int>(*n));
            }
        } else if (kind == "profile") {
            forbid({"order", "map", "function"});
            const std::string name = b.value("profile", std::string("quadratic_dip"));
            if (name != "quadratic_dip") c.fail("$.base.profile", "unknown profile '" + name + "' (known: quadratic_dip)");
            else if (interval) base = BaseOperator::quadratic_dip_profile(*interval);
        } else if (kind == "compose") {
            forbid({"order", "profile", "function"});
            const std::string name = b.value("map", std::string("cubic"));
            if (name != "cubic") c.fail("$.base.map", "unknown map '" + name + "' (known: cubic)");
            else if (interval) base = BaseOperator::cubic_map(*interval);
        } else if (kind == "explicit") {
            forbid({"order", "profile", "map"});
            if (!b.contains("function")) c.fail("$.base", "kind 'explicit' needs 'function'");
            else if (auto fs = parse_function(c, b["function"], "$.base.function")) base = *fs;
        } else {
            c.fail("$.base.kind", "expected one of bernstein, profile, compose, explicit");
        }
    }

    if (j.contains("grid_M")) {
        if (auto g = c.integer(j["grid_M"], "$.grid_M", 3)) cfg.grid = static_cast<std::size_t>(*g);
    }
    if (grid_override) cfg.grid = *grid_override;
    if (partition && cfg.grid < 2 * partition->subinterval_count() + 1)
        c.fail("$.grid_M", "must be at least 2N+1 = " + std::to_string(2 * partition->subinterval_count() + 1));

    if (j.contains("tol")) {
        if (auto t = c.number(j["tol"], "$.tol")) {
            if (*t <= 0.0) c.fail("$.tol", "must be positive");
            else cfg.tol = *t;
        }
    } else if (scaling) {
        cfg.tol = default_tolerance(*scaling);
    }
    if (j.contains("max_iter")) {
        if (auto m = c.integer(j["max_iter"], "$.max_iter", 1)) cfg.max_iter = static_cast<int>(*m);
    }

    if (j.contains("render") && c.is_object(j["render"], "$.render")) {
        const json& r = j["render"];
        c.only_keys(r, "$.render", {"quotient", "svg"});
        if (r.contains("quotient")) cfg.render_quotient = c.boolean(r["quotient"], "$.render.quotient").value_or(false);
        if (r.contains("svg")) cfg.render_svg = c.boolean(r["svg"], "$.render.svg").value_or(false);
        if (cfg.render_quotient && seed && !seed->quotient)
            c.fail("$.render.quotient", "quotient mode needs a rational seed or the fig1 builtin");
        if (cfg.render_quotient && base && std::holds_alternative<FunctionSpec>(*base))
            c.fail("$.render.quotient", "quotient mode needs a linear base operator");
    }

    if (j.contains("dimension") && c.is_object(j["dimension"], "$.dimension")) {
        const json& d = j["dimension"];
        c.only_keys(d, "$.dimension", {"estimate", "min_scale", "max_scale", "n_scales"});
        DimensionOptions& o = cfg.dimension;
        if (d.contains("estimate")) o.estimate = c.boolean(d["estimate"], "$.dimension.estimate").value_or(false);
        if (d.contains("min_scale")) o.min_scale = c.number(d["min_scale"], "$.dimension.min_scale").value_or(o.min_scale);
        if (d.contains("max_scale")) o.max_scale = c.number(d["max_scale"], "$.dimension.max_scale").value_or(o.max_scale);
        if (d.contains("n_scales")) {
            if (auto n = c.integer(d["n_scales"], "$.dimension.n_scales", 3)) o.n_scales = static_cast<std::size_t>(*n);
        }
        if (!(o.min_scale > 0.0 && o.min_scale < o.max_scale && o.max_scale <= 1.0))
            c.fail("$.dimension", "scales must satisfy 0 < min_scale < max_scale <= 1");
    }

    if (j.contains("minimax") && c.is_object(j["minimax"], "$.minimax")) {
        const json& m = j["minimax"];
        c.only_keys(m, "$.minimax", {"degrees", "corpus", "bernstein"});
        if (!m.contains("degrees") || !m["degrees"].is_array() || m["degrees"].empty()) {
            c.fail("$.minimax.degrees", "expected a non-empty array of [m, n] pairs");
        } else {
            for (std::size_t i = 0; i < m["degrees"].size(); ++i) {
                const json& pair = m["degrees"][i];
                const std::string path = "$.minimax.degrees[" + std::to_string(i) + "]";
                if (!pair.is_array() || pair.size() != 2) {
                    c.fail(path, "expected [m, n]");
                    continue;
                }
                auto dm = c.integer(pair[0], path + "[0]", 0);
                auto dn = c.integer(pair[1], path + "[1]", 0);
                if (dm && dn)
                    cfg.minimax.degrees.emplace_back(static_cast<std::size_t>(*dm), static_cast<std::size_t>(*dn));
            }
        }
        if (m.contains("corpus")) {
            if (!m["corpus"].is_array()) c.fail("$.minimax.corpus", "expected an array of function specs");
            else
                for (std::size_t i = 0; i < m["corpus"].size(); ++i) {
                    const std::string path = "$.minimax.corpus[" + std::to_string(i) + "]";
                    if (auto fs = parse_function(c, m["corpus"][i], path)) {
                        if (!fs->periodic) c.fail(path, "minimax corpus functions must be 2pi-periodic");
                        else cfg.minimax.corpus.push_back(*fs);
                    }
                }
        } else if (seed) {
            cfg.minimax.corpus.push_back(*seed);
        }
        if (m.contains("bernstein")) {
            if (!m["bernstein"].is_array()) c.fail("$.minimax.bernstein", "expected an array of orders");
            else
                for (std::size_t i = 0; i < m["bernstein"].size(); ++i) {
                    const std::string path = "$.minimax.bernstein[" + std::to_string(i) + "]";
                    if (auto n = c.integer(m["bernstein"][i], path, 1)) {
                        if (*n > kMaxBernsteinOrder) c.fail(path, "must be <= " + std::to_string(kMaxBernsteinOrder));
                        else cfg.minimax.bernstein.push_back(static_cast<int>(*n));
                    }
                }
        }
        if (interval && (std::abs(interval->lo + kPi) > 1e-12 || std::abs(interval->hi - kPi) > 1e-12))
            c.fail("$.interval", "minimax runs need the interval [-pi, pi]");
    }

    if (!seed || !interval || !partition || !scaling || !base) {
        if (c.violations.empty()) c.fail("$", "incomplete config");
        throw ConfigError(c.violations);
    }
    cfg.seed = *seed;
    cfg.interval = *interval;
    cfg.partition = *partition;
    cfg.scaling = *scaling;
    cfg.base = *base;

    // Semantic checks that need the sampled seed: endpoint matching of b.
    if (c.violations.empty()) guarded(c, "$.base", [&] { (void)cfg.spec(); });
    if (!c.violations.empty()) throw ConfigError(c.violations);
    return cfg;
}

Config load_config(const std::string& path, std::optional<std::size_t> grid_override) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"$: cannot read config file '" + path + "'"});
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("$: malformed JSON: ") + e.what()});
    }
    return parse_config(j, grid_override);
}

}  // namespace fractalfn::cli
