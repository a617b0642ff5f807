#include "coalhaus/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace coalhaus {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(ConfigError::Kind::Parse, "not a number: '" + text + "'");
    }
    if (used != text.size())
        throw ConfigError(ConfigError::Kind::Parse, "trailing junk in number: '" + text + "'");
    return v;
}

std::int64_t parse_int(const std::string& text) {
    const double v = parse_double(text);
    if (v != std::floor(v) || std::abs(v) > 9e15)
        throw ConfigError(ConfigError::Kind::Parse, "not an integer: '" + text + "'");
    return static_cast<std::int64_t>(v);
}

/** "name(a=1,b=2)" or "name(1,2)" or bare "name". Values are reals;
 *  positional arguments get empty keys. */
struct Call {
    std::string name;
    std::vector<std::pair<std::string, double>> args;

    double named(const std::string& key, const char* context) const {
        for (const auto& [k, v] : args)
            if (k == key) return v;
        if (args.size() == 1 && args[0].first.empty()) return args[0].second;
        throw ConfigError(ConfigError::Kind::Parse,
                          std::string(context) + ": missing argument '" + key + "'");
    }
};

Call parse_call(const std::string& text) {
    Call call;
    const auto open = text.find('(');
    if (open == std::string::npos) {
        call.name = trim(text);
        return call;
    }
    if (text.back() != ')')
        throw ConfigError(ConfigError::Kind::Parse, "missing ')' in '" + text + "'");
    call.name = trim(text.substr(0, open));
    const std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::istringstream ss(inner);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        piece = trim(piece);
        if (piece.empty())
            throw ConfigError(ConfigError::Kind::Parse, "empty argument in '" + text + "'");
        const auto eq = piece.find('=');
        if (eq == std::string::npos)
            call.args.emplace_back("", parse_double(piece));
        else
            call.args.emplace_back(trim(piece.substr(0, eq)),
                                   parse_double(trim(piece.substr(eq + 1))));
    }
    return call;
}

[[noreturn]] void regime_error(const std::string& what) {
    throw ConfigError(ConfigError::Kind::RegimeMismatch, what);
}

} // namespace

OffspringLaw parse_offspring(const std::string& text) {
    const Call call = parse_call(text);
    try {
        if (call.name == "geometric") return OffspringLaw::geometric(call.named("q", "geometric"));
        if (call.name == "stable")
            return OffspringLaw::stable_tail(call.named("alpha", "stable"));
        if (call.name == "neveu") return OffspringLaw::neveu_tail();
        if (call.name == "explicit") {
            std::vector<double> probs;
            for (const auto& [k, v] : call.args) {
                if (!k.empty())
                    throw ConfigError(ConfigError::Kind::Parse,
                                      "explicit law takes positional probabilities");
                probs.push_back(v);
            }
            return OffspringLaw::explicit_finite(std::move(probs));
        }
    } catch (const std::invalid_argument& e) {
        regime_error(std::string("offspring law: ") + e.what());
    }
    throw ConfigError(ConfigError::Kind::Parse, "unknown offspring law: '" + text + "'");
}

LambdaMeasure parse_lambda(const std::string& text) {
    // Components joined by '+': at most one density plus one kingman atom.
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == '+') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);

    bool have_density = false;
    LambdaMeasure density = LambdaMeasure::kingman(0.0);
    double atom = 0.0;
    try {
        for (const auto& part : parts) {
            const Call call = parse_call(trim(part));
            if (call.name == "kingman") {
                atom += call.named("a", "kingman");
            } else if (call.name == "beta") {
                if (have_density)
                    throw ConfigError(ConfigError::Kind::Parse, "two densities in lambda spec");
                density = LambdaMeasure::beta_paper(call.named("alpha", "beta"),
                                                    call.named("scale", "beta"));
                have_density = true;
            } else if (call.name == "uniform") {
                if (have_density)
                    throw ConfigError(ConfigError::Kind::Parse, "two densities in lambda spec");
                density = LambdaMeasure::uniform_scaled(call.named("scale", "uniform"));
                have_density = true;
            } else {
                throw ConfigError(ConfigError::Kind::Parse,
                                  "unknown lambda component: '" + part + "'");
            }
        }
    } catch (const std::invalid_argument& e) {
        regime_error(std::string("lambda measure: ") + e.what());
    }
    return atom > 0.0 ? density.with_atom(atom) : density;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) out.push_back(parse_double(trim(piece)));
    if (out.empty()) throw ConfigError(ConfigError::Kind::Parse, "empty list");
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') == std::string::npos) return parse_list(text);
    std::istringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
        throw ConfigError(ConfigError::Kind::Parse, "grid must be start:stop:step");
    const double start = parse_double(trim(a));
    const double stop = parse_double(trim(b));
    const double step = parse_double(trim(c));
    if (!(step > 0.0) || stop < start)
        throw ConfigError(ConfigError::Kind::Parse, "grid needs step > 0 and stop >= start");
    std::vector<double> out;
    for (std::int64_t i = 0;; ++i) {
        const double t = start + static_cast<double>(i) * step;
        if (t > stop + 1e-9 * step) break;
        out.push_back(t);
    }
    return out;
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(ConfigError::Kind::Parse,
                                  "bad section header on line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "experiment")
                throw ConfigError(ConfigError::Kind::UnknownKey,
                                  "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(ConfigError::Kind::Parse,
                              "expected key = value on line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section == "model") {
            if (key == "b") cfg.model.b = parse_double(value);
            else if (key == "d") cfg.model.d = parse_double(value);
            else if (key == "c") cfg.model.c = parse_double(value);
            else if (key == "K") cfg.model.K = parse_double(value);
            else if (key == "offspring") cfg.model.law = parse_offspring(value);
            else
                throw ConfigError(ConfigError::Kind::UnknownKey,
                                  "unknown key '" + key + "' in [model]");
        } else if (section == "experiment") {
            if (key == "k") cfg.k = static_cast<int>(parse_int(value));
            else if (key == "horizon") cfg.horizon = parse_double(value);
            else if (key == "reps") cfg.reps = static_cast<int>(parse_int(value));
            else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(value));
            else if (key == "K_list") cfg.K_list = parse_list(value);
            else if (key == "out") cfg.out = value;
            else if (key == "threads") cfg.threads = static_cast<int>(parse_int(value));
            else if (key == "mode") {
                if (value == "oracle") cfg.mode = LookdownMode::Oracle;
                else if (value == "scalable") cfg.mode = LookdownMode::Scalable;
                else
                    throw ConfigError(ConfigError::Kind::Parse,
                                      "mode must be oracle or scalable");
            } else if (key == "lambda") {
                cfg.lambda = parse_lambda(value);
                cfg.lambda_text = value;
            } else if (key == "grid") cfg.grid = parse_grid(value);
            else if (key == "initial_alphabet")
                cfg.initial_alphabet = static_cast<std::uint32_t>(parse_int(value));
            else if (key == "significance") cfg.significance = parse_double(value);
            else
                throw ConfigError(ConfigError::Kind::UnknownKey,
                                  "unknown key '" + key + "' in [experiment]");
        } else {
            throw ConfigError(ConfigError::Kind::Parse,
                              "key outside any section on line " + std::to_string(lineno));
        }
    }

    try {
        cfg.model.validate();
    } catch (const std::invalid_argument& e) {
        regime_error(std::string("model: ") + e.what());
    }
    if (cfg.k < 1 || cfg.reps < 1 || !(cfg.horizon >= 0.0))
        regime_error("experiment: k and reps must be >= 1 and horizon >= 0");
    if (!(cfg.significance > 0.0) || !(cfg.significance < 1.0))
        regime_error("experiment: significance must lie in (0,1)");
    for (double K : cfg.K_list)
        if (!(K >= 1.0)) regime_error("experiment: K_list entries must be >= 1");
    return cfg;
}

std::string read_file_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(ConfigError::Kind::Io, "cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig parse_config_file(const std::string& path) {
    return parse_config_text(read_file_or_throw(path));
}

std::uint64_t config_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace coalhaus
