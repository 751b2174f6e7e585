#include "radialfs/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "radialfs/errors.hpp"

namespace radialfs {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    return std::all_of(k.begin(), k.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

std::optional<double> try_number(std::string_view text) {
    std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    std::string low = t;
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
    if (low == "inf" || low == "+inf" || low == "infinity") return std::numeric_limits<double>::infinity();
    if (low == "-inf" || low == "-infinity") return -std::numeric_limits<double>::infinity();
    if (auto slash = t.find('/'); slash != std::string::npos) {
        auto a = try_number(std::string_view(t).substr(0, slash));
        auto b = try_number(std::string_view(t).substr(slash + 1));
        if (!a || !b || *b == 0) return std::nullopt;
        return *a / *b;
    }
    double v = 0;
    const char* first = t.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

// 1-based line of the first occurrence of "leaf" as a JSON key
int json_line(std::string_view text, const std::string& leaf) {
    const std::string needle = "\"" + leaf + "\"";
    auto pos = text.find(needle);
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    throw ConfigError("unsupported JSON value", 0, key);
}

}  // namespace

double parse_number(std::string_view text) {
    auto v = try_number(text);
    if (!v) throw ConfigError("not a number: '" + std::string(text) + "'");
    return *v;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
    ExperimentConfig cfg;
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            int line = 1 + static_cast<int>(std::count(text.begin(),
                                                       text.begin() + std::min(e.byte, text.size()), '\n'));
            throw ConfigError(std::string("malformed JSON: ") + e.what(), line);
        }
        if (!doc.is_object()) throw ConfigError("JSON config must be an object", 1);
        for (auto& [k, v] : doc.items()) {
            if (v.is_object()) {
                for (auto& [k2, v2] : v.items()) {
                    const std::string key = k + "." + k2;
                    if (!valid_key(k2)) throw ConfigError("invalid key", json_line(text, k2), key);
                    std::string value;
                    if (v2.is_array()) {
                        std::vector<std::string> parts;
                        bool strings = false;
                        for (auto& e : v2) {
                            strings = strings || e.is_string();
                            parts.push_back(json_scalar(e, key));
                        }
                        for (std::size_t i = 0; i < parts.size(); ++i)
                            value += (i ? (strings ? ";" : ",") : "") + parts[i];
                    } else if (v2.is_object()) {
                        throw ConfigError("sections nest one level only", json_line(text, k2), key);
                    } else {
                        value = json_scalar(v2, key);
                    }
                    cfg.entries_[key] = Entry{value, json_line(text, k2)};
                }
            } else {
                if (!valid_key(k)) throw ConfigError("invalid key", json_line(text, k), k);
                if (v.is_array()) throw ConfigError("lists belong in a section", json_line(text, k), k);
                cfg.entries_[k] = Entry{json_scalar(v, k), json_line(text, k)};
            }
        }
    } else {
        std::string section;
        int line_no = 0;
        std::istringstream in{std::string(text)};
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = raw;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
                section = trim(std::string_view(line).substr(1, line.size() - 2));
                if (!valid_key(section) || section.find('.') != std::string::npos)
                    throw ConfigError("invalid section name '" + section + "'", line_no);
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
            std::string key = trim(std::string_view(line).substr(0, eq));
            std::string value = trim(std::string_view(line).substr(eq + 1));
            if (!valid_key(key) || key.find('.') != std::string::npos)
                throw ConfigError("invalid key '" + key + "'", line_no);
            if (!section.empty()) key = section + "." + key;
            if (cfg.entries_.count(key))
                throw ConfigError("duplicate key (first on line " + std::to_string(cfg.entries_[key].line) + ")",
                                  line_no, key);
            cfg.entries_[key] = Entry{value, line_no};
        }
    }

    auto exp = cfg.find("experiment");
    if (!exp || exp->value.empty()) throw ConfigError("missing experiment name", 0, "experiment");
    exp->used = true;
    cfg.experiment_ = exp->value;
    if (auto s = cfg.find("seed")) {
        s->used = true;
        cfg.seed_line_ = s->line;
        std::uint64_t v = 0;
        const std::string& t = s->value;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size())
            throw ConfigError("seed must be a nonnegative integer", s->line, "seed");
        cfg.seed_ = v;
    }
    if (auto o = cfg.find("output")) {
        o->used = true;
        cfg.output_ = o->value;
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void ExperimentConfig::apply_seed_override() {
    const char* env = std::getenv("RADIALFS_SEED");
    if (!env || !*env) return;
    std::string t = trim(env);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError("RADIALFS_SEED must be a nonnegative integer", 0, "seed");
    seed_ = v;
}

std::uint64_t ExperimentConfig::require_seed() const {
    if (!seed_) throw ConfigError("experiment '" + experiment_ + "' is randomized and needs a seed", 0, "seed");
    return *seed_;
}

int ExperimentConfig::line_of(const std::string& key) const {
    auto e = find(key);
    return e ? e->line : 0;
}

void ExperimentConfig::set(const std::string& key, std::string value) {
    if (key == "seed") {
        set_seed(static_cast<std::uint64_t>(std::stoull(value)));
        return;
    }
    if (key == "output") {
        output_ = value;
        return;
    }
    entries_[key] = Entry{std::move(value), 0};
}

const ExperimentConfig::Entry* ExperimentConfig::find(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
}

const ExperimentConfig::Entry& ExperimentConfig::need(const std::string& key) const {
    auto e = find(key);
    if (!e) throw ConfigError("missing required key", 0, key);
    return *e;
}

std::string ExperimentConfig::str(const std::string& key) const { return need(key).value; }

std::string ExperimentConfig::str(const std::string& key, const std::string& fallback) const {
    auto e = find(key);
    return e ? e->value : fallback;
}

double ExperimentConfig::num(const std::string& key) const {
    const Entry& e = need(key);
    auto v = try_number(e.value);
    if (!v) throw ConfigError("expected a number, got '" + e.value + "'", e.line, key);
    return *v;
}

double ExperimentConfig::num(const std::string& key, double fallback) const {
    return has(key) ? num(key) : fallback;
}

int ExperimentConfig::integer(const std::string& key) const {
    const Entry& e = need(key);
    auto v = try_number(e.value);
    if (!v || std::floor(*v) != *v || std::abs(*v) > 1e9)
        throw ConfigError("expected an integer, got '" + e.value + "'", e.line, key);
    return static_cast<int>(*v);
}

int ExperimentConfig::integer(const std::string& key, int fallback) const {
    return has(key) ? integer(key) : fallback;
}

bool ExperimentConfig::flag(const std::string& key, bool fallback) const {
    auto e = find(key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
    if (e->value == "false" || e->value == "no" || e->value == "0") return false;
    throw ConfigError("expected true or false, got '" + e->value + "'", e->line, key);
}

std::vector<int> ExperimentConfig::ints(const std::string& key) const {
    const Entry& e = need(key);
    std::vector<int> out;
    auto as_int = [&](const std::string& t) {
        auto v = try_number(t);
        if (!v || std::floor(*v) != *v || std::abs(*v) > 1e9)
            throw ConfigError("expected integers, got '" + t + "'", e.line, key);
        return static_cast<int>(*v);
    };
    if (auto dots = e.value.find(".."); dots != std::string::npos) {
        int a = as_int(e.value.substr(0, dots)), b = as_int(e.value.substr(dots + 2));
        if (b < a) throw ConfigError("empty range '" + e.value + "'", e.line, key);
        for (int i = a; i <= b; ++i) out.push_back(i);
    } else if (!trim(e.value).empty()) {
        for (auto& part : split(e.value, ',')) out.push_back(as_int(part));
    }
    if (out.empty()) throw ConfigError("empty list", e.line, key);
    return out;
}

std::vector<int> ExperimentConfig::ints(const std::string& key, std::vector<int> fallback) const {
    return has(key) ? ints(key) : fallback;
}

std::vector<double> ExperimentConfig::nums(const std::string& key) const {
    const Entry& e = need(key);
    std::vector<double> out;
    if (!trim(e.value).empty()) {
        for (auto& part : split(e.value, ',')) {
            auto v = try_number(part);
            if (!v) throw ConfigError("expected numbers, got '" + part + "'", e.line, key);
            out.push_back(*v);
        }
    }
    if (out.empty()) throw ConfigError("empty list", e.line, key);
    return out;
}

std::vector<double> ExperimentConfig::nums(const std::string& key, std::vector<double> fallback) const {
    return has(key) ? nums(key) : fallback;
}

std::vector<std::string> ExperimentConfig::strings(const std::string& key) const {
    const Entry& e = need(key);
    std::vector<std::string> out;
    if (!trim(e.value).empty())
        for (auto& part : split(e.value, ';'))
            if (!part.empty()) out.push_back(part);
    if (out.empty()) throw ConfigError("empty list", e.line, key);
    return out;
}

std::vector<std::string> ExperimentConfig::strings(const std::string& key, std::vector<std::string> fallback) const {
    return has(key) ? strings(key) : fallback;
}

SpaceParams ExperimentConfig::params(const std::string& section, SpaceParams p) const {
    const std::string pre = section + ".";
    p.s = num(pre + "s", p.s);
    p.p = num(pre + "p", p.p);
    p.q = num(pre + "q", p.q);
    p.d = integer(pre + "d", p.d);
    if (auto e = find(pre + "scale")) {
        if (e->value == "B" || e->value == "b")
            p.scale = Scale::B;
        else if (e->value == "F" || e->value == "f")
            p.scale = Scale::F;
        else
            throw ConfigError("scale must be B or F", e->line, pre + "scale");
    }
    try {
        p.validate();
    } catch (const Error& err) {
        throw ConfigError(std::string("invalid parameters: ") + err.what(), line_of(pre + "p"), section);
    }
    return p;
}

void ExperimentConfig::reject_unused() const {
    const Entry* worst = nullptr;
    std::string name;
    for (auto& [k, e] : entries_) {
        if (e.used) continue;
        if (!worst || e.line < worst->line) {
            worst = &e;
            name = k;
        }
    }
    if (worst) throw ConfigError("unknown key for experiment '" + experiment_ + "'", worst->line, name);
}

std::string ExperimentConfig::render() const {
    std::ostringstream out;
    out << "experiment = " << experiment_ << "\n";
    if (seed_) out << "seed = " << *seed_ << "\n";
    if (!output_.empty()) out << "output = " << output_ << "\n";
    for (auto& [k, e] : entries_)
        if (k.find('.') == std::string::npos && k != "experiment" && k != "seed" && k != "output")
            out << k << " = " << e.value << "\n";
    std::string current;
    for (auto& [k, e] : entries_) {
        auto dot = k.find('.');
        if (dot == std::string::npos) continue;
        std::string sec = k.substr(0, dot), leaf = k.substr(dot + 1);
        if (sec != current) {
            out << "\n[" << sec << "]\n";
            current = sec;
        }
        out << leaf << " = " << e.value << "\n";
    }
    return out.str();
}

}  // namespace radialfs
