#include "socnet/persona.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "socnet/errors.hpp"
#include "socnet/llm.hpp"
#include "socnet/rng.hpp"

namespace socnet {

using nlohmann::json;

std::string variable_name(Variable v) {
    switch (v) {
    case Variable::Gender: return "gender";
    case Variable::Age: return "age";
    case Variable::Race: return "race_ethnicity";
    case Variable::Religion: return "religion";
    case Variable::Political: return "political";
    }
    return "";
}

std::optional<Variable> variable_from_name(const std::string& name) {
    for (Variable v : kAllVariables)
        if (variable_name(v) == name) return v;
    return std::nullopt;
}

const std::string& Persona::value(Variable v) const {
    switch (v) {
    case Variable::Gender: return gender;
    case Variable::Race: return race_ethnicity;
    case Variable::Religion: return religion;
    case Variable::Political: return political;
    default: throw DataError("age has no categorical value");
    }
}

bool PersonaSet::is_active(Variable v) const {
    return std::find(active.begin(), active.end(), v) != active.end();
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::string> parse_vocab(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].empty())
        throw ConfigError("vocabularies." + key + " must be a non-empty array");
    std::vector<std::string> out;
    for (const auto& v : j[key]) out.push_back(v.get<std::string>());
    auto sorted = out;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ConfigError("vocabularies." + key + " has duplicate values");
    return out;
}

int index_of(const std::vector<std::string>& vocab, const std::string& value, const std::string& what) {
    auto it = std::find(vocab.begin(), vocab.end(), value);
    if (it == vocab.end()) throw ConfigError(what + " '" + value + "' is not in the vocabulary");
    return static_cast<int>(it - vocab.begin());
}

// Distribution row keyed by vocabulary values; absent keys mean zero mass.
std::vector<double> parse_row(const json& row, const std::vector<std::string>& vocab, const std::string& what) {
    std::vector<double> out(vocab.size(), 0.0);
    double sum = 0.0;
    for (const auto& [key, val] : row.items()) {
        int idx = index_of(vocab, key, what + ": key");
        double p = val.get<double>();
        if (p < 0.0) throw ConfigError(what + ": negative probability for '" + key + "'");
        out[static_cast<std::size_t>(idx)] = p;
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ConfigError(what + ": row sums to " + std::to_string(sum) + ", expected 1");
    return out;
}

} // namespace

DemographicConfig load_demographic_config(const std::string& path) {
    std::string raw = read_file(path);
    json j;
    try {
        j = json::parse(raw);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    DemographicConfig cfg;
    cfg.hash = fnv1a_hex(raw);
    if (!j.contains("vocabularies")) throw ConfigError("missing vocabularies");
    cfg.gender_vocab = parse_vocab(j["vocabularies"], "gender");
    cfg.race_vocab = parse_vocab(j["vocabularies"], "race_ethnicity");
    cfg.religion_vocab = parse_vocab(j["vocabularies"], "religion");
    cfg.political_vocab = parse_vocab(j["vocabularies"], "political");

    if (!j.contains("joint_gender_age_race") || !j["joint_gender_age_race"].is_object())
        throw ConfigError("missing joint_gender_age_race table");
    double total = 0.0;
    for (const auto& [gender, races] : j["joint_gender_age_race"].items()) {
        index_of(cfg.gender_vocab, gender, "joint gender");
        cfg.joint_genders.push_back(gender);
        std::vector<std::vector<double>> per_race(cfg.race_vocab.size(), std::vector<double>(101, 0.0));
        for (const auto& [race, ages] : races.items()) {
            int r = index_of(cfg.race_vocab, race, "joint race");
            if (!ages.is_array() || ages.size() != 101)
                throw ConfigError("joint_gender_age_race[" + gender + "][" + race + "] must list 101 age weights");
            for (std::size_t a = 0; a < 101; ++a) {
                double p = ages[a].get<double>();
                if (p < 0.0) throw ConfigError("joint_gender_age_race has a negative mass");
                per_race[static_cast<std::size_t>(r)][a] = p;
                total += p;
            }
        }
        cfg.joint.push_back(std::move(per_race));
    }
    if (cfg.joint_genders.empty()) throw ConfigError("joint_gender_age_race is empty");
    if (std::fabs(total - 1.0) > 1e-9)
        throw ConfigError("joint_gender_age_race sums to " + std::to_string(total) + ", expected 1");

    if (j.contains("nonbinary_by_age")) {
        for (const auto& b : j["nonbinary_by_age"]) {
            AgeBucketRate r;
            r.min_age = b.at("min_age").get<int>();
            r.max_age = b.at("max_age").get<int>();
            r.p = b.at("p").get<double>();
            if (r.min_age < 0 || r.max_age > 100 || r.min_age > r.max_age)
                throw ConfigError("nonbinary_by_age bucket out of range");
            if (r.p < 0.0 || r.p > 1.0) throw ConfigError("nonbinary_by_age probability out of [0,1]");
            for (const auto& prev : cfg.nonbinary_by_age)
                if (r.min_age <= prev.max_age && prev.min_age <= r.max_age)
                    throw ConfigError("nonbinary_by_age buckets overlap");
            cfg.nonbinary_by_age.push_back(r);
        }
    }
    if (j.contains("nonbinary_label")) cfg.nonbinary_label = j["nonbinary_label"].get<std::string>();
    bool any_nb = std::any_of(cfg.nonbinary_by_age.begin(), cfg.nonbinary_by_age.end(),
                              [](const AgeBucketRate& r) { return r.p > 0.0; });
    if (any_nb) index_of(cfg.gender_vocab, cfg.nonbinary_label, "nonbinary label");

    if (!j.contains("religion_given_race")) throw ConfigError("missing religion_given_race table");
    cfg.religion_given_race.assign(cfg.race_vocab.size(), {});
    for (std::size_t r = 0; r < cfg.race_vocab.size(); ++r) {
        const auto& race = cfg.race_vocab[r];
        if (!j["religion_given_race"].contains(race))
            throw ConfigError("religion_given_race missing row for race '" + race + "'");
        cfg.religion_given_race[r] =
            parse_row(j["religion_given_race"][race], cfg.religion_vocab, "religion_given_race[" + race + "]");
    }

    if (!j.contains("political_given_gender_race")) throw ConfigError("missing political_given_gender_race table");
    cfg.political_given_gender_race.assign(cfg.joint_genders.size(), {});
    for (std::size_t g = 0; g < cfg.joint_genders.size(); ++g) {
        cfg.political_given_gender_race[g].assign(cfg.race_vocab.size(), {});
        for (std::size_t r = 0; r < cfg.race_vocab.size(); ++r) {
            std::string key = cfg.joint_genders[g] + "|" + cfg.race_vocab[r];
            if (!j["political_given_gender_race"].contains(key))
                throw ConfigError("political_given_gender_race missing row for '" + key + "'");
            cfg.political_given_gender_race[g][r] = parse_row(j["political_given_gender_race"][key],
                                                              cfg.political_vocab,
                                                              "political_given_gender_race[" + key + "]");
        }
    }
    return cfg;
}

namespace {

std::size_t draw_from_cdf(const std::vector<double>& cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) return cdf.size() - 1; // guard the top rounding sliver
    return static_cast<std::size_t>(it - cdf.begin());
}

std::vector<double> row_cdf(const std::vector<double>& row) {
    std::vector<double> cdf(row.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        acc += row[i];
        cdf[i] = acc;
    }
    return cdf;
}

} // namespace

PersonaSet sample_personas(const DemographicConfig& cfg, int n, std::uint64_t seed) {
    if (n < 1) throw DataError("persona count must be positive");
    // flatten the joint in (gender, race, age) order
    const std::size_t races = cfg.race_vocab.size();
    std::vector<double> cdf;
    cdf.reserve(cfg.joint_genders.size() * races * 101);
    double acc = 0.0;
    for (const auto& per_race : cfg.joint) {
        for (const auto& ages : per_race) {
            for (double p : ages) {
                acc += p;
                cdf.push_back(acc);
            }
        }
    }
    PersonaSet set;
    set.active.assign(std::begin(kAllVariables), std::end(kAllVariables));
    set.config_hash = cfg.hash;
    set.seed = seed;
    Rng rng(derive_seed(seed, 0x9e25));
    for (int i = 0; i < n; ++i) {
        std::size_t cell = draw_from_cdf(cdf, rng.next_unit());
        std::size_t g = cell / (races * 101);
        std::size_t r = (cell / 101) % races;
        int age = static_cast<int>(cell % 101);

        Persona p;
        p.id = i;
        p.age = age;
        p.race_ethnicity = cfg.race_vocab[r];
        p.gender = cfg.joint_genders[g];
        double nb_p = 0.0;
        for (const auto& bucket : cfg.nonbinary_by_age)
            if (age >= bucket.min_age && age <= bucket.max_age) nb_p = bucket.p;
        if (rng.next_bernoulli(nb_p)) p.gender = cfg.nonbinary_label;
        p.religion = cfg.religion_vocab[draw_from_cdf(row_cdf(cfg.religion_given_race[r]), rng.next_unit())];
        // conditioned on the jointly sampled gender; the nonbinary identity
        // is an override on top of it, not a sampling dimension
        p.political =
            cfg.political_vocab[draw_from_cdf(row_cdf(cfg.political_given_gender_race[g][r]), rng.next_unit())];
        set.personas.push_back(std::move(p));
    }
    return set;
}

PersonaSet shuffle_demographics(const PersonaSet& set, std::uint64_t seed) {
    PersonaSet out = set;
    Rng rng(derive_seed(seed, 0x51144));
    int n = set.size();
    for (Variable v : set.active) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        rng.shuffle(perm);
        for (int i = 0; i < n; ++i) {
            const Persona& src = set.personas[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
            Persona& dst = out.personas[static_cast<std::size_t>(i)];
            switch (v) {
            case Variable::Gender: dst.gender = src.gender; break;
            case Variable::Age: dst.age = src.age; break;
            case Variable::Race: dst.race_ethnicity = src.race_ethnicity; break;
            case Variable::Religion: dst.religion = src.religion; break;
            case Variable::Political: dst.political = src.political; break;
            }
        }
    }
    return out;
}

PersonaSet project(const PersonaSet& set, const std::vector<Variable>& keep) {
    if (keep.empty()) throw DataError("projection requires at least one variable");
    for (Variable v : keep)
        if (!set.is_active(v))
            throw DataError("cannot project onto inactive variable '" + variable_name(v) + "'");
    PersonaSet out = set;
    out.active.clear();
    for (Variable v : kAllVariables) // canonical order, deduplicated
        if (std::find(keep.begin(), keep.end(), v) != keep.end()) out.active.push_back(v);
    for (auto& p : out.personas) {
        if (!out.is_active(Variable::Gender)) p.gender.clear();
        if (!out.is_active(Variable::Age)) p.age = 0;
        if (!out.is_active(Variable::Race)) p.race_ethnicity.clear();
        if (!out.is_active(Variable::Religion)) p.religion.clear();
        if (!out.is_active(Variable::Political)) p.political.clear();
    }
    return out;
}

std::string render_fields(const Persona& p, const std::vector<Variable>& order) {
    std::string out;
    for (Variable v : order) {
        if (!out.empty()) out += ", ";
        if (v == Variable::Age)
            out += "age " + std::to_string(p.age);
        else
            out += p.value(v);
    }
    return out;
}

std::string render_persona(const Persona& p, const std::vector<Variable>& order, bool with_interests) {
    std::string out = std::to_string(p.id) + ". " + render_fields(p, order);
    if (with_interests && p.interests) out += "; interests include: " + *p.interests;
    return out;
}

namespace {

std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

PersonaSet attach_interests(const PersonaSet& set, ChatBackend& backend, std::uint64_t seed) {
    PersonaSet out = set;
    const int n = set.size();
    std::vector<std::string> results(static_cast<std::size_t>(n));
    std::vector<std::string> failures(static_cast<std::size_t>(n));
    std::atomic<int> cursor{0};

    auto worker = [&] {
        for (;;) {
            int i = cursor.fetch_add(1);
            if (i >= n) return;
            Rng rng(derive_seed(seed, 0x1e4e5 + static_cast<std::uint64_t>(i)));
            auto order = set.active;
            rng.shuffle(order);
            std::string prompt = render_interest_prompt(set.personas[static_cast<std::size_t>(i)], order);
            std::string err;
            for (int attempt = 0; attempt < 4; ++attempt) { // 1 try + 3 retries
                try {
                    auto res = backend.complete("", prompt);
                    std::string text = trimmed(res.reply);
                    if (!text.empty()) {
                        results[static_cast<std::size_t>(i)] = std::move(text);
                        break;
                    }
                    err = "empty reply";
                } catch (const BackendError& e) {
                    err = e.what();
                }
            }
            if (results[static_cast<std::size_t>(i)].empty())
                failures[static_cast<std::size_t>(i)] = err.empty() ? "empty reply" : err;
        }
    };

    unsigned threads = std::min<unsigned>({std::thread::hardware_concurrency(), 8u, static_cast<unsigned>(n)});
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::string first_error;
    for (int i = 0; i < n; ++i) {
        if (!results[static_cast<std::size_t>(i)].empty())
            out.personas[static_cast<std::size_t>(i)].interests = results[static_cast<std::size_t>(i)];
        else if (first_error.empty())
            first_error = "persona " + std::to_string(i) + ": " + failures[static_cast<std::size_t>(i)];
    }
    out.interests_active = true;
    if (!first_error.empty()) throw InterestError("interest generation failed: " + first_error, std::move(out));
    return out;
}

void save_personas(const PersonaSet& set, const std::string& path) {
    json arr = json::array();
    for (const auto& p : set.personas) {
        json o;
        o["id"] = p.id;
        if (set.is_active(Variable::Gender)) o["gender"] = p.gender;
        if (set.is_active(Variable::Age)) o["age"] = p.age;
        if (set.is_active(Variable::Race)) o["race_ethnicity"] = p.race_ethnicity;
        if (set.is_active(Variable::Religion)) o["religion"] = p.religion;
        if (set.is_active(Variable::Political)) o["political"] = p.political;
        if (set.interests_active && p.interests) o["interests"] = *p.interests;
        arr.push_back(std::move(o));
    }
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw DataError("cannot write personas: " + path);
    outf << arr.dump(1) << "\n";
}

PersonaSet load_personas(const std::string& path) {
    json arr;
    try {
        arr = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw DataError(path + ": invalid JSON: " + e.what());
    }
    if (!arr.is_array() || arr.empty()) throw DataError(path + ": expected a non-empty persona array");
    PersonaSet set;
    bool first = true;
    std::vector<bool> seen;
    for (const auto& o : arr) {
        std::vector<Variable> present;
        for (Variable v : kAllVariables)
            if (o.contains(variable_name(v))) present.push_back(v);
        if (first) {
            set.active = present;
            seen.assign(arr.size(), false);
            first = false;
        } else if (present != set.active) {
            throw DataError(path + ": personas carry inconsistent variable sets");
        }
        Persona p;
        p.id = o.at("id").get<int>();
        if (p.id < 0 || p.id >= static_cast<int>(arr.size()) || seen[static_cast<std::size_t>(p.id)])
            throw DataError(path + ": persona ids must be dense 0..N-1, got duplicate or out-of-range " +
                            std::to_string(p.id));
        seen[static_cast<std::size_t>(p.id)] = true;
        if (set.is_active(Variable::Gender)) p.gender = o.at("gender").get<std::string>();
        if (set.is_active(Variable::Age)) {
            p.age = o.at("age").get<int>();
            if (p.age < 0 || p.age > 100) throw DataError(path + ": age out of range [0,100]");
        }
        if (set.is_active(Variable::Race)) p.race_ethnicity = o.at("race_ethnicity").get<std::string>();
        if (set.is_active(Variable::Religion)) p.religion = o.at("religion").get<std::string>();
        if (set.is_active(Variable::Political)) p.political = o.at("political").get<std::string>();
        if (o.contains("interests")) {
            p.interests = o.at("interests").get<std::string>();
            set.interests_active = true;
        }
        set.personas.push_back(std::move(p));
    }
    std::sort(set.personas.begin(), set.personas.end(),
              [](const Persona& a, const Persona& b) { return a.id < b.id; });
    return set;
}

} // namespace socnet
