#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "socnet/errors.hpp"
#include "socnet/llm.hpp"
#include "socnet/rng.hpp"

namespace socnet {

using nlohmann::json;

MockParams load_mock_params(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open mock params: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    MockParams p;
    if (j.contains("base_rate")) p.base_rate = j["base_rate"].get<double>();
    if (j.contains("degree_bonus")) p.degree_bonus = j["degree_bonus"].get<double>();
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("similarity_weights"))
        for (const auto& [key, val] : j["similarity_weights"].items()) {
            if (!variable_from_name(key)) throw ConfigError(path + ": unknown similarity variable '" + key + "'");
            p.similarity_weights[key] = val.get<double>();
        }
    if (!(p.base_rate > 0.0 && p.base_rate < 1.0))
        throw ConfigError(path + ": base_rate must lie strictly between 0 and 1");
    return p;
}

MockBackend::MockBackend(PersonaSet personas, MockParams params)
    : personas_(std::move(personas)), params_(std::move(params)) {
    if (!(params_.base_rate > 0.0 && params_.base_rate < 1.0))
        throw ConfigError("base_rate must lie strictly between 0 and 1");
    for (const auto& [name, w] : params_.similarity_weights)
        if (!variable_from_name(name)) throw ConfigError("unknown similarity variable '" + name + "'");
    base_logit_ = std::log(params_.base_rate / (1.0 - params_.base_rate));
}

double MockBackend::selection_probability(int subject, int candidate, double norm_degree) const {
    const Persona& a = personas_.personas[static_cast<std::size_t>(subject)];
    const Persona& b = personas_.personas[static_cast<std::size_t>(candidate)];
    double logit = base_logit_;
    for (const auto& [name, w] : params_.similarity_weights) {
        Variable v = *variable_from_name(name);
        if (!personas_.is_active(v)) continue;
        double match;
        if (v == Variable::Age) {
            double gap = std::min(std::abs(a.age - b.age), 50);
            match = 1.0 - gap / 50.0;
        } else {
            match = a.value(v) == b.value(v) ? 1.0 : 0.0;
        }
        logit += w * match;
    }
    logit += params_.degree_bonus * norm_degree;
    return 1.0 / (1.0 + std::exp(-logit));
}

namespace {

double coin_unit(std::uint64_t seed, int subject, int candidate) {
    std::uint64_t salt = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(subject)) << 32) |
                         static_cast<std::uint64_t>(static_cast<std::uint32_t>(candidate));
    std::uint64_t h = splitmix64(derive_seed(seed, salt));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

struct CandidateLine {
    int id = 0;
    int degree = 0;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<CandidateLine> parse_candidate_lines(const std::string& user_text, int roster_size) {
    std::vector<CandidateLine> out;
    std::istringstream in(user_text);
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::size_t dot = line.find(". ");
        if (dot == std::string::npos) throw BackendError("candidate line lacks an id: " + line);
        CandidateLine c;
        try {
            c.id = std::stoi(line.substr(0, dot));
        } catch (const std::exception&) {
            throw BackendError("candidate line lacks an id: " + line);
        }
        if (c.id < 0 || c.id >= roster_size) throw BackendError("candidate id outside roster: " + line);
        std::size_t has = line.rfind("; has ");
        std::size_t lst = line.rfind("; friends with IDs ");
        if (has != std::string::npos && (lst == std::string::npos || has > lst)) {
            c.degree = std::stoi(line.substr(has + 6));
        } else if (lst != std::string::npos) {
            std::string tail = trim(line.substr(lst + 19));
            if (tail != "none" && !tail.empty())
                c.degree = 1 + static_cast<int>(std::count(tail.begin(), tail.end(), ','));
        }
        out.push_back(c);
    }
    if (out.empty()) throw BackendError("no candidate lines in prompt");
    return out;
}

const char* canned_interests(const std::string& political) {
    if (political == "Democrat")
        return "Community organizing, indie film, urban gardening, live music, and volunteering locally";
    if (political == "Republican")
        return "Fishing trips, college football, grilling, church events, and classic car restoration";
    if (political == "Independent")
        return "Podcasts, hiking new trails, craft beer, local news, and weekend road trips";
    return "Reading novels, cooking new recipes, travel, board games, and time with family";
}

const char* canned_reason(const std::string& political) {
    if (political == "Democrat") return "we would get along at a neighborhood volunteer day";
    if (political == "Republican") return "we would enjoy the same weekend tailgates";
    if (political == "Independent") return "they seem easygoing and open minded";
    return "we have enough in common to hit it off";
}

} // namespace

bool MockBackend::selects(int subject, int candidate, double norm_degree) const {
    return coin_unit(params_.seed, subject, candidate) < selection_probability(subject, candidate, norm_degree);
}

ChatResult MockBackend::reply_global(const std::string& user_text) {
    auto lines = parse_candidate_lines(user_text, personas_.size());
    std::vector<int> ids;
    for (const auto& c : lines) ids.push_back(c.id);
    std::sort(ids.begin(), ids.end());
    ChatResult r;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            if (selects(ids[i], ids[j], 0.0))
                r.reply += std::to_string(ids[i]) + ", " + std::to_string(ids[j]) + "\n";
    return r;
}

ChatResult MockBackend::reply_friends(const std::string& system_text, const std::string& user_text) {
    auto lines = parse_candidate_lines(user_text, personas_.size());

    // The subject is whoever the system text claims to be: a roster persona
    // absent from the candidate list whose rendered fields match.
    std::size_t start = std::string("You are a ").size();
    std::size_t end = system_text.find(". You are joining");
    if (end == std::string::npos || end <= start) throw BackendError("malformed perspective prompt");
    std::string fields = system_text.substr(start, end - start);
    std::vector<bool> listed(static_cast<std::size_t>(personas_.size()), false);
    for (const auto& c : lines) listed[static_cast<std::size_t>(c.id)] = true;
    int subject = -1;
    for (const auto& p : personas_.personas) {
        if (listed[static_cast<std::size_t>(p.id)]) continue;
        if (render_fields(p, personas_.active) == fields) {
            subject = p.id;
            break;
        }
    }
    if (subject < 0) throw BackendError("cannot identify the prompted subject");

    std::optional<int> target;
    std::size_t choose = system_text.find("Choose exactly ");
    if (choose != std::string::npos) target = std::stoi(system_text.substr(choose + 15));
    bool reasons = system_text.find("After the list, give a short reason") != std::string::npos;

    double n = static_cast<double>(personas_.size());
    std::vector<int> chosen;
    if (target) {
        // rank by how far each coin clears its threshold
        std::vector<std::pair<double, int>> scored;
        for (const auto& c : lines) {
            double p = selection_probability(subject, c.id, c.degree / n);
            double u = coin_unit(params_.seed, subject, c.id);
            scored.emplace_back(p - u, c.id);
        }
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        int take = std::min<int>(*target, static_cast<int>(scored.size()));
        for (int i = 0; i < take; ++i) chosen.push_back(scored[static_cast<std::size_t>(i)].second);
        std::sort(chosen.begin(), chosen.end());
    } else {
        for (const auto& c : lines)
            if (selects(subject, c.id, c.degree / n)) chosen.push_back(c.id);
        std::sort(chosen.begin(), chosen.end());
    }

    ChatResult r;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        if (i) r.reply += ", ";
        r.reply += std::to_string(chosen[i]);
    }
    if (reasons)
        for (int id : chosen) {
            const Persona& p = personas_.personas[static_cast<std::size_t>(id)];
            r.reply += "\n" + std::to_string(id) + ": " +
                       canned_reason(personas_.is_active(Variable::Political) ? p.political : "");
        }
    return r;
}

ChatResult MockBackend::reply_interests(const std::string& user_text) {
    std::string political;
    std::istringstream in(user_text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string key = "political affiliation: ";
        if (line.rfind(key, 0) == 0) political = trim(line.substr(key.size()));
    }
    ChatResult r;
    r.reply = canned_interests(political);
    return r;
}

ChatResult MockBackend::complete(const std::string& system_text, const std::string& user_text) {
    ChatResult r;
    if (user_text.rfind("In 8-12 words, describe the interests", 0) == 0) {
        r = reply_interests(user_text);
    } else if (system_text.rfind("Your task is to create a realistic social network.", 0) == 0) {
        r = reply_global(user_text);
    } else if (system_text.rfind("You are a ", 0) == 0 &&
               system_text.find("You are joining a social network.") != std::string::npos) {
        r = reply_friends(system_text, user_text);
    } else {
        throw BackendError("prompt does not match any template the mock understands");
    }
    r.input_tokens = whitespace_token_count(system_text) + whitespace_token_count(user_text);
    r.output_tokens = whitespace_token_count(r.reply);
    return r;
}

} // namespace socnet
