#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_set>

#include "socnet/llm.hpp"

namespace socnet {

long whitespace_token_count(const std::string& text) {
    long count = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        bool ws = std::isspace(c) != 0;
        if (!ws && !in_token) ++count;
        in_token = !ws;
    }
    return count;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::optional<int> parse_id(const std::string& token) {
    std::string t = trim(token);
    if (t.empty()) return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    return value;
}

} // namespace

std::optional<std::vector<std::pair<int, int>>> parse_global_reply(const std::string& reply,
                                                                   const std::vector<int>& valid_ids) {
    std::unordered_set<int> valid(valid_ids.begin(), valid_ids.end());
    std::set<std::pair<int, int>> pairs;
    std::istringstream in(reply);
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) return std::nullopt;
        auto a = parse_id(line.substr(0, comma));
        auto b = parse_id(line.substr(comma + 1));
        if (!a || !b) return std::nullopt;
        if (*a == *b) return std::nullopt;
        if (!valid.count(*a) || !valid.count(*b)) return std::nullopt;
        pairs.emplace(std::min(*a, *b), std::max(*a, *b));
    }
    return std::vector<std::pair<int, int>>(pairs.begin(), pairs.end());
}

std::optional<std::vector<int>> parse_friend_reply(const std::string& reply, const std::vector<int>& valid_ids,
                                                   int subject_id, std::optional<int> required_count) {
    std::unordered_set<int> valid(valid_ids.begin(), valid_ids.end());
    std::set<int> chosen;
    std::string token;
    auto flush = [&](std::string& tok) -> bool {
        if (tok.empty()) return true;
        auto id = parse_id(tok);
        tok.clear();
        if (!id || *id == subject_id || !valid.count(*id)) return false;
        chosen.insert(*id);
        return true;
    };
    for (unsigned char c : reply) {
        if (c == ',' || std::isspace(c)) {
            if (!flush(token)) return std::nullopt;
        } else {
            token += static_cast<char>(c);
        }
    }
    if (!flush(token)) return std::nullopt;
    if (required_count && static_cast<int>(chosen.size()) != *required_count) return std::nullopt;
    return std::vector<int>(chosen.begin(), chosen.end());
}

} // namespace socnet
