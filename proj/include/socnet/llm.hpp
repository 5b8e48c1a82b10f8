#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "socnet/graph.hpp"
#include "socnet/persona.hpp"

namespace socnet {

struct ChatResult {
    std::string reply;
    long input_tokens = 0;
    long output_tokens = 0;
};

/// One chat turn: system text plus user text in, assistant text out.
/// Implementations throw BackendError on transport or protocol failure.
class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual ChatResult complete(const std::string& system_text, const std::string& user_text) = 0;
};

/// Token and turn accounting for one generation. Tokens accumulate only on
/// turns whose reply parsed; failed turns still count toward actual_turns.
struct CostLedger {
    long input_tokens = 0;
    long output_tokens = 0;
    int expected_turns = 0;
    int actual_turns = 0;

    void add_success(const ChatResult& r) {
        ++actual_turns;
        input_tokens += r.input_tokens;
        output_tokens += r.output_tokens;
    }
    void add_failure() { ++actual_turns; }
};

/// Number of whitespace-separated tokens; the mock backend's token measure.
long whitespace_token_count(const std::string& text);

/// What the sequential prompt shows about the partial network.
enum class NetworkView { DegreeCounts, FriendLists };

struct PromptOptions {
    std::optional<int> target_count; // ask for exactly this many friends
    bool ask_reasons = false;        // ask for a short reason per selection
};

struct RenderedPrompt {
    std::string system_text;
    std::string user_text;
};

/// One prompt asking for the whole network as "ID, ID" friendship pairs.
/// The user text lists personas in listing_order, one per line.
RenderedPrompt render_global_prompt(const PersonaSet& set, const std::vector<int>& listing_order);

/// Perspective prompt for one subject choosing friends from the listed
/// candidates. The subject must not appear in listing_order.
RenderedPrompt render_local_prompt(const PersonaSet& set, int subject, const std::vector<int>& listing_order,
                                   const PromptOptions& options = {});

/// Like the local prompt, with each candidate line annotated from the
/// partial network: "; has 4 friends" or "; friends with IDs 3, 7".
RenderedPrompt render_sequential_prompt(const PersonaSet& set, int subject, const std::vector<int>& listing_order,
                                        const Graph& partial, NetworkView view,
                                        const PromptOptions& options = {});

/// "In 8-12 words, describe the interests of someone with the following
/// demographics:" followed by "name: value" lines in the given order.
std::string render_interest_prompt(const Persona& p, const std::vector<Variable>& line_order);

/// Parse "ID, ID" friendship pairs, one per line. Duplicate and reversed
/// pairs collapse. Any malformed line, unknown id, or self-pair is a parse
/// failure (nullopt).
std::optional<std::vector<std::pair<int, int>>> parse_global_reply(const std::string& reply,
                                                                   const std::vector<int>& valid_ids);

/// Parse a comma/whitespace separated id list. The subject's own id or an
/// unknown id fails. Duplicates collapse. When required_count is set, the
/// resulting set must have exactly that many ids.
std::optional<std::vector<int>> parse_friend_reply(const std::string& reply, const std::vector<int>& valid_ids,
                                                   int subject_id, std::optional<int> required_count = {});

/// Offline test double. Selection of each candidate is an independent
/// seeded coin with probability
///   sigmoid(logit(base_rate) + sum_v weight_v * match_v
///           + degree_bonus * degree/N)
/// where match_v is 1 for an equal categorical value and, for age,
/// 1 - min(|gap|, 50)/50. The coin for (subject, candidate) depends only on
/// (seed, subject id, candidate id), so listing order never changes choices.
struct MockParams {
    double base_rate = 0.1;
    std::map<std::string, double> similarity_weights; // keyed by variable name
    double degree_bonus = 0.0;
    std::uint64_t seed = 0;
};

MockParams load_mock_params(const std::string& path);

class MockBackend : public ChatBackend {
public:
    MockBackend(PersonaSet personas, MockParams params);

    ChatResult complete(const std::string& system_text, const std::string& user_text) override;

    /// The coin threshold described above; exposed so tests can replay it.
    double selection_probability(int subject, int candidate, double norm_degree) const;
    /// The coin itself.
    bool selects(int subject, int candidate, double norm_degree) const;

private:
    PersonaSet personas_;
    MockParams params_;
    double base_logit_ = 0.0;

    ChatResult reply_global(const std::string& user_text);
    ChatResult reply_friends(const std::string& system_text, const std::string& user_text);
    ChatResult reply_interests(const std::string& user_text);
};

/// OpenAI-style chat-completions client. The API key is read from the
/// environment variable named in the config at construction time.
struct HttpConfig {
    std::string base_url; // scheme://host[:port][/prefix]
    std::string model;
    double temperature = 0.8;
    std::string api_key_env = "OPENAI_API_KEY";
    int max_transport_retries = 3; // on network errors and 5xx
    int timeout_seconds = 60;
};

HttpConfig load_http_config(const std::string& path);

class HttpBackend : public ChatBackend {
public:
    explicit HttpBackend(HttpConfig config);
    ChatResult complete(const std::string& system_text, const std::string& user_text) override;

private:
    HttpConfig config_;
    std::string api_key_;
    std::string host_;   // scheme://host[:port]
    std::string prefix_; // path prefix before /chat/completions
};

} // namespace socnet
