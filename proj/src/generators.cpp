#include "socnet/generators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <thread>

#include <json.hpp>

#include "socnet/errors.hpp"
#include "socnet/rng.hpp"

namespace socnet {

using nlohmann::json;

std::string method_name(Method m) {
    switch (m) {
    case Method::Global: return "global";
    case Method::Local: return "local";
    case Method::Sequential: return "sequential";
    }
    return "";
}

std::optional<Method> method_from_name(const std::string& name) {
    for (Method m : {Method::Global, Method::Local, Method::Sequential})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

std::string view_name(NetworkView v) {
    return v == NetworkView::DegreeCounts ? "degrees" : "friends";
}

std::optional<NetworkView> view_from_name(const std::string& name) {
    if (name == "degrees") return NetworkView::DegreeCounts;
    if (name == "friends") return NetworkView::FriendLists;
    return std::nullopt;
}

std::vector<int> sample_target_counts(int n, double lambda, std::uint64_t seed) {
    if (n < 1) throw DataError("need at least one target");
    if (lambda <= 0.0) throw ConfigError("exponential rate must be positive");
    Rng rng(derive_seed(seed, 0x7a26));
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(std::max(1, static_cast<int>(std::llround(rng.next_exponential(lambda)))));
    return out;
}

namespace {

struct ParsedTurn {
    std::vector<int> chosen;
    std::string reasons;
};

// Ask until the reply parses; identical prompt every attempt.
ParsedTurn run_turn(ChatBackend& backend, CostLedger& ledger, const RenderedPrompt& prompt,
                    const GenerationSpec& spec, const std::vector<int>& candidates, int subject,
                    std::optional<int> target) {
    for (int attempt = 1; attempt <= spec.retry_cap; ++attempt) {
        ChatResult res = backend.complete(prompt.system_text, prompt.user_text);
        std::string id_part = res.reply;
        std::string reasons;
        if (spec.ask_reasons) {
            auto nl = res.reply.find('\n');
            if (nl != std::string::npos) {
                id_part = res.reply.substr(0, nl);
                reasons = res.reply.substr(nl + 1);
            }
        }
        auto chosen = parse_friend_reply(id_part, candidates, subject, target);
        if (chosen) {
            ledger.add_success(res);
            return {std::move(*chosen), std::move(reasons)};
        }
        ledger.add_failure();
    }
    throw BackendError("persona " + std::to_string(subject) + ": reply did not parse after " +
                       std::to_string(spec.retry_cap) + " attempts");
}

GenerationResult generate_global(const PersonaSet& set, ChatBackend& backend, const GenerationSpec& spec) {
    GenerationResult out;
    out.seed = spec.seed;
    out.ledger.expected_turns = 1;
    Rng rng(derive_seed(spec.seed, 0x91));
    std::vector<int> listing(static_cast<std::size_t>(set.size()));
    for (int i = 0; i < set.size(); ++i) listing[static_cast<std::size_t>(i)] = i;
    rng.shuffle(listing);

    auto prompt = render_global_prompt(set, listing);
    for (int attempt = 1; attempt <= spec.retry_cap; ++attempt) {
        ChatResult res = backend.complete(prompt.system_text, prompt.user_text);
        auto pairs = parse_global_reply(res.reply, listing);
        if (pairs) {
            out.ledger.add_success(res);
            out.graph = Graph::from_edges(set.size(), *pairs);
            TurnRecord turn;
            turn.offered = listing;
            for (const auto& [a, b] : *pairs) {
                turn.chosen.push_back(a);
                turn.chosen.push_back(b);
            }
            out.turns.push_back(std::move(turn));
            return out;
        }
        out.ledger.add_failure();
    }
    throw BackendError("network reply did not parse after " + std::to_string(spec.retry_cap) + " attempts");
}

GenerationResult generate_perspective(const PersonaSet& set, ChatBackend& backend, const GenerationSpec& spec) {
    const int n = set.size();
    const bool sequential = spec.method == Method::Sequential;
    GenerationResult out;
    out.seed = spec.seed;
    out.ledger.expected_turns = n;

    std::vector<int> targets;
    if (spec.lambda) targets = sample_target_counts(n, *spec.lambda, spec.seed);

    Rng rng(derive_seed(spec.seed, 0x92));
    out.assignment_order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.assignment_order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(out.assignment_order);

    std::vector<std::set<int>> adj(static_cast<std::size_t>(n)); // sequential running state
    std::vector<std::vector<int>> chosen_by(static_cast<std::size_t>(n));

    for (int subject : out.assignment_order) {
        std::vector<int> others;
        others.reserve(static_cast<std::size_t>(n - 1));
        for (int i = 0; i < n; ++i)
            if (i != subject) others.push_back(i);
        rng.shuffle(others);
        if (spec.subset_size) others.resize(static_cast<std::size_t>(*spec.subset_size));

        PromptOptions options;
        options.ask_reasons = spec.ask_reasons;
        if (spec.lambda)
            options.target_count =
                std::min(targets[static_cast<std::size_t>(subject)], static_cast<int>(others.size()));

        TurnRecord turn;
        turn.subject = subject;
        turn.offered = others;
        turn.target_count = options.target_count;

        RenderedPrompt prompt;
        if (sequential) {
            std::vector<std::pair<int, int>> edges;
            for (int u = 0; u < n; ++u)
                for (int v : adj[static_cast<std::size_t>(u)])
                    if (u < v) edges.emplace_back(u, v);
            Graph partial = Graph::from_edges(n, edges);
            for (int c : others)
                turn.offered_degrees.push_back(partial.degree(c));
            prompt = render_sequential_prompt(set, subject, others, partial, spec.view, options);
        } else {
            prompt = render_local_prompt(set, subject, others, options);
        }

        ParsedTurn parsed = run_turn(backend, out.ledger, prompt, spec, others, subject, options.target_count);
        turn.chosen = parsed.chosen;
        turn.reasons = std::move(parsed.reasons);
        chosen_by[static_cast<std::size_t>(subject)] = parsed.chosen;
        if (sequential)
            for (int c : parsed.chosen) {
                adj[static_cast<std::size_t>(subject)].insert(c);
                adj[static_cast<std::size_t>(c)].insert(subject);
            }
        out.turns.push_back(std::move(turn));
    }

    // an edge exists if either endpoint chose the other
    std::set<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b : chosen_by[static_cast<std::size_t>(a)])
            edges.emplace(std::min(a, b), std::max(a, b));
    out.graph = Graph::from_edges(n, std::vector<std::pair<int, int>>(edges.begin(), edges.end()));
    return out;
}

} // namespace

GenerationResult generate_network(const PersonaSet& set, ChatBackend& backend, const GenerationSpec& spec) {
    if (set.size() < 2) throw DataError("network generation needs at least two personas");
    if (spec.retry_cap < 1) throw ConfigError("retry cap must be at least 1");
    if (spec.method == Method::Global) {
        if (spec.lambda || spec.subset_size)
            throw ConfigError("friend-count targets and candidate subsets apply to perspective methods");
        return generate_global(set, backend, spec);
    }
    if (spec.subset_size && (*spec.subset_size < 1 || *spec.subset_size > set.size() - 1))
        throw ConfigError("subset size must lie in [1, n-1]");
    return generate_perspective(set, backend, spec);
}

std::vector<BatchItem> generate_batch(const PersonaSet& set, ChatBackend& backend, const GenerationSpec& spec,
                                      int count, int concurrency) {
    if (count < 1) throw ConfigError("batch needs a positive count");
    std::vector<BatchItem> items(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        items[static_cast<std::size_t>(i)].index = i;
        items[static_cast<std::size_t>(i)].seed = derive_seed(spec.seed, static_cast<std::uint64_t>(i));
    }
    std::atomic<int> cursor{0};
    auto worker = [&] {
        for (;;) {
            int i = cursor.fetch_add(1);
            if (i >= count) return;
            GenerationSpec item_spec = spec;
            item_spec.seed = items[static_cast<std::size_t>(i)].seed;
            try {
                items[static_cast<std::size_t>(i)].result = generate_network(set, backend, item_spec);
            } catch (const std::exception& e) {
                items[static_cast<std::size_t>(i)].error = e.what();
            }
        }
    };
    int threads = std::max(1, std::min(concurrency, count));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return items;
}

void write_generation_json(const GenerationResult& result, const std::string& path) {
    json j;
    j["seed"] = result.seed;
    j["nodes"] = result.graph.node_count();
    j["edges"] = result.graph.edge_count();
    j["ledger"] = {{"input_tokens", result.ledger.input_tokens},
                   {"output_tokens", result.ledger.output_tokens},
                   {"expected_turns", result.ledger.expected_turns},
                   {"actual_turns", result.ledger.actual_turns}};
    j["assignment_order"] = result.assignment_order;
    j["turns"] = json::array();
    for (const auto& t : result.turns) {
        json turn;
        if (t.subject) turn["subject"] = *t.subject;
        turn["offered"] = t.offered;
        if (!t.offered_degrees.empty()) turn["offered_degrees"] = t.offered_degrees;
        if (t.target_count) turn["target_count"] = *t.target_count;
        turn["chosen"] = t.chosen;
        if (!t.reasons.empty()) turn["reasons"] = t.reasons;
        j["turns"].push_back(std::move(turn));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write generation log: " + path);
    out << j.dump(1) << "\n";
}

} // namespace socnet
