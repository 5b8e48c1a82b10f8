#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "socnet/graph.hpp"
#include "socnet/llm.hpp"
#include "socnet/persona.hpp"

namespace socnet {

enum class Method { Global, Local, Sequential };

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);
std::string view_name(NetworkView v);
std::optional<NetworkView> view_from_name(const std::string& name);

/// How one network gets generated. The seed drives persona ordering, candidate
/// subsets, and friend-count targets; backend randomness is the backend's own.
struct GenerationSpec {
    Method method = Method::Local;
    NetworkView view = NetworkView::DegreeCounts; // sequential only
    std::optional<double> lambda;                 // exponential friend-count targets
    std::optional<int> subset_size;               // candidates offered per subject
    bool ask_reasons = false;
    int retry_cap = 5; // attempts per turn before giving up
    std::uint64_t seed = 0;
};

/// One backend turn, with enough context to replay the selection offline.
struct TurnRecord {
    std::optional<int> subject;       // empty for the single global turn
    std::vector<int> offered;         // candidate ids in listing order
    std::vector<int> offered_degrees; // degree shown per candidate (sequential only)
    std::optional<int> target_count;
    std::vector<int> chosen;
    std::string reasons; // verbatim free-text tail when reasons were asked
};

struct GenerationResult {
    Graph graph;
    CostLedger ledger;
    std::vector<int> assignment_order; // subject order (perspective methods)
    std::vector<TurnRecord> turns;
    std::uint64_t seed = 0;
};

/// Friend-count targets: max(1, round(x)) for x ~ Exponential(lambda),
/// one per persona in id order.
std::vector<int> sample_target_counts(int n, double lambda, std::uint64_t seed);

/// Run one generation. Perspective methods iterate subjects in a seeded
/// random order; an edge (A, B) exists if either side chose the other.
/// Sequential additionally feeds each prompt the network built so far, so a
/// reciprocal choice is visible immediately. A turn whose reply does not
/// parse is re-sent verbatim up to retry_cap attempts, then the generation
/// fails with a BackendError.
GenerationResult generate_network(const PersonaSet& set, ChatBackend& backend, const GenerationSpec& spec);

struct BatchItem {
    int index = 0;
    std::uint64_t seed = 0; // per-item seed derived from the spec seed
    std::optional<GenerationResult> result;
    std::string error; // non-empty when this item failed
};

/// Generate `count` networks with per-index derived seeds. Items may run
/// concurrently; failures are recorded per item and completed items are
/// kept either way.
std::vector<BatchItem> generate_batch(const PersonaSet& set, ChatBackend& backend, const GenerationSpec& spec,
                                      int count, int concurrency = 1);

/// Everything but the graph itself: ledger, assignment order, per-turn log.
void write_generation_json(const GenerationResult& result, const std::string& path);

} // namespace socnet
