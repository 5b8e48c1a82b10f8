#include <algorithm>
#include <unordered_set>

#include "socnet/errors.hpp"
#include "socnet/graph.hpp"
#include "socnet/llm.hpp"
#include "socnet/persona.hpp"

namespace socnet {

namespace {

std::string display_name(Variable v) {
    switch (v) {
    case Variable::Gender: return "Gender";
    case Variable::Age: return "Age";
    case Variable::Race: return "Race/ethnicity";
    case Variable::Religion: return "Religion";
    case Variable::Political: return "Political affiliation";
    }
    return "";
}

std::string prompt_key(Variable v) {
    switch (v) {
    case Variable::Gender: return "gender";
    case Variable::Age: return "age";
    case Variable::Race: return "race/ethnicity";
    case Variable::Religion: return "religion";
    case Variable::Political: return "political affiliation";
    }
    return "";
}

// The quoted per-person template, e.g.
// "ID. Gender, Age, Race/ethnicity, Religion, Political affiliation"
std::string description_template(const PersonaSet& set) {
    std::string out = "ID. ";
    bool first = true;
    for (Variable v : set.active) {
        if (!first) out += ", ";
        out += display_name(v);
        first = false;
    }
    return out;
}

void check_listing(const PersonaSet& set, const std::vector<int>& listing, std::optional<int> subject) {
    if (listing.empty()) throw DataError("prompt needs at least one listed persona");
    std::unordered_set<int> seen;
    for (int id : listing) {
        if (id < 0 || id >= set.size()) throw DataError("listing refers to unknown persona " + std::to_string(id));
        if (!seen.insert(id).second) throw DataError("listing repeats persona " + std::to_string(id));
        if (subject && id == *subject) throw DataError("subject cannot be listed as a candidate");
    }
    if (subject && (*subject < 0 || *subject >= set.size()))
        throw DataError("unknown subject persona " + std::to_string(*subject));
}

std::string persona_lines(const PersonaSet& set, const std::vector<int>& listing) {
    std::string out;
    for (int id : listing) {
        out += render_persona(set.personas[static_cast<std::size_t>(id)], set.active, set.interests_active);
        out += "\n";
    }
    return out;
}

std::string question_sentence(const PromptOptions& options) {
    if (options.target_count)
        return "Choose exactly " + std::to_string(*options.target_count) +
               " of these people to become friends with.";
    return "Which of these people will you become friends with?";
}

std::string local_system_text(const PersonaSet& set, int subject, const std::string& view_clause,
                              const PromptOptions& options) {
    std::string text = "You are a " + render_fields(set.personas[static_cast<std::size_t>(subject)], set.active) +
                       ". You are joining a social network. You will be provided a list of people in the network, "
                       "where each person is described as \"" +
                       description_template(set) + "\"" + view_clause + ". " + question_sentence(options) +
                       " Provide a list of *YOUR* friends in the format ID, ID, ID, etc.";
    if (options.ask_reasons) text += " After the list, give a short reason for each selection, one per line.";
    text += " Do not include any other text in your response. Do not include any people who are not listed below.";
    return text;
}

} // namespace

RenderedPrompt render_global_prompt(const PersonaSet& set, const std::vector<int>& listing_order) {
    check_listing(set, listing_order, std::nullopt);
    RenderedPrompt p;
    p.system_text =
        "Your task is to create a realistic social network. You will be provided a list of people in the "
        "network, where each person is described as \"" +
        description_template(set) +
        "\". Provide a list of friendship pairs in the format ID, ID with each pair separated by a newline. "
        "Do not include any other text in your response. Do not include any people who are not listed below.";
    p.user_text = persona_lines(set, listing_order);
    return p;
}

RenderedPrompt render_local_prompt(const PersonaSet& set, int subject, const std::vector<int>& listing_order,
                                   const PromptOptions& options) {
    check_listing(set, listing_order, subject);
    RenderedPrompt p;
    p.system_text = local_system_text(set, subject, "", options);
    p.user_text = persona_lines(set, listing_order);
    return p;
}

RenderedPrompt render_sequential_prompt(const PersonaSet& set, int subject, const std::vector<int>& listing_order,
                                        const Graph& partial, NetworkView view, const PromptOptions& options) {
    check_listing(set, listing_order, subject);
    if (partial.node_count() != set.size())
        throw DataError("partial network size does not match the persona set");
    std::string clause = view == NetworkView::DegreeCounts
                             ? ", followed by their current number of friends"
                             : ", followed by their current list of friends (as IDs)";
    RenderedPrompt p;
    p.system_text = local_system_text(set, subject, clause, options);
    for (int id : listing_order) {
        std::string line = render_persona(set.personas[static_cast<std::size_t>(id)], set.active,
                                          set.interests_active);
        if (view == NetworkView::DegreeCounts) {
            int d = partial.degree(id);
            line += "; has " + std::to_string(d) + (d == 1 ? " friend" : " friends");
        } else {
            const auto& nbrs = partial.neighbors(id);
            line += "; friends with IDs ";
            if (nbrs.empty()) {
                line += "none";
            } else {
                for (std::size_t k = 0; k < nbrs.size(); ++k) {
                    if (k) line += ", ";
                    line += std::to_string(nbrs[k]);
                }
            }
        }
        p.user_text += line + "\n";
    }
    return p;
}

std::string render_interest_prompt(const Persona& p, const std::vector<Variable>& line_order) {
    if (line_order.empty()) throw DataError("interest prompt needs at least one demographic line");
    std::string out = "In 8-12 words, describe the interests of someone with the following demographics:\n";
    for (Variable v : line_order) {
        out += prompt_key(v) + ": ";
        out += v == Variable::Age ? std::to_string(p.age) : p.value(v);
        out += "\n";
    }
    out += "\nAnswer by providing ONLY their interests. Do not include filler like \"She enjoys\" or "
           "\"He has a keen interest in\".";
    return out;
}

} // namespace socnet
