#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "socnet/errors.hpp"

namespace socnet {

class ChatBackend;

/// Demographic variables in canonical order. Rendering follows this order
/// unless a caller passes an explicit one.
enum class Variable { Gender, Age, Race, Religion, Political };

inline constexpr Variable kAllVariables[] = {Variable::Gender, Variable::Age, Variable::Race,
                                             Variable::Religion, Variable::Political};

std::string variable_name(Variable v);                        // "gender", "age", ...
std::optional<Variable> variable_from_name(const std::string& name);

struct Persona {
    int id = 0;
    std::string gender;
    int age = 0;
    std::string race_ethnicity;
    std::string religion;
    std::string political;
    std::optional<std::string> interests;

    const std::string& value(Variable v) const; // not valid for Age
};

/// An ordered roster of personas with ids 0..N-1. `active` records which
/// demographic variables the set carries (projection removes some).
struct PersonaSet {
    std::vector<Persona> personas;
    std::vector<Variable> active;
    bool interests_active = false;
    std::string config_hash; // provenance: config that sampled the set
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(personas.size()); }
    bool is_active(Variable v) const;
};

struct AgeBucketRate {
    int min_age = 0;
    int max_age = 0;
    double p = 0.0;
};

/// Sampling tables. The joint covers (gender, age, race); genders listed in
/// `joint_genders` (typically the two binary categories) with the nonbinary
/// identity applied afterwards as an age-dependent override. Religion is
/// conditional on race; political affiliation on (joint gender, race).
struct DemographicConfig {
    std::vector<std::string> gender_vocab;
    std::vector<std::string> race_vocab;
    std::vector<std::string> religion_vocab;
    std::vector<std::string> political_vocab;

    std::vector<std::string> joint_genders;
    // joint[g][r][a]: mass of (joint_genders[g], race_vocab[r], age a); sums to 1
    std::vector<std::vector<std::vector<double>>> joint;
    std::vector<AgeBucketRate> nonbinary_by_age;
    std::string nonbinary_label = "Nonbinary";
    // religion_given_race[r][k]: P(religion_vocab[k] | race_vocab[r]), rows sum to 1
    std::vector<std::vector<double>> religion_given_race;
    // political_given_gender_race[g][r][k]: P(political_vocab[k] | joint gender g, race r)
    std::vector<std::vector<std::vector<double>>> political_given_gender_race;

    std::string hash; // stable digest of the file content
};

/// Parse and validate a config file. Rows must sum to 1 within 1e-9, the
/// joint to 1 within 1e-9; a missing conditional row is a ConfigError naming
/// the row.
DemographicConfig load_demographic_config(const std::string& path);

/// Draw n personas. Deterministic in (config, n, seed): same inputs give the
/// identical set. Age is an integer 0..100 from the joint's age dimension.
PersonaSet sample_personas(const DemographicConfig& config, int n, std::uint64_t seed);

/// Permute each active demographic column independently across personas,
/// preserving each column's multiset of values. Interests stay in place.
PersonaSet shuffle_demographics(const PersonaSet& set, std::uint64_t seed);

/// Keep only the given demographic variables (non-empty subset of the
/// active ones). Interests are preserved.
PersonaSet project(const PersonaSet& set, const std::vector<Variable>& keep);

/// "Man, age 48, Hispanic, Protestant, Democrat" for the given field order,
/// which must cover exactly the variables being rendered.
std::string render_fields(const Persona& p, const std::vector<Variable>& order);

/// "28. Man, age 48, Hispanic, Protestant, Democrat", plus
/// "; interests include: <text>" when with_interests and the persona has one.
std::string render_persona(const Persona& p, const std::vector<Variable>& order, bool with_interests);

/// Thrown when interest generation gives up on a persona; `partial` keeps
/// whatever interests were attached before the failure.
class InterestError : public BackendError {
public:
    InterestError(const std::string& what, PersonaSet partial_set)
        : BackendError(what), partial(std::move(partial_set)) {}
    PersonaSet partial;
};

/// One backend call per persona describing interests in free text. Calls may
/// run concurrently; assembly is by persona id. A malformed (empty) reply is
/// retried up to 3 times, then the operation fails with an InterestError.
PersonaSet attach_interests(const PersonaSet& set, ChatBackend& backend, std::uint64_t seed);

/// JSON array of {id, gender, age, race_ethnicity, religion, political,
/// interests?}; inactive variables are omitted from the objects.
void save_personas(const PersonaSet& set, const std::string& path);
PersonaSet load_personas(const std::string& path);

} // namespace socnet
