#include "bcmab/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

namespace bcmab {

using nlohmann::json;

namespace {

constexpr double kBetaHalf = 0.5;
constexpr double kBetaSixth = 1.0 / 6.0;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw ConfigError("config key '" + key + "': " + what);
}

double get_number(const json& j, const std::string& key) {
    if (!j.is_number()) fail(key, "expected a number");
    return j.get<double>();
}

int64_t get_integer(const json& j, const std::string& key) {
    if (!j.is_number_integer()) fail(key, "expected an integer");
    return j.get<int64_t>();
}

bool get_bool(const json& j, const std::string& key) {
    if (!j.is_boolean()) fail(key, "expected a boolean");
    return j.get<bool>();
}

std::vector<int> get_id_list(const json& j, const std::string& key) {
    if (!j.is_array()) fail(key, "expected an array of ids");
    std::vector<int> out;
    for (const auto& v : j) out.push_back(static_cast<int>(get_integer(v, key)));
    return out;
}

EstimatorAttack parse_estimator_attack(const json& j, const std::string& key) {
    EstimatorAttack a;
    std::string kind;
    if (j.is_string()) {
        kind = j.get<std::string>();
    } else if (j.is_object()) {
        if (!j.contains("kind")) fail(key, "estimator attack needs a 'kind'");
        kind = j.at("kind").get<std::string>();
    } else {
        fail(key, "expected a string or object");
    }
    if (kind == "none") {
        a.kind = EstimatorAttackKind::None;
    } else if (kind == "epsilon_contamination") {
        a.kind = EstimatorAttackKind::EpsilonContamination;
        a.epsilon = get_number(j.at("epsilon"), key + ".epsilon");
        if (a.epsilon < 0.0 || a.epsilon > 1.0) fail(key + ".epsilon", "must lie in [0, 1]");
        if (j.contains("q")) a.q_value = get_number(j.at("q"), key + ".q");
    } else if (kind == "constant_shift") {
        a.kind = EstimatorAttackKind::ConstantShift;
        a.shift = get_number(j.at("shift"), key + ".shift");
    } else if (kind == "random_noise") {
        a.kind = EstimatorAttackKind::RandomNoise;
        a.range = get_number(j.at("range"), key + ".range");
        if (a.range < 0.0) fail(key + ".range", "must be non-negative");
    } else if (kind == "worst_arm_boost") {
        a.kind = EstimatorAttackKind::WorstArmBoost;
    } else {
        fail(key, "unknown estimator attack '" + kind + "'");
    }
    return a;
}

ConsensusAttackKind parse_consensus_attack(const json& j, const std::string& key) {
    if (!j.is_string()) fail(key, "expected a string");
    std::string s = j.get<std::string>();
    if (s == "none") return ConsensusAttackKind::None;
    if (s == "equivocate") return ConsensusAttackKind::Equivocate;
    if (s == "wrong_forward") return ConsensusAttackKind::WrongForward;
    if (s == "silent") return ConsensusAttackKind::Silent;
    fail(key, "unknown consensus attack '" + s + "'");
}

ArmAttack parse_arm_attack(const json& j, const std::string& key) {
    ArmAttack a;
    std::string kind;
    if (j.is_string()) {
        kind = j.get<std::string>();
    } else if (j.is_object()) {
        if (!j.contains("kind")) fail(key, "arm attack needs a 'kind'");
        kind = j.at("kind").get<std::string>();
    } else {
        fail(key, "expected a string or object");
    }
    if (kind == "none") {
        a.kind = ArmAttackKind::None;
    } else if (kind == "fixed") {
        a.kind = ArmAttackKind::FixedArm;
        a.fixed_arm = static_cast<int>(get_integer(j.at("arm"), key + ".arm"));
    } else if (kind == "uniform_random") {
        a.kind = ArmAttackKind::UniformRandom;
    } else {
        fail(key, "unknown arm attack '" + kind + "'");
    }
    return a;
}

AttackProfile parse_attack_profile(const json& j, const std::string& key) {
    AttackProfile p;
    if (!j.is_object()) fail(key, "expected an object");
    static const std::set<std::string> known = {"estimator", "consensus", "arm", "vote", "counts"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) fail(key + "." + it.key(), "unknown key");
    if (j.contains("estimator")) p.estimator = parse_estimator_attack(j.at("estimator"), key + ".estimator");
    if (j.contains("consensus")) p.consensus = parse_consensus_attack(j.at("consensus"), key + ".consensus");
    if (j.contains("arm")) p.arm = parse_arm_attack(j.at("arm"), key + ".arm");
    if (j.contains("vote")) {
        std::string v = j.at("vote").get<std::string>();
        if (v == "zero") p.vote = VotePolicy::AlwaysZero;
        else if (v == "protocol") p.vote = VotePolicy::FollowProtocol;
        else fail(key + ".vote", "expected 'zero' or 'protocol'");
    }
    if (j.contains("counts")) {
        const json& c = j.at("counts");
        if (c.is_string() && c.get<std::string>() == "truthful") {
            p.count_report = CountReportKind::Truthful;
        } else if (c.is_object() && c.contains("constant")) {
            p.count_report = CountReportKind::ConstantOverride;
            p.count_override = static_cast<uint64_t>(get_integer(c.at("constant"), key + ".counts.constant"));
        } else {
            fail(key + ".counts", "expected 'truthful' or {\"constant\": n}");
        }
    }
    return p;
}

json estimator_attack_json(const EstimatorAttack& a) {
    switch (a.kind) {
        case EstimatorAttackKind::None: return "none";
        case EstimatorAttackKind::EpsilonContamination:
            return {{"kind", "epsilon_contamination"}, {"epsilon", a.epsilon}, {"q", a.q_value}};
        case EstimatorAttackKind::ConstantShift:
            return {{"kind", "constant_shift"}, {"shift", a.shift}};
        case EstimatorAttackKind::RandomNoise:
            return {{"kind", "random_noise"}, {"range", a.range}};
        case EstimatorAttackKind::WorstArmBoost: return {{"kind", "worst_arm_boost"}};
    }
    return "none";
}

std::string consensus_attack_name(ConsensusAttackKind k) {
    switch (k) {
        case ConsensusAttackKind::None: return "none";
        case ConsensusAttackKind::Equivocate: return "equivocate";
        case ConsensusAttackKind::WrongForward: return "wrong_forward";
        case ConsensusAttackKind::Silent: return "silent";
    }
    return "none";
}

json arm_attack_json(const ArmAttack& a) {
    switch (a.kind) {
        case ArmAttackKind::None: return "none";
        case ArmAttackKind::FixedArm: return {{"kind", "fixed"}, {"arm", a.fixed_arm}};
        case ArmAttackKind::UniformRandom: return {{"kind", "uniform_random"}};
    }
    return "none";
}

}  // namespace

int64_t default_burn_in(int num_arms, int64_t horizon, double multiplier) {
    double by_log = std::ceil(multiplier * num_arms * std::log(static_cast<double>(horizon)));
    return std::max<int64_t>(3 * num_arms, horizon >= 2 ? static_cast<int64_t>(by_log) : 0);
}

void validate_scenario(const ScenarioConfig& cfg) {
    if (cfg.num_arms < 2) fail("K", "need at least 2 arms");
    if (cfg.horizon < 1) fail("T", "need a positive horizon");
    if (cfg.num_participants < 2) fail("M", "need at least 2 participants");

    std::set<int> honest(cfg.honest_ids.begin(), cfg.honest_ids.end());
    std::set<int> malicious(cfg.malicious_ids.begin(), cfg.malicious_ids.end());
    if (honest.size() != cfg.honest_ids.size()) fail("honest", "duplicate ids");
    if (malicious.size() != cfg.malicious_ids.size()) fail("malicious", "duplicate ids");
    for (int id : honest)
        if (malicious.count(id)) fail("honest/malicious", "overlapping roles (id " + std::to_string(id) + ")");
    if (honest.size() + malicious.size() != static_cast<size_t>(cfg.num_participants))
        fail("honest/malicious", "roles must cover all M participants");
    for (int id : cfg.honest_ids)
        if (id < 0 || id >= cfg.num_participants) fail("honest", "id out of range");
    for (int id : cfg.malicious_ids)
        if (id < 0 || id >= cfg.num_participants) fail("malicious", "id out of range");
    if (honest.empty()) fail("honest", "need at least one honest participant");

    for (int id : cfg.malicious_ids)
        if (!cfg.attacks.count(id)) fail("attacks", "missing profile for malicious id " + std::to_string(id));
    for (const auto& [id, profile] : cfg.attacks) {
        if (!malicious.count(id)) fail("attacks", "profile for non-malicious id " + std::to_string(id));
        if (profile.arm.kind == ArmAttackKind::FixedArm &&
            (profile.arm.fixed_arm < 0 || profile.arm.fixed_arm >= cfg.num_arms))
            fail("attacks", "fixed arm out of range for id " + std::to_string(id));
    }

    if (static_cast<int>(cfg.arm_means.size()) != cfg.num_arms) fail("means", "need exactly K entries");
    for (double m : cfg.arm_means)
        if (!(m >= 0.0 && m <= 1.0)) fail("means", "arm means must lie in [0, 1]");

    if (cfg.f_known < 0 || cfg.f_known > cfg.num_participants) fail("f", "must lie in [0, M]");
    if (cfg.burn_in < 3 * cfg.num_arms) fail("burn_in", "must be at least 3K");
    if (!(cfg.ucb_c1 > 0.0)) fail("ucb_c1", "must be positive");
    if (std::abs(cfg.ucb_beta - kBetaHalf) > 1e-12 && std::abs(cfg.ucb_beta - kBetaSixth) > 1e-12)
        fail("ucb_beta", "must be 1/2 or 1/6");
    if (cfg.epsilon < 0.0) fail("epsilon", "must be non-negative");
    if (cfg.sig_len < 2) fail("sig_len", "must be at least 2");
    if (!(cfg.forge_prob >= 0.0 && cfg.forge_prob < 1.0)) fail("forge_prob", "must lie in [0, 1)");

    if (cfg.cost.kind == CostKind::Constant && cfg.cost.constant_value &&
        !(*cfg.cost.constant_value >= 0.0 && *cfg.cost.constant_value <= 1.0))
        fail("cost.constant", "must lie in [0, 1]");

    if (cfg.validators.kind == ValidatorKind::ReputationTopN) {
        int mh = static_cast<int>(honest.size());
        int n = cfg.validators.top_n;
        if (n < mh || n > 2 * mh - 1)
            fail("validators.reputation_top_n", "N must lie in [M_H, 2*M_H - 1]");
    }
    if (cfg.commanders.kind == CommanderKind::FixedCount &&
        (cfg.commanders.fixed_count < 1 || cfg.commanders.fixed_count > cfg.num_participants))
        fail("commanders.fixed_count", "must lie in [1, M]");
    if (cfg.commanders.kind == CommanderKind::WeightedVrf &&
        !(cfg.commanders.eta > 0.0 && cfg.commanders.eta < 1.0))
        fail("commanders.weighted_vrf", "eta must lie in (0, 1)");
}

LoadedScenario load_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");

    static const std::set<std::string> known = {
        "K", "T", "M", "honest", "malicious", "attacks", "means", "seed", "f",
        "burn_in", "burn_in_multiplier", "ucb_c1", "ucb_beta", "aggregation",
        "update", "cost", "validators", "commanders", "weight_denominator",
        "reputation_form", "reputation_map", "consensus_full_iteration",
        "epsilon", "sig_len", "forge_prob", "family", "preset"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!known.count(it.key())) fail(it.key(), "unknown key");

    LoadedScenario out;
    ScenarioConfig& cfg = out.config;
    auto note = [&](const std::string& line) { out.applied_defaults.push_back(line); };

    auto require = [&](const char* key) -> const json& {
        if (!doc.contains(key)) fail(key, "required key is missing");
        return doc.at(key);
    };

    cfg.num_arms = static_cast<int>(get_integer(require("K"), "K"));
    cfg.horizon = get_integer(require("T"), "T");
    cfg.num_participants = static_cast<int>(get_integer(require("M"), "M"));
    cfg.master_seed = static_cast<uint64_t>(get_integer(require("seed"), "seed"));

    if (!doc.contains("means")) fail("means", "required key is missing");
    for (const auto& v : doc.at("means")) cfg.arm_means.push_back(get_number(v, "means"));

    bool has_honest = doc.contains("honest");
    bool has_malicious = doc.contains("malicious");
    if (has_honest) cfg.honest_ids = get_id_list(doc.at("honest"), "honest");
    if (has_malicious) cfg.malicious_ids = get_id_list(doc.at("malicious"), "malicious");
    if (!has_honest && !has_malicious) {
        for (int i = 0; i < cfg.num_participants; ++i) cfg.honest_ids.push_back(i);
        note("honest = all participants (default)");
    } else if (!has_honest) {
        std::set<int> mal(cfg.malicious_ids.begin(), cfg.malicious_ids.end());
        for (int i = 0; i < cfg.num_participants; ++i)
            if (!mal.count(i)) cfg.honest_ids.push_back(i);
        note("honest = complement of malicious (default)");
    } else if (!has_malicious) {
        std::set<int> hon(cfg.honest_ids.begin(), cfg.honest_ids.end());
        for (int i = 0; i < cfg.num_participants; ++i)
            if (!hon.count(i)) cfg.malicious_ids.push_back(i);
        if (!cfg.malicious_ids.empty()) note("malicious = complement of honest (default)");
    }

    if (doc.contains("attacks")) {
        const json& attacks = doc.at("attacks");
        if (!attacks.is_object()) fail("attacks", "expected an object keyed by id");
        for (auto it = attacks.begin(); it != attacks.end(); ++it) {
            int id = 0;
            try {
                id = std::stoi(it.key());
            } catch (...) {
                fail("attacks." + it.key(), "key must be a participant id");
            }
            cfg.attacks[id] = parse_attack_profile(it.value(), "attacks." + it.key());
        }
    }
    for (int id : cfg.malicious_ids) {
        if (!cfg.attacks.count(id)) {
            cfg.attacks[id] = AttackProfile{};
            note("attacks." + std::to_string(id) + " = passive profile (default)");
        }
    }

    if (doc.contains("f")) {
        cfg.f_known = static_cast<int>(get_integer(doc.at("f"), "f"));
    } else {
        cfg.f_known = static_cast<int>(cfg.malicious_ids.size());
        note("f = " + std::to_string(cfg.f_known) + " (default: |malicious|)");
    }

    if (doc.contains("burn_in_multiplier"))
        cfg.burn_in_multiplier = get_number(doc.at("burn_in_multiplier"), "burn_in_multiplier");
    if (doc.contains("burn_in")) {
        cfg.burn_in = get_integer(doc.at("burn_in"), "burn_in");
    } else {
        cfg.burn_in = default_burn_in(cfg.num_arms, cfg.horizon, cfg.burn_in_multiplier);
        note("burn_in = " + std::to_string(cfg.burn_in) + " (default: max(3K, ceil(" +
             std::to_string(cfg.burn_in_multiplier) + "*K*ln T)))");
    }

    if (doc.contains("ucb_c1")) cfg.ucb_c1 = get_number(doc.at("ucb_c1"), "ucb_c1");
    else note("ucb_c1 = 1 (default)");

    if (doc.contains("ucb_beta")) {
        const json& b = doc.at("ucb_beta");
        if (b.is_string()) {
            std::string s = b.get<std::string>();
            if (s == "1/2") cfg.ucb_beta = kBetaHalf;
            else if (s == "1/6") cfg.ucb_beta = kBetaSixth;
            else fail("ucb_beta", "must be 1/2 or 1/6");
        } else {
            cfg.ucb_beta = get_number(b, "ucb_beta");
        }
    } else {
        note("ucb_beta = 1/2 (default)");
    }

    if (doc.contains("aggregation")) {
        std::string s = doc.at("aggregation").get<std::string>();
        if (s == "option1") cfg.aggregation = AggregationOption::Option1;
        else if (s == "option2") cfg.aggregation = AggregationOption::Option2;
        else if (s == "option3") cfg.aggregation = AggregationOption::Option3;
        else fail("aggregation", "expected option1|option2|option3");
    } else {
        note("aggregation = option1 (default)");
    }

    if (doc.contains("update")) {
        std::string s = doc.at("update").get<std::string>();
        if (s == "halving") cfg.update_rule = UpdateRule::Halving;
        else if (s == "contraction") cfg.update_rule = UpdateRule::Contraction;
        else if (s == "safezone") cfg.update_rule = UpdateRule::SafeZone;
        else fail("update", "expected halving|contraction|safezone");
    } else {
        note("update = halving (default)");
    }

    if (doc.contains("cost")) {
        const json& c = doc.at("cost");
        if (c.is_string()) {
            std::string s = c.get<std::string>();
            if (s == "constant") cfg.cost = {CostKind::Constant, std::nullopt};
            else if (s == "distance") cfg.cost = {CostKind::DistanceBased, std::nullopt};
            else fail("cost", "expected 'constant', 'distance' or {\"constant\": c}");
        } else if (c.is_object() && c.contains("constant")) {
            cfg.cost = {CostKind::Constant, get_number(c.at("constant"), "cost.constant")};
        } else {
            fail("cost", "expected 'constant', 'distance' or {\"constant\": c}");
        }
    } else {
        cfg.cost = {CostKind::Constant, std::nullopt};
        note("cost = constant, value drawn once from [0,1] by the environment stream (default)");
    }

    if (doc.contains("validators")) {
        const json& v = doc.at("validators");
        if (v.is_string()) {
            std::string s = v.get<std::string>();
            if (s == "all") cfg.validators = {ValidatorKind::All, 0};
            else if (s == "vrf") cfg.validators = {ValidatorKind::Vrf, 0};
            else fail("validators", "expected 'all', 'vrf' or {\"reputation_top_n\": N}");
        } else if (v.is_object() && v.contains("reputation_top_n")) {
            cfg.validators = {ValidatorKind::ReputationTopN,
                              static_cast<int>(get_integer(v.at("reputation_top_n"), "validators.reputation_top_n"))};
        } else {
            fail("validators", "expected 'all', 'vrf' or {\"reputation_top_n\": N}");
        }
    } else {
        note("validators = all (default)");
    }

    if (doc.contains("commanders")) {
        const json& c = doc.at("commanders");
        if (c.is_string()) {
            if (c.get<std::string>() == "all_sorted") cfg.commanders = {CommanderKind::AllSorted, 0, 0.05};
            else fail("commanders", "expected 'all_sorted', {\"fixed_count\": c} or {\"weighted_vrf\": eta}");
        } else if (c.is_object() && c.contains("fixed_count")) {
            cfg.commanders = {CommanderKind::FixedCount,
                              static_cast<int>(get_integer(c.at("fixed_count"), "commanders.fixed_count")), 0.05};
        } else if (c.is_object() && c.contains("weighted_vrf")) {
            cfg.commanders = {CommanderKind::WeightedVrf, 0, get_number(c.at("weighted_vrf"), "commanders.weighted_vrf")};
        } else {
            fail("commanders", "expected 'all_sorted', {\"fixed_count\": c} or {\"weighted_vrf\": eta}");
        }
    } else {
        note("commanders = all_sorted (default)");
    }

    if (doc.contains("weight_denominator")) {
        std::string s = doc.at("weight_denominator").get<std::string>();
        if (s == "burn_in") cfg.weight_denominator = WeightDenominator::BurnIn;
        else if (s == "horizon") cfg.weight_denominator = WeightDenominator::Horizon;
        else fail("weight_denominator", "expected burn_in|horizon");
    }
    if (doc.contains("reputation_form")) {
        std::string s = doc.at("reputation_form").get<std::string>();
        if (s == "body") cfg.reputation_form = ReputationForm::Body;
        else if (s == "appendix") cfg.reputation_form = ReputationForm::Appendix;
        else fail("reputation_form", "expected body|appendix");
    }
    if (doc.contains("reputation_map")) {
        std::string s = doc.at("reputation_map").get<std::string>();
        if (s == "identity") cfg.reputation_map = ReputationMap::Identity;
        else if (s == "exp") cfg.reputation_map = ReputationMap::Exp;
        else fail("reputation_map", "expected identity|exp");
    }
    if (doc.contains("consensus_full_iteration"))
        cfg.consensus_full_iteration = get_bool(doc.at("consensus_full_iteration"), "consensus_full_iteration");

    if (doc.contains("epsilon")) cfg.epsilon = get_number(doc.at("epsilon"), "epsilon");
    if (doc.contains("sig_len")) cfg.sig_len = static_cast<int>(get_integer(doc.at("sig_len"), "sig_len"));
    else note("sig_len = 16 (default)");
    if (doc.contains("forge_prob")) cfg.forge_prob = get_number(doc.at("forge_prob"), "forge_prob");

    if (doc.contains("family")) {
        const json& f = doc.at("family");
        if (f.is_string()) {
            if (f.get<std::string>() == "bernoulli") cfg.family = {ArmFamilyKind::Bernoulli, 0.0};
            else fail("family", "expected 'bernoulli' or {\"gaussian\": sigma2}");
        } else if (f.is_object() && f.contains("gaussian")) {
            double s2 = get_number(f.at("gaussian"), "family.gaussian");
            if (!(s2 > 0.0)) fail("family.gaussian", "sigma2 must be positive");
            cfg.family = {ArmFamilyKind::TruncatedGaussian, s2};
        } else {
            fail("family", "expected 'bernoulli' or {\"gaussian\": sigma2}");
        }
    } else {
        cfg.family = {ArmFamilyKind::Bernoulli, 0.0};
        note("family = bernoulli (default)");
    }

    if (doc.contains("preset")) cfg.preset = doc.at("preset").get<std::string>();

    // Duplicate means are allowed; zero-gap arms are excluded from gap
    // diagnostics downstream.
    std::set<double> distinct(cfg.arm_means.begin(), cfg.arm_means.end());
    if (distinct.size() != cfg.arm_means.size())
        note("duplicate arm means present; zero-gap arms excluded from gap diagnostics");

    validate_scenario(cfg);
    return out;
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
    json doc;
    doc["K"] = cfg.num_arms;
    doc["T"] = cfg.horizon;
    doc["M"] = cfg.num_participants;
    doc["honest"] = cfg.honest_ids;
    doc["malicious"] = cfg.malicious_ids;
    doc["means"] = cfg.arm_means;
    doc["seed"] = cfg.master_seed;
    doc["f"] = cfg.f_known;
    doc["burn_in"] = cfg.burn_in;
    doc["burn_in_multiplier"] = cfg.burn_in_multiplier;
    doc["ucb_c1"] = cfg.ucb_c1;
    doc["ucb_beta"] = cfg.ucb_beta == 0.5 ? json("1/2") : json("1/6");
    switch (cfg.aggregation) {
        case AggregationOption::Option1: doc["aggregation"] = "option1"; break;
        case AggregationOption::Option2: doc["aggregation"] = "option2"; break;
        case AggregationOption::Option3: doc["aggregation"] = "option3"; break;
    }
    switch (cfg.update_rule) {
        case UpdateRule::Halving: doc["update"] = "halving"; break;
        case UpdateRule::Contraction: doc["update"] = "contraction"; break;
        case UpdateRule::SafeZone: doc["update"] = "safezone"; break;
    }
    if (cfg.cost.kind == CostKind::DistanceBased) doc["cost"] = "distance";
    else if (cfg.cost.constant_value) doc["cost"] = {{"constant", *cfg.cost.constant_value}};
    else doc["cost"] = "constant";
    switch (cfg.validators.kind) {
        case ValidatorKind::All: doc["validators"] = "all"; break;
        case ValidatorKind::Vrf: doc["validators"] = "vrf"; break;
        case ValidatorKind::ReputationTopN:
            doc["validators"] = {{"reputation_top_n", cfg.validators.top_n}};
            break;
    }
    switch (cfg.commanders.kind) {
        case CommanderKind::AllSorted: doc["commanders"] = "all_sorted"; break;
        case CommanderKind::FixedCount:
            doc["commanders"] = {{"fixed_count", cfg.commanders.fixed_count}};
            break;
        case CommanderKind::WeightedVrf:
            doc["commanders"] = {{"weighted_vrf", cfg.commanders.eta}};
            break;
    }
    doc["weight_denominator"] = cfg.weight_denominator == WeightDenominator::BurnIn ? "burn_in" : "horizon";
    doc["reputation_form"] = cfg.reputation_form == ReputationForm::Body ? "body" : "appendix";
    doc["reputation_map"] = cfg.reputation_map == ReputationMap::Identity ? "identity" : "exp";
    doc["consensus_full_iteration"] = cfg.consensus_full_iteration;
    doc["epsilon"] = cfg.epsilon;
    doc["sig_len"] = cfg.sig_len;
    doc["forge_prob"] = cfg.forge_prob;
    if (cfg.family.kind == ArmFamilyKind::Bernoulli) doc["family"] = "bernoulli";
    else doc["family"] = {{"gaussian", cfg.family.sigma2}};
    if (!cfg.preset.empty()) doc["preset"] = cfg.preset;

    json attacks = json::object();
    for (const auto& [id, p] : cfg.attacks) {
        json pj;
        pj["estimator"] = estimator_attack_json(p.estimator);
        pj["consensus"] = consensus_attack_name(p.consensus);
        pj["arm"] = arm_attack_json(p.arm);
        pj["vote"] = p.vote == VotePolicy::AlwaysZero ? "zero" : "protocol";
        if (p.count_report == CountReportKind::ConstantOverride)
            pj["counts"] = {{"constant", p.count_override}};
        else
            pj["counts"] = "truthful";
        attacks[std::to_string(id)] = pj;
    }
    doc["attacks"] = attacks;
    return doc.dump(2);
}

}  // namespace bcmab
