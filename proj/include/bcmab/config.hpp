#pragma once

#include <cstdint>
#include <optional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcmab {

// Thrown for malformed documents, unknown keys, and violated invariants;
// message names the offending key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimInvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class AggregationOption { Option1, Option2, Option3 };
enum class UpdateRule { Halving, Contraction, SafeZone };
enum class ArmFamilyKind { Bernoulli, TruncatedGaussian };
enum class CostKind { Constant, DistanceBased };
enum class ValidatorKind { All, Vrf, ReputationTopN };
enum class CommanderKind { AllSorted, FixedCount, WeightedVrf };
enum class WeightDenominator { BurnIn, Horizon };
enum class ReputationForm { Body, Appendix };
enum class ReputationMap { Identity, Exp };

enum class EstimatorAttackKind { None, EpsilonContamination, ConstantShift, RandomNoise, WorstArmBoost };
enum class ConsensusAttackKind { None, Equivocate, WrongForward, Silent };
enum class ArmAttackKind { None, FixedArm, UniformRandom };
enum class VotePolicy { AlwaysZero, FollowProtocol };
enum class CountReportKind { Truthful, ConstantOverride };

struct EstimatorAttack {
    EstimatorAttackKind kind = EstimatorAttackKind::None;
    double epsilon = 0.0;   // contamination rate
    double q_value = 1.0;   // point mass of the contaminating distribution q
    double shift = 0.0;     // ConstantShift delta
    double range = 0.0;     // RandomNoise half-width
};

struct ArmAttack {
    ArmAttackKind kind = ArmAttackKind::None;
    int fixed_arm = 0;
};

struct AttackProfile {
    EstimatorAttack estimator;
    ConsensusAttackKind consensus = ConsensusAttackKind::None;
    ArmAttack arm;
    VotePolicy vote = VotePolicy::AlwaysZero;
    CountReportKind count_report = CountReportKind::Truthful;
    uint64_t count_override = 0;

    bool attacks_estimators() const { return estimator.kind != EstimatorAttackKind::None; }
    bool attacks_consensus() const { return consensus != ConsensusAttackKind::None; }
};

struct CostMechanism {
    CostKind kind = CostKind::Constant;
    // Constant cost value; drawn once per run from the environment stream
    // when unset.
    std::optional<double> constant_value;
};

struct ValidatorProtocol {
    ValidatorKind kind = ValidatorKind::All;
    int top_n = 0;
};

struct CommanderProtocol {
    CommanderKind kind = CommanderKind::AllSorted;
    int fixed_count = 0;
    double eta = 0.05;  // WeightedVrf failure budget
};

struct ArmFamily {
    ArmFamilyKind kind = ArmFamilyKind::Bernoulli;
    double sigma2 = 0.01;  // TruncatedGaussian variance
};

struct ScenarioConfig {
    int num_arms = 0;          // K
    int64_t horizon = 0;       // T
    int num_participants = 0;  // M
    std::vector<int> honest_ids;
    std::vector<int> malicious_ids;
    std::map<int, AttackProfile> attacks;  // keyed by malicious id

    int f_known = 0;
    int64_t burn_in = 0;           // L, resolved at load
    double burn_in_multiplier = 2.0;  // C_L in L = max(3K, ceil(C_L * K * ln T))

    double ucb_c1 = 1.0;
    double ucb_beta = 0.5;  // one of {1/2, 1/6}

    AggregationOption aggregation = AggregationOption::Option1;
    UpdateRule update_rule = UpdateRule::Halving;
    CostMechanism cost;
    ValidatorProtocol validators;
    CommanderProtocol commanders;
    WeightDenominator weight_denominator = WeightDenominator::BurnIn;
    ReputationForm reputation_form = ReputationForm::Body;
    ReputationMap reputation_map = ReputationMap::Identity;
    bool consensus_full_iteration = false;

    double epsilon = 0.0;  // safe-zone separation
    int sig_len = 16;      // l
    double forge_prob = 0.0;

    std::vector<double> arm_means;
    ArmFamily family;
    uint64_t master_seed = 0;

    std::string preset;  // empty unless built from a preset

    bool is_malicious(int id) const { return attacks.count(id) > 0; }
    const AttackProfile* profile(int id) const {
        auto it = attacks.find(id);
        return it == attacks.end() ? nullptr : &it->second;
    }
};

struct LoadedScenario {
    ScenarioConfig config;
    std::vector<std::string> applied_defaults;  // audit list
};

// Parses a JSON config document (documented key set in the README); applies
// and records defaults; enforces invariants.
LoadedScenario load_scenario(const std::string& text);

std::string serialize_scenario(const ScenarioConfig& cfg);

// Checks invariants on an already-populated config (used by presets too).
void validate_scenario(const ScenarioConfig& cfg);

int64_t default_burn_in(int num_arms, int64_t horizon, double multiplier);

}  // namespace bcmab
