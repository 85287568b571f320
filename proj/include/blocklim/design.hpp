#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blocklim/tpe.hpp"

namespace blocklim
{
/// Which interface ends may receive reinforcement. Side filters match the interface `end_tags`.
struct Eligibility
{
	enum class Kind
	{
		All,
		Extrados,
		Intrados,
		Explicit,
	};
	Kind kind = Kind::All;
	std::vector<Hinge> ends;  // Explicit only

	bool allows(InterfaceGeometry const & itf, End end) const;

	/// "all", "extrados", "intrados" or an explicit list "7:1,8:2" (interface:end).
	static Eligibility parse(std::string const & text);
	std::string to_string() const;
};

struct SettlementScenario
{
	std::string name;
	int block_id = 0;
	Vector3 u = Vector3::Zero();
	double lambda_a = 0;
	std::vector<Distortion> distortions;
};

struct Placement
{
	int interface_id = 0;
	End end = End::End1;
	int layers = 0;       // layer count at this end after the placement
	double opening = 0;   // opening that selected the end
	double lambda_before = 0;
};

struct ReinforcementForce
{
	int interface_id = 0;
	End end = End::End1;
	int layers = 0;
	double force = 0;  // total over the layers
	double limit = 0;

	double per_layer() const { return layers ? force / layers : 0.0; }
	bool at_limit(double rel_tol = 1e-6) const { return force >= limit * (1 - rel_tol); }
};

/// Pairs the entries of R with the system's reinforcement list.
std::vector<ReinforcementForce> reinforcement_forces(SystemMatrices const & system, VectorX const & R);

struct SettlementCheck
{
	std::string scenario;
	double lambda_kla = 0;
	bool kla_converged = false;
	std::vector<Hinge> hinges;  // TPE hinge set
	bool converged = false;     // TPE
	double energy = 0;
	double max_beta = 0;
	double min_beta = 0;
	std::vector<Hinge> closed_reinforcements;
	std::string error;  // empty on success
};

enum class DesignTermination
{
	TargetMet,
	MaxReinforcements,
	NoOpening,
};

char const * to_string(DesignTermination t);

struct DesignOptions
{
	double target_lambda = 0;
	std::optional<double> yield_force;  // per layer for new reinforcements; model default otherwise
	std::optional<double> alpha;        // force-reporting weight; model default otherwise
	Eligibility eligibility;
	int max_reinforcements = 8;
	bool require_target = true;  // throw TargetUnreachable instead of returning an unmet result
	std::vector<SettlementScenario> scenarios;
	SlaOptions sla;
	KlaOptions kla;
	TpeOptions tpe;
};

struct DesignResult
{
	std::vector<Placement> placements;
	std::vector<double> lambda_history;  // capacity before any placement, then after each one
	std::vector<std::vector<ReinforcementForce>> force_history;  // reported forces at each step
	LimitResult final_static;  // explicit-force analysis with the reporting weight
	std::vector<ReinforcementForce> final_forces;
	LimitResult final_kinematic;
	Mechanism final_mechanism;
	std::vector<SettlementCheck> settlement_checks;
	StructuralModel final_model;
	DesignTermination termination = DesignTermination::TargetMet;
	bool target_met = false;

	double final_lambda() const { return lambda_history.empty() ? 0.0 : lambda_history.back(); }
};

struct Location
{
	int interface_id = 0;
	End end = End::End1;
	double opening = 0;
};

/// End with the largest opening among eligible ends; ties go to the lowest interface id, then End1.
/// Throws NoOpening when no eligible end opens (pure sliding).
Location next_reinforcement_location(Mechanism const & mechanism, SystemMatrices const & system, Eligibility const & eligibility);

/// Greedy placement loop: one layer at the maximum opening until the capacity reaches the target,
/// then kinematic and energy checks for every settlement scenario.
DesignResult design_weak_reinforcement(StructuralModel model, DesignOptions const & options);

/// Kinematic and energy analyses of `model` under one settlement scenario.
SettlementCheck check_settlement(StructuralModel const & model, SettlementScenario const & scenario, DesignOptions const & options);

}  // namespace blocklim
