#include "blocklim/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "log.hpp"

namespace blocklim
{
namespace
{
std::string lower(std::string s)
{
	std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
	return s;
}

std::string trim(std::string const & s)
{
	auto const a = s.find_first_not_of(" \t");
	if (a == std::string::npos)
		return {};
	return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

SlaOptions capacity_options(DesignOptions const & o, double alpha)
{
	SlaOptions s = o.sla;
	s.alpha = alpha;
	return s;
}
}  // namespace

bool Eligibility::allows(InterfaceGeometry const & itf, End end) const
{
	std::string const & tag = itf.end_tags[end_index(end)];
	switch (kind)
	{
	case Kind::All: return true;
	case Kind::Extrados: return lower(tag) == "extrados";
	case Kind::Intrados: return lower(tag) == "intrados";
	case Kind::Explicit: return std::find(ends.begin(), ends.end(), Hinge{itf.id, end}) != ends.end();
	}
	return false;
}

Eligibility Eligibility::parse(std::string const & text)
{
	Eligibility e;
	std::string const t = lower(trim(text));
	if (t.empty() || t == "all" || t == "both")
		return e;
	if (t == "extrados")
	{
		e.kind = Kind::Extrados;
		return e;
	}
	if (t == "intrados")
	{
		e.kind = Kind::Intrados;
		return e;
	}
	e.kind = Kind::Explicit;
	std::stringstream ss(t);
	std::string item;
	while (std::getline(ss, item, ','))
	{
		item = trim(item);
		auto const colon = item.find(':');
		try
		{
			if (colon == std::string::npos)
				throw std::invalid_argument(item);
			int const id = std::stoi(item.substr(0, colon));
			int const end = std::stoi(item.substr(colon + 1));
			if (end != 1 && end != 2)
				throw Error(ErrorCode::InvalidEnd, "eligibility end must be 1 or 2: '" + item + "'");
			e.ends.push_back({id, static_cast<End>(end)});
		}
		catch (std::logic_error const &)
		{
			throw Error(ErrorCode::ParseError, "bad eligibility entry '" + item + "', expected interface:end");
		}
	}
	return e;
}

std::string Eligibility::to_string() const
{
	switch (kind)
	{
	case Kind::All: return "all";
	case Kind::Extrados: return "extrados";
	case Kind::Intrados: return "intrados";
	case Kind::Explicit: break;
	}
	std::string out;
	for (Hinge const & h : ends)
		out += (out.empty() ? "" : ",") + std::to_string(h.interface_id) + ":" + std::to_string(static_cast<int>(h.end));
	return out;
}

char const * to_string(DesignTermination t)
{
	switch (t)
	{
	case DesignTermination::TargetMet: return "target_met";
	case DesignTermination::MaxReinforcements: return "max_reinforcements";
	case DesignTermination::NoOpening: return "no_opening";
	}
	return "unknown";
}

std::vector<ReinforcementForce> reinforcement_forces(SystemMatrices const & system, VectorX const & R)
{
	std::vector<ReinforcementForce> out;
	for (Index r = 0; r < system.num_reinforcements(); ++r)
	{
		ReinforcementInfo const & info = system.reinforcements[r];
		out.push_back({info.interface_id, info.end, info.layers, r < R.size() ? R(r) : 0.0, info.limit()});
	}
	return out;
}

Location next_reinforcement_location(Mechanism const & mechanism, SystemMatrices const & system, Eligibility const & eligibility)
{
	double scale = 0;
	for (Index i = 0; i < mechanism.openings.size(); ++i)
		scale = std::max(scale, std::abs(mechanism.openings(i)));
	double const zero = std::max(mechanism.tolerance, 1e-12 * scale);
	double const tie = 1e-9 * scale;

	std::optional<Location> best;
	for (Index i = 0; i < system.num_interfaces(); ++i)
	{
		InterfaceGeometry const & itf = system.interfaces[i];
		for (End end : {End::End1, End::End2})
		{
			if (!eligibility.allows(itf, end))
				continue;
			double const w = mechanism.opening(i, end);
			if (w <= zero)
				continue;
			bool take = !best || w > best->opening + tie;
			if (best && !take && std::abs(w - best->opening) <= tie)
				take = itf.id < best->interface_id || (itf.id == best->interface_id && end == End::End1 && best->end == End::End2);
			if (take)
				best = Location{itf.id, end, w};
		}
	}
	if (!best)
		throw Error(ErrorCode::NoOpening, "no eligible interface end opens in the collapse mechanism");
	return *best;
}

SettlementCheck check_settlement(StructuralModel const & model, SettlementScenario const & scenario, DesignOptions const & options)
{
	SettlementCheck check;
	check.scenario = scenario.name;
	try
	{
		StructuralModel settled = model;
		settled.set_settlement(scenario.block_id, scenario.u);
		SystemMatrices const s = assemble_system(settled);
		KlaOutput const kla = run_kla(s, scenario.distortions, options.kla);
		check.lambda_kla = kla.result.lambda;
		check.kla_converged = kla.result.converged;

		SettlementResult const tpe = run_tpe(s, scenario.lambda_a, scenario.distortions, options.tpe);
		check.hinges = tpe.mechanism.hinges;
		check.converged = tpe.converged;
		check.energy = tpe.energy;
		check.closed_reinforcements = tpe.closed_reinforcements;
		if (tpe.mechanism.beta.size())
		{
			check.max_beta = tpe.mechanism.beta.maxCoeff();
			check.min_beta = tpe.mechanism.beta.minCoeff();
		}
	}
	catch (Error const & e)
	{
		check.error = std::string(blocklim::to_string(e.code())) + ": " + e.what();
		logger().warn("settlement scenario '{}' failed: {}", scenario.name, e.what());
	}
	return check;
}

DesignResult design_weak_reinforcement(StructuralModel model, DesignOptions const & options)
{
	double const alpha = options.alpha.value_or(model.defaults.alpha);
	DesignResult out;

	for (;;)
	{
		SystemMatrices const s = assemble_system(model);
		LimitResult const capacity = run_sla1(s, capacity_options(options, 0));
		if (!capacity.collapsed())
		{
			out.lambda_history.push_back(std::numeric_limits<double>::infinity());
			out.force_history.push_back(reinforcement_forces(s, capacity.R));
			out.termination = DesignTermination::TargetMet;
			break;
		}
		out.lambda_history.push_back(capacity.lambda);
		out.force_history.push_back(reinforcement_forces(s, alpha == 0 ? capacity.R : run_sla1(s, capacity_options(options, alpha)).R));
		logger().info("design step {}: lambda = {}", out.placements.size(), capacity.lambda);

		if (capacity.lambda >= options.target_lambda)
		{
			out.termination = DesignTermination::TargetMet;
			break;
		}
		if (static_cast<int>(out.placements.size()) >= options.max_reinforcements)
		{
			out.termination = DesignTermination::MaxReinforcements;
			break;
		}

		KlaOutput const kla = run_kla(s, {}, options.kla);
		Location loc;
		try
		{
			loc = next_reinforcement_location(kla.mechanism, s, options.eligibility);
		}
		catch (Error const & e)
		{
			if (e.code() != ErrorCode::NoOpening)
				throw;
			out.termination = DesignTermination::NoOpening;
			break;
		}

		Placement p;
		p.interface_id = loc.interface_id;
		p.end = loc.end;
		p.opening = loc.opening;
		p.lambda_before = capacity.lambda;
		p.layers = model.add_reinforcement_layer(loc.interface_id, loc.end);
		if (options.yield_force && p.layers == 1)
			model.find_reinforcement(loc.interface_id, loc.end)->yield_force = *options.yield_force;
		out.placements.push_back(p);
	}

	out.target_met = out.final_lambda() >= options.target_lambda;
	SystemMatrices const s = assemble_system(model);
	out.final_static = run_sla1(s, capacity_options(options, alpha));
	out.final_forces = reinforcement_forces(s, out.final_static.R);
	KlaOutput kla = run_kla(s, {}, options.kla);
	out.final_kinematic = std::move(kla.result);
	out.final_mechanism = std::move(kla.mechanism);

	for (SettlementScenario const & scenario : options.scenarios)
		out.settlement_checks.push_back(check_settlement(model, scenario, options));
	out.final_model = std::move(model);

	if (!out.target_met && options.require_target)
		throw Error(ErrorCode::TargetUnreachable,
			std::string("target ") + std::to_string(options.target_lambda) + " not reached (" + to_string(out.termination)
				+ ", lambda = " + std::to_string(out.final_lambda()) + ")");
	return out;
}

}  // namespace blocklim
