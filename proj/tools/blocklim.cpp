#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "blocklim/io.hpp"
#include "blocklim/svg.hpp"

using namespace blocklim;

namespace
{
struct Args
{
	std::string model;
	std::string method = "sla1";
	std::optional<double> alpha;
	std::optional<double> ry;
	double target_lambda = 0;
	std::string eligibility = "all";
	std::vector<std::string> settlements;
	int max_reinforcements = 8;
	double amplify = 1;
	std::string out;
	std::string svg;
	std::string result;
	std::optional<double> lambda_a;
};

bool input_error(ErrorCode c)
{
	switch (c)
	{
	case ErrorCode::DegeneratePolygon:
	case ErrorCode::ZeroLengthInterface:
	case ErrorCode::NoFixedBlock:
	case ErrorCode::DanglingReference:
	case ErrorCode::InvalidModel:
	case ErrorCode::UnknownInterface:
	case ErrorCode::InvalidEnd:
	case ErrorCode::ParseError: return true;
	default: return false;
	}
}

void write_text(std::string const & path, std::string const & text)
{
	if (path.empty() || path == "-")
	{
		std::cout << text;
		return;
	}
	std::ofstream out(path);
	if (!out)
		throw Error(ErrorCode::ParseError, "cannot write " + path);
	out << text;
}

void emit(Args const & a, Json const & doc) { write_text(a.out, doc.dump(2) + "\n"); }

StructuralModel load(Args const & a)
{
	StructuralModel m = load_model(a.model);
	if (a.alpha)
		m.defaults.alpha = *a.alpha;
	if (a.ry)
	{
		m.defaults.yield_force = *a.ry;
		for (Reinforcement & r : m.reinforcements)
			r.yield_force.reset();
	}
	return m;
}

std::vector<SettlementScenario> scenarios(Args const & a)
{
	std::vector<SettlementScenario> out;
	for (std::string const & s : a.settlements)
	{
		out.push_back(parse_settlement(s));
		if (a.lambda_a)
			out.back().lambda_a = *a.lambda_a;
	}
	return out;
}

Json settlement_json(SettlementScenario const & s)
{
	return {{"name", s.name}, {"block_id", s.block_id}, {"u", {s.u(0), s.u(1), s.u(2)}}, {"lambda_a", s.lambda_a}};
}

void apply_settlements(StructuralModel & m, std::vector<SettlementScenario> const & list)
{
	for (SettlementScenario const & s : list)
		m.set_settlement(s.block_id, s.u);
}

void maybe_svg(Args const & a, std::string const & path, StructuralModel const & m, VectorX const & U, std::vector<Hinge> const & hinges)
{
	if (path.empty())
		return;
	SvgOptions o;
	o.amplify = a.amplify;
	write_text(path, render_svg(m, U, hinges, o));
}

int analyze(Args const & a)
{
	StructuralModel m = load(a);
	apply_settlements(m, scenarios(a));
	SystemMatrices const s = assemble_system(m);
	LimitResult r;
	Mechanism mech;
	if (a.method == "kla")
	{
		KlaOutput k = run_kla(s);
		r = std::move(k.result);
		mech = std::move(k.mechanism);
	}
	else
	{
		SlaOptions o;
		o.alpha = m.defaults.alpha;
		r = a.method == "sla2" ? run_sla2(s, o) : run_sla1(s, o);
		if (r.collapsed())
			mech = extract_mechanism(r, s);
	}
	Json doc = to_json(r, s);
	doc["mechanism"] = to_json(mech, s);
	emit(a, doc);
	maybe_svg(a, a.svg, m, mech.U, mech.hinges);
	return r.converged ? 0 : 1;
}

std::string step_path(std::string const & svg, std::size_t step)
{
	std::filesystem::path p(svg);
	std::string const stem = p.stem().string() + "_step" + std::to_string(step);
	return (p.parent_path() / (stem + p.extension().string())).string();
}

int design(Args const & a)
{
	StructuralModel const m = load(a);
	DesignOptions o;
	o.target_lambda = a.target_lambda;
	o.eligibility = Eligibility::parse(a.eligibility);
	o.max_reinforcements = a.max_reinforcements;
	o.scenarios = scenarios(a);
	o.require_target = false;
	DesignResult const r = design_weak_reinforcement(m, o);
	Json doc = to_json(r);
	emit(a, doc);

	if (!a.svg.empty())
	{
		StructuralModel step = m;
		for (std::size_t k = 0; k <= r.placements.size(); ++k)
		{
			if (k > 0)
				step.add_reinforcement_layer(r.placements[k - 1].interface_id, r.placements[k - 1].end);
			KlaOutput const kla = run_kla(assemble_system(step));
			maybe_svg(a, step_path(a.svg, k), step, kla.mechanism.U, kla.mechanism.hinges);
		}
	}
	if (!r.target_met)
		throw Error(ErrorCode::TargetUnreachable, "target " + std::to_string(a.target_lambda) + " not reached ("
			+ to_string(r.termination) + ", lambda = " + std::to_string(r.final_lambda()) + ")");
	return 0;
}

int settle(Args const & a)
{
	std::vector<SettlementScenario> const list = scenarios(a);
	if (list.empty())
		throw Error(ErrorCode::ParseError, "settle needs --settlement");
	StructuralModel m = load(a);
	apply_settlements(m, list);
	SystemMatrices const s = assemble_system(m);
	SettlementResult const r = run_tpe(s, list.front().lambda_a);
	Json doc = to_json(r, s);
	Json applied = Json::array();
	for (SettlementScenario const & sc : list)
		applied.push_back(settlement_json(sc));
	doc["settlements"] = applied;
	emit(a, doc);
	maybe_svg(a, a.svg, m, r.mechanism.U, r.mechanism.hinges);
	return r.converged ? 0 : 1;
}

Json read_json(std::string const & path)
{
	std::ifstream in(path);
	if (!in)
		throw Error(ErrorCode::ParseError, "cannot open " + path);
	try
	{
		return Json::parse(in);
	}
	catch (Json::exception const & e)
	{
		throw Error(ErrorCode::ParseError, path + ": " + e.what());
	}
}

int render(Args const & a)
{
	StructuralModel m = load(a);
	VectorX U;
	std::vector<Hinge> hinges;
	if (a.result.empty())
	{
		KlaOutput const kla = run_kla(assemble_system(m));
		U = kla.mechanism.U;
		hinges = kla.mechanism.hinges;
	}
	else
	{
		Json const doc = read_json(a.result);
		try
		{
			if (doc.contains("model"))
				m = model_from_json(doc["model"]);
			for (Json const & s : doc.value("settlements", Json::array()))
				m.set_settlement(s.at("block_id").get<int>(), Vector3(s.at("u")[0], s.at("u")[1], s.at("u")[2]));
			Json const * mech = doc.contains("final_mechanism") ? &doc["final_mechanism"] : doc.contains("mechanism") ? &doc["mechanism"] : &doc;
			SystemMatrices const s = assemble_system(m);
			U = VectorX::Zero(s.num_free_dofs());
			for (Json const & b : mech->value("U", Json::array()))
			{
				auto it = s.dof_map.find(b.at("block_id").get<int>());
				if (it != s.dof_map.end())
					for (int d = 0; d < 3; ++d)
						U(it->second + d) = b.at("u")[d].get<double>();
			}
			for (Json const & h : mech->value("hinges", Json::array()))
				hinges.push_back({h.at("interface_id").get<int>(), static_cast<End>(h.at("end").get<int>())});
		}
		catch (Json::exception const & e)
		{
			throw Error(ErrorCode::ParseError, a.result + ": " + e.what());
		}
	}
	SvgOptions o;
	o.amplify = a.amplify;
	write_text(a.svg.empty() ? a.out : a.svg, render_svg(m, U, hinges, o));
	return 0;
}

int validate_cmd(Args const & a)
{
	StructuralModel const m = load(a);
	validate(m);
	SystemMatrices const s = assemble_system(m);
	Json notes = Json::array();
	for (std::string const & n : validation_notes(m))
		notes.push_back(n);
	emit(a, {{"valid", true}, {"blocks", m.blocks.size()}, {"free_blocks", s.free_blocks.size()}, {"interfaces", m.interfaces.size()},
				 {"reinforcements", m.reinforcements.size()}, {"notes", notes}});
	return 0;
}
}  // namespace

int main(int argc, char ** argv)
{
	CLI::App app{"Limit analysis and weak-reinforcement design of rigid-block masonry"};
	app.require_subcommand(1);
	Args a;

	auto common = [&](CLI::App * c) {
		c->add_option("model", a.model, "model JSON")->required()->check(CLI::ExistingFile);
		c->add_option("--out,-o", a.out, "output file (default stdout)");
		c->add_option("--alpha", a.alpha, "reinforcement weight of the static objective");
		c->add_option("--ry", a.ry, "yield force per reinforcement layer");
	};
	auto with_svg = [&](CLI::App * c) {
		c->add_option("--svg", a.svg, "SVG output path");
		c->add_option("--amplify", a.amplify, "displacement amplification for rendering");
	};
	auto with_settlement = [&](CLI::App * c) {
		c->add_option("--settlement", a.settlements, "block=ID,ux=..,uy=..,phi=..");
		c->add_option("--lambda-a", a.lambda_a, "live-load multiplier held during settlement");
	};

	CLI::App * an = app.add_subcommand("analyze", "collapse multiplier and mechanism");
	common(an);
	with_svg(an);
	with_settlement(an);
	an->add_option("--method", a.method, "sla1, sla2 or kla")->check(CLI::IsMember({"sla1", "sla2", "kla"}));

	CLI::App * de = app.add_subcommand("design", "weak-reinforcement placement loop");
	common(de);
	with_svg(de);
	with_settlement(de);
	de->add_option("--target-lambda", a.target_lambda, "required collapse multiplier")->required();
	de->add_option("--eligibility", a.eligibility, "extrados, intrados, all or id:end list");
	de->add_option("--max-reinforcements", a.max_reinforcements, "placement budget");

	CLI::App * se = app.add_subcommand("settle", "displaced configuration under support settlements");
	common(se);
	with_svg(se);
	with_settlement(se);

	CLI::App * re = app.add_subcommand("render", "SVG of a mechanism");
	common(re);
	with_svg(re);
	re->add_option("--result", a.result, "analyze/settle/design JSON to draw (default: KLA collapse mechanism)");

	CLI::App * va = app.add_subcommand("validate", "structural checks");
	common(va);

	try
	{
		app.parse(argc, argv);
	}
	catch (CLI::ParseError const & e)
	{
		if (e.get_exit_code() == 0)
			return app.exit(e);
		std::cerr << error_json(ErrorCode::ParseError, e.what()).dump() << "\n";
		return 2;
	}

	try
	{
		if (an->parsed())
			return analyze(a);
		if (de->parsed())
			return design(a);
		if (se->parsed())
			return settle(a);
		if (re->parsed())
			return render(a);
		return validate_cmd(a);
	}
	catch (Error const & e)
	{
		std::cerr << error_json(e.code(), e.what()).dump() << "\n";
		return input_error(e.code()) ? 2 : 1;
	}
	catch (std::exception const & e)
	{
		std::cerr << Json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
		return 1;
	}
}
