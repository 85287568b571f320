#include "blocklim/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace blocklim
{
namespace
{
[[noreturn]] void parse_fail(std::string const & path, std::string const & what)
{
	throw Error(ErrorCode::ParseError, (path.empty() ? std::string("document") : path) + ": " + what);
}

std::string join(std::string const & path, std::string const & key) { return path.empty() ? key : path + "." + key; }
std::string at(std::string const & path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void expect_object(Json const & j, std::string const & path, std::set<std::string> const & allowed)
{
	if (!j.is_object())
		parse_fail(path, "expected an object");
	for (auto const & item : j.items())
		if (!allowed.count(item.key()))
			parse_fail(join(path, item.key()), "unknown key");
}

Json const & field(Json const & obj, std::string const & key, std::string const & path)
{
	auto it = obj.find(key);
	if (it == obj.end())
		parse_fail(join(path, key), "missing");
	return *it;
}

Json const & array(Json const & j, std::string const & path)
{
	if (!j.is_array())
		parse_fail(path, "expected an array");
	return j;
}

double number(Json const & j, std::string const & path)
{
	if (!j.is_number())
		parse_fail(path, "expected a number");
	double const v = j.get<double>();
	if (!std::isfinite(v))
		parse_fail(path, "not finite");
	return v;
}

int integer(Json const & j, std::string const & path)
{
	if (!j.is_number_integer())
		parse_fail(path, "expected an integer");
	return j.get<int>();
}

bool boolean(Json const & j, std::string const & path)
{
	if (!j.is_boolean())
		parse_fail(path, "expected true or false");
	return j.get<bool>();
}

std::string text(Json const & j, std::string const & path)
{
	if (!j.is_string())
		parse_fail(path, "expected a string");
	return j.get<std::string>();
}

template <int N>
Eigen::Matrix<double, N, 1> vec(Json const & j, std::string const & path)
{
	if (!j.is_array() || j.size() != N)
		parse_fail(path, "expected an array of " + std::to_string(N) + " numbers");
	Eigen::Matrix<double, N, 1> v;
	for (int i = 0; i < N; ++i)
		v(i) = number(j[i], at(path, i));
	return v;
}

End end_of(Json const & j, std::string const & path)
{
	int const e = integer(j, path);
	if (e != 1 && e != 2)
		throw Error(ErrorCode::InvalidEnd, path + ": end must be 1 or 2");
	return static_cast<End>(e);
}

std::optional<double> optional_number(Json const & obj, std::string const & key, std::string const & path)
{
	auto it = obj.find(key);
	if (it == obj.end())
		return std::nullopt;
	return number(*it, join(path, key));
}

Json vec_json(Eigen::Ref<VectorX const> v)
{
	Json out = Json::array();
	for (Index i = 0; i < v.size(); ++i)
		out.push_back(v(i));
	return out;
}

Json vec_json(std::vector<double> const & v)
{
	Json out = Json::array();
	for (double x : v)
		out.push_back(x);
	return out;
}

Json hinge_json(Hinge const & h) { return {{"interface_id", h.interface_id}, {"end", static_cast<int>(h.end)}}; }

Json hinges_json(std::vector<Hinge> const & hinges)
{
	Json out = Json::array();
	for (Hinge const & h : hinges)
		out.push_back(hinge_json(h));
	return out;
}

Json forces_json(std::vector<ReinforcementForce> const & forces)
{
	Json out = Json::array();
	for (ReinforcementForce const & f : forces)
		out.push_back({{"interface_id", f.interface_id}, {"end", static_cast<int>(f.end)}, {"layers", f.layers}, {"force", f.force},
			{"limit", f.limit}, {"at_limit", f.at_limit()}});
	return out;
}

Json block_motions(VectorX const & U, SystemMatrices const & s)
{
	Json out = Json::array();
	if (U.size() != s.num_free_dofs())
		return out;
	for (std::size_t b = 0; b < s.free_blocks.size(); ++b)
		out.push_back({{"block_id", s.free_blocks[b]}, {"u", vec_json(U.segment(3 * b, 3))}});
	return out;
}

Json interface_forces(VectorX const & X, SystemMatrices const & s)
{
	Json out = Json::array();
	if (X.size() != 3 * s.num_interfaces())
		return out;
	for (Index i = 0; i < s.num_interfaces(); ++i)
		out.push_back({{"interface_id", s.interfaces[i].id}, {"X", vec_json(X.segment(3 * i, 3))}});
	return out;
}

char const * formulation_name(Formulation f)
{
	switch (f)
	{
	case Formulation::Sla1: return "sla1";
	case Formulation::Sla2: return "sla2";
	case Formulation::Kla: return "kla";
	}
	return "unknown";
}
}  // namespace

Json model_to_json(StructuralModel const & m)
{
	Json blocks = Json::array();
	for (Block const & b : m.blocks)
	{
		Json vertices = Json::array();
		for (Vector2 const & v : b.vertices)
			vertices.push_back({v.x(), v.y()});
		Json j = {{"id", b.id}, {"vertices", vertices}, {"fixed", b.fixed}};
		if (b.density)
			j["density"] = *b.density;
		if (!b.extra_dead_force.isZero(0))
			j["extra_dead_force"] = vec_json(b.extra_dead_force);
		if (!b.extra_live_force.isZero(0))
			j["extra_live_force"] = vec_json(b.extra_live_force);
		blocks.push_back(j);
	}

	Json interfaces = Json::array();
	for (Interface const & itf : m.interfaces)
	{
		Json j = {{"id", itf.id}, {"block_j", itf.block_j}, {"block_k", itf.block_k}, {"p1", {itf.p1.x(), itf.p1.y()}},
			{"p2", {itf.p2.x(), itf.p2.y()}}};
		if (itf.mu)
			j["mu"] = *itf.mu;
		if (itf.mu_tilde)
			j["mu_tilde"] = *itf.mu_tilde;
		if (!itf.end_tags[0].empty() || !itf.end_tags[1].empty())
			j["end_tags"] = {itf.end_tags[0], itf.end_tags[1]};
		interfaces.push_back(j);
	}

	Json reinforcements = Json::array();
	for (Reinforcement const & r : m.reinforcements)
	{
		Json j = {{"interface_id", r.interface_id}, {"end", static_cast<int>(r.end)}, {"layers", r.layers}};
		if (r.yield_force)
			j["yield_force"] = *r.yield_force;
		reinforcements.push_back(j);
	}

	Json supports = Json::array();
	for (Support const & s : m.supports)
		supports.push_back({{"block_id", s.block_id}, {"prescribed_u", vec_json(s.prescribed_u)}});

	Json rules = Json::array();
	for (LiveLoadRule const & rule : m.live_load_rules)
	{
		if (auto const * h = std::get_if<HorizontalMassLinear>(&rule))
			rules.push_back({{"type", "horizontal_mass_linear"}, {"divisor", h->divisor}, {"offset", h->offset}});
		else if (auto const * p = std::get_if<PointLoad>(&rule))
			rules.push_back({{"type", "point_load"}, {"block_id", p->block_id}, {"force", vec_json(p->force)}});
	}

	return {
		{"blocks", blocks},
		{"interfaces", interfaces},
		{"reinforcements", reinforcements},
		{"supports", supports},
		{"gravity", {m.gravity.x(), m.gravity.y()}},
		{"live_load_rules", rules},
		{"defaults",
			{{"mu", m.defaults.mu}, {"mu_tilde", m.defaults.mu_tilde}, {"density", m.defaults.density},
				{"yield_force", m.defaults.yield_force}, {"alpha", m.defaults.alpha}}},
	};
}

StructuralModel model_from_json(Json const & doc)
{
	StructuralModel m;
	expect_object(doc, "", {"blocks", "interfaces", "reinforcements", "supports", "gravity", "live_load_rules", "defaults"});

	Json const & blocks = array(field(doc, "blocks", ""), "blocks");
	for (std::size_t i = 0; i < blocks.size(); ++i)
	{
		std::string const path = at("blocks", i);
		Json const & j = blocks[i];
		expect_object(j, path, {"id", "vertices", "fixed", "density", "extra_dead_force", "extra_live_force"});
		Block b;
		b.id = integer(field(j, "id", path), join(path, "id"));
		Json const & vs = array(field(j, "vertices", path), join(path, "vertices"));
		for (std::size_t v = 0; v < vs.size(); ++v)
			b.vertices.push_back(vec<2>(vs[v], at(join(path, "vertices"), v)));
		if (j.contains("fixed"))
			b.fixed = boolean(j["fixed"], join(path, "fixed"));
		b.density = optional_number(j, "density", path);
		if (j.contains("extra_dead_force"))
			b.extra_dead_force = vec<3>(j["extra_dead_force"], join(path, "extra_dead_force"));
		if (j.contains("extra_live_force"))
			b.extra_live_force = vec<3>(j["extra_live_force"], join(path, "extra_live_force"));
		m.blocks.push_back(std::move(b));
	}

	Json const & interfaces = array(field(doc, "interfaces", ""), "interfaces");
	for (std::size_t i = 0; i < interfaces.size(); ++i)
	{
		std::string const path = at("interfaces", i);
		Json const & j = interfaces[i];
		expect_object(j, path, {"id", "block_j", "block_k", "p1", "p2", "mu", "mu_tilde", "end_tags"});
		Interface itf;
		itf.id = integer(field(j, "id", path), join(path, "id"));
		itf.block_j = integer(field(j, "block_j", path), join(path, "block_j"));
		itf.block_k = integer(field(j, "block_k", path), join(path, "block_k"));
		itf.p1 = vec<2>(field(j, "p1", path), join(path, "p1"));
		itf.p2 = vec<2>(field(j, "p2", path), join(path, "p2"));
		itf.mu = optional_number(j, "mu", path);
		itf.mu_tilde = optional_number(j, "mu_tilde", path);
		if (j.contains("end_tags"))
		{
			Json const & tags = j["end_tags"];
			std::string const tp = join(path, "end_tags");
			if (!tags.is_array() || tags.size() != 2)
				parse_fail(tp, "expected two strings");
			itf.end_tags = {text(tags[0], at(tp, 0)), text(tags[1], at(tp, 1))};
		}
		m.interfaces.push_back(std::move(itf));
	}

	if (doc.contains("reinforcements"))
	{
		Json const & rs = array(doc["reinforcements"], "reinforcements");
		for (std::size_t i = 0; i < rs.size(); ++i)
		{
			std::string const path = at("reinforcements", i);
			Json const & j = rs[i];
			expect_object(j, path, {"interface_id", "end", "layers", "yield_force"});
			Reinforcement r;
			r.interface_id = integer(field(j, "interface_id", path), join(path, "interface_id"));
			r.end = end_of(field(j, "end", path), join(path, "end"));
			if (j.contains("layers"))
				r.layers = integer(j["layers"], join(path, "layers"));
			r.yield_force = optional_number(j, "yield_force", path);
			m.reinforcements.push_back(r);
		}
	}

	if (doc.contains("supports"))
	{
		Json const & ss = array(doc["supports"], "supports");
		for (std::size_t i = 0; i < ss.size(); ++i)
		{
			std::string const path = at("supports", i);
			expect_object(ss[i], path, {"block_id", "prescribed_u"});
			Support s;
			s.block_id = integer(field(ss[i], "block_id", path), join(path, "block_id"));
			if (ss[i].contains("prescribed_u"))
				s.prescribed_u = vec<3>(ss[i]["prescribed_u"], join(path, "prescribed_u"));
			m.supports.push_back(s);
		}
	}

	if (doc.contains("gravity"))
		m.gravity = vec<2>(doc["gravity"], "gravity");

	if (doc.contains("live_load_rules"))
	{
		Json const & rules = array(doc["live_load_rules"], "live_load_rules");
		for (std::size_t i = 0; i < rules.size(); ++i)
		{
			std::string const path = at("live_load_rules", i);
			Json const & j = rules[i];
			if (!j.is_object())
				parse_fail(path, "expected an object");
			std::string const type = text(field(j, "type", path), join(path, "type"));
			if (type == "horizontal_mass_linear")
			{
				expect_object(j, path, {"type", "divisor", "offset"});
				HorizontalMassLinear h;
				h.divisor = number(field(j, "divisor", path), join(path, "divisor"));
				if (h.divisor == 0)
					parse_fail(join(path, "divisor"), "must be nonzero");
				h.offset = optional_number(j, "offset", path).value_or(0);
				m.live_load_rules.push_back(h);
			}
			else if (type == "point_load")
			{
				expect_object(j, path, {"type", "block_id", "force"});
				m.live_load_rules.push_back(
					PointLoad{integer(field(j, "block_id", path), join(path, "block_id")), vec<3>(field(j, "force", path), join(path, "force"))});
			}
			else
				parse_fail(join(path, "type"), "unknown live load rule '" + type + "'");
		}
	}

	if (doc.contains("defaults"))
	{
		Json const & d = doc["defaults"];
		expect_object(d, "defaults", {"mu", "mu_tilde", "density", "yield_force", "alpha"});
		m.defaults.mu = optional_number(d, "mu", "defaults").value_or(m.defaults.mu);
		m.defaults.mu_tilde = optional_number(d, "mu_tilde", "defaults").value_or(m.defaults.mu_tilde);
		m.defaults.density = optional_number(d, "density", "defaults").value_or(m.defaults.density);
		m.defaults.yield_force = optional_number(d, "yield_force", "defaults").value_or(m.defaults.yield_force);
		m.defaults.alpha = optional_number(d, "alpha", "defaults").value_or(m.defaults.alpha);
	}
	return m;
}

std::string dump_model(StructuralModel const & model) { return model_to_json(model).dump(2) + "\n"; }

StructuralModel parse_model(std::string const & text)
{
	Json doc;
	try
	{
		doc = Json::parse(text);
	}
	catch (Json::parse_error const & e)
	{
		throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
	}
	return model_from_json(doc);
}

StructuralModel load_model(std::filesystem::path const & path)
{
	std::ifstream in(path);
	if (!in)
		throw Error(ErrorCode::ParseError, "cannot open " + path.string());
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_model(ss.str());
}

void save_model(std::filesystem::path const & path, StructuralModel const & model)
{
	std::ofstream out(path);
	if (!out)
		throw Error(ErrorCode::ParseError, "cannot write " + path.string());
	out << dump_model(model);
}

Json to_json(LimitResult const & r, SystemMatrices const & s)
{
	Json j = {
		{"formulation", formulation_name(r.formulation)},
		{"status", r.collapsed() ? "collapse" : "no_collapse"},
		{"lambda", r.lambda},
		{"objective", r.objective},
		{"iterations", r.iterations},
		{"converged", r.converged},
		{"history", vec_json(r.history)},
		{"interfaces", interface_forces(r.X, s)},
		{"U", block_motions(r.U, s)},
		{"beta", vec_json(r.beta)},
		{"reinforcements", forces_json(reinforcement_forces(s, r.R))},
	};
	Json reactions = Json::array();
	if (r.V.size() == 3 * static_cast<Index>(s.fixed_blocks.size()))
		for (std::size_t b = 0; b < s.fixed_blocks.size(); ++b)
			reactions.push_back({{"block_id", s.fixed_blocks[b]}, {"V", vec_json(r.V.segment(3 * b, 3))}});
	j["reactions"] = reactions;
	return j;
}

Json to_json(Mechanism const & m, SystemMatrices const & s)
{
	Json interfaces = Json::array();
	if (m.openings.size() == 2 * s.num_interfaces())
	{
		for (Index i = 0; i < s.num_interfaces(); ++i)
		{
			Json j = {{"interface_id", s.interfaces[i].id}, {"opening", {m.opening(i, End::End1), m.opening(i, End::End2)}}};
			if (m.slidings.size() == s.num_interfaces())
				j["sliding"] = m.slidings(i);
			if (m.beta.size() == 5 * s.num_interfaces())
				j["beta"] = vec_json(m.beta.segment(5 * i, 5));
			interfaces.push_back(j);
		}
	}
	return {
		{"hinges", hinges_json(m.hinges)},
		{"opened", m.opened},
		{"sliding", m.sliding},
		{"tolerance", m.tolerance},
		{"interfaces", interfaces},
		{"U", block_motions(m.U, s)},
	};
}

Json to_json(SettlementResult const & r, SystemMatrices const & s)
{
	return {
		{"energy", r.energy},
		{"energy_history", vec_json(r.energy_history)},
		{"lambda_a", r.lambda_a},
		{"lambda_collapse", r.lambda_collapse},
		{"iterations", r.iterations},
		{"converged", r.converged},
		{"hinge_count", r.mechanism.hinges.size()},
		{"closed_reinforcements", hinges_json(r.closed_reinforcements)},
		{"mechanism", to_json(r.mechanism, s)},
		{"interfaces", interface_forces(r.X, s)},
	};
}

Json to_json(SettlementCheck const & c)
{
	Json j = {
		{"scenario", c.scenario},
		{"lambda_kla", c.lambda_kla},
		{"kla_converged", c.kla_converged},
		{"hinge_count", c.hinges.size()},
		{"hinges", hinges_json(c.hinges)},
		{"converged", c.converged},
		{"energy", c.energy},
		{"max_beta", c.max_beta},
		{"min_beta", c.min_beta},
		{"closed_reinforcements", hinges_json(c.closed_reinforcements)},
	};
	if (!c.error.empty())
		j["error"] = c.error;
	return j;
}

Json to_json(DesignResult const & r)
{
	SystemMatrices const s = assemble_system(r.final_model);
	Json placements = Json::array();
	for (Placement const & p : r.placements)
		placements.push_back({{"interface_id", p.interface_id}, {"end", static_cast<int>(p.end)}, {"layers", p.layers},
			{"opening", p.opening}, {"lambda_before", p.lambda_before}});
	Json forces = Json::array();
	for (auto const & step : r.force_history)
		forces.push_back(forces_json(step));
	Json checks = Json::array();
	for (SettlementCheck const & c : r.settlement_checks)
		checks.push_back(to_json(c));
	return {
		{"placements", placements},
		{"lambda_history", vec_json(r.lambda_history)},
		{"force_history", forces},
		{"final_R", forces_json(r.final_forces)},
		{"final_static", to_json(r.final_static, s)},
		{"final_mechanism", to_json(r.final_mechanism, s)},
		{"settlement_checks", checks},
		{"target_met", r.target_met},
		{"termination", to_string(r.termination)},
		{"model", model_to_json(r.final_model)},
	};
}

Json error_json(ErrorCode code, std::string const & message) { return {{"error", to_string(code)}, {"message", message}}; }

SettlementScenario parse_settlement(std::string const & text)
{
	SettlementScenario sc;
	bool has_block = false;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
	{
		auto const eq = item.find('=');
		if (eq == std::string::npos)
			throw Error(ErrorCode::ParseError, "settlement entry '" + item + "' is not key=value");
		std::string const key = item.substr(0, eq);
		std::string const value = item.substr(eq + 1);
		try
		{
			if (key == "block")
			{
				sc.block_id = std::stoi(value);
				has_block = true;
			}
			else if (key == "ux")
				sc.u(0) = std::stod(value);
			else if (key == "uy")
				sc.u(1) = std::stod(value);
			else if (key == "phi")
				sc.u(2) = std::stod(value);
			else if (key == "lambda_a")
				sc.lambda_a = std::stod(value);
			else if (key == "name")
				sc.name = value;
			else
				throw Error(ErrorCode::ParseError, "unknown settlement key '" + key + "'");
		}
		catch (std::logic_error const &)
		{
			throw Error(ErrorCode::ParseError, "bad settlement value '" + item + "'");
		}
	}
	if (!has_block)
		throw Error(ErrorCode::ParseError, "settlement needs block=ID");
	if (sc.name.empty())
		sc.name = text;
	return sc;
}

}  // namespace blocklim
