#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>

#include <nlohmann/json.hpp>

#include "svg.hpp"
#include "tropmech/arrangement.hpp"
#include "tropmech/errors.hpp"
#include "tropmech/mechanism.hpp"

namespace tropmech::cli {

namespace {

using Json = nlohmann::json;
using OutJson = nlohmann::ordered_json;

// ---- request parsing -------------------------------------------------------

Rational number(const Json& v, const std::string& where) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational(v.get<std::uint64_t>());
    return Rational(v.get<std::int64_t>());
  }
  if (v.is_number_float()) {
    throw UsageError(where + ": non-integer JSON number; write it as a string such as \"3/2\" or \"0.25\"");
  }
  throw UsageError(where + ": expected a number");
}

std::vector<Rational> vector_of(const Json& v, const std::string& where) {
  if (!v.is_array()) throw UsageError(where + ": expected an array");
  std::vector<Rational> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t count_of(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw UsageError(where + ": expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

struct Request {
  Json doc;
  std::size_t m = 0;
  std::vector<Point> entries;

  TypeSpace types() const { return TypeSpace(m, entries); }

  const Json& field(const char* name) const {
    if (!doc.contains(name)) throw UsageError(std::string("missing field \"") + name + "\"");
    return doc.at(name);
  }

  OutcomeFunction mechanism() const {
    const Json& v = field("mechanism");
    if (!v.is_array()) throw UsageError("mechanism: expected an array of outcomes");
    if (v.size() != entries.size()) {
      throw UsageError("mechanism has " + std::to_string(v.size()) + " outcomes, type_space has " +
                       std::to_string(entries.size()) + " entries");
    }
    std::vector<std::size_t> assignment;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::size_t o = count_of(v[i], "mechanism[" + std::to_string(i) + "]");
      if (o < 1 || o > m) throw UsageError("mechanism[" + std::to_string(i) + "]: outcome out of range 1.." +
                                           std::to_string(m));
      assignment.push_back(o - 1);
    }
    return OutcomeFunction(std::move(assignment), m);
  }

  SquareMatrix matrix() const {
    const Json& v = field("matrix");
    if (!v.is_array() || v.size() != m) throw UsageError("matrix: expected " + std::to_string(m) + " rows");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < m; ++i) {
      rows.push_back(vector_of(v[i], "matrix[" + std::to_string(i) + "]"));
      if (rows.back().size() != m) throw UsageError("matrix row " + std::to_string(i) + " has wrong length");
    }
    return SquareMatrix::from_rows(rows);
  }

  std::optional<Point> payment() const {
    if (!doc.contains("payment")) return std::nullopt;
    auto coords = vector_of(doc.at("payment"), "payment");
    if (coords.size() != m) throw UsageError("payment has " + std::to_string(coords.size()) +
                                             " coordinates, expected " + std::to_string(m));
    return Point(std::move(coords));
  }
};

Request parse_request(const std::string& text) {
  Request req;
  req.doc = Json::parse(text);
  if (!req.doc.is_object()) throw UsageError("request must be a JSON object");
  const Json& ts = req.field("type_space");
  if (!ts.is_array()) throw UsageError("type_space: expected an array of coordinate vectors");
  std::vector<std::vector<Rational>> raw;
  for (std::size_t i = 0; i < ts.size(); ++i) raw.push_back(vector_of(ts[i], "type_space[" + std::to_string(i) + "]"));

  if (req.doc.contains("m")) {
    req.m = count_of(req.doc.at("m"), "m");
  } else if (!raw.empty()) {
    req.m = raw.front().size();
  } else {
    throw UsageError("missing field \"m\" (required when type_space is empty)");
  }
  if (req.m < 2) throw UsageError("m must be at least 2");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != req.m) {
      throw UsageError("type_space[" + std::to_string(i) + "] has " + std::to_string(raw[i].size()) +
                       " coordinates, expected " + std::to_string(req.m));
    }
    req.entries.emplace_back(std::move(raw[i]));
  }
  return req;
}

// ---- output helpers --------------------------------------------------------

OutJson vec_json(std::span<const Rational> v) {
  OutJson out = OutJson::array();
  for (const Rational& x : v) out.push_back(x.str());
  return out;
}

OutJson matrix_json(const SquareMatrix& a) {
  OutJson out = OutJson::array();
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(vec_json(a.entries().subspan(i * a.size(), a.size())));
  return out;
}

OutJson one_based(const std::vector<std::size_t>& v) {
  OutJson out = OutJson::array();
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

std::string cycle_text(const std::vector<std::size_t>& cycle) {
  std::string s;
  for (std::size_t v : cycle) s += std::to_string(v + 1) + " -> ";
  return s + (cycle.empty() ? std::string() : std::to_string(cycle.front() + 1));
}

Result json_result(const OutJson& j, int code = kOk, std::string err = {}) {
  return {code, j.dump(2) + "\n", std::move(err)};
}

// ---- commands --------------------------------------------------------------

Result ic_check(const Request& req, const Options&) {
  const TypeSpace types = req.types();
  const OutcomeFunction g = req.mechanism();
  const SquareMatrix l = allocation_matrix(types, g);
  const Rational lambda = min_cycle_mean(l);
  OutJson j;
  j["ic"] = lambda.is_zero();
  j["eigenvalue"] = lambda.str();
  j["weakly_monotone"] = is_weakly_monotone(l);
  if (!lambda.is_zero()) j["negative_cycle"] = one_based(find_negative_cycle(l));
  j["allocation_matrix"] = matrix_json(l);
  return json_result(j);
}

Result payments(const Request& req, const Options&) {
  const Polytrope p = ic_payments(req.types(), req.mechanism());
  OutJson j;
  j["closure"] = matrix_json(p.closure());
  j["dimension"] = p.dimension();
  j["interior_point"] = vec_json(p.interior_point().coords());
  OutJson vertices = OutJson::array();
  for (const Point& v : p.tropical_vertices()) vertices.push_back(vec_json(v.coords()));
  j["tropical_vertices"] = vertices;
  return json_result(j);
}

Result enumerate(const Request& req, const Options& opt) {
  const TypeSpace types = req.types();
  const BasicCellSet set = enumerate_ic_outcomes(types, opt.budget);
  const bool generic = is_generic(types);
  if (generic) verify_generic_cells(types, set);
  OutJson j;
  j["d"] = set.ic_count;
  j["bound"] = binomial(types.size() - 1, types.outcomes() - 1);
  j["generic"] = generic;
  j["cells"] = OutJson::array();
  for (const BasicCell& cell : set.cells) {
    OutJson fs = OutJson::array();
    for (const OutcomeFunction& g : cell.outcome_functions) fs.push_back(one_based(g.assignment()));
    j["cells"].push_back({{"closure", matrix_json(cell.payments.closure())},
                          {"dimension", cell.payments.dimension()},
                          {"outcome_functions", fs}});
  }
  return json_result(j);
}

Result re_check(const Request& req, const Options& opt) {
  const ReVerdict v = is_re_type_space(req.types(), opt.budget);
  OutJson j;
  j["re"] = v.revenue_equivalent;
  if (v.failure) {
    OutJson comps = OutJson::array();
    for (const auto& c : v.failure->components) comps.push_back(one_based(c));
    j["certificate"] = {{"cell", v.failure->cell_index + 1},
                        {"closure", matrix_json(v.failure->cell.closure())},
                        {"point", vec_json(v.failure->point.coords())},
                        {"components", comps}};
  }
  return json_result(j);
}

Result realize_cmd(const Request& req, const Options&) {
  const TypeSpace types = req.types();
  const SquareMatrix l = req.matrix();
  const SeparationReport sep = separates(l, types);
  const auto g = sep.separates ? try_realize(l, types) : std::nullopt;
  OutJson j;
  j["realizable"] = g.has_value();
  j["separates"] = sep.separates;
  if (!sep.separates) j["reason"] = sep.reason;
  if (g) {
    j["mechanism"] = one_based(g->assignment());
    return json_result(j);
  }
  return json_result(j, kSemantic,
                     sep.separates ? "no outcome function realizes the matrix"
                                   : "matrix does not separate the type space: " + sep.reason);
}

Result perturb(const Request& req, const Options& opt) {
  std::string eps_text;
  if (opt.epsilon) {
    eps_text = *opt.epsilon;
  } else if (req.doc.contains("epsilon")) {
    eps_text = number(req.doc.at("epsilon"), "epsilon").str();
  } else {
    throw UsageError("missing epsilon (pass --epsilon or an \"epsilon\" field)");
  }
  const Perturbation p = generic_perturbation(req.types(), Rational::parse(eps_text));
  OutJson j;
  j["type_space"] = OutJson::array();
  for (const Point& t : p.types.entries()) j["type_space"].push_back(vec_json(t.coords()));
  j["generic"] = is_generic(p.types);
  j["max_displacement"] = p.max_displacement.str();
  j["scale"] = p.scale.str();
  return json_result(j);
}

Result render(const Request& req, const Options& opt) {
  if (req.m != 3) throw DimensionUnsupportedError("render supports m = 3 only, got m = " + std::to_string(req.m));
  const TypeSpace types = req.types();
  std::vector<Polytrope> cells;
  if (types.size() >= types.outcomes()) cells = basic_cells(types, opt.budget);
  const auto scene = svg::build_scene(types, cells, req.payment());
  if (opt.format == Format::Json) return json_result(svg::to_json(scene));
  return {kOk, svg::to_svg(scene), {}};
}

using Handler = std::function<Result(const Request&, const Options&)>;

const std::map<std::string, Handler, std::less<>>& handlers() {
  static const std::map<std::string, Handler, std::less<>> table{
      {"ic-check", ic_check}, {"payments", payments}, {"enumerate", enumerate}, {"re-check", re_check},
      {"realize", realize_cmd}, {"perturb", perturb},   {"render", render},
  };
  return table;
}

Result failure(int code, const std::string& message) { return {code, {}, message}; }

}  // namespace

std::uint64_t resolve_budget(const std::optional<std::string>& flag, const char* env) {
  auto parse = [](std::string_view text, const char* source) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) {
      throw UsageError(std::string(source) + ": not a nonnegative integer: \"" + std::string(text) + "\"");
    }
    return v;
  };
  if (flag) return parse(*flag, "--budget");
  if (env != nullptr && *env != '\0') return parse(env, "TROPMECH_BUDGET");
  return kDefaultEnumerationBudget;
}

bool is_command(const std::string& name) { return handlers().contains(name); }

Result run(const Options& options) {
  try {
    const auto it = handlers().find(options.command);
    if (it == handlers().end()) return failure(kMalformed, "unknown command \"" + options.command + "\"");
    if (options.format == Format::Svg && options.command != "render") {
      return failure(kMalformed, "--format svg applies to render only");
    }
    const Request req = parse_request(options.input);
    return it->second(req, options);
  } catch (const Json::exception& e) {
    return failure(kMalformed, std::string("malformed JSON: ") + e.what());
  } catch (const UsageError& e) {
    return failure(kMalformed, e.what());
  } catch (const DimensionUnsupportedError& e) {
    return failure(kMalformed, e.what());
  } catch (const NotIcError& e) {
    return failure(kSemantic, "outcome function is not incentive compatible: negative cycle " + cycle_text(e.cycle()));
  } catch (const NegativeCycleError& e) {
    return failure(kSemantic, std::string(e.what()));
  } catch (const NotRealizableError& e) {
    return failure(kSemantic, e.what());
  } catch (const PerturbationFailedError& e) {
    return failure(kSemantic, e.what());
  } catch (const BudgetExceededError& e) {
    return failure(kBudget, e.what());
  } catch (const CrossCheckViolation& e) {
    return failure(kCrossCheck, std::string("internal cross-check violation: ") + e.what());
  } catch (const std::exception& e) {
    return failure(kUnexpected, e.what());
  }
}

}  // namespace tropmech::cli
