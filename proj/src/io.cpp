#include "ionc/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ionc {

using json = nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be a list of names");
  std::vector<std::string> out;
  for (const json& e : j) {
    if (!e.is_string()) throw FormatError(std::string(what) + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Universe parse_universe(const json& doc) {
  try {
    return Universe(string_list(field(doc, "variables"), "variables"));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
}

NodeId lookup(const Universe& u, const json& name) {
  if (!name.is_string()) throw FormatError("variable references must be names");
  const auto s = name.get<std::string>();
  if (!u.contains(s)) throw FormatError("unknown variable '" + s + "'");
  return u.index_of(s);
}

std::pair<NodeId, NodeId> name_pair(const Universe& u, const json& p) {
  if (!p.is_array() || p.size() != 2) throw FormatError("edges must be [from, to] pairs");
  return {lookup(u, p[0]), lookup(u, p[1])};
}

json edge_list(const Universe& u, const Dag& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({u.name(e.from), u.name(e.to)});
  return edges;
}

Dag parse_edges(const Universe& u, const json& edges) {
  if (!edges.is_array()) throw FormatError("edge list must be a list");
  Dag g(u.size());
  for (const json& p : edges) {
    const auto [a, b] = name_pair(u, p);
    try {
      g.add_edge(a, b);
    } catch (const MalformedGraph& e) {
      throw FormatError(std::string("invalid graph: ") + e.what());
    }
  }
  return g;
}

}  // namespace

static Instance parse_instance_impl(std::string_view text) {
  const json doc = parse_json(text);
  const Universe universe = parse_universe(doc);
  const json& inputs = field(doc, "inputs");
  if (!inputs.is_array()) throw FormatError("inputs must be a list");

  std::vector<InputGraph> graphs;
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    const json& in = inputs[t];
    const std::string where = "input " + std::to_string(t) + ": ";
    VarSet vars;
    for (const json& name : field(in, "vars")) {
      const NodeId v = lookup(universe, name);
      if (vars.contains(v)) throw FormatError(where + "duplicate variable '" + universe.name(v) + "'");
      vars.insert(v);
    }
    InputGraph g(universe.size(), vars);
    std::vector<bool> seen(universe.size() * universe.size(), false);
    auto assign = [&](const json& p, PairLabel l, const char* kind) {
      const auto [a, b] = name_pair(universe, p);
      if (a == b) throw FormatError(where + "self-pair on '" + universe.name(a) + "'");
      if (!vars.contains(a) || !vars.contains(b)) {
        throw FormatError(where + kind + " pair " + universe.name(a) + "," + universe.name(b) +
                          " is not co-measured in this input");
      }
      const std::size_t key = std::min(a, b) * universe.size() + std::max(a, b);
      if (seen[key]) {
        throw FormatError(where + "pair " + universe.name(a) + "," + universe.name(b) +
                          " is listed more than once");
      }
      seen[key] = true;
      g.set_label(a, b, l);
    };
    if (in.contains("directed")) {
      for (const json& p : in.at("directed")) assign(p, PairLabel::DirectedForward, "directed");
    }
    if (in.contains("bidirected")) {
      for (const json& p : in.at("bidirected")) assign(p, PairLabel::Bidirected, "bidirected");
    }
    graphs.push_back(std::move(g));
  }
  try {
    return Instance(universe, std::move(graphs));
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
}

Instance parse_instance(std::string_view text) {
  try {
    return parse_instance_impl(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
}

std::string format_instance(const Instance& inst) {
  const Universe& u = inst.universe();
  json doc;
  doc["variables"] = u.names();
  doc["inputs"] = json::array();
  for (const InputGraph& g : inst.inputs()) {
    json in;
    in["vars"] = json::array();
    in["directed"] = json::array();
    in["bidirected"] = json::array();
    for (NodeId x : g.vars()) {
      in["vars"].push_back(u.name(x));
      for (NodeId y : g.vars()) {
        if (x == y) continue;
        const PairLabel l = g.label(x, y);
        if (l == PairLabel::DirectedForward) in["directed"].push_back({u.name(x), u.name(y)});
        if (l == PairLabel::Bidirected && x < y) in["bidirected"].push_back({u.name(x), u.name(y)});
      }
    }
    doc["inputs"].push_back(std::move(in));
  }
  return doc.dump(2) + "\n";
}

static SolutionsDocument parse_solutions_impl(std::string_view text) {
  const json doc = parse_json(text);
  SolutionsDocument out{parse_universe(doc), {}};
  const json& status = field(doc, "status");
  if (!status.is_string()) throw FormatError("status must be a string");
  try {
    out.set.status = parse_status(status.get<std::string>());
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
  if (doc.contains("elapsed_s")) out.set.elapsed_s = doc.at("elapsed_s").get<double>();
  if (doc.contains("explored")) out.set.explored = doc.at("explored").get<std::uint64_t>();
  for (const json& sol : field(doc, "solutions")) {
    out.set.solutions.push_back(parse_edges(out.universe, sol));
  }
  out.set.canonicalize();
  return out;
}

SolutionsDocument parse_solutions(std::string_view text) {
  try {
    return parse_solutions_impl(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
}

std::string format_solutions(const Universe& universe, const SolutionSet& set) {
  // Streamed by hand: solution sets can hold millions of graphs.
  std::vector<std::string> quoted;
  for (const auto& name : universe.names()) quoted.push_back(json(name).dump());
  std::string out;
  out += "{\n  \"variables\": [";
  for (std::size_t i = 0; i < quoted.size(); ++i) out += (i ? ", " : "") + quoted[i];
  out += "],\n  \"status\": " + json(std::string(to_string(set.status))).dump();
  out += ",\n  \"elapsed_s\": " + json(set.elapsed_s).dump();
  out += ",\n  \"explored\": " + std::to_string(set.explored);
  out += ",\n  \"solutions\": [";
  for (std::size_t k = 0; k < set.solutions.size(); ++k) {
    out += k ? ",\n    [" : "\n    [";
    bool first = true;
    for (const Edge& e : set.solutions[k].edges()) {
      out += first ? "[" : ", [";
      out += quoted[e.from] + ", " + quoted[e.to] + "]";
      first = false;
    }
    out += "]";
  }
  out += set.solutions.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

static GraphDocument parse_graph_impl(std::string_view text) {
  const json doc = parse_json(text);
  if (doc.is_object() && doc.contains("solutions")) {
    SolutionsDocument sols = parse_solutions(text);
    if (sols.set.solutions.size() != 1) {
      throw FormatError("a solutions document used as a graph must hold exactly one solution");
    }
    return {std::move(sols.universe), std::move(sols.set.solutions.front())};
  }
  Universe u = parse_universe(doc);
  Dag g = parse_edges(u, field(doc, "edges"));
  return {std::move(u), std::move(g)};
}

GraphDocument parse_graph(std::string_view text) {
  try {
    return parse_graph_impl(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
}

std::string format_graph(const Universe& universe, const Dag& g) {
  json doc;
  doc["variables"] = universe.names();
  doc["edges"] = edge_list(universe, g);
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace ionc
