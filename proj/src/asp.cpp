#include "ionc/asp.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <tuple>

namespace ionc {

namespace {

constexpr std::string_view kListing =
    "{edge(X,Y)} :- node(X), node(Y).\n"
    "\n"
    ":- edge(X,Y), X = Y.\n"
    ":- edge(X,Y), nedge(X,Y,T), varin(T,X), varin(T,Y).\n"
    ":- edge(X,Y), path(Y,X).\n"
    "\n"
    "path(Y,X) :- edge(Y,X).\n"
    "path(Y,X) :- edge(Y,Z), path(Z,X).\n"
    "\n"
    "directed(X,Y,T) :- edge(X,Y), varin(T,Y).\n"
    "directed(X,Y,T) :- edge(X,Z), directed(Z,Y,T), not varin(T,Z).\n"
    "\n"
    "causalconn(X,Y,T) :- directed(X,Y,T).\n"
    "causalconn(X,Y,T) :- directed(Z,X,T), directed(Z,Y,T), not varin(T,Z).\n"
    "bidirected(X,Y,T) :- causalconn(X,Y,T), not directed(X,Y,T).\n"
    "\n"
    ":- nedge(X,Y,T), causalconn(X,Y,T), varin(T,X), varin(T,Y).\n"
    ":- edge(X,Y,T), not directed(X,Y,T), varin(T,X), varin(T,Y).\n"
    "\n"
    "#show edge/2.\n";

constexpr std::string_view kAugmented =
    ":- bidirected(X,Y,T), directed(X,Y,T).\n"
    ":- bidirected(X,Y,T), not causalconn(X,Y,T).\n";

using Fact = std::tuple<std::size_t, NodeId, NodeId>;  // (T, X, Y)

void write_facts(std::ostringstream& out, std::string_view pred, std::vector<Fact> facts) {
  std::sort(facts.begin(), facts.end());
  for (const auto& [t, x, y] : facts) out << pred << '(' << x << ',' << y << ',' << t << ").\n";
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_index(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::string_view listing_rules() { return kListing; }
std::string_view augmented_rules() { return kAugmented; }

std::string emit_program(const Instance& inst, EmitMode mode) {
  std::vector<Fact> varin, edge, bidirected, nedge;
  for (std::size_t t = 0; t < inst.inputs().size(); ++t) {
    const InputGraph& g = inst.inputs()[t];
    for (NodeId x : g.vars()) {
      varin.emplace_back(t, x, 0);
      for (NodeId y : g.vars()) {
        if (x == y) continue;
        switch (g.label(x, y)) {
          case PairLabel::DirectedForward: edge.emplace_back(t, x, y); break;
          case PairLabel::Bidirected: bidirected.emplace_back(t, x, y); break;
          case PairLabel::Absent: nedge.emplace_back(t, x, y); break;
          case PairLabel::DirectedBackward: break;
        }
      }
    }
  }
  std::sort(varin.begin(), varin.end());

  std::ostringstream out;
  out << "#const n=" << inst.size() - 1 << ".\n";
  out << "node(0..n).\n";
  for (const auto& [t, x, unused] : varin) out << "varin(" << t << ',' << x << ").\n";
  write_facts(out, "edge", std::move(edge));
  write_facts(out, "bidirected", std::move(bidirected));
  write_facts(out, "nedge", std::move(nedge));
  out << kListing;
  if (mode == EmitMode::Augmented) out << kAugmented;
  return out.str();
}

SolutionSet parse_answer_sets(std::string_view text, std::size_t n) {
  if (n > kMaxNodes) throw RangeError("too many nodes");
  SolutionSet out;
  bool unsat = false;
  bool interrupted = false;
  bool partial = false;
  bool expect_model = false;
  std::size_t line_no = 0;

  auto parse_model = [&](std::string_view line) {
    std::vector<Row> adj(n, 0);
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos >= line.size()) break;
      auto end = line.find_first_of(" \t", pos);
      if (end == std::string_view::npos) end = line.size();
      const std::string_view atom = line.substr(pos, end - pos);
      pos = end;

      constexpr std::string_view head = "edge(";
      const auto comma = atom.find(',');
      std::size_t from = 0;
      std::size_t to = 0;
      if (!atom.starts_with(head) || !atom.ends_with(")") || comma == std::string_view::npos ||
          !parse_index(atom.substr(head.size(), comma - head.size()), from) ||
          !parse_index(atom.substr(comma + 1, atom.size() - comma - 2), to)) {
        throw ParseError(line_no, "unparseable atom '" + std::string(atom) + "'");
      }
      if (from >= n || to >= n) {
        throw RangeError("line " + std::to_string(line_no) + ": atom '" + std::string(atom) +
                         "' references a node outside 0.." + std::to_string(n - 1));
      }
      adj[from] |= bit(static_cast<NodeId>(to));
    }
    out.solutions.push_back(Dag::from_rows(adj));
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const std::string_view line = trim(raw);

    if (expect_model) {
      expect_model = false;
      parse_model(line);
      continue;
    }
    if (line.starts_with("Answer:")) {
      expect_model = true;
    } else if (line == "UNSATISFIABLE") {
      unsat = true;
    } else if (line == "UNKNOWN" || line == "INTERRUPTED") {
      interrupted = true;
    } else if (line.starts_with("Models") && line.ends_with("+")) {
      partial = true;
    }
    if (end == text.size()) break;
  }
  // An "Answer:" header on the last line announces the empty model.
  if (expect_model) out.solutions.emplace_back(n);

  out.canonicalize();
  if (unsat && out.solutions.empty()) {
    out.status = SolveStatus::Unsatisfiable;
  } else if (interrupted) {
    out.status = SolveStatus::TimedOut;
  } else if (partial) {
    out.status = SolveStatus::CappedAtLimit;
  } else {
    out.status = out.solutions.empty() ? SolveStatus::Unsatisfiable : SolveStatus::Complete;
  }
  return out;
}

}  // namespace ionc
