#include "upmu/feeder.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace upmu {

namespace {

std::string format_message(const std::string& message, int line, int column) {
  if (line <= 0) return message;
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

struct Token {
  std::string_view text;
  int column = 0;
};

struct SourceLine {
  std::vector<Token> tokens;
  int number = 0;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
           line[i] != '#') {
      ++i;
    }
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

// Cursor over the tokens of one line; every failure carries the position of
// the offending token (or the end of the line when a token is missing).
class LineReader {
 public:
  explicit LineReader(const SourceLine& line) : line_(line) {}

  bool done() const { return pos_ >= line_.tokens.size(); }

  const Token& next(std::string_view expected) {
    if (done()) fail("expected " + std::string(expected));
    return line_.tokens[pos_++];
  }

  int positive_int(std::string_view what) {
    const Token& tok = next(what);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || value <= 0) {
      fail_at(tok, std::string(what) + " must be a positive integer, got '" +
                       std::string(tok.text) + "'");
    }
    return value;
  }

  PhaseSet phase_set(std::string_view what) {
    const Token& tok = next(what);
    auto set = PhaseSet::parse(tok.text);
    if (!set) {
      fail_at(tok, "invalid phase set '" + std::string(tok.text) + "' for " + std::string(what));
    }
    return *set;
  }

  void keyword(std::string_view word) {
    const Token& tok = next("'" + std::string(word) + "'");
    if (tok.text != word) {
      fail_at(tok, "expected '" + std::string(word) + "', got '" + std::string(tok.text) + "'");
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    int column = 1;
    if (!line_.tokens.empty()) {
      const Token& last = line_.tokens.back();
      column = last.column + static_cast<int>(last.text.size());
    }
    throw FeederError(message, line_.number, column);
  }

  [[noreturn]] void fail_at(const Token& tok, const std::string& message) const {
    throw FeederError(message, line_.number, tok.column);
  }

 private:
  const SourceLine& line_;
  std::size_t pos_ = 0;
};

struct PendingEdge {
  int id_a = 0;
  int id_b = 0;
  PhaseSet phases;
  PhaseSet regulator;
  PhaseSet distload;
  std::vector<std::pair<int, PhaseSet>> switches;
  int line = 0;
  int column_a = 0;
  int column_b = 0;
};

FeederNode parse_node(LineReader& in, std::set<int>& seen, const Token& head, int line) {
  FeederNode node;
  node.id = in.positive_int("node id");
  if (!seen.insert(node.id).second) {
    throw FeederError("duplicate node id " + std::to_string(node.id), line, head.column);
  }
  in.keyword("phases");
  node.phases = in.phase_set("phases");
  bool have_load = false;
  bool have_zip = false;
  bool have_usm = false;
  while (!in.done()) {
    const Token& opt = in.next("option");
    auto take = [&](bool& flag, PhaseSet& target) {
      if (flag) in.fail_at(opt, "option '" + std::string(opt.text) + "' given twice");
      flag = true;
      target = in.phase_set(opt.text);
      if (!target.is_subset_of(node.phases)) {
        in.fail_at(opt, "phase not present at node " + std::to_string(node.id) + " in '" +
                            std::string(opt.text) + " " + target.to_string() + "'");
      }
    };
    if (opt.text == "load") {
      take(have_load, node.load);
    } else if (opt.text == "zip") {
      take(have_zip, node.zip);
    } else if (opt.text == "usm") {
      take(have_usm, node.usm);
    } else {
      in.fail_at(opt, "unknown node option '" + std::string(opt.text) + "'");
    }
  }
  if (!(node.load & node.zip).empty()) {
    throw FeederError("phase flagged both load and zip at node " + std::to_string(node.id), line,
                      head.column);
  }
  // Unflagged phases carry a load.
  node.load = node.phases - node.zip;
  return node;
}

PendingEdge parse_edge(LineReader& in, int line) {
  PendingEdge e;
  e.line = line;
  e.id_a = in.positive_int("first node id");
  e.id_b = in.positive_int("second node id");
  in.keyword("phases");
  e.phases = in.phase_set("phases");
  bool have_reg = false;
  bool have_dl = false;
  while (!in.done()) {
    const Token& opt = in.next("option");
    auto subset = [&](std::string_view what) {
      PhaseSet s = in.phase_set(what);
      if (!s.is_subset_of(e.phases)) {
        in.fail_at(opt, "'" + std::string(what) + " " + s.to_string() +
                            "' is not a subset of the edge phases " + e.phases.to_string());
      }
      return s;
    };
    if (opt.text == "regulator") {
      if (have_reg) in.fail_at(opt, "option 'regulator' given twice");
      have_reg = true;
      e.regulator = subset("regulator");
    } else if (opt.text == "distload") {
      if (have_dl) in.fail_at(opt, "option 'distload' given twice");
      have_dl = true;
      e.distload = subset("distload");
    } else if (opt.text == "switch") {
      int sid = in.positive_int("switch id");
      PhaseSet s = subset("switch");
      for (const auto& [other, phases] : e.switches) {
        (void)other;
        if (!(phases & s).empty()) in.fail_at(opt, "phase carries more than one switch");
      }
      e.switches.emplace_back(sid, s);
    } else {
      in.fail_at(opt, "unknown edge option '" + std::string(opt.text) + "'");
    }
  }
  if (!(e.regulator & e.distload).empty()) {
    throw FeederError("phase marked both regulator and distload", line, 1);
  }
  return e;
}

}  // namespace

FeederError::FeederError(const std::string& message, int line, int column)
    : std::runtime_error(format_message(message, line, column)),
      line_(line),
      column_(column),
      detail_(message) {}

bool FeederEdge::is_switched() const {
  return std::any_of(attributes.begin(), attributes.end(),
                     [](const PhaseAttributes& a) { return a.switch_id.has_value(); });
}

FeederModel::FeederModel(std::vector<FeederNode> nodes, std::vector<FeederEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  if (nodes_.empty()) throw FeederError("feeder has no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const FeederNode& n = nodes_[i];
    if (n.id <= 0) throw FeederError("node ids must be positive");
    if (!index_by_id_.emplace(n.id, static_cast<int>(i) + 1).second) {
      throw FeederError("duplicate node id " + std::to_string(n.id));
    }
    if (n.phases.empty()) throw FeederError("node " + std::to_string(n.id) + " has no phases");
    if (!(n.load | n.zip).is_subset_of(n.phases) || !n.usm.is_subset_of(n.phases)) {
      throw FeederError("phase not present at node " + std::to_string(n.id));
    }
    if (!(n.load & n.zip).empty()) {
      throw FeederError("phase flagged both load and zip at node " + std::to_string(n.id));
    }
  }

  std::set<int> switches;
  for (FeederEdge& e : edges_) {
    if (e.low > e.high) std::swap(e.low, e.high);
    if (e.low < 1 || e.high > node_count()) throw FeederError("edge references unknown node");
    if (e.low == e.high) {
      throw FeederError("edge joins node " + std::to_string(nodes_[e.low - 1].id) + " to itself");
    }
    if (e.phases.empty()) throw FeederError("edge has no phases");
    const FeederNode& a = nodes_[e.low - 1];
    const FeederNode& b = nodes_[e.high - 1];
    if (!e.phases.is_subset_of(a.phases) || !e.phases.is_subset_of(b.phases)) {
      throw FeederError("phase not present at endpoint of edge " + std::to_string(a.id) + "-" +
                        std::to_string(b.id));
    }
    for (Phase p : kAllPhases) {
      const PhaseAttributes& attr = e.at(p);
      if (!e.phases.contains(p) && (attr.kind != EdgeKind::normal || attr.switch_id)) {
        throw FeederError("attribute on a phase absent from edge " + std::to_string(a.id) + "-" +
                          std::to_string(b.id));
      }
      if (attr.switch_id) {
        if (*attr.switch_id <= 0) throw FeederError("switch ids must be positive");
        switches.insert(*attr.switch_id);
      }
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const FeederEdge& x, const FeederEdge& y) {
    return std::pair(x.low, x.high) < std::pair(y.low, y.high);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].low == edges_[i - 1].low && edges_[i].high == edges_[i - 1].high) {
      throw FeederError("duplicate edge " + std::to_string(nodes_[edges_[i].low - 1].id) + "-" +
                        std::to_string(nodes_[edges_[i].high - 1].id));
    }
  }
  switch_ids_.assign(switches.begin(), switches.end());
}

std::optional<int> FeederModel::index_of(int declared_id) const {
  auto it = index_by_id_.find(declared_id);
  if (it == index_by_id_.end()) return std::nullopt;
  return it->second;
}

int FeederModel::phase_count() const {
  int total = 0;
  for (const FeederNode& n : nodes_) total += n.phases.size();
  return total;
}

std::vector<PhaseId> FeederModel::phases() const {
  std::vector<PhaseId> out;
  out.reserve(static_cast<std::size_t>(phase_count()));
  for (int i = 1; i <= node_count(); ++i) {
    for (Phase p : node(i).phases.members()) out.push_back({i, p});
  }
  return out;
}

std::optional<std::size_t> FeederModel::find_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(a, b),
                             [](const FeederEdge& e, const std::pair<int, int>& key) {
                               return std::pair(e.low, e.high) < key;
                             });
  if (it == edges_.end() || it->low != a || it->high != b) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

FeederModel parse_feeder(std::string_view text) {
  std::vector<SourceLine> lines;
  {
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      auto tokens = tokenize(text.substr(start, end - start));
      if (!tokens.empty()) lines.push_back({std::move(tokens), number});
      start = end + 1;
    }
  }

  std::vector<FeederNode> nodes;
  std::vector<PendingEdge> pending;
  std::set<int> seen;
  for (const SourceLine& line : lines) {
    LineReader in(line);
    const Token& head = in.next("statement");
    if (head.text == "node") {
      nodes.push_back(parse_node(in, seen, head, line.number));
    } else if (head.text == "edge") {
      pending.push_back(parse_edge(in, line.number));
      pending.back().column_a = line.tokens[1].column;
      pending.back().column_b = line.tokens[2].column;
    } else {
      in.fail_at(head, "unknown statement '" + std::string(head.text) + "'");
    }
  }
  if (nodes.empty()) throw FeederError("feeder has no nodes");

  std::map<int, int> index_by_id;
  for (std::size_t i = 0; i < nodes.size(); ++i) index_by_id[nodes[i].id] = static_cast<int>(i) + 1;

  std::vector<FeederEdge> edges;
  std::set<std::pair<int, int>> pairs;
  for (const PendingEdge& p : pending) {
    auto ia = index_by_id.find(p.id_a);
    if (ia == index_by_id.end()) {
      throw FeederError("undeclared node " + std::to_string(p.id_a), p.line, p.column_a);
    }
    auto ib = index_by_id.find(p.id_b);
    if (ib == index_by_id.end()) {
      throw FeederError("undeclared node " + std::to_string(p.id_b), p.line, p.column_b);
    }
    if (ia->second == ib->second) {
      throw FeederError("edge joins node " + std::to_string(p.id_a) + " to itself", p.line,
                        p.column_b);
    }
    const FeederNode& a = nodes[static_cast<std::size_t>(ia->second - 1)];
    const FeederNode& b = nodes[static_cast<std::size_t>(ib->second - 1)];
    for (const FeederNode* end : {&a, &b}) {
      if (!p.phases.is_subset_of(end->phases)) {
        PhaseSet missing = p.phases - end->phases;
        throw FeederError("phase not present at endpoint: phase " + missing.to_string() +
                              " missing at node " + std::to_string(end->id),
                          p.line, end == &a ? p.column_a : p.column_b);
      }
    }
    FeederEdge e;
    e.low = std::min(ia->second, ib->second);
    e.high = std::max(ia->second, ib->second);
    if (!pairs.insert({e.low, e.high}).second) {
      throw FeederError("duplicate edge " + std::to_string(p.id_a) + "-" + std::to_string(p.id_b),
                        p.line, 1);
    }
    e.phases = p.phases;
    for (Phase ph : kAllPhases) {
      if (p.regulator.contains(ph)) e.at(ph).kind = EdgeKind::regulator;
      if (p.distload.contains(ph)) e.at(ph).kind = EdgeKind::distributed_load;
    }
    for (const auto& [sid, set] : p.switches) {
      for (Phase ph : set.members()) e.at(ph).switch_id = sid;
    }
    edges.push_back(e);
  }
  return FeederModel(std::move(nodes), std::move(edges));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FeederModel load_feeder(const std::filesystem::path& path) {
  return parse_feeder(read_text_file(path));
}

}  // namespace upmu
