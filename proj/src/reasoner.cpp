#include "timelink/reasoner.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "timelink/common.hpp"

namespace timelink {

int TemporalGraph::add_node(const std::string& id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  int idx = static_cast<int>(nodes_.size());
  nodes_.push_back(id);
  index_.emplace(id, idx);
  return idx;
}

std::optional<int> TemporalGraph::node_index(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void TemporalGraph::constrain(int a, int b, AllenSet r) {
  if (a == b) return;  // the diagonal is fixed at {=}
  AllenSet stored = a < b ? r : converse(r);
  int i = std::min(a, b), j = std::max(a, b);
  auto [it, fresh] = rel_.try_emplace(key(i, j), AllenSet::full());
  AllenSet next = it->second & stored;
  if (fresh) order_.emplace_back(a, b);
  it->second = next;
}

void TemporalGraph::constrain(const std::string& a, const std::string& b,
                              AllenSet r) {
  constrain(add_node(a), add_node(b), r);
}

void TemporalGraph::mark_deduced(int a, int b) {
  deduced_[key(std::min(a, b), std::max(a, b))] = true;
}

bool TemporalGraph::is_deduced(int a, int b) const {
  auto it = deduced_.find(key(std::min(a, b), std::max(a, b)));
  return it != deduced_.end() && it->second;
}

AllenSet TemporalGraph::relation(int a, int b) const {
  if (a == b) return AllenSet::of(AllenBase::Equals);
  auto it = rel_.find(key(std::min(a, b), std::max(a, b)));
  if (it == rel_.end()) return AllenSet::full();
  return a < b ? it->second : converse(it->second);
}

AllenSet TemporalGraph::relation(const std::string& a,
                                 const std::string& b) const {
  auto ia = node_index(a), ib = node_index(b);
  if (!ia || !ib) {
    throw Error(Error::Kind::Reference,
                "unknown graph node '" + (!ia ? a : b) + "'");
  }
  return relation(*ia, *ib);
}

bool TemporalGraph::constrained(int a, int b) const {
  if (a == b) return false;
  return rel_.count(key(std::min(a, b), std::max(a, b))) != 0;
}

std::vector<TemporalGraph::Edge> TemporalGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(order_.size());
  for (auto [a, b] : order_) out.push_back({a, b, relation(a, b)});
  return out;
}

std::string TemporalGraph::to_edge_list() const {
  std::string out;
  for (const Edge& e : edges()) {
    out += nodes_[e.i];
    out += '\t';
    out += nodes_[e.j];
    out += '\t';
    out += e.rel.to_string();
    out += '\n';
  }
  return out;
}

ClosureResult path_consistency(const TemporalGraph& g) {
  const int n = static_cast<int>(g.nodes().size());
  ClosureResult result;
  // Dense matrix of the network; both directions kept in sync.
  std::vector<AllenSet> m(static_cast<size_t>(n) * n, AllenSet::full());
  auto at = [&m, n](int i, int j) -> AllenSet& {
    return m[static_cast<size_t>(i) * n + j];
  };
  for (int i = 0; i < n; ++i) at(i, i) = AllenSet::of(AllenBase::Equals);

  std::deque<std::pair<int, int>> queue;
  std::vector<char> queued(static_cast<size_t>(n) * n, 0);
  auto push = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    if (queued[static_cast<size_t>(i) * n + j]) return;
    queued[static_cast<size_t>(i) * n + j] = 1;
    queue.emplace_back(i, j);
  };

  for (const auto& e : g.edges()) {
    int i = std::min(e.i, e.j), j = std::max(e.i, e.j);
    AllenSet r = g.relation(i, j);
    at(i, j) = r;
    at(j, i) = converse(r);
    if (r.empty()) {
      result.consistent = false;
      result.culprit = EdgeTriple{g.nodes()[i], g.nodes()[i], g.nodes()[j]};
      return result;
    }
    push(i, j);
  }

  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    queued[static_cast<size_t>(i) * n + j] = 0;
    for (int k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      // (i,k) through j
      AllenSet t = at(i, k) & compose(at(i, j), at(j, k));
      if (t != at(i, k)) {
        if (t.empty()) {
          result.consistent = false;
          result.culprit =
              EdgeTriple{g.nodes()[i], g.nodes()[j], g.nodes()[k]};
          return result;
        }
        at(i, k) = t;
        at(k, i) = converse(t);
        push(i, k);
      }
      // (k,j) through i
      t = at(k, j) & compose(at(k, i), at(i, j));
      if (t != at(k, j)) {
        if (t.empty()) {
          result.consistent = false;
          result.culprit =
              EdgeTriple{g.nodes()[k], g.nodes()[i], g.nodes()[j]};
          return result;
        }
        at(k, j) = t;
        at(j, k) = converse(t);
        push(k, j);
      }
    }
  }

  result.consistent = true;
  for (const std::string& id : g.nodes()) result.closure.add_node(id);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (at(i, j).is_full()) continue;
      result.closure.constrain(i, j, at(i, j));
      if (!g.constrained(i, j)) result.closure.mark_deduced(i, j);
    }
  }
  return result;
}

TemporalGraph graph_of(const Document& doc, const MappingProfile& profile) {
  TemporalGraph g;
  for (const std::string& id : doc.entity_node_ids()) g.add_node(id);
  for (const TLink& t : doc.tlinks) {
    g.constrain(t.source, t.target, profile.map(t.rel));
  }
  return g;
}

CheckResult check_document(const Document& doc,
                           const std::vector<MappingProfile>& profiles) {
  CheckResult out;
  for (const MappingProfile& p : profiles) {
    ClosureResult r = path_consistency(graph_of(doc, p));
    if (r.consistent) {
      out.consistent = true;
      out.profile_used = p.name;
      out.culprit.reset();
      return out;
    }
    out.culprit = r.culprit;
  }
  out.consistent = false;
  return out;
}

std::vector<TLink> deduce(const Document& doc, const MappingProfile& profile) {
  TemporalGraph g = graph_of(doc, profile);
  ClosureResult r = path_consistency(g);
  if (!r.consistent) {
    throw Error(Error::Kind::Consistency,
                "deduce requires a consistent document (doc '" + doc.doc_id +
                    "')");
  }
  // Pairs already annotated in either direction are never re-emitted.
  std::vector<char> annotated(g.nodes().size() * g.nodes().size(), 0);
  const int n = static_cast<int>(g.nodes().size());
  for (const TLink& t : doc.tlinks) {
    auto i = g.node_index(t.source), j = g.node_index(t.target);
    if (!i || !j) continue;
    annotated[static_cast<size_t>(std::min(*i, *j)) * n + std::max(*i, *j)] = 1;
  }
  std::vector<TLink> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (annotated[static_cast<size_t>(i) * n + j]) continue;
      AllenSet rel = r.closure.relation(i, j);
      if (rel.is_full()) continue;
      std::optional<RelType> label = profile.unmap(rel);
      if (!label) continue;
      TLink t;
      t.source = g.nodes()[i];
      t.target = g.nodes()[j];
      t.rel = *label;
      t.deduced = true;
      t.provenance = Provenance::Deduced;
      out.push_back(std::move(t));
    }
  }
  return out;
}

namespace {

// Full n*n closure matrix for equality comparison between edge sets.
std::optional<std::vector<AllenSet>> closure_matrix(
    const std::vector<std::string>& nodes,
    const std::vector<TemporalGraph::Edge>& edges) {
  TemporalGraph g;
  for (const auto& id : nodes) g.add_node(id);
  for (const auto& e : edges) g.constrain(e.i, e.j, e.rel);
  ClosureResult r = path_consistency(g);
  if (!r.consistent) return std::nullopt;
  const int n = static_cast<int>(nodes.size());
  std::vector<AllenSet> m(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[static_cast<size_t>(i) * n + j] = r.closure.relation(i, j);
  return m;
}

}  // namespace

TemporalGraph reduce(const TemporalGraph& g) {
  std::vector<TemporalGraph::Edge> edges = g.edges();
  auto target = closure_matrix(g.nodes(), edges);
  if (!target) {
    throw Error(Error::Kind::Consistency, "reduce requires a consistent graph");
  }
  // Drop edges in document order whenever the rest still closes identically.
  std::vector<TemporalGraph::Edge> kept = edges;
  for (size_t e = 0; e < edges.size();) {
    std::vector<TemporalGraph::Edge> trial;
    trial.reserve(kept.size() - 1);
    size_t skipped = 0;
    for (size_t i = 0; i < kept.size(); ++i) {
      if (kept[i].i == edges[e].i && kept[i].j == edges[e].j &&
          kept[i].rel == edges[e].rel && skipped == 0) {
        skipped = 1;
        continue;
      }
      trial.push_back(kept[i]);
    }
    if (skipped && closure_matrix(g.nodes(), trial) == target) kept = trial;
    ++e;
  }
  TemporalGraph out;
  for (const auto& id : g.nodes()) out.add_node(id);
  for (const auto& e : kept) out.constrain(e.i, e.j, e.rel);
  return out;
}

int smcc(const TemporalGraph& g) {
  const int n = static_cast<int>(g.nodes().size());
  if (n == 0) return 0;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    if (e.rel.is_full()) continue;
    parent[find(e.i)] = find(e.j);
  }
  std::vector<int> size(n, 0);
  int best = 0;
  for (int i = 0; i < n; ++i) best = std::max(best, ++size[find(i)]);
  return best;
}

double predict_deducible(int n_tlinks, int n_events, int smcc_size,
                         const RegressionCoeffs& c) {
  return c.intercept + c.tlinks * n_tlinks + c.events * n_events +
         c.smcc * smcc_size;
}

const char* to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "YES";
    case Answer::No: return "NO";
    case Answer::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

Answer timegraph_answer(const TemporalGraph& closure, const std::string& e1,
                        RelType relation, const std::string& e2,
                        const MappingProfile& semantics) {
  AllenSet have = closure.relation(e1, e2);  // throws Error(Reference)
  AllenSet want = semantics.map(relation);
  if (have.subset_of(want)) return Answer::Yes;
  if ((have & want).empty()) return Answer::No;
  return Answer::Unknown;
}

}  // namespace timelink
