#include "reeb/fiber_graph.hpp"

#include <algorithm>
#include <deque>

#include "reeb/error.hpp"

namespace reeb {

std::vector<FiberGraph::Label> FiberGraph::labels() const {
  std::vector<Label> out;
  out.reserve(comps_.size());
  for (const auto& [l, c] : comps_) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TriId> FiberGraph::triangles() const {
  std::vector<TriId> out;
  out.reserve(label_.size());
  for (const auto& [t, l] : label_) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TriId> FiberGraph::component_triangles(Label l) const {
  std::vector<TriId> out;
  for (const auto& [t, lt] : label_)
    if (lt == l) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

void FiberGraph::canonicalize() {
  std::vector<std::pair<TriId, Label>> order;
  for (const auto& [l, c] : comps_) order.emplace_back(c.min_triangle, l);
  std::sort(order.begin(), order.end());
  std::unordered_map<Label, Label> remap;
  std::unordered_map<Label, Component> comps;
  for (Label i = 0; i < order.size(); ++i) {
    remap[order[i].second] = i;
    comps[i] = comps_.at(order[i].second);
  }
  for (auto& [t, l] : label_) l = remap.at(l);
  comps_ = std::move(comps);
  next_ = static_cast<Label>(order.size());
}

bool FiberGraph::equivalent(const FiberGraph& other) const {
  if (label_.size() != other.label_.size() || comps_.size() != other.comps_.size()) return false;
  std::unordered_map<Label, Label> fwd;
  for (const auto& [t, l] : label_) {
    auto it = other.label_.find(t);
    if (it == other.label_.end()) return false;
    auto [m, inserted] = fwd.emplace(l, it->second);
    if (!inserted && m->second != it->second) return false;
  }
  // Equal sizes and a consistent map onto the other's labels: injective iff
  // the number of distinct images equals the component count.
  std::vector<Label> images;
  for (const auto& [l, ol] : fwd) images.push_back(ol);
  std::sort(images.begin(), images.end());
  return std::unique(images.begin(), images.end()) == images.end();
}

CrossEvent cross_segment(FiberGraph& g, const TetMesh& mesh, std::span<const TriId> remove, std::span<const TriId> add) {
  using Label = FiberGraph::Label;
  CrossEvent ev;
  const Label first_fresh = g.next_;
  std::deque<TriId> seeds;

  auto for_each_neighbor = [&](TriId t, auto&& f) {
    for (TetId tet : mesh.triangle_tets(t))
      for (TriId u : mesh.tet_triangles(tet))
        if (u != t) f(u);
  };

  for (TriId t : remove) {
    auto it = g.label_.find(t);
    if (it == g.label_.end()) {
      throw InconsistentState("fiber graph crossing removes absent triangle " + std::to_string(t));
    }
    ev.before.push_back(it->second);
    g.label_.erase(it);
  }
  std::sort(ev.before.begin(), ev.before.end());
  ev.before.erase(std::unique(ev.before.begin(), ev.before.end()), ev.before.end());
  for (Label l : ev.before) g.comps_.erase(l);

  for (TriId t : remove)
    for_each_neighbor(t, [&](TriId u) {
      if (g.label_.count(u)) seeds.push_back(u);
    });
  for (TriId t : add) {
    if (!g.label_.emplace(t, kNone).second) {
      throw InconsistentState("fiber graph crossing adds present triangle " + std::to_string(t));
    }
    seeds.push_back(t);
  }

  std::deque<TriId> queue;
  for (TriId s : seeds) {
    Label& ls = g.label_.at(s);
    if (ls != kNone && ls >= first_fresh) continue;
    const Label fresh = g.next_++;
    ev.after.push_back(fresh);
    FiberGraph::Component comp{s, 0};
    ls = fresh;
    queue.push_back(s);
    while (!queue.empty()) {
      const TriId t = queue.front();
      queue.pop_front();
      comp.size++;
      comp.min_triangle = std::min(comp.min_triangle, t);
      for_each_neighbor(t, [&](TriId u) {
        auto it = g.label_.find(u);
        if (it == g.label_.end() || (it->second != kNone && it->second >= first_fresh)) return;
        if (it->second != kNone && !std::binary_search(ev.before.begin(), ev.before.end(), it->second)) {
          ev.before.insert(std::lower_bound(ev.before.begin(), ev.before.end(), it->second), it->second);
          g.comps_.erase(it->second);
        }
        it->second = fresh;
        queue.push_back(u);
      });
    }
    g.comps_[fresh] = comp;
  }
  return ev;
}

}  // namespace reeb
