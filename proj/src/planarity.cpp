#include <algorithm>
#include <vector>

#include "qmc/graph.hpp"

namespace qmc {
namespace {

// Left-right planarity test (de Fraysseix-Rosenstiehl criterion, Brandes'
// formulation). Two DFS passes: the first orients the graph and computes
// lowpoints and nesting order; the second maintains a stack of conflict
// pairs of return-edge intervals and fails exactly when the constraints are
// unsatisfiable, which happens iff the graph is non-planar.
class LeftRightTest {
 public:
  explicit LeftRightTest(const WeightedGraph& g)
      : n_(g.num_vertices()), m_(g.num_edges()) {
    adj_.resize(n_);
    int id = 0;
    for (const auto& e : g.edges()) {
      adj_[e.u].emplace_back(e.v, id);
      adj_[e.v].emplace_back(e.u, id);
      ++id;
    }
    oriented_.assign(m_, 0);
    src_.assign(m_, -1);
    dst_.assign(m_, -1);
    lowpt_.assign(m_, 0);
    lowpt2_.assign(m_, 0);
    nesting_.assign(m_, 0);
    ref_.assign(m_, -1);
    side_.assign(m_, 1);
    lowpt_edge_.assign(m_, -1);
    stack_bottom_.assign(m_, 0);
    height_.assign(n_, -1);
    parent_edge_.assign(n_, -1);
  }

  bool run() {
    if (n_ > 2 && m_ > 3 * n_ - 6) return false;  // Euler bound
    for (int v = 0; v < n_; ++v) {
      if (height_[v] < 0) {
        height_[v] = 0;
        dfs_orient(v);
      }
    }
    out_.resize(n_);
    for (int e = 0; e < m_; ++e)
      if (oriented_[e]) out_[src_[e]].push_back(e);
    for (int v = 0; v < n_; ++v)
      std::sort(out_[v].begin(), out_[v].end(),
                [&](int a, int b) { return nesting_[a] < nesting_[b]; });
    for (int v = 0; v < n_; ++v)
      if (parent_edge_[v] < 0 && !dfs_test(v)) return false;
    return true;
  }

 private:
  struct Interval {
    int lo = -1, hi = -1;
    bool empty() const { return lo < 0 && hi < 0; }
  };
  struct ConflictPair {
    Interval L, R;
  };

  bool conflicting(const Interval& i, int b) const {
    return !i.empty() && lowpt_[i.hi] > lowpt_[b];
  }

  int lowest(const ConflictPair& p) const {
    if (p.L.empty()) return lowpt_[p.R.lo];
    if (p.R.empty()) return lowpt_[p.L.lo];
    return std::min(lowpt_[p.L.lo], lowpt_[p.R.lo]);
  }

  void dfs_orient(int v) {
    const int e = parent_edge_[v];
    for (const auto& [w, eid] : adj_[v]) {
      if (oriented_[eid]) continue;
      oriented_[eid] = 1;
      src_[eid] = v;
      dst_[eid] = w;
      lowpt_[eid] = height_[v];
      lowpt2_[eid] = height_[v];
      if (height_[w] < 0) {  // tree edge
        parent_edge_[w] = eid;
        height_[w] = height_[v] + 1;
        dfs_orient(w);
      } else {  // back edge
        lowpt_[eid] = height_[w];
      }
      nesting_[eid] = 2 * lowpt_[eid];
      if (lowpt2_[eid] < height_[v]) ++nesting_[eid];  // chordal
      if (e >= 0) {
        if (lowpt_[eid] < lowpt_[e]) {
          lowpt2_[e] = std::min(lowpt_[e], lowpt2_[eid]);
          lowpt_[e] = lowpt_[eid];
        } else if (lowpt_[eid] > lowpt_[e]) {
          lowpt2_[e] = std::min(lowpt2_[e], lowpt_[eid]);
        } else {
          lowpt2_[e] = std::min(lowpt2_[e], lowpt2_[eid]);
        }
      }
    }
  }

  bool dfs_test(int v) {
    const int e = parent_edge_[v];
    bool first = true;
    for (int eid : out_[v]) {
      const int w = dst_[eid];
      stack_bottom_[eid] = static_cast<int>(stack_.size());
      if (eid == parent_edge_[w]) {  // tree edge
        if (!dfs_test(w)) return false;
      } else {  // back edge
        lowpt_edge_[eid] = eid;
        stack_.push_back(ConflictPair{Interval{}, Interval{eid, eid}});
      }
      if (lowpt_[eid] < height_[v]) {  // eid has a return edge
        if (first) {
          lowpt_edge_[e] = lowpt_edge_[eid];
        } else if (!add_constraints(eid, e)) {
          return false;
        }
      }
      first = false;
    }
    if (e >= 0) {
      const int u = src_[e];
      trim_back_edges(u);
      if (lowpt_[e] < height_[u]) {  // e has a return edge
        const int hl = stack_.back().L.hi;
        const int hr = stack_.back().R.hi;
        if (hl >= 0 && (hr < 0 || lowpt_[hl] > lowpt_[hr]))
          ref_[e] = hl;
        else
          ref_[e] = hr;
      }
    }
    return true;
  }

  bool add_constraints(int ei, int e) {
    ConflictPair p;
    // merge return edges of ei into p.R
    for (;;) {
      ConflictPair q = stack_.back();
      stack_.pop_back();
      if (!q.L.empty()) std::swap(q.L, q.R);
      if (!q.L.empty()) return false;  // not planar
      if (lowpt_[q.R.lo] > lowpt_[e]) {
        if (p.R.empty())
          p.R = q.R;
        else if (p.R.lo >= 0)
          ref_[p.R.lo] = q.R.hi;
        p.R.lo = q.R.lo;
      } else if (q.R.lo >= 0) {  // align
        ref_[q.R.lo] = lowpt_edge_[e];
      }
      if (static_cast<int>(stack_.size()) == stack_bottom_[ei]) break;
    }
    // merge conflicting return edges of earlier siblings into p.L
    while (!stack_.empty() &&
           (conflicting(stack_.back().L, ei) || conflicting(stack_.back().R, ei))) {
      ConflictPair q = stack_.back();
      stack_.pop_back();
      if (conflicting(q.R, ei)) std::swap(q.L, q.R);
      if (conflicting(q.R, ei)) return false;  // not planar
      if (p.R.lo >= 0) ref_[p.R.lo] = q.R.hi;
      if (q.R.lo >= 0) p.R.lo = q.R.lo;
      if (p.L.empty())
        p.L = q.L;
      else if (p.L.lo >= 0)
        ref_[p.L.lo] = q.L.hi;
      p.L.lo = q.L.lo;
    }
    if (!(p.L.empty() && p.R.empty())) stack_.push_back(p);
    return true;
  }

  void trim_back_edges(int u) {
    // drop entire conflict pairs returning to u
    while (!stack_.empty() && lowest(stack_.back()) == height_[u]) {
      ConflictPair p = stack_.back();
      stack_.pop_back();
      if (p.L.lo >= 0) side_[p.L.lo] = -1;
    }
    if (stack_.empty()) return;
    // trim the remaining top pair
    ConflictPair p = stack_.back();
    stack_.pop_back();
    while (p.L.hi >= 0 && dst_[p.L.hi] == u) p.L.hi = ref_[p.L.hi];
    if (p.L.hi < 0 && p.L.lo >= 0) {  // just emptied
      ref_[p.L.lo] = p.R.lo;
      side_[p.L.lo] = -1;
      p.L.lo = -1;
    }
    while (p.R.hi >= 0 && dst_[p.R.hi] == u) p.R.hi = ref_[p.R.hi];
    if (p.R.hi < 0 && p.R.lo >= 0) {
      ref_[p.R.lo] = p.L.lo;
      side_[p.R.lo] = -1;
      p.R.lo = -1;
    }
    stack_.push_back(p);
  }

  int n_;
  int m_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<char> oriented_;
  std::vector<int> src_, dst_;
  std::vector<int> lowpt_, lowpt2_, nesting_, ref_, side_, lowpt_edge_, stack_bottom_;
  std::vector<int> height_, parent_edge_;
  std::vector<std::vector<int>> out_;
  std::vector<ConflictPair> stack_;
};

}  // namespace

bool is_planar(const WeightedGraph& g) {
  if (g.num_vertices() <= 4 || g.num_edges() <= 8) return true;  // below K5/K33 size
  return LeftRightTest(g).run();
}

}  // namespace qmc
