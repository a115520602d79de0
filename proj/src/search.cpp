#include "ramsey/search.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <bit>
#include <stdexcept>
#include <thread>

namespace ramsey {

std::uint32_t Bitset::count() const {
  std::uint32_t c = 0;
  for (std::uint64_t w : w_) c += static_cast<std::uint32_t>(std::popcount(w));
  return c;
}

bool Bitset::any() const {
  for (std::uint64_t w : w_)
    if (w) return true;
  return false;
}

void Bitset::assign_and(const Bitset& a, const Bitset& b) {
  nbits_ = a.nbits_;
  w_.resize(a.w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] = a.w_[i] & b.w_[i];
}

namespace {

constexpr std::uint32_t kDenseOrderLimit = 5000;

// ---- color-bound out-neighbor views ----

// Explicit per-vertex out-neighbor bitsets; intersections are word-parallel.
struct DenseOutView {
  std::uint32_t n = 0;
  std::vector<Bitset> out;

  bool arc(std::uint32_t u, std::uint32_t v) const { return out[u].test(v); }
  void intersect(std::uint32_t w, const Bitset& in, Bitset& dst) const {
    dst.assign_and(in, out[w]);
  }
  void out_neighbors(std::uint32_t v, Bitset& dst) const { dst = out[v]; }
};

// Implicit view: membership comes from an O(1) arc predicate, so
// intersections filter the incoming set element by element. Used when the
// graph is too large to materialize adjacency bitsets.
template <typename ArcFn>
struct FilterOutView {
  std::uint32_t n = 0;
  ArcFn fn;

  bool arc(std::uint32_t u, std::uint32_t v) const { return fn(u, v); }
  void intersect(std::uint32_t w, const Bitset& in, Bitset& dst) const {
    dst = Bitset(n);
    in.for_each([&](std::uint32_t x) {
      if (fn(w, x)) dst.set(x);
    });
  }
  void out_neighbors(std::uint32_t v, Bitset& dst) const {
    dst = Bitset(n);
    for (std::uint32_t x = 0; x < n; ++x) {
      if (x != v && fn(v, x)) dst.set(x);
    }
  }
};

struct RootTask {
  std::vector<std::uint32_t> prefix;
  Bitset cand;
};

struct TaskResult {
  std::uint64_t count = 0;
  std::uint32_t best_len = 0;
  std::vector<std::uint32_t> chain;
  bool found = false;
  std::uint64_t nodes = 0;
};

// One branch-and-bound run over a fixed view and color. Chains extend by
// vertices from the running intersection of out-neighborhoods, so every
// prefix is itself a transitive chain; the bound is chain length plus
// candidate count.
template <typename View>
class Searcher {
 public:
  Searcher(const View& g, SearchKind kind, std::uint32_t m, const SearchOptions& opts)
      : g_(g),
        kind_(kind),
        m_(m),
        deterministic_(opts.deterministic_witness),
        threads_(std::max(1, opts.threads)) {
    if (opts.budget) deadline_ = std::chrono::steady_clock::now() + *opts.budget;
  }

  struct Local {
    std::uint32_t task_index = 0;
    std::deque<Bitset> stack;  // deque: end growth keeps live references valid
    std::vector<std::uint32_t> chain;
    TaskResult res;
  };

  SearchResult run(std::vector<RootTask> tasks) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<TaskResult> results(tasks.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
      Local L;
      std::size_t i;
      while ((i = next.fetch_add(1)) < tasks.size()) {
        if (expired_.load(std::memory_order_relaxed)) break;
        if (kind_ == SearchKind::exists && skip_task(static_cast<std::uint32_t>(i))) continue;
        L.task_index = static_cast<std::uint32_t>(i);
        L.res = TaskResult{};
        run_task(L, tasks[i]);
        results[i] = std::move(L.res);
      }
    };

    if (threads_ == 1 || tasks.size() <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      int nt = std::min<int>(threads_, static_cast<int>(tasks.size()));
      pool.reserve(nt);
      for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    SearchResult out;
    out.kind = kind_;
    for (const auto& r : results) out.nodes += r.nodes;
    switch (kind_) {
      case SearchKind::exists:
        for (const auto& r : results) {
          if (r.found) {
            out.exists = true;
            out.witness = r.chain;
            break;
          }
        }
        break;
      case SearchKind::count:
        for (const auto& r : results) out.count += r.count;
        break;
      case SearchKind::max:
        for (const auto& r : results) {
          if (r.best_len > out.max_order) {
            out.max_order = r.best_len;
            out.witness = r.chain;
          }
        }
        break;
    }
    out.at_limit = expired_.load();
    out.elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    return out;
  }

 private:
  bool skip_task(std::uint32_t i) const {
    std::uint32_t f = found_task_.load(std::memory_order_relaxed);
    if (f == 0xffffffffu) return false;
    return deterministic_ ? f < i : true;
  }

  // Returns true when the current branch must abort (budget hit, or an
  // earlier task already holds the witness).
  bool tick(Local& L) {
    if ((++L.res.nodes & 0xfff) == 0) {
      if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) {
        expired_.store(true, std::memory_order_relaxed);
      }
      if (expired_.load(std::memory_order_relaxed)) return true;
      if (kind_ == SearchKind::exists && skip_task(L.task_index)) return true;
    }
    return false;
  }

  Bitset& level(Local& L, std::uint32_t len) {
    while (L.stack.size() <= len) L.stack.emplace_back(g_.n);
    return L.stack[len];
  }

  void run_task(Local& L, const RootTask& task) {
    L.chain = task.prefix;
    std::uint32_t len = static_cast<std::uint32_t>(task.prefix.size());
    switch (kind_) {
      case SearchKind::exists:
        if (len == m_ || exists_rec(L, task.cand, len)) {
          L.res.found = true;
          L.res.chain = L.chain;
          publish_found(L.task_index);
        }
        break;
      case SearchKind::count:
        L.res.count = count_rec(L, task.cand, len);
        break;
      case SearchKind::max:
        L.res.best_len = len;
        L.res.chain = L.chain;
        publish_len(len);
        max_rec(L, task.cand, len);
        break;
    }
  }

  void publish_found(std::uint32_t i) {
    std::uint32_t cur = found_task_.load(std::memory_order_relaxed);
    while (i < cur && !found_task_.compare_exchange_weak(cur, i)) {
    }
  }

  void publish_len(std::uint32_t len) {
    std::uint32_t cur = best_len_.load(std::memory_order_relaxed);
    while (len > cur && !best_len_.compare_exchange_weak(cur, len)) {
    }
  }

  std::uint64_t count_rec(Local& L, const Bitset& cand, std::uint32_t len) {
    if (len == m_) return 1;  // the prefix itself is the chain
    if (len + 1 == m_) return cand.count();
    std::uint64_t total = 0;
    bool abort = false;
    cand.for_each([&](std::uint32_t v) {
      if (abort) return;
      if (tick(L)) {
        abort = true;
        return;
      }
      Bitset& nextc = level(L, len);
      g_.intersect(v, cand, nextc);
      if (len + 1 + nextc.count() >= m_) total += count_rec(L, nextc, len + 1);
    });
    return total;
  }

  bool exists_rec(Local& L, const Bitset& cand, std::uint32_t len) {
    bool found = false, abort = false;
    cand.for_each([&](std::uint32_t v) {
      if (found || abort) return;
      if (tick(L)) {
        abort = true;
        return;
      }
      if (len + 1 == m_) {
        L.chain.push_back(v);
        found = true;
        return;
      }
      Bitset& nextc = level(L, len);
      g_.intersect(v, cand, nextc);
      if (len + 1 + nextc.count() >= m_) {
        L.chain.push_back(v);
        if (exists_rec(L, nextc, len + 1)) {
          found = true;
          return;
        }
        L.chain.pop_back();
      }
    });
    return found;
  }

  void max_rec(Local& L, const Bitset& cand, std::uint32_t len) {
    bool abort = false;
    cand.for_each([&](std::uint32_t v) {
      if (abort) return;
      if (tick(L)) {
        abort = true;
        return;
      }
      L.chain.push_back(v);
      std::uint32_t newlen = len + 1;
      if (newlen > L.res.best_len) {
        L.res.best_len = newlen;
        L.res.chain = L.chain;
        publish_len(newlen);
      }
      Bitset& nextc = level(L, len);
      g_.intersect(v, cand, nextc);
      std::uint32_t potential = newlen + nextc.count();
      std::uint32_t global = best_len_.load(std::memory_order_relaxed);
      // Ties are explored in deterministic multi-thread runs so every worker
      // sees its own lex-least chain of the final length; the combine step
      // then picks the earliest task.
      bool explore = (deterministic_ && threads_ > 1) ? potential >= global : potential > global;
      if (explore && nextc.any()) max_rec(L, nextc, newlen);
      L.chain.pop_back();
    });
  }

  const View& g_;
  SearchKind kind_;
  std::uint32_t m_;
  bool deterministic_;
  int threads_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::atomic<std::uint32_t> best_len_{0};
  std::atomic<std::uint32_t> found_task_{0xffffffffu};
  std::atomic<bool> expired_{false};
};

// ---- handle plumbing ----

std::uint32_t handle_order(const GraphHandle& g) {
  return std::visit([](const auto* p) { return p->order(); }, g);
}

std::uint32_t handle_colors(const GraphHandle& g) {
  return std::visit([](const auto* p) { return p->colors(); }, g);
}

std::uint32_t mathon_colors(const MathonDigraph& M) { return M.rs().half(); }

EdgeClass handle_arc(const GraphHandle& g, std::uint32_t u, std::uint32_t v) {
  if (std::holds_alternative<const ColoredTournament*>(g)) {
    int a = std::get<const ColoredTournament*>(g)->arc(u, v);
    if (a > 0) return EdgeClass::forward(static_cast<std::uint32_t>(a));
    if (a < 0) return EdgeClass::backward(static_cast<std::uint32_t>(-a));
    return EdgeClass::zero();
  }
  if (std::holds_alternative<const PaleyView*>(g)) {
    return std::get<const PaleyView*>(g)->arc(u, v);
  }
  return std::get<const MathonDigraph*>(g)->arc(u, v);
}

DenseOutView make_dense(const GraphHandle& g, std::uint32_t color) {
  std::uint32_t n = handle_order(g);
  DenseOutView view;
  view.n = n;
  view.out.assign(n, Bitset(n));
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (u != v && handle_arc(g, u, v) == EdgeClass::forward(color)) view.out[u].set(v);
    }
  }
  return view;
}

Symmetry resolve_symmetry(const GraphHandle& g, const SearchOptions& opts) {
  if (opts.symmetry != Symmetry::automatic) {
    if (opts.symmetry == Symmetry::paley_affine &&
        !std::holds_alternative<const PaleyView*>(g)) {
      throw std::invalid_argument("paley_affine symmetry requires a Paley graph handle");
    }
    return opts.symmetry;
  }
  if (std::holds_alternative<const PaleyView*>(g)) return Symmetry::paley_affine;
  if (std::holds_alternative<const MathonDigraph*>(g)) return Symmetry::vertex_transitive;
  return Symmetry::none;
}

// Root tasks split the search at the first unfixed chain vertex.
template <typename View>
std::vector<RootTask> make_tasks(const View& view, Symmetry sym, std::uint32_t a2) {
  std::vector<RootTask> tasks;
  std::uint32_t n = view.n;
  if (sym == Symmetry::none) {
    tasks.reserve(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      RootTask t;
      t.prefix = {v};
      view.out_neighbors(v, t.cand);
      tasks.push_back(std::move(t));
    }
    return tasks;
  }
  Bitset on0;
  view.out_neighbors(0, on0);
  if (sym == Symmetry::vertex_transitive) {
    on0.for_each([&](std::uint32_t w) {
      RootTask t;
      t.prefix = {0, w};
      view.intersect(w, on0, t.cand);
      tasks.push_back(std::move(t));
    });
    return tasks;
  }
  // paley_affine: a1 = 0 and a2 = omega^{color-1} fixed
  Bitset c0;
  view.intersect(a2, on0, c0);
  c0.for_each([&](std::uint32_t w) {
    RootTask t;
    t.prefix = {0, a2, w};
    view.intersect(w, c0, t.cand);
    tasks.push_back(std::move(t));
  });
  return tasks;
}

struct ColorPlan {
  std::vector<std::uint32_t> colors;
};

ColorPlan plan_colors(const GraphHandle& g, std::optional<std::uint32_t> color) {
  std::uint32_t t = handle_colors(g);
  if (color) {
    if (*color == 0 || *color > t) {
      throw std::invalid_argument("color " + std::to_string(*color) + " out of range 1.." +
                                  std::to_string(t));
    }
    return {{*color}};
  }
  ColorPlan plan;
  for (std::uint32_t c = 1; c <= t; ++c) plan.colors.push_back(c);
  return plan;
}

// The a2 anchor of the affine normalization: the canonical coset
// representative omega^{color-1} (1 for color 1).
std::uint32_t affine_anchor(const GraphHandle& g, std::uint32_t color) {
  const PaleyView* pv = std::get<const PaleyView*>(g);
  return pv->rs().field().exp(color - 1);
}

template <typename View>
SearchResult run_one_color(const View& view, SearchKind kind, std::uint32_t m, Symmetry sym,
                           std::uint32_t a2, const SearchOptions& opts) {
  Searcher<View> s(view, kind, m, opts);
  return s.run(make_tasks(view, sym, a2));
}

// Dispatch on the storage strategy: explicit bitsets at desk scale, the
// O(1) arc predicate above it.
SearchResult run_color(const GraphHandle& g, std::uint32_t color, SearchKind kind, std::uint32_t m,
                       Symmetry sym, const SearchOptions& opts) {
  std::uint32_t n = handle_order(g);
  std::uint32_t a2 = sym == Symmetry::paley_affine ? affine_anchor(g, color) : 0;
  if (n <= kDenseOrderLimit) {
    DenseOutView view = make_dense(g, color);
    return run_one_color(view, kind, m, sym, a2, opts);
  }
  if (const auto* pv = std::get_if<const PaleyView*>(&g)) {
    const PaleyView& p = **pv;
    auto fn = [&p, color](std::uint32_t u, std::uint32_t v) {
      return p.arc(u, v) == EdgeClass::forward(color);
    };
    FilterOutView<decltype(fn)> view{n, fn};
    return run_one_color(view, kind, m, sym, a2, opts);
  }
  if (const auto* mv = std::get_if<const MathonDigraph*>(&g)) {
    const MathonDigraph& M = **mv;
    auto fn = [&M, color](std::uint32_t u, std::uint32_t v) {
      return M.arc(u, v) == EdgeClass::forward(color);
    };
    FilterOutView<decltype(fn)> view{n, fn};
    return run_one_color(view, kind, m, sym, a2, opts);
  }
  throw std::invalid_argument("tournament of order " + std::to_string(n) +
                              " exceeds the explicit-storage limit");
}

}  // namespace

std::optional<std::vector<std::uint32_t>> transitive_chain(GraphHandle g,
                                                           std::span<const std::uint32_t> verts,
                                                           std::optional<std::uint32_t> color) {
  std::uint32_t n = handle_order(g);
  for (std::uint32_t v : verts) {
    if (v >= n) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  }
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (verts[i] == verts[j]) throw std::invalid_argument("duplicate vertex in set");

  std::uint32_t t = handle_colors(g);
  std::vector<std::uint32_t> colors;
  if (color) {
    if (*color == 0 || *color > t) throw std::invalid_argument("color out of range");
    colors = {*color};
  } else if (t == 1) {
    colors = {1};
  } else {
    // no restriction on a multicolor graph: monochromatic in some color
    for (std::uint32_t c = 1; c <= t; ++c) colors.push_back(c);
  }

  for (std::uint32_t c : colors) {
    std::vector<std::uint32_t> order(verts.begin(), verts.end());
    std::vector<std::uint32_t> outdeg(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = 0; j < order.size(); ++j)
        if (i != j && handle_arc(g, order[i], order[j]) == EdgeClass::forward(c)) ++outdeg[i];
    std::vector<std::size_t> idx(order.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return outdeg[a] != outdeg[b] ? outdeg[a] > outdeg[b] : order[a] < order[b];
    });
    bool ok = true;
    for (std::size_t i = 0; ok && i < idx.size(); ++i)
      for (std::size_t j = i + 1; ok && j < idx.size(); ++j)
        if (handle_arc(g, order[idx[i]], order[idx[j]]) != EdgeClass::forward(c)) ok = false;
    if (ok) {
      std::vector<std::uint32_t> chain(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) chain[i] = order[idx[i]];
      return chain;
    }
  }
  return std::nullopt;
}

SearchResult count_tt(GraphHandle g, std::uint32_t m, std::optional<std::uint32_t> color,
                      CountMethod method, const SearchOptions& opts) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  auto plan = plan_colors(g, color);
  SearchResult total;
  total.kind = SearchKind::count;

  if (method == CountMethod::symmetric) {
    if (!std::holds_alternative<const PaleyView*>(g)) {
      throw std::invalid_argument("symmetric counting requires a Paley graph handle");
    }
    if (m < 2) throw std::invalid_argument("symmetric counting requires m >= 2");
    const PaleyView& pv = *std::get<const PaleyView*>(g);
    std::uint64_t q = pv.order();
    std::uint64_t orbit = q * (q - 1) / pv.rs().k();
    for (std::uint32_t c : plan.colors) {
      if (m == 2) {
        total.count += orbit;  // the normalized chain (0, omega^{c-1}) alone
        continue;
      }
      SearchResult r = run_color(g, c, SearchKind::count, m, Symmetry::paley_affine, opts);
      total.count += r.count * orbit;
      total.nodes += r.nodes;
      total.at_limit = total.at_limit || r.at_limit;
      total.elapsed += r.elapsed;
    }
    return total;
  }

  for (std::uint32_t c : plan.colors) {
    if (m == 1) {
      total.count += handle_order(g);
      continue;
    }
    SearchResult r = run_color(g, c, SearchKind::count, m, Symmetry::none, opts);
    total.count += r.count;
    total.nodes += r.nodes;
    total.at_limit = total.at_limit || r.at_limit;
    total.elapsed += r.elapsed;
  }
  if (!color && m == 1 && plan.colors.size() > 1) {
    // vertices are color-free; counting them once per color would inflate
    total.count = handle_order(g);
  }
  return total;
}

SearchResult exists_tt(GraphHandle g, std::uint32_t m, std::optional<std::uint32_t> color,
                       const SearchOptions& opts) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  auto plan = plan_colors(g, color);
  Symmetry sym = resolve_symmetry(g, opts);
  SearchResult out;
  out.kind = SearchKind::exists;
  if (m == 1) {
    out.exists = true;
    out.witness = {0};
    out.witness_color = plan.colors.front();
    return out;
  }
  for (std::uint32_t c : plan.colors) {
    if (m == 2 && sym == Symmetry::paley_affine) {
      // the normalized chain (0, omega^{c-1}) is itself a witness
      out.exists = true;
      out.witness = {0, affine_anchor(g, c)};
      out.witness_color = c;
      return out;
    }
    SearchResult r = run_color(g, c, SearchKind::exists, m, sym, opts);
    out.nodes += r.nodes;
    out.elapsed += r.elapsed;
    out.at_limit = out.at_limit || r.at_limit;
    if (r.exists) {
      out.exists = true;
      out.witness = r.witness;
      out.witness_color = c;
      return out;
    }
  }
  return out;
}

SearchResult max_tt(GraphHandle g, std::optional<std::uint32_t> color, const SearchOptions& opts) {
  auto plan = plan_colors(g, color);
  Symmetry sym = resolve_symmetry(g, opts);
  SearchResult out;
  out.kind = SearchKind::max;
  for (std::uint32_t c : plan.colors) {
    SearchResult r = run_color(g, c, SearchKind::max, 0, sym, opts);
    if (sym == Symmetry::paley_affine && r.max_order < 2) {
      // no task means ON(0) & ON(a2) was empty; the 2-chain still stands
      r.max_order = 2;
      r.witness = {0, affine_anchor(g, c)};
    }
    if (r.max_order == 0) {
      r.max_order = 1;
      r.witness = {0};
    }
    out.nodes += r.nodes;
    out.elapsed += r.elapsed;
    out.at_limit = out.at_limit || r.at_limit;
    if (r.max_order > out.max_order) {
      out.max_order = r.max_order;
      out.witness = r.witness;
      out.witness_color = c;
    }
  }
  return out;
}

ScanResult scan(std::uint32_t k, std::uint32_t m, std::uint32_t q_max, SearchCache* cache,
                const ScanOptions& opts) {
  if (m < 2) throw std::invalid_argument("scan requires m >= 2");
  std::vector<std::uint32_t> qs = admissible_q(k, q_max);
  if (qs.empty()) {
    throw std::invalid_argument("no admissible q <= " + std::to_string(q_max) +
                                " for k = " + std::to_string(k));
  }

  auto evaluate = [&](std::uint32_t q) -> ScanEvaluation {
    if (cache && opts.use_cache) {
      auto hit = cache->lookup(k, q, m, "exists", 1);
      if (hit && !hit->at_limit) return {q, hit->value != 0, true};
    }
    PaleyView pv(ResidueSystem::build(k, q));
    SearchResult r = exists_tt(&pv, m, 1, opts.search);
    if (cache && opts.use_cache) cache->append(make_cache_record(k, q, m, "exists", 1, r));
    if (r.at_limit && !r.exists) {
      // budget ran out before the absence proof finished: not a certified zero
      return {q, true, false, true};
    }
    return {q, r.exists, false, false};
  };

  ScanResult out;
  if (opts.descending) {
    for (auto it = qs.rbegin(); it != qs.rend(); ++it) {
      ScanEvaluation ev = evaluate(*it);
      out.evaluated.push_back(ev);
      if (!ev.exists) {
        out.q = ev.q;
        break;
      }
    }
    std::reverse(out.evaluated.begin(), out.evaluated.end());
  } else {
    for (std::uint32_t q : qs) {
      ScanEvaluation ev = evaluate(q);
      out.evaluated.push_back(ev);
      if (!ev.exists) out.q = ev.q;
    }
  }
  if (out.q) {
    // flag results within one admissible step of the scan limit
    std::size_t above = 0;
    for (std::uint32_t q : qs)
      if (q > *out.q) ++above;
    out.at_limit = above <= 1;
  }
  return out;
}

}  // namespace ramsey
