#include "streamkit/flow.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>

namespace sk {
namespace flow {

void Pipeline::add_stage(Stage stage) {
  if (!stage.body) throw std::invalid_argument("stage '" + stage.name + "' has no body");
  stages_.push_back(std::move(stage));
}

std::vector<StreamBase*> Pipeline::all_streams() const {
  std::vector<StreamBase*> out;
  std::set<StreamBase*> seen;
  for (const auto& st : stages_) {
    for (auto* s : st.inputs)
      if (seen.insert(s).second) out.push_back(s);
    for (auto* s : st.outputs)
      if (seen.insert(s).second) out.push_back(s);
  }
  return out;
}

void Pipeline::validate() const {
  std::map<StreamBase*, int> producers, consumers;
  for (const auto& st : stages_) {
    for (auto* s : st.outputs) producers[s]++;
    for (auto* s : st.inputs) consumers[s]++;
  }
  for (const auto& [s, n] : producers) {
    if (n > 1)
      throw PipelineError("stream '" + s->name() + "' has " + std::to_string(n) + " producers");
  }
  for (const auto& [s, n] : consumers) {
    if (n > 1)
      throw PipelineError("stream '" + s->name() + "' has " + std::to_string(n) + " consumers");
  }
  topo_order();  // throws on a cycle
}

std::vector<std::size_t> Pipeline::topo_order() const {
  // Edges: producer stage -> consumer stage, one per internal stream.
  std::map<StreamBase*, std::size_t> producer_of;
  for (std::size_t i = 0; i < stages_.size(); ++i)
    for (auto* s : stages_[i].outputs) producer_of[s] = i;

  std::vector<std::vector<std::size_t>> succ(stages_.size());
  std::vector<int> indegree(stages_.size(), 0);
  std::map<StreamBase*, std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    for (auto* s : stages_[i].inputs) {
      auto it = producer_of.find(s);
      if (it == producer_of.end()) continue;  // environment input
      succ[it->second].push_back(i);
      indegree[i]++;
      edges[s] = {it->second, i};
    }
  }

  // Kahn order, taking the lowest-index ready stage first so independent
  // stages keep their declaration order and the sequential schedule is
  // reproducible.
  std::vector<std::size_t> order;
  std::set<std::size_t> ready;
  std::vector<int> deg = indegree;
  for (std::size_t i = 0; i < stages_.size(); ++i)
    if (deg[i] == 0) ready.insert(i);
  while (!ready.empty()) {
    std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(i);
    for (std::size_t j : succ[i])
      if (--deg[j] == 0) ready.insert(j);
  }
  if (order.size() != stages_.size()) {
    for (const auto& [s, e] : edges) {
      if (deg[e.second] > 0) {
        throw PipelineError("stage graph has a cycle through stream '" + s->name() + "'");
      }
    }
    throw PipelineError("stage graph has a cycle");
  }
  return order;
}

RunStats Pipeline::collect_stats(int rounds) const {
  RunStats stats;
  stats.modeled_interval = 0;
  for (const auto& st : stages_) {
    stats.invocations[st.name] = static_cast<std::uint64_t>(rounds);
    stats.modeled_interval = std::max(stats.modeled_interval, st.interval);
  }
  for (auto* s : all_streams()) {
    stats.stream_reads[s->name()] = s->reads();
    stats.stream_writes[s->name()] = s->writes();
  }
  return stats;
}

RunStats Pipeline::run(int rounds, bool threaded) {
  if (rounds < 1) throw std::invalid_argument("pipeline rounds must be positive");
  if (stages_.empty()) throw PipelineError("pipeline has no stages");
  validate();
  return threaded ? run_threaded(rounds) : run_sequential(rounds);
}

RunStats Pipeline::run_sequential(int rounds) {
  auto order = topo_order();
  for (int r = 0; r < rounds; ++r) {
    for (std::size_t i : order) stages_[i].body();
  }
  for (const auto& st : stages_)
    for (auto* s : st.outputs) s->close();
  return collect_stats(rounds);
}

RunStats Pipeline::run_threaded(int rounds) {
  detail::RunContext ctx;
  auto streams = all_streams();
  for (auto* s : streams) s->attach(&ctx);
  ctx.live_stages = static_cast<int>(stages_.size());

  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(stages_.size());
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    threads.emplace_back([this, i, rounds, &ctx, &errors, &streams]() {
      try {
        for (int r = 0; r < rounds; ++r) stages_[i].body();
        for (auto* s : stages_[i].outputs) s->close();
      } catch (...) {
        errors[i] = std::current_exception();
        try {
          std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
          ctx.set_failure(std::string("stage '") + stages_[i].name + "' failed: " + e.what());
        } catch (...) {
          ctx.set_failure("stage '" + stages_[i].name + "' failed");
        }
        for (auto* s : streams) s->wake_all();
      }
      {
        std::lock_guard<std::mutex> lk(ctx.mu);
        ctx.live_stages--;
      }
      ctx.cv.notify_all();
    });
  }

  // Supervise: a run is deadlocked when every live stage stays blocked over
  // a quiet interval, i.e. no push/pop/close happened anywhere.
  {
    std::unique_lock<std::mutex> lk(ctx.mu);
    std::uint64_t last_progress = ctx.progress.load();
    int quiet_polls = 0;
    while (ctx.live_stages > 0 && !ctx.failed.load()) {
      ctx.cv.wait_for(lk, std::chrono::milliseconds(20));
      std::uint64_t p = ctx.progress.load();
      if (ctx.live_stages > 0 && ctx.blocked_stages == ctx.live_stages && p == last_progress) {
        if (++quiet_polls >= 2) {
          if (ctx.failure.empty()) {
            std::string why = "deadlock:";
            for (const auto& w : ctx.blocked_where) why += " [" + w + "]";
            ctx.failure = why;
          }
          ctx.failed.store(true);
        }
      } else {
        quiet_polls = 0;
      }
      last_progress = p;
    }
  }
  if (ctx.failed.load()) {
    for (auto* s : streams) s->wake_all();
  }
  for (auto& t : threads) t.join();
  for (auto* s : streams) s->attach(nullptr);

  if (ctx.failed.load()) {
    std::lock_guard<std::mutex> lk(ctx.mu);
    throw PipelineError(ctx.failure.empty() ? "pipeline failed" : ctx.failure);
  }
  return collect_stats(rounds);
}

}  // namespace flow
}  // namespace sk
