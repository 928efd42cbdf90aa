#ifndef STREAMKIT_FLOW_HPP
#define STREAMKIT_FLOW_HPP

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sk {
namespace flow {

struct PipelineError : std::runtime_error {
  explicit PipelineError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Shared bookkeeping for one threaded pipeline run. A run is declared
// deadlocked when every live stage sits blocked across a quiet interval
// (no push, pop, or close anywhere), which is a quiescence check rather
// than a per-operation timeout.
struct RunContext {
  std::mutex mu;
  std::condition_variable cv;
  int live_stages = 0;
  int blocked_stages = 0;
  std::atomic<bool> failed{false};
  std::atomic<std::uint64_t> progress{0};
  std::string failure;
  std::vector<std::string> blocked_where;

  void enter_blocked(const std::string& where) {
    std::lock_guard<std::mutex> lk(mu);
    blocked_stages++;
    blocked_where.push_back(where);
  }
  void leave_blocked(const std::string& where) {
    std::lock_guard<std::mutex> lk(mu);
    blocked_stages--;
    for (auto it = blocked_where.begin(); it != blocked_where.end(); ++it) {
      if (*it == where) {
        blocked_where.erase(it);
        break;
      }
    }
  }
  void tick() { progress.fetch_add(1, std::memory_order_relaxed); }
  void set_failure(const std::string& why) {
    std::lock_guard<std::mutex> lk(mu);
    if (failure.empty()) failure = why;
    failed.store(true);
  }
  [[noreturn]] void throw_failure() {
    std::lock_guard<std::mutex> lk(mu);
    throw PipelineError(failure.empty() ? "pipeline failed" : failure);
  }
};

}  // namespace detail

class Pipeline;

class StreamBase {
 public:
  explicit StreamBase(std::string name) : name_(std::move(name)) {}
  virtual ~StreamBase() = default;

  const std::string& name() const { return name_; }
  std::uint64_t reads() const { return reads_; }
  std::uint64_t writes() const { return writes_; }
  void reset_counters() { reads_ = 0; writes_ = 0; }

  virtual void close() = 0;

 protected:
  friend class Pipeline;
  virtual void wake_all() = 0;
  void attach(detail::RunContext* ctx) { ctx_ = ctx; }

  std::string name_;
  std::uint64_t reads_ = 0;
  std::uint64_t writes_ = 0;
  detail::RunContext* ctx_ = nullptr;  // non-null only during a threaded run
};

// Bounded single-producer single-consumer FIFO. Outside a threaded pipeline
// run, an operation that would block can never be completed by a concurrent
// peer, so it is reported as a deadlock immediately.
template <typename T>
class Stream : public StreamBase {
 public:
  explicit Stream(std::string name, std::size_t capacity = 16)
      : StreamBase(std::move(name)), capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("stream capacity must be positive");
  }

  std::size_t capacity() const { return capacity_; }
  void set_capacity(std::size_t c) {
    if (c == 0) throw std::invalid_argument("stream capacity must be positive");
    capacity_ = c;
  }

  void push(T v) {
    std::unique_lock<std::mutex> lk(mu_);
    while (q_.size() >= capacity_) {
      if (closed_) throw PipelineError("push on closed stream '" + name_ + "'");
      if (!ctx_) {
        throw PipelineError("deadlock: stream '" + name_ + "' full with no consumer");
      }
      if (ctx_->failed.load()) ctx_->throw_failure();
      const std::string where = "push on full stream '" + name_ + "'";
      ctx_->enter_blocked(where);
      cv_.wait(lk);
      ctx_->leave_blocked(where);
      if (ctx_->failed.load()) ctx_->throw_failure();
    }
    q_.push_back(std::move(v));
    ++writes_;
    if (ctx_) ctx_->tick();
    cv_.notify_all();
  }

  // Blocks until an element is available; returns nullopt once the stream is
  // closed and drained (the end-of-stream signal).
  std::optional<T> pop() {
    std::unique_lock<std::mutex> lk(mu_);
    while (q_.empty()) {
      if (closed_) return std::nullopt;
      if (!ctx_) {
        throw PipelineError("deadlock: pop on empty stream '" + name_ + "'");
      }
      if (ctx_->failed.load()) ctx_->throw_failure();
      const std::string where = "pop on empty stream '" + name_ + "'";
      ctx_->enter_blocked(where);
      cv_.wait(lk);
      ctx_->leave_blocked(where);
      if (ctx_->failed.load()) ctx_->throw_failure();
    }
    T v = std::move(q_.front());
    q_.pop_front();
    ++reads_;
    if (ctx_) ctx_->tick();
    cv_.notify_all();
    return v;
  }

  void close() override {
    std::lock_guard<std::mutex> lk(mu_);
    closed_ = true;
    if (ctx_) ctx_->tick();
    cv_.notify_all();
  }

  void reopen() {
    std::lock_guard<std::mutex> lk(mu_);
    closed_ = false;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lk(mu_);
    return q_.size();
  }

  bool closed() const {
    std::lock_guard<std::mutex> lk(mu_);
    return closed_;
  }

 protected:
  void wake_all() override {
    { std::lock_guard<std::mutex> lk(mu_); }
    cv_.notify_all();
  }

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<T> q_;
  std::size_t capacity_;
  bool closed_ = false;
};

struct Stage {
  std::string name;
  std::function<void()> body;
  std::vector<StreamBase*> inputs;
  std::vector<StreamBase*> outputs;
  long interval = 1;  // modeled cycles between task starts, see sk::perf
};

struct RunStats {
  std::map<std::string, std::uint64_t> invocations;   // per stage
  std::map<std::string, std::uint64_t> stream_reads;  // per stream
  std::map<std::string, std::uint64_t> stream_writes;
  long modeled_interval = 0;  // max over stage intervals
};

// A directed acyclic graph of stages connected by streams. Every stream has
// at most one producing stage and one consuming stage; a stream touched on
// only one side is an environment port. run() invokes each stage body
// `rounds` times, either on a single thread in topological order or on one
// thread per stage, and the two schedules leave identical stream contents.
// When a stage has completed all rounds its output streams are closed.
class Pipeline {
 public:
  void add_stage(Stage stage);

  RunStats run(int rounds = 1, bool threaded = false);

 private:
  void validate() const;
  std::vector<std::size_t> topo_order() const;
  std::vector<StreamBase*> all_streams() const;

  RunStats run_sequential(int rounds);
  RunStats run_threaded(int rounds);
  RunStats collect_stats(int rounds) const;

  std::vector<Stage> stages_;
};

}  // namespace flow
}  // namespace sk

#endif
