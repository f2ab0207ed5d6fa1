#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

namespace glam::train {

struct PoolConfig {
  int batch_size = 4;
  int capacity = 8;  // per-class queue bound
  // Default rule: a batch is emitted when a queue's length strictly exceeds
  // the batch size. Switch to emission at exactly batch_size here.
  bool emit_on_exact = false;
};

// Per-class FIFO queues feeding fixed-size single-class batches.
template <typename Item>
class ImagePool {
 public:
  ImagePool(int num_classes, PoolConfig cfg) : cfg_(cfg), queues_(num_classes) {
    if (cfg.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
    if (cfg.capacity < cfg.batch_size) {
      throw std::invalid_argument("pool capacity must be >= batch size");
    }
  }

  // Enqueues one item; returns the oldest batch_size items as a batch when
  // the class queue crosses the emission threshold.
  std::optional<std::vector<Item>> offer(int class_id, Item item) {
    auto& q = queue_for(class_id);
    q.push_back(std::move(item));
    ++offered_;
    const int threshold = cfg_.emit_on_exact ? cfg_.batch_size
                                             : cfg_.batch_size + 1;
    if (static_cast<int>(q.size()) >= threshold) {
      return take_batch(q);
    }
    return std::nullopt;
  }

  // Epoch-end flush: emits every remaining full batch of one class.
  std::vector<std::vector<Item>> flush_full(int class_id) {
    auto& q = queue_for(class_id);
    std::vector<std::vector<Item>> batches;
    while (static_cast<int>(q.size()) >= cfg_.batch_size) {
      batches.push_back(take_batch(q));
    }
    return batches;
  }

  // Drops sub-batch leftovers of every class (counted, not emitted).
  void drop_leftovers() {
    for (auto& q : queues_) {
      dropped_ += static_cast<std::int64_t>(q.size());
      q.clear();
    }
  }

  int resident(int class_id) const {
    return static_cast<int>(queues_.at(class_id - 1).size());
  }

  std::int64_t resident_total() const {
    std::int64_t n = 0;
    for (const auto& q : queues_) n += static_cast<std::int64_t>(q.size());
    return n;
  }

  std::int64_t offered() const { return offered_; }
  std::int64_t emitted() const { return emitted_; }
  std::int64_t dropped() const { return dropped_; }
  int num_classes() const { return static_cast<int>(queues_.size()); }
  const PoolConfig& config() const { return cfg_; }

 private:
  std::deque<Item>& queue_for(int class_id) {
    if (class_id < 1 || class_id > static_cast<int>(queues_.size())) {
      throw std::out_of_range("pool: class_id out of range");
    }
    return queues_[class_id - 1];
  }

  std::vector<Item> take_batch(std::deque<Item>& q) {
    std::vector<Item> batch;
    batch.reserve(cfg_.batch_size);
    for (int i = 0; i < cfg_.batch_size; ++i) {
      batch.push_back(std::move(q.front()));
      q.pop_front();
    }
    emitted_ += cfg_.batch_size;
    return batch;
  }

  PoolConfig cfg_;
  std::vector<std::deque<Item>> queues_;
  std::int64_t offered_ = 0;
  std::int64_t emitted_ = 0;
  std::int64_t dropped_ = 0;
};

}  // namespace glam::train
