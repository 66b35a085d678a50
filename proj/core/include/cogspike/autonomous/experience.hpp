#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cogspike {

struct ExperienceRecord {
    int state = 0;
    int action = 0;
    double reward = 0.0;
    int next_state = 0;
    std::string emotion;  // optional tag, empty = neutral
    std::uint64_t timestamp = 0;
};

// Fixed-capacity FIFO ring. Once full, every insert evicts the oldest record.
class ExperienceBuffer {
public:
    explicit ExperienceBuffer(std::size_t capacity, int n_actions = 4)
        : capacity_(capacity), n_actions_(n_actions) {
        if (capacity_ < 1) throw std::invalid_argument("ExperienceBuffer: capacity must be >= 1");
        if (n_actions_ < 1)
            throw std::invalid_argument("ExperienceBuffer: need at least one action");
    }

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return records_.size(); }

    void record(ExperienceRecord rec) {
        if (rec.action < 0 || rec.action >= n_actions_)
            throw std::invalid_argument("ExperienceBuffer: action outside the action set");
        if (!std::isfinite(rec.reward))
            throw std::invalid_argument("ExperienceBuffer: reward must be finite");
        records_.push_back(std::move(rec));
        if (records_.size() > capacity_) records_.pop_front();
    }

    // Matching records, newest first.
    template <typename Pred>
    std::vector<ExperienceRecord> query(Pred&& pred) const {
        std::vector<ExperienceRecord> out;
        for (auto it = records_.rbegin(); it != records_.rend(); ++it)
            if (pred(*it)) out.push_back(*it);
        return out;
    }

    std::vector<ExperienceRecord> query_state(int state) const {
        return query([state](const ExperienceRecord& r) { return r.state == state; });
    }

private:
    std::size_t capacity_;
    int n_actions_;
    std::deque<ExperienceRecord> records_;
};

inline void record_experience(ExperienceBuffer& buffer, ExperienceRecord rec) {
    buffer.record(std::move(rec));
}

template <typename Pred>
std::vector<ExperienceRecord> query_experience(const ExperienceBuffer& buffer, Pred&& pred) {
    return buffer.query(std::forward<Pred>(pred));
}

}  // namespace cogspike
