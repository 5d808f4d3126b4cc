#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracsync {

// Uniform-grid solution record. states is row-major, rows() x dim.
struct Trajectory {
    enum class Status { Completed, Diverged };

    double step_h = 0.0;
    std::size_t dim = 0;
    std::vector<double> times;
    std::vector<double> states;
    Status status = Status::Completed;
    std::size_t diverged_at = 0;  // step index when status == Diverged

    std::size_t rows() const { return times.size(); }

    double state(std::size_t row, std::size_t comp) const {
        return states[row * dim + comp];
    }

    std::span<const double> row(std::size_t r) const {
        return {states.data() + r * dim, dim};
    }

    bool completed() const { return status == Status::Completed; }
};

}  // namespace fracsync
