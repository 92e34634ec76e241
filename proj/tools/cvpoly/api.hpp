#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "cvpoly/cvpoly.h"

namespace cli {

/// A failed C API call; carries the status for the exit-code mapping.
class ApiError : public std::runtime_error {
   public:
    ApiError(cvp_status status, const std::string &what) : std::runtime_error(what), status_(status) {}
    cvp_status status() const {
        return status_;
    }

   private:
    cvp_status status_;
};

inline void check(cvp_status s) {
    if (s != CVP_OK) {
        throw ApiError(s, cvp_last_error());
    }
}

struct StateDeleter {
    void operator()(cvp_state *s) const {
        cvp_state_free(s);
    }
};
struct PlanDeleter {
    void operator()(cvp_plan *p) const {
        cvp_plan_free(p);
    }
};
using State = std::unique_ptr<cvp_state, StateDeleter>;
using Plan = std::unique_ptr<cvp_plan, PlanDeleter>;

template <typename Fn>
State make_state(Fn &&fn) {
    cvp_state *raw = nullptr;
    check(fn(&raw));
    return State(raw);
}

inline Plan cubic_plan(double nu) {
    cvp_plan *raw = nullptr;
    check(cvp_plan_cubic(nu, 1, &raw));
    return Plan(raw);
}

}  // namespace cli
