#pragma once

#include <vector>

#include "vp/field.hpp"

namespace vp {

/// Flat batch of phase-space query coordinates. Outputs of the tracing
/// routines stay unwrapped; wrapping happens only inside interpolation.
struct QueryBatch {
    std::vector<double> x;
    std::vector<double> v;

    std::size_t size() const { return x.size(); }
    void validate() const;
};

/// Backward Stroemer-Verlet chain through the stored field history:
/// N drift steps, full kicks with E^{N-1}..E^1 and a final half kick with
/// E^0. N = 0 is the identity. In-place.
void backtrace(QueryBatch& batch, const FieldHistory& history, int N);

/// Half-step-adjusted variant. With maps_present == false this delegates to
/// backtrace. With maps_present == true it applies only the N-1 full
/// drift+kick pairs (fields E^{N-1}..E^1) and no trailing half kick, so the
/// chain composes consistently with previously stored submaps.
void backtrace_adj(QueryBatch& batch, const FieldHistory& history, int N, bool maps_present);

} // namespace vp
