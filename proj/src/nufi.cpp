#include "vp/nufi.hpp"

#include <cmath>
#include <stdexcept>

namespace vp {

void QueryBatch::validate() const {
    if (x.size() != v.size())
        throw std::invalid_argument("QueryBatch: x and v must have equal length");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(v[i]))
            throw std::invalid_argument("QueryBatch: non-finite coordinate");
}

void backtrace(QueryBatch& batch, const FieldHistory& history, int N) {
    if (N < 0) throw std::invalid_argument("backtrace: N must be non-negative");
    if (N == 0) return;
    if (history.base() > 0 || history.last_index() < N - 1)
        throw std::out_of_range("backtrace: history does not cover E^0..E^{N-1}");

    const double tau = history.tau();
    const std::size_t n = batch.size();
    double* X = batch.x.data();
    double* V = batch.v.data();
    for (int k = N; k >= 2; --k) {
        const Interpolant1D& E = history.interp(k - 1);
        for (std::size_t p = 0; p < n; ++p) {
            X[p] -= tau * V[p];
            V[p] += tau * E.eval(X[p]);
        }
    }
    const Interpolant1D& E0 = history.interp(0);
    for (std::size_t p = 0; p < n; ++p) {
        X[p] -= tau * V[p];
        V[p] += 0.5 * tau * E0.eval(X[p]);
    }
}

void backtrace_adj(QueryBatch& batch, const FieldHistory& history, int N, bool maps_present) {
    if (!maps_present) {
        backtrace(batch, history, N);
        return;
    }
    if (N < 0) throw std::invalid_argument("backtrace_adj: N must be non-negative");
    if (N <= 1) return;
    if (history.base() > 1 || history.last_index() < N - 1)
        throw std::out_of_range("backtrace_adj: history does not cover E^1..E^{N-1}");

    const double tau = history.tau();
    const std::size_t n = batch.size();
    double* X = batch.x.data();
    double* V = batch.v.data();
    for (int k = N; k >= 2; --k) {
        const Interpolant1D& E = history.interp(k - 1);
        for (std::size_t p = 0; p < n; ++p) {
            X[p] -= tau * V[p];
            V[p] += tau * E.eval(X[p]);
        }
    }
}

} // namespace vp
