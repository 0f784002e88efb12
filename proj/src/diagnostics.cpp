#include "vp/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "vp/util.hpp"

namespace vp {

DiagnosticsRecord measure(std::span<const double> f_samples, std::span<const double> E,
                          const PhaseGrid& grid) {
    if (f_samples.size() != grid.size())
        throw std::invalid_argument("measure: f sample count must equal Nx*Nv");
    if (E.size() != std::size_t(grid.Nx))
        throw std::invalid_argument("measure: field length must equal Nx");

    const std::size_t n = grid.size();
    std::vector<double> work(n);

    DiagnosticsRecord rec;
    rec.mass = quad_xv(f_samples, grid);

    for (int i = 0; i < grid.Nx; ++i)
        for (int j = 0; j < grid.Nv; ++j) {
            const std::size_t q = std::size_t(i) * grid.Nv + j;
            work[q] = grid.v(j) * f_samples[q];
        }
    rec.momentum = quad_xv(work, grid);

    for (int i = 0; i < grid.Nx; ++i)
        for (int j = 0; j < grid.Nv; ++j) {
            const std::size_t q = std::size_t(i) * grid.Nv + j;
            const double v = grid.v(j);
            work[q] = v * v * f_samples[q];
        }
    rec.ekin = 0.5 * quad_xv(work, grid);

    for (std::size_t q = 0; q < n; ++q) work[q] = std::abs(f_samples[q]);
    rec.l1 = quad_xv(work, grid);
    for (std::size_t q = 0; q < n; ++q) work[q] = f_samples[q] * f_samples[q];
    rec.l2 = std::sqrt(quad_xv(work, grid));
    for (std::size_t q = 0; q < n; ++q)
        work[q] = f_samples[q] > 0.0 ? f_samples[q] * std::log(f_samples[q]) : 0.0;
    rec.entropy = quad_xv(work, grid);

    rec.min_f = f_samples[0];
    rec.max_f = f_samples[0];
    rec.linf = std::abs(f_samples[0]);
    for (std::size_t q = 1; q < n; ++q) {
        if (f_samples[q] < rec.min_f) rec.min_f = f_samples[q];
        if (f_samples[q] > rec.max_f) rec.max_f = f_samples[q];
        const double a = std::abs(f_samples[q]);
        if (a > rec.linf) rec.linf = a;
    }

    std::vector<double> e2(E.size());
    for (std::size_t i = 0; i < E.size(); ++i) e2[i] = E[i] * E[i];
    rec.epot = 0.5 * grid.dx * pairwise_sum(e2);
    rec.etot = rec.ekin + rec.epot;
    return rec;
}

RateFit fit_rate(std::span<const double> t, std::span<const double> epot,
                 double t_a, double t_b, RateMode mode) {
    if (t.size() != epot.size() || t.size() < 3)
        throw std::invalid_argument("fit_rate: need matching series of length >= 3");

    std::vector<double> pt, pv;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        if (t[i] < t_a || t[i] > t_b) continue;
        if (epot[i] >= epot[i - 1] && epot[i] >= epot[i + 1] && epot[i] > 0.0) {
            pt.push_back(t[i]);
            pv.push_back(std::log(epot[i]));
        }
    }
    if (pt.size() < 4)
        throw std::runtime_error("fit_rate: fewer than 4 Epot peaks inside the window");

    // Least squares ln(peak) = a + b t.
    const std::size_t m = pt.size();
    double st = 0, sv = 0, stt = 0, stv = 0;
    for (std::size_t i = 0; i < m; ++i) {
        st += pt[i];
        sv += pv[i];
        stt += pt[i] * pt[i];
        stv += pt[i] * pv[i];
    }
    const double denom = m * stt - st * st;
    const double slope = denom != 0.0 ? (m * stv - st * sv) / denom : 0.0;

    RateFit fit;
    fit.peaks_used = int(m);
    fit.rate = 0.5 * slope; // field amplitude rate is half the energy rate
    (void)mode;
    // Consecutive distinct peak times; plateaus (e.g. constant series) yield
    // adjacent samples flagged as peaks, which carry no frequency content.
    double spacing_sum = 0.0;
    int spacing_n = 0;
    const double dt_min = 1.5 * (t[1] - t[0]);
    for (std::size_t i = 1; i < m; ++i) {
        const double dt = pt[i] - pt[i - 1];
        if (dt > dt_min) {
            spacing_sum += dt;
            ++spacing_n;
        }
    }
    fit.frequency = spacing_n > 0 ? std::numbers::pi * spacing_n / spacing_sum : 0.0;
    return fit;
}

MemoryModel model_memory(const CostModel& cm) {
    const double nf_d = std::pow(cm.N_f, cm.d);
    const double nchi_2d = std::pow(cm.N_chi, 2 * cm.d);
    MemoryModel mm;
    mm.nufi_bytes = (cm.N + 1.0) * nf_d * 8.0;
    mm.cmm_bytes = cm.M * 2.0 * cm.d * nchi_2d * 8.0;
    mm.hybrid_bytes =
        (cm.M * 2.0 * cm.d * nchi_2d + (cm.N - cm.M * cm.N_remap + 1.0) * nf_d) * 8.0;
    return mm;
}

OpCountModel model_cost(const CostModel& cm) {
    const double nf_2d = std::pow(cm.N_f, 2 * cm.d);
    OpCountModel oc;
    oc.nufi = nf_2d * (cm.N + 3.0) * cm.N / 2.0;
    oc.composition = std::pow((cm.alpha + 1.0) * cm.N_f, 2 * cm.d) * cm.M;
    const double nr = cm.N - cm.M * cm.N_remap;
    oc.hybrid = nf_2d * ((nr + 3.0) * nr / 2.0 + std::pow(cm.alpha + 1.0, 2 * cm.d) * cm.M);
    return oc;
}

std::vector<double> PerfSeries::cumulative() const {
    std::vector<double> out(per_step_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < per_step_.size(); ++i) {
        acc += per_step_[i];
        out[i] = acc;
    }
    return out;
}

} // namespace vp
