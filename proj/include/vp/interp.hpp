#pragma once

#include <span>
#include <vector>

namespace vp {

enum class Scheme { linear, lagrange, cubic_spline };

/// One periodic grid axis: length L, N nodes at x0 + i*h, h = L/N.
struct Axis {
    double L;
    int N;
    double h;
    double x0;
    Axis(double L_, int N_, double x0_ = 0.0) : L(L_), N(N_), h(L_ / N_), x0(x0_) {}
};

namespace detail {

/// Stencil weights for one axis at local coordinate t in [0,1) within the
/// containing cell. Writes degree+1 weights (2 for linear, 4 for
/// cubic_spline) and returns the offset of the leftmost stencil node
/// relative to the cell's left node.
int stencil_weights(Scheme scheme, int degree, double t, double* w);

/// Number of stencil nodes for a scheme.
inline int stencil_size(Scheme scheme, int degree) {
    switch (scheme) {
        case Scheme::linear: return 2;
        case Scheme::cubic_spline: return 4;
        default: return degree + 1;
    }
}

/// Prefactored cyclic tridiagonal solver for the periodic cubic-spline
/// system (c_{j-1} + 4 c_j + c_{j+1})/6 = y_j, via Sherman-Morrison.
class SplineSolver {
  public:
    explicit SplineSolver(int n);
    void solve(std::span<const double> rhs, std::span<double> out) const;

  private:
    void thomas(std::span<const double> rhs, std::span<double> out) const;

    int n_;
    std::vector<double> cp_; // forward-eliminated superdiagonal
    std::vector<double> im_; // inverse pivots
    std::vector<double> z_;  // A1^{-1} u correction vector
    double denom_ = 1.0;
};

} // namespace detail

/// Periodic interpolant on one axis. Lagrange of configurable degree
/// (centered stencil), periodic cubic spline, or piecewise linear.
class Interpolant1D {
  public:
    static Interpolant1D build(std::span<const double> values, const Axis& axis,
                               Scheme scheme, int degree = 3);

    double eval(double x) const;

    const Axis& axis() const { return axis_; }
    Scheme scheme() const { return scheme_; }
    int degree() const { return degree_; }

    /// Node-coefficient count (degree+1 per cell patch is implicit; this is
    /// the stored per-axis coefficient count N).
    int coeff_count() const { return axis_.N; }

  private:
    Interpolant1D(Axis axis, Scheme scheme, int degree)
        : axis_(axis), scheme_(scheme), degree_(degree) {}

    Axis axis_;
    Scheme scheme_;
    int degree_;
    int pad_ = 0;
    std::vector<double> coeff_; // padded; logical index j lives at j + pad_
    friend class Interpolant2D;
};

/// Tensor-product periodic interpolant on an (x, v) grid, optionally
/// vector-valued (ncomp coefficient planes sharing one stencil geometry).
class Interpolant2D {
  public:
    /// values: ncomp planes, each Nx*Nv row-major (x major), concatenated.
    static Interpolant2D build(std::span<const double> values, int ncomp,
                               const Axis& ax, const Axis& av, Scheme scheme,
                               int degree = 3);

    /// Evaluate all components at one point (out has ncomp entries).
    void eval(double x, double v, double* out) const;

    /// Scalar convenience for ncomp == 1.
    double eval1(double x, double v) const;

    /// Batch evaluation: for each query q, out[c][q] = component c at
    /// (xs[q], vs[q]). Queries are wrapped into the periodic box. Pointwise
    /// pure; output order matches input order.
    void eval_batch(std::span<const double> xs, std::span<const double> vs,
                    std::span<double* const> out) const;

    int ncomp() const { return ncomp_; }
    const Axis& ax() const { return ax_; }
    const Axis& av() const { return av_; }
    Scheme scheme() const { return scheme_; }
    int degree() const { return degree_; }

  private:
    Interpolant2D(Axis ax, Axis av, Scheme scheme, int degree, int ncomp)
        : ax_(ax), av_(av), scheme_(scheme), degree_(degree), ncomp_(ncomp) {}

    Axis ax_;
    Axis av_;
    Scheme scheme_;
    int degree_;
    int ncomp_;
    int pad_ = 0;
    int stride_ = 0; // padded row length (v direction)
    std::vector<std::vector<double>> planes_; // padded coefficient planes
};

} // namespace vp
