#include "casq/liouville.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace casq {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::numeric_full: return "numeric_full";
        case Provenance::analytic_opa: return "analytic_opa";
        case Provenance::analytic_motion: return "analytic_motion";
        case Provenance::langevin_oracle: return "langevin_oracle";
    }
    return "unknown";
}

void SpectrumSeries::validate() const {
    for (size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].s))
            throw Error("SpectrumSeries: non-finite value at omega " +
                        std::to_string(points[i].omega));
        if (i > 0 && !(points[i].omega > points[i - 1].omega))
            throw Error("SpectrumSeries: omega grid must be strictly increasing");
    }
}

std::vector<double> SpectrumSeries::omegas() const {
    std::vector<double> out(points.size());
    std::transform(points.begin(), points.end(), out.begin(),
                   [](const SpectrumPoint& p) { return p.omega; });
    return out;
}

std::vector<double> SpectrumSeries::values() const {
    std::vector<double> out(points.size());
    std::transform(points.begin(), points.end(), out.begin(),
                   [](const SpectrumPoint& p) { return p.s; });
    return out;
}

double SpectrumSeries::at_omega(double omega, double tol) const {
    for (const auto& p : points)
        if (std::abs(p.omega - omega) <= tol) return p.s;
    throw Error("SpectrumSeries: no sample at omega " + std::to_string(omega));
}

namespace {

using LapackInt = lapack_int;

void lu_factor(Matrix& a, std::vector<LapackInt>& ipiv, const char* who) {
    const LapackInt n = LapackInt(a.rows());
    ipiv.resize(n);
    const LapackInt info =
        LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, a.data(), n, ipiv.data());
    if (info < 0) throw Error(std::string(who) + ": zgetrf illegal argument");
    if (info > 0)
        throw DegenerateSteadyState(std::string(who) +
                                    ": factorization hit an exactly singular pivot");
}

void lu_solve(const Matrix& lu, const std::vector<LapackInt>& ipiv, Vector& b, char trans) {
    const LapackInt n = LapackInt(lu.rows());
    const LapackInt info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, trans, n, 1,
                                          lu.data(), n, ipiv.data(), b.data(), n);
    if (info != 0) throw Error("zgetrs failed");
}

Vector trace_functional(int d) {
    Vector t = Vector::Zero(Eigen::Index(d) * d);
    for (int i = 0; i < d; ++i) t[Eigen::Index(i) * d + i] = 1.0;
    return t;
}

double induced_inf_norm(const Matrix& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

// Rank-one deflation moving the steady mode off zero: columns i*d+i of L get
// -c * vec(rho); on the trace-zero subspace the action of L is unchanged.
Matrix deflated_matrix(const Matrix& l, const Vector& rho_vec, int d, double c) {
    Matrix lt = l;
    for (int i = 0; i < d; ++i) lt.col(Eigen::Index(i) * d + i) -= c * rho_vec;
    return lt;
}

double deflation_constant(double max_abs_entry) {
    return std::max(1.0, 1e-3 * max_abs_entry);
}

}  // namespace

namespace detail {

class DeflatedLu {
  public:
    DeflatedLu(Matrix factored, std::vector<LapackInt> ipiv)
        : lu_(std::move(factored)), ipiv_(std::move(ipiv)) {}

    Vector solve(const Vector& b, char trans = 'N') const {
        Vector x = b;
        lu_solve(lu_, ipiv_, x, trans);
        return x;
    }

    // Smallest-singular-value estimate by inverse power iteration on (A^H A)^-1.
    double min_singular_value(int iters = 3, unsigned seed = 0x5eed) const {
        std::mt19937 rng(seed);
        std::normal_distribution<double> nd;
        Vector z(lu_.rows());
        for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = Complex{nd(rng), nd(rng)};
        z.normalize();
        double lam = 0.0;
        for (int it = 0; it < iters; ++it) {
            Vector y = solve(z, 'N');
            y = solve(y, 'C');
            lam = y.norm();
            if (!(lam > 0.0) || !std::isfinite(lam)) return 0.0;
            z = y / lam;
        }
        return 1.0 / std::sqrt(lam);
    }

  private:
    Matrix lu_;
    std::vector<LapackInt> ipiv_;
};

}  // namespace detail

SteadyState steady_state(const SuperOperator& L, const SteadyStateOptions& opts) {
    const int d = L.hilbert_dim();
    const Eigen::Index D = Eigen::Index(d) * d;
    const Matrix& l = L.mat();

    Matrix m = l;
    const Vector t = trace_functional(d);
    m.row(0) = t.transpose();
    Vector x = Vector::Zero(D);
    x[0] = 1.0;

    std::vector<LapackInt> ipiv;
    lu_factor(m, ipiv, "steady_state");
    lu_solve(m, ipiv, x, 'N');

    Matrix rho = devectorize(x, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const Complex tr = rho.trace();
    if (!(std::abs(tr) > 1e-8) || !std::isfinite(std::abs(tr)))
        throw Unstable("steady_state: solution has no usable trace", std::abs(tr));
    rho /= tr;

    const double l_norm = induced_inf_norm(l);
    const double residual =
        l_norm > 0.0 ? (l * vectorize(rho)).cwiseAbs().maxCoeff() / l_norm : 0.0;
    if (residual > opts.residual_tol)
        throw Unstable("steady_state: residual " + std::to_string(residual) +
                           " exceeds tolerance; no normalizable steady solution",
                       residual);

    DensityMatrix dm = DensityMatrix::checked(Operator(L.space(), std::move(rho)));

    double min_sv = 0.0;
    std::shared_ptr<const detail::DeflatedLu> deflated;
    if (opts.check_uniqueness) {
        const double scale = l.cwiseAbs().maxCoeff();
        Matrix lt = deflated_matrix(l, vectorize(dm.mat()), d, deflation_constant(scale));
        std::vector<LapackInt> ipiv2;
        lu_factor(lt, ipiv2, "steady_state(deflated)");
        auto lu = std::make_shared<detail::DeflatedLu>(std::move(lt), std::move(ipiv2));
        min_sv = lu->min_singular_value();
        if (min_sv < opts.degeneracy_floor * scale)
            throw DegenerateSteadyState(
                "steady_state: deflated Liouvillian is numerically singular (second null "
                "vector); smallest singular value " +
                std::to_string(min_sv));
        deflated = std::move(lu);
    }
    return SteadyState{std::move(dm), residual, min_sv, std::move(deflated)};
}

Complex expectation(const DensityMatrix& rho, const Operator& A) {
    if (!(rho.space() == A.space())) throw DimensionMismatch("expectation: space mismatch");
    return (A.mat() * rho.mat()).trace();
}

double quadrature_variance(const DensityMatrix& rho, const OperatorSet& ops, double phase) {
    const Operator x = quadrature(phase, ops);
    const double mean = expectation(rho, x).real();
    const double second = expectation(rho, x * x).real();
    return second - mean * mean;
}

double top_sector_population(const DensityMatrix& rho) {
    const HilbertSpace& sp = rho.space();
    double pop = 0.0;
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
            const int idx = sp.index(a1, a2, sp.n_max());
            pop += rho.mat()(idx, idx).real();
        }
    return pop;
}

namespace {

// Hessenberg reduction A = Q H Q^H kept in factored form (reflectors below the
// subdiagonal plus tau), as produced by zgehrd.
struct HessenbergFactors {
    Matrix a;  // destroyed input; upper Hessenberg part is H
    std::vector<Complex> tau;

    explicit HessenbergFactors(Matrix m) : a(std::move(m)), tau(a.rows() > 0 ? a.rows() - 1 : 0) {
        const LapackInt n = LapackInt(a.rows());
        const LapackInt info = LAPACKE_zgehrd(LAPACK_COL_MAJOR, n, 1, n, a.data(), n,
                                              reinterpret_cast<Complex*>(tau.data()));
        if (info != 0) throw Error("zgehrd failed");
    }

    void apply_q(Vector& v, char trans) const {
        const LapackInt n = LapackInt(a.rows());
        const LapackInt info =
            LAPACKE_zunmhr(LAPACK_COL_MAJOR, 'L', trans, n, 1, 1, n, a.data(), n,
                           tau.data(), v.data(), n);
        if (info != 0) throw Error("zunmhr failed");
    }
};

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Extracts the upper Hessenberg part (reflector storage zeroed) row-major, so
// the per-frequency Givens sweeps walk contiguous memory.
RowMajorMatrix hessenberg_row_major(const Matrix& a) {
    const Eigen::Index n = a.rows();
    RowMajorMatrix h = RowMajorMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j0 = std::max<Eigen::Index>(0, i - 1);
        for (Eigen::Index j = j0; j < n; ++j) h(i, j) = a(j0 == 0 && false ? j : i, j);
    }
    return h;
}

void make_givens(Complex f, Complex g, double& c, Complex& s) {
    const double ag = std::abs(g);
    if (ag == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    const double af = std::abs(f);
    if (af == 0.0) {
        c = 0.0;
        s = std::conj(g) / ag;
        return;
    }
    const double d = std::hypot(af, ag);
    c = af / d;
    s = (f / af) * std::conj(g) / d;
}

// Solves (H - i*omega I) x = b in place for upper Hessenberg H (row-major
// workspace w, refreshed by the caller). Throws ResolventSingular on a
// vanishing pivot.
void solve_shifted_hessenberg(RowMajorMatrix& w, Vector& b, double omega, double scale) {
    const Eigen::Index n = w.rows();
    const Complex shift{0.0, omega};
    for (Eigen::Index i = 0; i < n; ++i) w(i, i) -= shift;

    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        Complex* rk = w.data() + k * n;
        Complex* rk1 = w.data() + (k + 1) * n;
        if (rk1[k] == Complex{0.0, 0.0}) continue;
        double c;
        Complex s;
        make_givens(rk[k], rk1[k], c, s);
        for (Eigen::Index j = k; j < n; ++j) {
            const Complex t = c * rk[j] + s * rk1[j];
            rk1[j] = c * rk1[j] - std::conj(s) * rk[j];
            rk[j] = t;
        }
        const Complex tb = c * b[k] + s * b[k + 1];
        b[k + 1] = c * b[k + 1] - std::conj(s) * b[k];
        b[k] = tb;
    }
    const double tiny = scale * 1e-300 + 1e-300;
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        const Complex* ri = w.data() + i * n;
        Complex acc = b[i];
        for (Eigen::Index j = i + 1; j < n; ++j) acc -= ri[j] * b[j];
        if (std::abs(ri[i]) <= tiny)
            throw ResolventSingular("resolvent solve: zero pivot at omega " +
                                        std::to_string(omega),
                                    omega);
        b[i] = acc / ri[i];
    }
}

int resolve_thread_count(int requested, size_t npoints) {
    int n = requested > 0 ? requested
                          : std::min(4u, std::max(1u, std::thread::hardware_concurrency()));
    return int(std::min<size_t>(n, npoints));
}

}  // namespace

SpectrumSeries output_squeezing_spectrum(const SuperOperator& L, const SteadyState& ss,
                                         const OperatorSet& ops, double kappa, double phase,
                                         std::span<const double> omega_grid,
                                         const SpectrumOptions& opts) {
    if (!(L.space() == ops.space()) || !(ss.rho.space() == ops.space()))
        throw DimensionMismatch("output_squeezing_spectrum: space mismatch");
    if (kappa < 0.0) throw ConfigError("output_squeezing_spectrum: kappa must be >= 0");
    for (size_t i = 1; i < omega_grid.size(); ++i)
        if (!(omega_grid[i] > omega_grid[i - 1]))
            throw Error("output_squeezing_spectrum: omega grid must be strictly increasing");

    const int d = L.hilbert_dim();
    const Matrix& a = ops.a().mat();
    const Matrix& rho = ss.rho.mat();
    const Matrix eye = Matrix::Identity(d, d);

    const Complex avg_a = (a * rho).trace();
    const Matrix da = a - avg_a * eye;
    const Complex eph = std::exp(Complex{0.0, -phase});
    const Matrix dx = eph * da + std::conj(eph) * da.adjoint();
    const Vector src = vectorize(Matrix(eph * (da * rho) + std::conj(eph) * (rho * da.adjoint())));
    const Vector w = vectorize(dx);  // w.dot(y) = Tr(dX Y) since dX is Hermitian

    SpectrumSeries series;
    series.phase = phase;
    series.provenance = Provenance::numeric_full;
    series.points.resize(omega_grid.size());

    const double scale = L.mat().cwiseAbs().maxCoeff();
    const Vector rho_vec = vectorize(rho);

    auto record = [&](size_t idx, double omega, const Vector& y) {
        const Complex tr = w.dot(y);
        series.points[idx] = SpectrumPoint{omega, 1.0 - 4.0 * kappa * tr.real()};
    };

    std::vector<double> imag_residues(omega_grid.size(), 0.0);

    if (omega_grid.size() <= size_t(opts.lu_grid_threshold)) {
        for (size_t i = 0; i < omega_grid.size(); ++i) {
            const double omega = omega_grid[i];
            Vector y;
            if (omega == 0.0 && ss.deflated) {
                y = ss.deflated->solve(src);
            } else {
                Matrix shifted = deflated_matrix(L.mat(), rho_vec, d, deflation_constant(scale));
                shifted.diagonal().array() -= Complex{0.0, omega};
                std::vector<LapackInt> ipiv;
                try {
                    lu_factor(shifted, ipiv, "resolvent");
                } catch (const DegenerateSteadyState& e) {
                    throw ResolventSingular(std::string("resolvent singular: ") + e.what(), omega);
                }
                y = src;
                lu_solve(shifted, ipiv, y, 'N');
            }
            const Complex tr = w.dot(y);
            imag_residues[i] = std::abs(4.0 * kappa * tr.imag());
            record(i, omega, y);
        }
    } else {
        Matrix lt = deflated_matrix(L.mat(), rho_vec, d, deflation_constant(scale));
        const HessenbergFactors hess(std::move(lt));
        const RowMajorMatrix h_row = hessenberg_row_major(hess.a);
        Vector src_q = src;
        hess.apply_q(src_q, 'C');

        const int nthreads = resolve_thread_count(opts.threads, omega_grid.size());
        std::atomic<size_t> next{0};
        std::vector<std::exception_ptr> errors(nthreads);

        auto worker = [&](int tid) {
            try {
                RowMajorMatrix work(h_row.rows(), h_row.cols());
                for (;;) {
                    const size_t i = next.fetch_add(1);
                    if (i >= omega_grid.size()) break;
                    work = h_row;
                    Vector y = src_q;
                    solve_shifted_hessenberg(work, y, omega_grid[i], scale);
                    hess.apply_q(y, 'N');
                    const Complex tr = w.dot(y);
                    imag_residues[i] = std::abs(4.0 * kappa * tr.imag());
                    record(i, omega_grid[i], y);
                }
            } catch (...) {
                errors[tid] = std::current_exception();
            }
        };

        if (nthreads <= 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(nthreads);
            for (int tmpi = 0; tmpi < nthreads; ++tmpi) pool.emplace_back(worker, tmpi);
            for (auto& th : pool) th.join();
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    series.max_imag_residue = *std::max_element(imag_residues.begin(), imag_residues.end());
    series.validate();
    return series;
}

}  // namespace casq
