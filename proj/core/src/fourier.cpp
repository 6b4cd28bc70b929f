#include "fracground/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace fracground {

namespace {

void require_s(double s) {
    if (!(s > 0.0 && s < 1.0))
        throw ParameterError("fractional order s must lie in (0,1), got " + std::to_string(s));
}

// FFTW plans for one (dim, n) shape, with private buffers. fftw planning is
// not thread-safe and execution reuses the buffers, so each workspace is
// serialized by its own mutex.
class SpectralWorkspace {
  public:
    SpectralWorkspace(int dim, int n) : dim_(dim), n_(n) {
        real_count_ = 1;
        for (int d = 0; d < dim; ++d) real_count_ *= n;
        cplx_count_ = (real_count_ / n) * (n / 2 + 1);
        real_ = fftw_alloc_real(static_cast<std::size_t>(real_count_));
        cplx_ = fftw_alloc_complex(static_cast<std::size_t>(cplx_count_));
        int sizes[3] = {n, n, n};
        // FFTW_ESTIMATE keeps planning cheap and the transform deterministic.
        fwd_ = fftw_plan_dft_r2c(dim, sizes, real_, cplx_, FFTW_ESTIMATE);
        inv_ = fftw_plan_dft_c2r(dim, sizes, cplx_, real_, FFTW_ESTIMATE);
    }

    ~SpectralWorkspace() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
        fftw_free(real_);
        fftw_free(cplx_);
    }

    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    std::mutex& mutex() { return mutex_; }
    std::int64_t real_count() const { return real_count_; }
    std::int64_t cplx_count() const { return cplx_count_; }
    double* real_buf() { return real_; }
    fftw_complex* cplx_buf() { return cplx_; }
    void forward() { fftw_execute(fwd_); }
    void inverse() { fftw_execute(inv_); }

  private:
    int dim_, n_;
    std::int64_t real_count_ = 0, cplx_count_ = 0;
    double* real_ = nullptr;
    fftw_complex* cplx_ = nullptr;
    fftw_plan fwd_{}, inv_{};
    std::mutex mutex_;
};

SpectralWorkspace& workspace_for(const Grid& g) {
    static std::mutex cache_mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<SpectralWorkspace>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(g.dim, g.n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<SpectralWorkspace>(g.dim, g.n)).first;
    return *it->second;
}

// Iterate the r2c spectrum; fn(flat_index, |xi|^2, parseval_weight).
// The last axis is halved: index in [0, n/2]; weight 2 except at 0 and n/2.
template <typename Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
    const int n = g.n;
    const int nc = n / 2 + 1;
    const double base = std::numbers::pi / g.half_length; // xi = base * k
    const std::int64_t outer = g.point_count() / n;       // product of non-last axes
    std::int64_t flat = 0;
    for (std::int64_t o = 0; o < outer; ++o) {
        double xi2_outer = 0.0;
        std::int64_t rem = o;
        for (int d = g.dim - 2; d >= 0; --d) {
            int idx = static_cast<int>(rem % n);
            rem /= n;
            int k = idx <= n / 2 ? idx : idx - n;
            double xi = base * k;
            xi2_outer += xi * xi;
        }
        for (int kz = 0; kz < nc; ++kz, ++flat) {
            const double xi = base * kz;
            const double w = (kz == 0 || kz == n / 2) ? 1.0 : 2.0;
            fn(flat, xi2_outer + xi * xi, w);
        }
    }
}

} // namespace

Field apply_fractional_laplacian(const Field& u, double s) {
    require_s(s);
    const Grid& g = u.grid;
    SpectralWorkspace& ws = workspace_for(g);
    std::lock_guard<std::mutex> lock(ws.mutex());

    std::copy(u.values.begin(), u.values.end(), ws.real_buf());
    ws.forward();
    fftw_complex* spec = ws.cplx_buf();
    for_each_mode(g, [&](std::int64_t i, double xi2, double) {
        const double m = xi2 > 0.0 ? std::pow(xi2, s) : 0.0; // |xi|^(2s)
        spec[i][0] *= m;
        spec[i][1] *= m;
    });
    ws.inverse();

    Field result(g);
    const double norm = 1.0 / static_cast<double>(g.point_count());
    const double* out = ws.real_buf();
    for (std::size_t i = 0; i < result.values.size(); ++i) result.values[i] = out[i] * norm;
    return result;
}

double seminorm_sq_spectral(const Field& u, double s) {
    require_s(s);
    const Grid& g = u.grid;
    SpectralWorkspace& ws = workspace_for(g);
    std::lock_guard<std::mutex> lock(ws.mutex());

    std::copy(u.values.begin(), u.values.end(), ws.real_buf());
    ws.forward();
    const fftw_complex* spec = ws.cplx_buf();
    double acc = 0.0;
    for_each_mode(g, [&](std::int64_t i, double xi2, double w) {
        if (xi2 <= 0.0) return;
        const double m = std::pow(xi2, s);
        const double mag2 = spec[i][0] * spec[i][0] + spec[i][1] * spec[i][1];
        acc += w * m * mag2;
    });
    const double total = static_cast<double>(g.point_count());
    const double hN = std::pow(g.spacing, g.dim);
    return acc * hN / total;
}

Field apply_shifted_inverse(const Field& u, double s, double shift) {
    require_s(s);
    if (!(shift > 0.0)) throw ParameterError("apply_shifted_inverse: shift must be positive");
    const Grid& g = u.grid;
    SpectralWorkspace& ws = workspace_for(g);
    std::lock_guard<std::mutex> lock(ws.mutex());

    std::copy(u.values.begin(), u.values.end(), ws.real_buf());
    ws.forward();
    fftw_complex* spec = ws.cplx_buf();
    for_each_mode(g, [&](std::int64_t i, double xi2, double) {
        const double m = 1.0 / ((xi2 > 0.0 ? std::pow(xi2, s) : 0.0) + shift);
        spec[i][0] *= m;
        spec[i][1] *= m;
    });
    ws.inverse();

    Field result(g);
    const double norm = 1.0 / static_cast<double>(g.point_count());
    const double* out = ws.real_buf();
    for (std::size_t i = 0; i < result.values.size(); ++i) result.values[i] = out[i] * norm;
    return result;
}

double seminorm_sq_direct(const Field& u, double s) {
    require_s(s);
    const Grid& g = u.grid;
    const std::int64_t count = g.point_count();
    if (count > 4096)
        throw CapacityError("seminorm_sq_direct: grid has " + std::to_string(count) +
                            " points, limit is 4096");

    const double two_L = 2.0 * g.half_length;
    const double expo = 0.5 * (g.dim + 2.0 * s);
    const double h2N = std::pow(g.spacing, 2 * g.dim);

    // cache coordinates
    std::vector<std::array<double, 3>> pts(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) pts[static_cast<std::size_t>(i)] = g.point(i);

    double acc = 0.0;
    for (std::int64_t j = 0; j < count; ++j) {
        const auto& xj = pts[static_cast<std::size_t>(j)];
        const double uj = u.values[static_cast<std::size_t>(j)];
        for (std::int64_t k = j + 1; k < count; ++k) {
            const auto& xk = pts[static_cast<std::size_t>(k)];
            double dist2 = 0.0;
            for (int d = 0; d < g.dim; ++d) {
                double dd = std::fabs(xj[d] - xk[d]);
                if (dd > g.half_length) dd = two_L - dd; // minimal image
                dist2 += dd * dd;
            }
            const double du = uj - u.values[static_cast<std::size_t>(k)];
            acc += du * du / std::pow(dist2, expo);
        }
    }
    return 2.0 * h2N * acc; // pairs counted once above
}

NormalizationCalibration calibrate_normalization(int dim, double s, const Grid& grid,
                                                 double gaussian_width) {
    require_s(s);
    if (grid.dim != dim) throw ParameterError("calibrate_normalization: grid dim mismatch");
    const double w2 = gaussian_width * gaussian_width;
    Field gauss = sample(grid, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
        return std::exp(-r2 / w2);
    });
    const double spec = seminorm_sq_spectral(gauss, s);
    if (!(spec > 1e-300)) throw NumericError("calibrate_normalization: zero spectral seminorm");
    const double direct = seminorm_sq_direct(gauss, s);
    NormalizationCalibration cal;
    cal.dim = dim;
    cal.s = s;
    cal.c_ratio = direct / spec;
    if (!std::isfinite(cal.c_ratio) || cal.c_ratio <= 0.0)
        throw NumericError("calibrate_normalization: degenerate ratio");
    return cal;
}

double kinetic_energy(const Field& u, double s) { return 0.5 * seminorm_sq_spectral(u, s); }

double hs_norm_sq(const Field& u, double s) { return seminorm_sq_spectral(u, s) + l2_norm_sq(u); }

Field band_limit(const Field& u, int kmax) {
    const Grid& g = u.grid;
    SpectralWorkspace& ws = workspace_for(g);
    std::lock_guard<std::mutex> lock(ws.mutex());

    std::copy(u.values.begin(), u.values.end(), ws.real_buf());
    ws.forward();
    fftw_complex* spec = ws.cplx_buf();

    const int n = g.n;
    const int nc = n / 2 + 1;
    const std::int64_t outer = g.point_count() / n;
    std::int64_t flat = 0;
    for (std::int64_t o = 0; o < outer; ++o) {
        bool keep_outer = true;
        std::int64_t rem = o;
        for (int d = g.dim - 2; d >= 0; --d) {
            int idx = static_cast<int>(rem % n);
            rem /= n;
            int k = idx <= n / 2 ? idx : idx - n;
            if (std::abs(k) > kmax) keep_outer = false;
        }
        for (int kz = 0; kz < nc; ++kz, ++flat) {
            if (!keep_outer || kz > kmax) {
                spec[flat][0] = 0.0;
                spec[flat][1] = 0.0;
            }
        }
    }
    ws.inverse();

    Field result(g);
    const double norm = 1.0 / static_cast<double>(g.point_count());
    const double* out = ws.real_buf();
    for (std::size_t i = 0; i < result.values.size(); ++i) result.values[i] = out[i] * norm;
    return result;
}

Field random_band_limited(const Grid& grid, int kmax, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double base = std::numbers::pi / grid.half_length;

    // Accumulate independent cosine/sine modes directly; exact band limit and
    // no Hermitian bookkeeping. Mode set: k in {0..kmax} x {-kmax..kmax}^(d-1),
    // skipping the all-zero mode (keeps the field mean-free).
    struct Mode {
        double kx[3];
        double a, b;
    };
    std::vector<Mode> modes;
    auto push = [&](int k0, int k1, int k2) {
        if (k0 == 0 && k1 == 0 && k2 == 0) return;
        Mode m;
        m.kx[0] = base * k0;
        m.kx[1] = base * k1;
        m.kx[2] = base * k2;
        const double damp = 1.0 / (1.0 + k0 * k0 + k1 * k1 + k2 * k2);
        m.a = gauss(rng) * damp;
        m.b = gauss(rng) * damp;
        modes.push_back(m);
    };
    if (grid.dim == 1) {
        for (int k0 = 1; k0 <= kmax; ++k0) push(k0, 0, 0);
    } else if (grid.dim == 2) {
        for (int k0 = 0; k0 <= kmax; ++k0)
            for (int k1 = (k0 == 0 ? 1 : -kmax); k1 <= kmax; ++k1) push(k0, k1, 0);
    } else {
        for (int k0 = 0; k0 <= kmax; ++k0)
            for (int k1 = (k0 == 0 ? 0 : -kmax); k1 <= kmax; ++k1)
                for (int k2 = (k0 == 0 && k1 == 0 ? 1 : -kmax); k2 <= kmax; ++k2) push(k0, k1, k2);
    }

    Field u(grid);
    const std::int64_t count = grid.point_count();
    for (std::int64_t i = 0; i < count; ++i) {
        const auto x = grid.point(i);
        double v = 0.0;
        for (const Mode& m : modes) {
            double phase = 0.0;
            for (int d = 0; d < grid.dim; ++d) phase += m.kx[d] * x[d];
            v += m.a * std::cos(phase) + m.b * std::sin(phase);
        }
        u.values[static_cast<std::size_t>(i)] = v;
    }
    return u;
}

} // namespace fracground
