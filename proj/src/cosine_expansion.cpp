#include "vtm/cosine_expansion.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

#include "vtm/errors.hpp"

namespace vtm {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};
template <typename U>
using FftwBuffer = std::unique_ptr<U[], FftwFree>;

template <typename U>
FftwBuffer<U> fftw_buffer(std::size_t count) {
    auto* raw = static_cast<U*>(fftw_malloc(sizeof(U) * count));
    if (raw == nullptr) {
        throw std::bad_alloc();
    }
    return FftwBuffer<U>(raw);
}

// Real-to-complex plans keyed by transform length. FFTW planning is not
// thread-safe, so lookups and creation are serialized; execution with the
// new-array interface is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [len, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan r2c(int len) {
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(len); it != plans_.end()) {
            return it->second;
        }
        auto in = fftw_buffer<double>(static_cast<std::size_t>(len));
        auto out = fftw_buffer<fftw_complex>(static_cast<std::size_t>(len / 2 + 1));
        fftw_plan plan = fftw_plan_dft_r2c_1d(len, in.get(), out.get(), FFTW_ESTIMATE);
        plans_.emplace(len, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<int, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

// Unnormalized DCT-I: Y_k = x_0 + (-1)^k x_n + 2 sum_{j=1}^{n-1} x_j cos(pi j k / n),
// from the even extension of length 2n.
std::vector<double> dct1(std::span<const double> x) {
    const int n = static_cast<int>(x.size()) - 1;
    const int len = 2 * n;
    auto in = fftw_buffer<double>(static_cast<std::size_t>(len));
    auto out = fftw_buffer<fftw_complex>(static_cast<std::size_t>(n + 1));
    for (int j = 0; j <= n; ++j) {
        in[j] = x[j];
    }
    for (int j = 1; j < n; ++j) {
        in[len - j] = x[j];
    }
    fftw_execute_dft_r2c(plan_cache().r2c(len), in.get(), out.get());
    std::vector<double> y(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        y[k] = out[k][0];
    }
    return y;
}

std::vector<double> real_parts(std::span<const cplx> v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](cplx z) { return z.real(); });
    return out;
}

std::vector<double> imag_parts(std::span<const cplx> v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](cplx z) { return z.imag(); });
    return out;
}

std::vector<double> real_coefficients(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size()) - 1;
    std::vector<double> c = dct1(samples);
    const double inv_n = 1.0 / n;
    for (int k = 0; k <= n; ++k) {
        const double gamma = (k == 0 || k == n) ? 0.5 : 1.0;
        c[k] *= gamma * inv_n;
    }
    return c;
}

template <typename T>
bool is_finite(const T& v) {
    if constexpr (std::same_as<T, double>) {
        return std::isfinite(v);
    } else {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }
}

std::vector<double> real_grid_values(std::span<const double> coeffs, int points) {
    const int m = points - 1;
    std::vector<double> folded(static_cast<std::size_t>(m + 1), 0.0);
    const long period = 2L * m;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        long r = static_cast<long>(k) % period;
        if (r > m) {
            r = period - r;
        }
        folded[static_cast<std::size_t>(r)] += coeffs[k];
    }
    std::vector<double> y = dct1(folded);
    for (int i = 0; i <= m; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        y[i] = 0.5 * (y[i] + folded[0] + sign * folded[m]);
    }
    return y;
}

// 15-point Kronrod nodes on [0,1] (symmetric) with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
constexpr int kMaxPanels = 10000;

template <typename T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename T, typename F>
Panel<T> kronrod_panel(const F& g, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T center = g(mid);
    T kronrod = center * kKronrodWeights[7];
    T gauss = center * kGaussWeights[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const T pair = g(mid - dx) + g(mid + dx);
        kronrod += pair * kKronrodWeights[i];
        if (i % 2 == 1) {
            gauss += pair * kGaussWeights[i / 2];
        }
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

template <ExpansionScalar T>
CosineExpansion<T>::CosineExpansion(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw PreconditionError("CosineExpansion: at least one coefficient is required");
    }
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!is_finite(coeffs_[k])) {
            throw PreconditionError("CosineExpansion: coefficient " + std::to_string(k) +
                                    " is not finite");
        }
    }
}

template <ExpansionScalar T>
T CosineExpansion<T>::operator()(double y) const noexcept {
    return evaluate_expansion(*this, y);
}

std::vector<double> cosine_nodes(int n) {
    if (n < 1) {
        throw PreconditionError("cosine_nodes: n must be at least 1");
    }
    std::vector<double> y(static_cast<std::size_t>(n + 1));
    for (int j = 0; j <= n; ++j) {
        y[j] = static_cast<double>(2 * j - n) / n;
    }
    return y;
}

template <ExpansionScalar T>
CosineExpansion<T> discrete_coefficients(std::span<const T> samples) {
    if (samples.size() < 2) {
        throw PreconditionError("discrete_coefficients: need n+1 >= 2 samples");
    }
    if constexpr (std::same_as<T, double>) {
        return CosineExpansion<double>(real_coefficients(samples));
    } else {
        const std::vector<double> re = real_coefficients(real_parts(samples));
        const std::vector<double> im = real_coefficients(imag_parts(samples));
        std::vector<cplx> c(re.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            c[k] = {re[k], im[k]};
        }
        return CosineExpansion<cplx>(std::move(c));
    }
}

template <ExpansionScalar T>
T evaluate_expansion(const CosineExpansion<T>& e, double y) noexcept {
    const auto c = e.coefficients();
    const int n = e.degree();
    if (n == 0) {
        return c[0];
    }
    const double theta = 0.5 * pi * (y + 1.0);
    const double cos_t = std::cos(theta);
    T b1{};  // b_{k+1}
    T d1{};  // d_{k+1}
    if (cos_t >= 0.0) {
        // d_k = b_k - b_{k+1}; stable as theta -> 0.
        const double s = std::sin(0.5 * theta);
        const double u = -4.0 * s * s;
        for (int k = n; k >= 1; --k) {
            d1 = c[k] + u * b1 + d1;
            b1 = d1 + b1;
        }
        return c[0] + d1 + 0.5 * u * b1;
    }
    // d_k = b_k + b_{k+1}; stable as theta -> pi.
    const double h = std::cos(0.5 * theta);
    const double u = 4.0 * h * h;
    for (int k = n; k >= 1; --k) {
        d1 = c[k] + u * b1 - d1;
        b1 = d1 - b1;
    }
    return c[0] - d1 + 0.5 * u * b1;
}

template <ExpansionScalar T>
std::vector<T> evaluate_on_uniform_grid(const CosineExpansion<T>& e, int points) {
    if (points < 2) {
        throw PreconditionError("evaluate_on_uniform_grid: need at least 2 points");
    }
    if constexpr (std::same_as<T, double>) {
        return real_grid_values(e.coefficients(), points);
    } else {
        const auto re = real_grid_values(real_parts(e.coefficients()), points);
        const auto im = real_grid_values(imag_parts(e.coefficients()), points);
        std::vector<cplx> out(re.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = {re[i], im[i]};
        }
        return out;
    }
}

template <ExpansionScalar T>
T exact_coefficient(const std::function<T(double)>& f, int k, double tol) {
    if (k < 0) {
        throw PreconditionError("exact_coefficient: k must be nonnegative");
    }
    if (!(tol > 0.0)) {
        throw PreconditionError("exact_coefficient: tolerance must be positive");
    }
    const double freq = 0.5 * pi * k;
    auto integrand = [&](double y) -> T { return f(y) * std::cos(freq * (y + 1.0)); };

    // Start from enough panels to see the oscillation of the cosine weight.
    const int initial = std::max(1, k / 4);
    std::priority_queue<Panel<T>> panels;
    double total_error = 0.0;
    for (int i = 0; i < initial; ++i) {
        const double a = -1.0 + 2.0 * i / initial;
        const double b = (i + 1 == initial) ? 1.0 : -1.0 + 2.0 * (i + 1) / initial;
        Panel<T> panel = kronrod_panel<T>(integrand, a, b);
        total_error += panel.error;
        panels.push(panel);
    }
    while (!(total_error <= tol)) {
        if (!std::isfinite(total_error)) {
            throw ConvergenceError("exact_coefficient: integrand is not finite on [-1, 1]");
        }
        if (static_cast<int>(panels.size()) >= kMaxPanels) {
            throw ConvergenceError("exact_coefficient: panel cap reached for k = " +
                                   std::to_string(k) + " (integrand not smooth enough?)");
        }
        const Panel<T> worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            throw ConvergenceError("exact_coefficient: panel width underflow");
        }
        Panel<T> left = kronrod_panel<T>(integrand, worst.a, mid);
        Panel<T> right = kronrod_panel<T>(integrand, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    T sum{};
    while (!panels.empty()) {
        sum += panels.top().value;
        panels.pop();
    }
    return k == 0 ? 0.5 * sum : sum;
}

template class CosineExpansion<double>;
template class CosineExpansion<cplx>;
template CosineExpansion<double> discrete_coefficients(std::span<const double>);
template CosineExpansion<cplx> discrete_coefficients(std::span<const cplx>);
template double evaluate_expansion(const CosineExpansion<double>&, double) noexcept;
template cplx evaluate_expansion(const CosineExpansion<cplx>&, double) noexcept;
template std::vector<double> evaluate_on_uniform_grid(const CosineExpansion<double>&, int);
template std::vector<cplx> evaluate_on_uniform_grid(const CosineExpansion<cplx>&, int);
template double exact_coefficient(const std::function<double(double)>&, int, double);
template cplx exact_coefficient(const std::function<cplx(double)>&, int, double);

}  // namespace vtm
