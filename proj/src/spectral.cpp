#include "metapop/spectral.hpp"

#include <cmath>

namespace metapop {

std::pair<double, double> norm_bounds(const Matrix& A) {
    const double min_row = A.rowwise().sum().minCoeff();
    const double max_col = A.colwise().sum().maxCoeff();
    return {min_row, max_col};
}

namespace {

constexpr long kMaxIterations = 1000000;
constexpr double kResidualTol = 1e-13;  // relative to the matrix scale
constexpr long kStagnationLimit = 64;

// Dominant eigenpair of the shifted matrix, returned as (rho(A), v).
// Converges on the relative eigen-residual; a stagnation guard accepts
// the floating-point floor when rounding stops further progress.
std::pair<double, Vector> power_iterate(const Matrix& A, long& iterations) {
    const long n = A.rows();
    const Matrix B = A + Matrix::Identity(n, n);
    const double scale = std::max(1.0, B.colwise().sum().maxCoeff());
    Vector v = Vector::Constant(n, 1.0 / static_cast<double>(n));
    double estimate = 0.0;
    double best_residual = std::numeric_limits<double>::infinity();
    long stagnant = 0;
    for (iterations = 1; iterations <= kMaxIterations; ++iterations) {
        Vector w = B * v;
        const double next = w.sum() / v.sum();  // 1-norm Rayleigh estimate
        w /= w.lpNorm<1>();
        const double residual = (A * w - (next - 1.0) * w).lpNorm<1>();
        estimate = next;
        v = std::move(w);
        if (residual < kResidualTol * scale) return {estimate - 1.0, v};
        if (residual >= best_residual) {
            if (++stagnant > kStagnationLimit) return {estimate - 1.0, v};
        } else {
            best_residual = residual;
            stagnant = 0;
        }
    }
    return {estimate - 1.0, v};
}

}  // namespace

SpectralReport spectral_radius(const Matrix& A) {
    if (A.rows() != A.cols()) throw DomainError("spectral_radius needs a square matrix");
    if (!A.allFinite() || A.minCoeff() < 0.0)
        throw DomainError("spectral_radius needs an entrywise nonnegative finite matrix");

    SpectralReport rep;
    std::tie(rep.min_row_sum, rep.max_column_sum) = norm_bounds(A);

    long iters = 0;
    auto [rho, v] = power_iterate(A, iters);
    rep.rho = rho;
    rep.right_vector = v;
    rep.iterations = iters;
    rep.residual = (A * v - rho * v).lpNorm<1>();

    long iters_left = 0;
    auto [rho_left, w] = power_iterate(A.transpose(), iters_left);
    rep.left_vector = w;
    rep.iterations += iters_left;

    if (iters > kMaxIterations || rep.residual > 1e-10 * std::max(1.0, rep.max_column_sum))
        throw NumericalError("power iteration did not converge; last residual " +
                             std::to_string(rep.residual) + ", bounds [" +
                             std::to_string(rep.min_row_sum) + ", " +
                             std::to_string(rep.max_column_sum) + "]");
    return rep;
}

std::optional<Lemma1Certificate> lemma1_certificate(const Matrix& A, CertificateDirection want) {
    const auto rep = spectral_radius(A);
    if (std::abs(rep.rho - 1.0) <= 1e-9) return std::nullopt;
    const long n = A.rows();

    if (want == CertificateDirection::Contract) {
        if (rep.rho >= 1.0) return std::nullopt;
        // Perron vector of A + eps 11^T with rho kept below 1; then
        // Av = rho' v - eps (1^T v) 1 << v entrywise.
        double eps = (1.0 - rep.rho) / (2.0 * static_cast<double>(n));
        for (int attempt = 0; attempt < 60; ++attempt, eps *= 0.5) {
            const Matrix P = A + eps * Matrix::Ones(n, n);
            long it = 0;
            auto [rho_p, v] = power_iterate(P, it);
            if (rho_p >= 1.0) continue;
            if (((A * v).array() < v.array()).all())
                return Lemma1Certificate{CertificateDirection::Contract, v};
        }
        return std::nullopt;
    }

    if (rep.rho <= 1.0) return std::nullopt;
    double eps = (rep.rho - 1.0) / (2.0 * static_cast<double>(n));
    for (int attempt = 0; attempt < 60; ++attempt, eps *= 0.5) {
        const Matrix P = A + eps * Matrix::Ones(n, n);
        long it = 0;
        auto [rho_p, v] = power_iterate(P, it);
        (void)rho_p;
        if (((A * v).array() > v.array()).all())
            return Lemma1Certificate{CertificateDirection::Expand, v};
    }
    return std::nullopt;
}

double r_index(const MetapopModel& model) {
    const int n = model.size();
    double result = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) result = std::min(result, model.map(i).g_at_zero());
    if (n > 1) {
        for (int i = 0; i < n; ++i) {
            double arrivals = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) arrivals += model.dispersal().at(j, i).at_zero();
            result = std::min(result, model.map(i).g_at_zero() * arrivals);
        }
    }
    return result;
}

}  // namespace metapop
