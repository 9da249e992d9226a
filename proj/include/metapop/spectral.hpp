#pragma once

#include <optional>

#include "metapop/model.hpp"
#include "metapop/types.hpp"

namespace metapop {

enum class CertificateDirection { Contract, Expand };

struct Lemma1Certificate {
    CertificateDirection direction;
    Vector v;  // v >> 0 with Av << v (Contract) or Av >> v (Expand)
};

struct SpectralReport {
    double rho = 0.0;
    Vector right_vector;  // 1-norm normalised, positive
    Vector left_vector;
    long iterations = 0;
    double residual = 0.0;  // ||A v - rho v||_1
    double min_row_sum = 0.0;
    double max_column_sum = 0.0;
};

// (min row sum, max column sum): a sandwich on rho for nonnegative A.
std::pair<double, double> norm_bounds(const Matrix& A);

// Power iteration on the shifted matrix A + I from the all-ones vector.
// The shift makes the dominant eigenvalue strictly separated for any
// nonnegative A whose peripheral spectrum is a rotation of rho.
SpectralReport spectral_radius(const Matrix& A);

// Lemma-1 style certificate vector, or refusal (nullopt) when rho is on
// the wrong side of 1 or within 1e-9 of it.
std::optional<Lemma1Certificate> lemma1_certificate(const Matrix& A, CertificateDirection want);

// R_{A(0)}: min over the intrinsic rates g_i(0) and the off-diagonal
// arrival products g_i(0) * sum_{j != i} d_ji(0).  R > 1 certifies
// instability of extinction.
double r_index(const MetapopModel& model);

}  // namespace metapop
