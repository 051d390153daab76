#pragma once

namespace opmeans {

// Shared numerical tolerances. All positivity/reconstruction checks scale by
// max(1, frobenius norm) so the same config works across matrix magnitudes.
struct ToleranceConfig {
    double eps_psd = 1e-9;    // positive semidefiniteness slack
    double eps_recon = 1e-10; // eigendecomposition reconstruction residual
    double eps_orth = 1e-10;  // unitarity residual
};

}
