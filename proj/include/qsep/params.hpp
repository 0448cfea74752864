#pragma once

namespace qsep {

/// Model constants of the coupled profile equations
/// f'' = alpha f^2 + beta f + gamma,   g'' = -alpha g^2 + delta g + xi,
/// their first integrals (sigma1, sigma2) and the potential constant mu.
struct CubicParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double xi = 0.0;
    double mu = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
};

/// Constants entering the separation ansatz: the gauge multiplier data
/// (k, c1, c2, eps1, eps2) and the derived constants N1, N2.
struct SeparationConstants {
    double k = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    int eps1 = 1;
    int eps2 = 1;
    double n1_const = 0.0;
    double n2_const = 0.0;
};

} // namespace qsep
