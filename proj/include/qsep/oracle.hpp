#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qsep/errors.hpp"
#include "qsep/fields.hpp"
#include "qsep/grid.hpp"

namespace qsep {

/// Matrix-free discretization of H on a Dirichlet box.  The magnetic terms
/// are kept in the product form -i hbar/2 (A D + D A) with D the
/// antisymmetric central-difference matrix, so the discrete operator is
/// exactly Hermitian.
class DiscreteHamiltonian {
public:
    DiscreteHamiltonian(const FieldSet& fs, const Grid2D& grid)
        : grid_(grid), hbar_(fs.hbar)
    {
        const std::size_t n = grid.size();
        a_.resize(n);
        b_.resize(n);
        v_.resize(n);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const std::size_t id = grid.index(i, j);
                a_[id] = fs.a_pot(grid.x(i), grid.y(j));
                b_[id] = fs.b_pot(grid.x(i), grid.y(j));
                v_[id] = fs.v_pot(grid.x(i), grid.y(j));
            }
    }

    const Grid2D& grid() const { return grid_; }
    std::size_t dim() const { return grid_.size(); }

    void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const
    {
        const int nx = grid_.nx, ny = grid_.ny;
        const double ihx = 1.0 / (12.0 * grid_.hx);
        const double ihy = 1.0 / (12.0 * grid_.hy);
        const double cx = 1.0 / (12.0 * grid_.hx * grid_.hx);
        const double cy = 1.0 / (12.0 * grid_.hy * grid_.hy);
        const std::complex<double> mih{0.0, -0.5 * hbar_};
        out.resize(in.size());

        auto val = [&](int i, int j) -> std::complex<double> {
            if (i < 0 || j < 0 || i >= nx || j >= ny)
                return {0.0, 0.0};
            return in[grid_.index(i, j)];
        };
        auto aval = [&](int i, int j) -> double {
            if (i < 0 || j < 0 || i >= nx || j >= ny)
                return 0.0;
            return a_[grid_.index(i, j)];
        };
        auto bval = [&](int i, int j) -> double {
            if (i < 0 || j < 0 || i >= nx || j >= ny)
                return 0.0;
            return b_[grid_.index(i, j)];
        };

        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const std::size_t id = grid_.index(i, j);
                // 4th-order Laplacian with Dirichlet zero padding
                const std::complex<double> lap =
                    cx * (-val(i - 2, j) + 16.0 * val(i - 1, j) -
                          30.0 * val(i, j) + 16.0 * val(i + 1, j) -
                          val(i + 2, j)) +
                    cy * (-val(i, j - 2) + 16.0 * val(i, j - 1) -
                          30.0 * val(i, j) + 16.0 * val(i, j + 1) -
                          val(i, j + 2));
                // A Dx + Dx A  (Dx antisymmetric 4th-order)
                const std::complex<double> adx =
                    a_[id] * ihx *
                        (val(i - 2, j) - 8.0 * val(i - 1, j) +
                         8.0 * val(i + 1, j) - val(i + 2, j)) +
                    ihx * (aval(i - 2, j) * val(i - 2, j) -
                           8.0 * aval(i - 1, j) * val(i - 1, j) +
                           8.0 * aval(i + 1, j) * val(i + 1, j) -
                           aval(i + 2, j) * val(i + 2, j));
                const std::complex<double> bdy =
                    b_[id] * ihy *
                        (val(i, j - 2) - 8.0 * val(i, j - 1) +
                         8.0 * val(i, j + 1) - val(i, j + 2)) +
                    ihy * (bval(i, j - 2) * val(i, j - 2) -
                           8.0 * bval(i, j - 1) * val(i, j - 1) +
                           8.0 * bval(i, j + 1) * val(i, j + 1) -
                           bval(i, j + 2) * val(i, j + 2));
                out[id] = -0.5 * hbar_ * hbar_ * lap + mih * (adx + bdy) +
                          v_[id] * in[id];
            }
        }
    }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& in) const
    {
        Eigen::VectorXcd out;
        apply(in, out);
        return out;
    }

    /// max |<u,Hv> - conj(<v,Hu>)| over random unit pairs.
    double hermiticity_defect(int pairs = 5, std::uint64_t seed = 7) const
    {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> dist;
        double worst = 0.0;
        for (int p = 0; p < pairs; ++p) {
            Eigen::VectorXcd u(dim()), v(dim());
            for (std::size_t i = 0; i < dim(); ++i) {
                u[i] = {dist(rng), dist(rng)};
                v[i] = {dist(rng), dist(rng)};
            }
            u.normalize();
            v.normalize();
            const std::complex<double> lhs = u.dot(apply(v));
            const std::complex<double> rhs = std::conj(v.dot(apply(u)));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        return worst;
    }

private:
    Grid2D grid_;
    double hbar_;
    std::vector<double> a_, b_, v_;
};

struct EigenPair {
    double value;
    GridFunction vector;
};

namespace detail {

inline void orthogonalize(Eigen::VectorXcd& w,
                          const std::vector<Eigen::VectorXcd>& basis)
{
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& v : basis)
            w -= v.dot(w) * v;
}

} // namespace detail

/// Lowest eigenpairs of the discrete Hamiltonian by thick-restart Lanczos
/// with full reorthogonalization (Rayleigh-Ritz on the kept subspace).
inline std::vector<EigenPair> lowest_eigenpairs(const DiscreteHamiltonian& dh,
                                                int count, double tol = 1e-8,
                                                int max_sweeps = 60,
                                                std::uint64_t seed = 12345)
{
    if (count < 1 || count > 30)
        throw DomainViolationError("lowest_eigenpairs supports 1..30 levels");
    const std::size_t n = dh.dim();
    const int m = std::min<std::size_t>(std::max(40, 2 * count + 16), n);
    const int keep = std::min(m - 2, count + 10);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    auto random_vec = [&]() {
        Eigen::VectorXcd v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = {dist(rng), dist(rng)};
        return v;
    };

    std::vector<Eigen::VectorXcd> basis, image; // V and A V
    {
        Eigen::VectorXcd v = random_vec();
        v.normalize();
        image.push_back(dh.apply(v));
        basis.push_back(std::move(v));
    }

    Eigen::VectorXd theta;
    Eigen::MatrixXcd ritz_u;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        // expand with the Krylov directions of the most recent vectors
        while (static_cast<int>(basis.size()) < m) {
            Eigen::VectorXcd w = image.back();
            detail::orthogonalize(w, basis);
            double nw = w.norm();
            if (nw < 1e-12) {
                w = random_vec();
                detail::orthogonalize(w, basis);
                nw = w.norm();
            }
            w /= nw;
            image.push_back(dh.apply(w));
            basis.push_back(std::move(w));
        }

        // Rayleigh-Ritz
        const int mm = static_cast<int>(basis.size());
        Eigen::MatrixXcd t(mm, mm);
        for (int i = 0; i < mm; ++i)
            for (int j = i; j < mm; ++j) {
                t(i, j) = basis[i].dot(image[j]);
                t(j, i) = std::conj(t(i, j));
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t);
        theta = es.eigenvalues();
        ritz_u = es.eigenvectors();

        // lowest `keep` Ritz vectors and their images
        std::vector<Eigen::VectorXcd> nb, ni;
        nb.reserve(keep);
        ni.reserve(keep);
        for (int r = 0; r < keep; ++r) {
            Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
            Eigen::VectorXcd ay = Eigen::VectorXcd::Zero(n);
            for (int c = 0; c < mm; ++c) {
                y += ritz_u(c, r) * basis[c];
                ay += ritz_u(c, r) * image[c];
            }
            nb.push_back(std::move(y));
            ni.push_back(std::move(ay));
        }

        double worst = 0.0;
        int worst_idx = 0;
        for (int r = 0; r < count; ++r) {
            const double res = (ni[r] - theta(r) * nb[r]).norm();
            if (res > worst) {
                worst = res;
                worst_idx = r;
            }
        }
        if (worst >= tol) {
            // grow the next Krylov chain from the worst residual direction
            Eigen::VectorXcd r = ni[worst_idx] - theta(worst_idx) * nb[worst_idx];
            basis = std::move(nb);
            image = std::move(ni);
            detail::orthogonalize(r, basis);
            const double nr = r.norm();
            if (nr > 1e-12) {
                r /= nr;
                image.push_back(dh.apply(r));
                basis.push_back(std::move(r));
            }
            continue;
        }
        basis = std::move(nb);
        image = std::move(ni);
        if (worst < tol) {
            std::vector<EigenPair> out;
            for (int r = 0; r < count; ++r) {
                GridFunction gf = make_grid_function(dh.grid());
                for (std::size_t i = 0; i < n; ++i)
                    gf.values[i] = basis[r][i];
                out.push_back({theta(r), std::move(gf)});
            }
            return out;
        }
    }
    throw NoConvergenceError("Lanczos did not reach tolerance");
}

/// Dense-diagonalization fallback (small grids only), for validating the
/// iterative path.
inline std::vector<double> lowest_eigenvalues_dense(
    const DiscreteHamiltonian& dh, int count)
{
    const std::size_t n = dh.dim();
    if (n > 4096)
        throw DomainViolationError("dense fallback limited to 64^2 nodes");
    Eigen::MatrixXcd h(n, n);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n), col;
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        dh.apply(e, col);
        h.col(j) = col;
        e[j] = 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = es.eigenvalues()(i);
    return out;
}

/// Rayleigh quotient and relative residual of a sampled state.
inline std::pair<double, double> eigenvalue_of(const DiscreteHamiltonian& dh,
                                               const GridFunction& psi)
{
    const std::size_t n = dh.dim();
    Eigen::VectorXcd v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = psi.values[i];
    const double nv = v.norm();
    if (nv == 0.0)
        throw DomainViolationError("eigenvalue_of needs a nonzero state");
    v /= nv;
    const Eigen::VectorXcd hv = dh.apply(v);
    const double q = std::real(v.dot(hv));
    return {q, (hv - q * v).norm()};
}

struct SpectrumComparison {
    double max_deviation = 0.0;
    std::vector<std::size_t> unmatched; // indices into `exact`
};

/// Greedy nearest-neighbor matching of two ascending eigenvalue lists.
inline SpectrumComparison compare_spectra(const std::vector<double>& exact,
                                          const std::vector<double>& numeric,
                                          double tol)
{
    SpectrumComparison rep;
    std::size_t j = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        while (j + 1 < numeric.size() &&
               std::fabs(numeric[j + 1] - exact[i]) <=
                   std::fabs(numeric[j] - exact[i]))
            ++j;
        if (j >= numeric.size() || std::fabs(numeric[j] - exact[i]) > tol) {
            rep.unmatched.push_back(i);
        } else {
            rep.max_deviation = std::max(rep.max_deviation,
                                         std::fabs(numeric[j] - exact[i]));
            ++j; // each numeric level matches at most one exact level
        }
    }
    return rep;
}

} // namespace qsep
