#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "robin/errors.hpp"
#include "robin/spectra1d.hpp"

namespace robin {
namespace {

// Deterministic start block: raw mt19937_64 output mapped to [-1, 1).
Eigen::MatrixXd start_block(Eigen::Index rows, Eigen::Index cols, std::uint64_t stream = 0) {
    std::mt19937_64 engine(0x5eed5eedULL + stream);
    Eigen::MatrixXd block(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            block(i, j) = 2.0 * static_cast<double>(engine() >> 11) * 0x1.0p-53 - 1.0;
    return block;
}

double dual_residual(const SparseMatrix& K, const SparseMatrix& M,
                     const Eigen::SimplicialLLT<SparseMatrix>& mass_factor,
                     const Eigen::VectorXd& y, double lambda) {
    const Eigen::VectorXd r = K * y - lambda * (M * y);
    const Eigen::VectorXd z = mass_factor.solve(r);
    return std::sqrt(std::max(0.0, r.dot(z)));
}

Spectrum dense_lowest(const SymmetricPencil& pencil, int n,
                      const Eigen::SimplicialLLT<SparseMatrix>& mass_factor, bool want_vectors) {
    const Eigen::MatrixXd K(pencil.K);
    const Eigen::MatrixXd M(pencil.M);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        K, M, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success)
        throw FactorizationFailure("dense generalized eigensolver failed (mass not definite?)");
    Spectrum spectrum;
    spectrum.dof = pencil.dof();
    Eigen::MatrixXd vectors = solver.eigenvectors().leftCols(n);
    for (int i = 0; i < n; ++i) {
        const double lambda = solver.eigenvalues()(i);
        spectrum.eigenvalues.push_back(lambda);
        spectrum.residual_norms.push_back(
            dual_residual(pencil.K, pencil.M, mass_factor, vectors.col(i), lambda));
    }
    if (want_vectors) spectrum.eigenvectors = std::move(vectors);
    return spectrum;
}

// Block Krylov–Schur style iteration for the largest eigenvalues θ of the M-self-adjoint
// operator (K − σM)⁻¹M; eigenvalues of the pencil are λ = σ + 1/θ.
class ShiftInvertIteration {
public:
    ShiftInvertIteration(const SymmetricPencil& pencil, double shift,
                         const Eigen::SimplicialLDLT<SparseMatrix>& factor,
                         const Eigen::SimplicialLLT<SparseMatrix>& mass_factor,
                         const EigenOptions& options)
        : K_(pencil.K), M_(pencil.M), factor_(factor), mass_factor_(mass_factor),
          options_(options), shift_(shift), dof_(pencil.dof()) {}

    Spectrum run(int n) {
        const int block = std::max(1, options_.block_size);
        const Eigen::Index keep = std::min<Eigen::Index>(dof_, n + block + 2);
        const Eigen::Index max_basis =
            std::min<Eigen::Index>(dof_, std::max<Eigen::Index>(2 * keep + 2 * block, keep + 24));
        V_.resize(dof_, max_basis);
        MV_.resize(dof_, max_basis);
        KV_.resize(dof_, max_basis);
        W_.resize(dof_, max_basis);
        H_ = Eigen::MatrixXd::Zero(max_basis, max_basis);
        size_ = 0;

        append(start_block(dof_, block));
        // Pencil residuals cannot drop below a few ε·λ_max(K, M); the allowance for that grows
        // slowly if the iteration stagnates.
        const double rounding = std::numeric_limits<double>::epsilon() * largest_eigenvalue();
        double allowance = 4.0;
        for (int iter = 0; iter < options_.max_iter; ++iter) {
            if (iter > 0 && iter % 100 == 0) allowance = std::min(1024.0, 2.0 * allowance);
            const Eigen::MatrixXd h = H_.topLeftCorner(size_, size_);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(0.5 * (h + h.transpose()));
            // Descending θ.
            const Eigen::VectorXd theta = ritz.eigenvalues().reverse();
            const Eigen::MatrixXd U = ritz.eigenvectors().rowwise().reverse();

            const Eigen::Index wanted = std::min<Eigen::Index>(n, size_);
            Eigen::MatrixXd residuals(dof_, 0);
            int unconverged = 0;
            bool all_converged = size_ >= n;
            const Eigen::Index scan = std::min<Eigen::Index>(keep, size_);
            for (Eigen::Index i = 0; i < scan; ++i) {
                const Eigen::VectorXd u = U.col(i);
                const double lambda = shift_ + 1.0 / theta(i);
                const Eigen::VectorXd pencil_r =
                    KV_.leftCols(size_) * u - lambda * (MV_.leftCols(size_) * u);
                const double rnorm =
                    std::sqrt(std::max(0.0, pencil_r.dot(mass_factor_.solve(pencil_r))));
                const bool converged =
                    rnorm <= options_.tol_res * (std::abs(lambda) + 1.0) + allowance * rounding;
                if (i < wanted && !converged) all_converged = false;
                if (!converged && unconverged < block) {
                    ++unconverged;
                    residuals.conservativeResize(Eigen::NoChange, residuals.cols() + 1);
                    residuals.col(residuals.cols() - 1) =
                        W_.leftCols(size_) * u - theta(i) * (V_.leftCols(size_) * u);
                }
            }

            if (all_converged) return finish(U.leftCols(n));

            if (size_ + static_cast<Eigen::Index>(residuals.cols()) > max_basis || size_ == dof_)
                restart(U.leftCols(std::min(keep, size_)), theta.head(std::min(keep, size_)));
            if (residuals.cols() == 0)
                residuals = start_block(dof_, 1, static_cast<std::uint64_t>(iter) + 1);
            append(residuals);
        }
        throw NoConvergence("shift-invert iteration exceeded " +
                            std::to_string(options_.max_iter) + " block steps");
    }

private:
    // M-orthonormalize the block against the basis and itself, apply the operator and
    // extend the projected matrix.
    void append(Eigen::MatrixXd block) {
        for (int pass = 0; pass < 2; ++pass) {
            if (size_ > 0) block -= V_.leftCols(size_) * (MV_.leftCols(size_).transpose() * block);
        }
        for (Eigen::Index j = 0; j < block.cols() && size_ < V_.cols(); ++j) {
            Eigen::VectorXd v = block.col(j);
            const double before = std::sqrt(std::max(0.0, v.dot(M_ * v)));
            for (int pass = 0; pass < 2; ++pass) {
                if (size_ > 0) v -= V_.leftCols(size_) * (MV_.leftCols(size_).transpose() * v);
            }
            Eigen::VectorXd mv = M_ * v;
            const double norm = std::sqrt(std::max(0.0, v.dot(mv)));
            if (!(norm > 1e-10 * before) || norm == 0.0) continue;
            v /= norm;
            mv /= norm;
            const Eigen::VectorXd w = factor_.solve(mv);
            V_.col(size_) = v;
            MV_.col(size_) = mv;
            KV_.col(size_) = K_ * v;
            W_.col(size_) = w;
            const Eigen::VectorXd hcol = MV_.leftCols(size_ + 1).transpose() * w;
            H_.block(0, size_, size_ + 1, 1) = hcol;
            H_.block(size_, 0, 1, size_ + 1) = hcol.transpose();
            ++size_;
        }
    }

    void restart(const Eigen::MatrixXd& U, const Eigen::VectorXd& theta) {
        const Eigen::Index k = U.cols();
        const Eigen::MatrixXd v = V_.leftCols(size_) * U;
        const Eigen::MatrixXd mv = MV_.leftCols(size_) * U;
        const Eigen::MatrixXd kv = KV_.leftCols(size_) * U;
        const Eigen::MatrixXd w = W_.leftCols(size_) * U;
        V_.leftCols(k) = v;
        MV_.leftCols(k) = mv;
        KV_.leftCols(k) = kv;
        W_.leftCols(k) = w;
        H_.setZero();
        for (Eigen::Index i = 0; i < k; ++i) H_(i, i) = theta(i);
        size_ = k;
    }

    // λ_max(K, M) by power iteration on M⁻¹K; only its order of magnitude matters.
    double largest_eigenvalue() const {
        Eigen::VectorXd x = start_block(dof_, 1, 99);
        x /= std::sqrt(x.dot(M_ * x));
        double lambda_max = 0.0;
        for (int it = 0; it < 30; ++it) {
            const Eigen::VectorXd y = mass_factor_.solve(K_ * x);
            const double mnorm = std::sqrt(std::max(0.0, y.dot(M_ * y)));
            if (mnorm == 0.0) break;
            lambda_max = mnorm;
            x = y / mnorm;
        }
        return std::max(lambda_max, std::abs(shift_));
    }

    Spectrum finish(const Eigen::MatrixXd& U) const {
        Eigen::MatrixXd Y = V_.leftCols(size_) * U;
        std::vector<std::pair<double, Eigen::Index>> order;
        for (Eigen::Index i = 0; i < Y.cols(); ++i) {
            const Eigen::VectorXd my = M_ * Y.col(i);
            const double mnorm = std::sqrt(Y.col(i).dot(my));
            Y.col(i) /= mnorm;
            const double lambda = Y.col(i).dot(K_ * Y.col(i));
            order.emplace_back(lambda, i);
        }
        std::sort(order.begin(), order.end());
        Spectrum spectrum;
        spectrum.dof = dof_;
        Eigen::MatrixXd vectors(dof_, Y.cols());
        for (std::size_t i = 0; i < order.size(); ++i) {
            const auto col = static_cast<Eigen::Index>(i);
            vectors.col(col) = Y.col(order[i].second);
            spectrum.eigenvalues.push_back(order[i].first);
            spectrum.residual_norms.push_back(
                dual_residual(K_, M_, mass_factor_, vectors.col(col), order[i].first));
        }
        if (options_.want_vectors) spectrum.eigenvectors = std::move(vectors);
        return spectrum;
    }

    const SparseMatrix& K_;
    const SparseMatrix& M_;
    const Eigen::SimplicialLDLT<SparseMatrix>& factor_;
    const Eigen::SimplicialLLT<SparseMatrix>& mass_factor_;
    const EigenOptions& options_;
    double shift_;
    Eigen::Index dof_;
    Eigen::MatrixXd V_, MV_, KV_, W_, H_;
    Eigen::Index size_ = 0;
};

bool factor_below_spectrum(Eigen::SimplicialLDLT<SparseMatrix>& factor, const SparseMatrix& shifted) {
    factor.compute(shifted);
    if (factor.info() != Eigen::Success) return false;
    // Sylvester inertia: σ lies below the spectrum iff every pivot is positive.
    return (factor.vectorD().array() > 0.0).all();
}

}  // namespace

Eigen::Index compute_bandwidth(const SparseMatrix& matrix) {
    Eigen::Index band = 0;
    for (Eigen::Index col = 0; col < matrix.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(matrix, col); it; ++it)
            band = std::max<Eigen::Index>(band, std::abs(it.row() - it.col()));
    return band;
}

double gershgorin_lower_bound(const SymmetricPencil& pencil) {
    auto disc = [](const SparseMatrix& a, bool lower) {
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(a.rows());
        Eigen::VectorXd radius = Eigen::VectorXd::Zero(a.rows());
        for (Eigen::Index col = 0; col < a.outerSize(); ++col)
            for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
                if (it.row() == it.col()) diag(it.row()) += it.value();
                else radius(it.row()) += std::abs(it.value());
            }
        return lower ? (diag - radius).minCoeff() : (diag + radius).maxCoeff();
    };
    const double k_low = disc(pencil.K, true);
    if (k_low >= 0.0) return k_low / disc(pencil.M, false);
    const double m_low = disc(pencil.M, true);
    if (m_low <= 0.0) throw PreconditionError("Gershgorin bound unavailable: mass disc touches 0");
    return k_low / m_low;
}

Spectrum lowest_eigs(const SymmetricPencil& pencil, int n, double shift, const EigenOptions& options) {
    const Eigen::Index dof = pencil.dof();
    if (n < 1) throw PreconditionError("lowest_eigs needs n >= 1");
    if (4 * static_cast<Eigen::Index>(n) > dof)
        throw PreconditionError("lowest_eigs needs n <= dof/4 (n = " + std::to_string(n) +
                                ", dof = " + std::to_string(dof) + ")");
    if (pencil.M.rows() != dof || pencil.K.cols() != dof || pencil.M.cols() != dof)
        throw PreconditionError("pencil matrices have inconsistent sizes");

    Eigen::SimplicialLLT<SparseMatrix> mass_factor(pencil.M);
    if (mass_factor.info() != Eigen::Success)
        throw FactorizationFailure("mass matrix is not positive definite");

    if (dof <= options.dense_threshold) return dense_lowest(pencil, n, mass_factor, options.want_vectors);

    Eigen::SimplicialLDLT<SparseMatrix> factor;
    double sigma = shift;
    if (!factor_below_spectrum(factor, pencil.K - sigma * pencil.M)) {
        sigma = shift - 1.0;
        if (!factor_below_spectrum(factor, pencil.K - sigma * pencil.M))
            throw FactorizationFailure("shift " + std::to_string(shift) +
                                       " is not below the spectrum (retried with shift - 1)");
    }
    ShiftInvertIteration iteration(pencil, sigma, factor, mass_factor, options);
    return iteration.run(n);
}

}  // namespace robin
