#include "pathspace/linalg.hpp"

#include <cmath>

namespace pathspace {

double hermitian_defect(const Matrix& g) {
    if (g.rows() != g.cols())
        throw Error("hermitian_defect: matrix not square");
    return g.rows() == 0 ? 0.0 : (g - g.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs(const Matrix& g) { return g.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff(); }

double min_eigenvalue(const Matrix& g) {
    if (g.rows() == 0)
        throw Error("min_eigenvalue: empty matrix");
    const Matrix h = (g + g.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double min_projected_eigenvalue(const Matrix& g) {
    const Eigen::Index n = g.rows();
    if (n < 2)
        throw Error("min_projected_eigenvalue: need at least two samples");
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n - 1);
    for (Eigen::Index k = 1; k < n; ++k) {
        const double norm = std::sqrt(static_cast<double>(k * (k + 1)));
        for (Eigen::Index i = 0; i < k; ++i)
            q(i, k - 1) = 1.0 / norm;
        q(k, k - 1) = -static_cast<double>(k) / norm;
    }
    const Matrix qc = q.cast<cplx>();
    return min_eigenvalue(qc.adjoint() * g * qc);
}

int psd_rank(const Matrix& g, double cutoff) {
    const Matrix h = (g + g.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double top = ev(ev.size() - 1);
    if (top <= 0)
        return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > cutoff * top)
            ++rank;
    return rank;
}

}  // namespace pathspace
