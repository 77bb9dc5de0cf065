#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hurwitz/hankel.hpp"
#include "hurwitz/normalize.hpp"

namespace hurwitz {

// Eigenvalue counts of a Hermitian matrix: above, below and inside the
// tolerance band around zero.  pi + nu + delta = size.
struct Inertia {
    int pi = 0;
    int nu = 0;
    int delta = 0;

    bool positive_definite() const { return nu == 0 && delta == 0; }
    bool operator==(const Inertia& o) const { return pi == o.pi && nu == o.nu && delta == o.delta; }
};

// Module tolerances, threaded through the whole pipeline.
struct Tolerances {
    double zero_tol = 1e-12;       // relative threshold for degree detection / rank decisions
    double hermitian_tol = 1e-8;   // max relative deviation for a sequence to count as Hermitian
    double inertia_tol = 1e-10;    // relative eigenvalue band around zero
    double axis_tol = 1e-9;        // relative distance from the imaginary axis (eig oracle)
    bool symmetrize = false;       // replace s_k by its Hermitian part before the Hankel step
};

// Ascending eigenvalues of the symmetrized matrix (M + M^*)/2.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.rows() == 0) return {};
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw SolverFailureError("Hermitian eigendecomposition failed");
    }
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

inline Inertia inertia_from_eigenvalues(const std::vector<double>& eigs, double tol) {
    double scale = 0.0;
    for (double e : eigs) scale = std::max(scale, std::abs(e));
    const double thr = tol * scale;
    Inertia in;
    for (double e : eigs) {
        if (e > thr) {
            ++in.pi;
        } else if (e < -thr) {
            ++in.nu;
        } else {
            ++in.delta;
        }
    }
    return in;
}

/**
 * Inertia of a Hermitian matrix.  The matrix is symmetrized before
 * factorization; inputs whose anti-Hermitian part exceeds hermitian_tol
 * (relative) are rejected.  The 0x0 matrix has inertia (0,0,0) and counts as
 * positive definite.
 */
inline Inertia hermitian_inertia(const ComplexMatrix& m, double tol = 1e-10, double hermitian_tol = 1e-8) {
    if (m.rows() != m.cols()) {
        throw ShapeError("inertia requires a square matrix");
    }
    if (m.rows() == 0) return Inertia{};
    const double dev = (m - m.adjoint()).norm() / std::max(1.0, m.norm());
    if (dev > hermitian_tol) {
        throw NotHermitianError("matrix is not Hermitian (relative deviation " + std::to_string(dev) + ")");
    }
    return inertia_from_eigenvalues(hermitian_eigenvalues(m), tol);
}

enum class Verdict { Stable, NotStable, Indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "Stable";
        case Verdict::NotStable: return "NotStable";
        default: return "Indeterminate";
    }
}

// Everything the pipeline produces, kept for reporting and cross-checks.
struct Pipeline {
    ColumnProfile profile;       // of the input F
    NormalizedPolynomial norm;   // Q and Q^* F
    SplitResult sr;              // split of the normalized polynomial
    MarkovSequence seq;          // after optional symmetrization
    double raw_hermitian_deviation = 0.0;
    IndexSets idx;
    HankelPair hankel;
};

/**
 * normalize -> split -> markov -> hankel on a column reduced polynomial.
 * The QR step upper-triangularizes the hcdc, which the inertia and stability
 * theorems assume; it leaves the spectrum of F untouched.
 */
inline Pipeline run_pipeline(const MatrixPolynomial& f, const Tolerances& tol = {},
                             const std::optional<std::vector<int>>& forced_cdeg = std::nullopt) {
    ColumnProfile prof = column_profile(f, tol.zero_tol, forced_cdeg);
    if (!prof.column_reduced) {
        throw NotColumnReducedError("input is not column reduced (hcdc condition " +
                                    std::to_string(prof.hcdc_condition) + ")");
    }
    NormalizedPolynomial norm = qr_normalize(f, prof);
    // the normalized polynomial has the same column degrees; reuse them
    ColumnProfile nprof = column_profile(norm.f_norm, tol.zero_tol, prof.cdeg);
    SplitResult sr = split(norm.f_norm, nprof);
    MarkovSequence seq = markov_parameters(sr, tol.zero_tol, tol.hermitian_tol);
    const double raw_dev = seq.hermitian_deviation;
    if (tol.symmetrize) seq = symmetrized(seq, tol.hermitian_tol);
    IndexSets idx = index_sets(sr);
    HankelPair hp = assemble_hankel(seq, idx, sr);
    return Pipeline{std::move(prof), std::move(norm), std::move(sr), std::move(seq), raw_dev, std::move(idx),
                    std::move(hp)};
}

struct StabilityReport {
    Verdict verdict = Verdict::Indeterminate;
    std::array<int, 3> inertia_f{0, 0, 0};  // (gamma'_+, gamma'_-, gamma'_0)
    bool inertia_determinate = false;
    Inertia h0_inertia;
    Inertia h1_inertia;
    std::vector<double> h0_eigs;  // ascending
    std::vector<double> h1_eigs;
    double hermitian_deviation = 0.0;
    bool sequence_hermitian = false;
    std::string diagnostics;
    // context for reports
    std::vector<int> cdeg;
    int m = 0, l = 0, t = 0;
    double sa_res = 0.0;
};

namespace detail {

inline StabilityReport report_from_pipeline(const Pipeline& pl, const Tolerances& tol) {
    StabilityReport rep;
    rep.cdeg = pl.profile.cdeg;
    rep.m = pl.sr.m;
    rep.l = pl.sr.l;
    rep.t = pl.sr.t;
    rep.hermitian_deviation = pl.raw_hermitian_deviation;
    rep.sequence_hermitian = pl.seq.is_hermitian;
    rep.sa_res = sa_residual(pl.seq, pl.sr);

    if (!pl.seq.is_hermitian) {
        rep.verdict = Verdict::Indeterminate;
        std::ostringstream os;
        os << "Markov sequence is not Hermitian (relative deviation " << rep.hermitian_deviation
           << "); the stability criterion does not apply. Consider the eig oracle, or --symmetrize if "
              "the deviation is roundoff.";
        rep.diagnostics = os.str();
        return rep;
    }

    rep.h0_eigs = hermitian_eigenvalues(0.5 * (pl.hankel.h0 + pl.hankel.h0.adjoint()));
    rep.h1_eigs = hermitian_eigenvalues(0.5 * (pl.hankel.h1 + pl.hankel.h1.adjoint()));
    rep.h0_inertia = inertia_from_eigenvalues(rep.h0_eigs, tol.inertia_tol);
    rep.h1_inertia = inertia_from_eigenvalues(rep.h1_eigs, tol.inertia_tol);

    const int nu = rep.h0_inertia.nu + rep.h1_inertia.nu;
    const int delta = rep.h0_inertia.delta + rep.h1_inertia.delta;
    if (nu > 0) {
        rep.verdict = Verdict::NotStable;
    } else if (delta > 0) {
        rep.verdict = Verdict::Indeterminate;
        rep.diagnostics =
            "a Hankel matrix is numerically singular; the GCRD terms of the inertia "
            "representation are unknown. Consult the eig oracle.";
    } else {
        rep.verdict = Verdict::Stable;
    }

    // When both Hankel matrices are nonsingular the GCRD contribution vanishes
    // and the triple is exact; otherwise the +/- counts are lower bounds only.
    rep.inertia_determinate = delta == 0;
    rep.inertia_f = {rep.h0_inertia.nu + rep.h1_inertia.nu, rep.h0_inertia.pi + rep.h1_inertia.pi, 0};
    return rep;
}

}  // namespace detail

/**
 * Hurwitz stability of a column reduced matrix polynomial via positive
 * definiteness of the rectangular block Hankel pair.  Requires a Hermitian
 * Markov sequence; otherwise the verdict is Indeterminate with diagnostics.
 */
inline StabilityReport hurwitz_check(const MatrixPolynomial& f, const Tolerances& tol = {},
                                     const std::optional<std::vector<int>>& forced_cdeg = std::nullopt) {
    const Pipeline pl = run_pipeline(f, tol, forced_cdeg);
    return detail::report_from_pipeline(pl, tol);
}

/**
 * Inertia triple (gamma'_+, gamma'_-, gamma'_0) of F with respect to the
 * imaginary axis.  Determinate exactly when both Hankel matrices are
 * nonsingular, in which case
 *   gamma'_- = pi(H0) + pi(H1),  gamma'_+ = nu(H0) + nu(H1),  gamma'_0 = 0.
 * Otherwise the returned triple only bounds the +/- counts from below.
 */
inline std::pair<std::array<int, 3>, bool> polynomial_inertia(const MatrixPolynomial& f,
                                                              const Tolerances& tol = {}) {
    const Pipeline pl = run_pipeline(f, tol);
    if (!pl.seq.is_hermitian) {
        throw NotHermitianSequenceError("inertia representation requires a Hermitian Markov sequence");
    }
    const StabilityReport rep = detail::report_from_pipeline(pl, tol);
    return {rep.inertia_f, rep.inertia_determinate};
}

}  // namespace hurwitz
