// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <hurwitz/hurwitz.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "golden_example.hpp"

#ifndef HH_CLI_PATH
#define HH_CLI_PATH "hankel-hurwitz"
#endif
#ifndef HH_DATA_DIR
#define HH_DATA_DIR "data"
#endif

using namespace hurwitz;

namespace {

int g_failures = 0;

void criterion(int num, const std::string& label, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", num, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

double greedy_match_max(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) return 1e300;
    struct P {
        double d;
        std::size_t i, j;
    };
    std::vector<P> pairs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) pairs.push_back({std::abs(a[i] - b[j]), i, j});
    }
    std::sort(pairs.begin(), pairs.end(), [](const P& x, const P& y) { return x.d < y.d; });
    std::vector<char> ua(a.size(), 0), ub(b.size(), 0);
    double worst = 0.0;
    for (const P& pr : pairs) {
        if (ua[pr.i] || ub[pr.j]) continue;
        ua[pr.i] = ub[pr.j] = 1;
        worst = std::max(worst, pr.d);
    }
    return worst;
}

// 1. Golden Markov parameters (entrywise < 1e-9).
void criterion1(const Pipeline& pl) {
    bool pass = pl.seq.params.size() == 3;
    double worst = 0.0;
    if (pass) {
        worst = std::max({(pl.seq.params[0] - golden::s0()).cwiseAbs().maxCoeff(),
                          (pl.seq.params[1] - golden::s1()).cwiseAbs().maxCoeff(),
                          (pl.seq.params[2] - golden::s2()).cwiseAbs().maxCoeff()});
        pass = worst < 1e-9;
    }
    std::ostringstream os;
    os << "max entry error " << worst;
    criterion(1, "golden Markov parameters s0..s2", pass, os.str());
}

// 2. Golden index sets (exact).
void criterion2(const Pipeline& pl) {
    const bool pass = IndexSets::one_based(pl.idx.tilde_set(0)) == std::vector<int>{1, 2, 3, 4} &&
                      IndexSets::one_based(pl.idx.tilde_set(1)) == std::vector<int>{1} &&
                      IndexSets::one_based(pl.idx.i_set(0)) == std::vector<int>{1, 2, 3} &&
                      pl.idx.i_set(1).empty();
    criterion(2, "golden index sets", pass);
}

// 3. Golden Hankel pair, Hermitian positive definite, verdict Stable, CLI exit 0.
void criterion3(const Pipeline& pl, const StabilityReport& rep) {
    const double e0 = (pl.hankel.h0 - golden::h0()).cwiseAbs().maxCoeff();
    const double e1 = (pl.hankel.h1 - golden::h1()).cwiseAbs().maxCoeff();
    const double herm = std::max((pl.hankel.h0 - pl.hankel.h0.adjoint()).cwiseAbs().maxCoeff(),
                                 (pl.hankel.h1 - pl.hankel.h1.adjoint()).cwiseAbs().maxCoeff());
    bool pass = pl.hankel.h0.rows() == 5 && pl.hankel.h1.rows() == 3 && e0 < 1e-9 && e1 < 1e-9 && herm < 1e-10;
    pass = pass && rep.h0_inertia.positive_definite() && rep.h1_inertia.positive_definite() &&
           rep.verdict == Verdict::Stable;
    const std::string cmd = std::string(HH_CLI_PATH) + " check " + HH_DATA_DIR + "/example_paper.json > /dev/null";
    const int status = std::system(cmd.c_str());
    const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    pass = pass && exit_code == 0;
    std::ostringstream os;
    os << "entry errors " << e0 << "/" << e1 << ", cli exit " << exit_code;
    criterion(3, "golden Hankel pair, positive definiteness, verdict, exit code", pass, os.str());
}

// 4. Golden spectra of H0, H1 and F; gamma_infinity = 4.
void criterion4(const StabilityReport& rep) {
    bool pass = rep.h0_eigs.size() == 5 && rep.h1_eigs.size() == 3;
    double worst = 0.0;
    if (pass) {
        auto desc0 = rep.h0_eigs;
        auto desc1 = rep.h1_eigs;
        std::reverse(desc0.begin(), desc0.end());
        std::reverse(desc1.begin(), desc1.end());
        for (std::size_t k = 0; k < 5; ++k) worst = std::max(worst, std::abs(desc0[k] - golden::h0_eigs_descending()[k]));
        for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, std::abs(desc1[k] - golden::h1_eigs_descending()[k]));
    }
    const auto spec = finite_spectrum(golden::example_f());
    const double feig = greedy_match_max(spec.finite_eigs, golden::finite_eigs());
    worst = std::max(worst, feig);
    pass = pass && worst < 1e-3 && spec.gamma_infinity == 4 && spec.finite_eigs.size() == 8;
    std::ostringstream os;
    os << "max eigenvalue error " << worst << ", gamma_inf " << spec.gamma_infinity;
    criterion(4, "golden spectra of H0, H1 and F", pass, os.str());
}

// 5. Inertia identity.
void criterion5(const StabilityReport& rep) {
    const auto spec = finite_spectrum(golden::example_f());
    const int pi_sum = rep.h0_inertia.pi + rep.h1_inertia.pi;
    const auto [triple, determinate] = polynomial_inertia(golden::example_f());
    const bool pass = pi_sum == 8 && spec.inertia_imag_axis[1] == 8 && determinate &&
                      triple == std::array<int, 3>{0, 8, 0};
    std::ostringstream os;
    os << "pi(H0)+pi(H1) = " << pi_sum << ", oracle gamma'_- = " << spec.inertia_imag_axis[1];
    criterion(5, "inertia identity and determinate triple (0,8,0)", pass, os.str());
}

// 6. Structural property suite on 200 random Hermitian-sequence instances.
void criterion6() {
    gen::Rng rng(20240901);
    int fail_recon = 0, fail_size = 0, fail_oracle_markov = 0, fail_sa = 0, fail_bezout = 0, fail_verdict = 0;
    int indeterminate = 0;
    const Tolerances tol;
    for (int trial = 0; trial < 200; ++trial) {
        const int p = 1 + trial % 3;
        const auto f = gen::diag_real_instance(rng, p, 5);
        const auto prof = column_profile(f, tol.zero_tol);
        const auto pl = run_pipeline(f, tol);

        // (a) reconstruction
        {
            const auto d = d_polynomial(pl.sr);
            const auto s = s_polynomial(pl.sr);
            double err = 0.0, scale = 1.0;
            for (int e = 0; e <= prof.degree(); ++e) {
                err = std::max(err, (d.coeff_of_power(e) + s.coeff_of_power(e) -
                                     pl.norm.f_norm.coeff_of_power(e)).cwiseAbs().maxCoeff());
                scale = std::max(scale, pl.norm.f_norm.coeff_of_power(e).cwiseAbs().maxCoeff());
            }
            if (!(err < 1e-12 * scale)) ++fail_recon;
        }
        // (b) size identity against the finite spectrum
        int cdeg_sum = 0;
        for (int c : prof.cdeg) cdeg_sum += c;
        const auto spec = finite_spectrum(f, tol.axis_tol);
        if (static_cast<int>(pl.hankel.h0.rows() + pl.hankel.h1.rows()) != cdeg_sum ||
            static_cast<int>(spec.finite_eigs.size()) != cdeg_sum) {
            ++fail_size;
        }
        // (c) Algorithm 1 vs Laurent oracle
        {
            const auto oracle = laurent_oracle(pl.sr, pl.sr.l);
            double err = 0.0;
            for (int k = 0; k <= pl.sr.l; ++k) {
                const auto& a = pl.seq.params[static_cast<std::size_t>(k)];
                err = std::max(err, (a - oracle[static_cast<std::size_t>(k)]).cwiseAbs().maxCoeff() /
                                        std::max(1.0, a.cwiseAbs().maxCoeff()));
            }
            if (!(err < 1e-8)) ++fail_oracle_markov;
        }
        // (d) defining-system residual
        if (!(sa_residual(pl.seq, pl.sr) < 1e-9)) ++fail_sa;
        // (e) Bezoutian congruence, exact integer match
        {
            const auto chk = bezout_inertia_check(f, tol);
            if (!chk.match) ++fail_bezout;
        }
        // (f) verdict against the oracle
        {
            const auto rep = detail::report_from_pipeline(pl, tol);
            if (rep.verdict == Verdict::Indeterminate) {
                ++indeterminate;
            } else if ((rep.verdict == Verdict::Stable) != spec.hurwitz_stable()) {
                ++fail_verdict;
            }
        }
    }
    const bool pass =
        fail_recon == 0 && fail_size == 0 && fail_oracle_markov == 0 && fail_sa == 0 && fail_bezout == 0 &&
        fail_verdict == 0;
    std::ostringstream os;
    os << "200 instances; failures: recon " << fail_recon << ", size " << fail_size << ", markov-oracle "
       << fail_oracle_markov << ", sa " << fail_sa << ", bezout " << fail_bezout << ", verdict " << fail_verdict
       << "; indeterminate " << indeterminate;
    criterion(6, "structural property suite", pass, os.str());
}

// 7. Scalar ground truth: 500 random real polynomials.
void criterion7() {
    gen::Rng rng(777);
    int disagreements = 0, indeterminate = 0;
    const int total = 500;
    for (int trial = 0; trial < total; ++trial) {
        const auto rs = gen::scalar_from_roots(rng, 8, 1e-3);
        const auto rep = hurwitz_check(MatrixPolynomial::scalar(rs.coeffs));
        if (rep.verdict == Verdict::Indeterminate) {
            ++indeterminate;
            continue;
        }
        if ((rep.verdict == Verdict::Stable) != rs.stable) ++disagreements;
    }
    const bool pass = disagreements == 0 && indeterminate * 20 < total;
    std::ostringstream os;
    os << "disagreements " << disagreements << "/" << (total - indeterminate) << ", indeterminate "
       << indeterminate << "/" << total;
    criterion(7, "scalar ground truth", pass, os.str());
}

// 8. Monic reduction: full blocks and an invariant verdict.
void criterion8() {
    gen::Rng rng(888);
    int bad_blocks = 0, bad_match = 0, bad_verdict = 0;
    const Tolerances tol;
    for (int trial = 0; trial < 50; ++trial) {
        const int p = 2 + trial % 2;
        const int deg = 2 + trial % 4;
        const auto f = gen::monic_diag_instance(rng, p, deg);
        const auto pl = run_pipeline(f, tol);

        // every block is full p x p: offsets advance by p
        bool full = true;
        for (std::size_t k = 1; k < pl.hankel.block_offsets_h0.size(); ++k) {
            full = full && pl.hankel.block_offsets_h0[k] - pl.hankel.block_offsets_h0[k - 1] == p;
        }
        for (std::size_t k = 1; k < pl.hankel.block_offsets_h1.size(); ++k) {
            full = full && pl.hankel.block_offsets_h1[k] - pl.hankel.block_offsets_h1[k - 1] == p;
        }
        if (!full) {
            ++bad_blocks;
            continue;
        }
        // the pair coincides with the plain square block Hankel construction
        const int m = pl.sr.m;
        const int top0 = pl.sr.all_even ? m - 1 : m;
        ComplexMatrix h0((top0 + 1) * p, (top0 + 1) * p);
        for (int i = 0; i <= top0; ++i) {
            for (int j = 0; j <= top0; ++j) {
                h0.block(i * p, j * p, p, p) = pl.seq.params[static_cast<std::size_t>(i + j)];
            }
        }
        ComplexMatrix h1(m * p, m * p);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                h1.block(i * p, j * p, p, p) = pl.seq.params[static_cast<std::size_t>(i + j + 1)];
            }
        }
        if ((h0 - pl.hankel.h0).cwiseAbs().maxCoeff() > 0.0 || (h1 - pl.hankel.h1).cwiseAbs().maxCoeff() > 0.0) {
            ++bad_match;
        }
        const auto rep = detail::report_from_pipeline(pl, tol);
        const auto spec = finite_spectrum(f, tol.axis_tol);
        if (rep.verdict != Verdict::Indeterminate &&
            (rep.verdict == Verdict::Stable) != spec.hurwitz_stable()) {
            ++bad_verdict;
        }
    }
    const bool pass = bad_blocks == 0 && bad_match == 0 && bad_verdict == 0;
    std::ostringstream os;
    os << "50 monic instances; bad blocks " << bad_blocks << ", square-construction mismatches " << bad_match
       << ", verdict disagreements " << bad_verdict;
    criterion(8, "monic reduction", pass, os.str());
}

// 9. Perturbation harness (statistical).
void criterion9() {
    const auto f = golden::example_f();
    PerturbConfig cfg;
    for (int k = 0; k <= 5; ++k) cfg.eps_grid.push_back(std::pow(10.0, -3.5 + 0.1 * k));
    cfg.samples_per_eps = 200;
    cfg.seed = 42;
    const auto res = run_experiment(f, cfg);

    const auto& base = res.per_eps.front();  // eps = 1e-3.5
    const int violations = base.cat_i + base.cat_ii;
    const double r1 = base.mean_r_f[0];
    const bool r1_ok = r1 > 5.43e-4 / 10.0 && r1 < 5.43e-4 * 10.0;

    // log-log slope of the mean relative eigenvalue error of F against eps
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int npts = static_cast<int>(res.per_eps.size());
    for (const auto& er : res.per_eps) {
        const double x = std::log10(er.eps);
        const double y = std::log10(er.mean_r_f_all);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    const bool pass = violations == 0 && base.failures == 0 && r1_ok && slope >= 0.8 && slope <= 1.2;
    std::ostringstream os;
    os.precision(3);
    os << "violations " << violations << "/200 at eps=1e-3.5, mean r1(F) " << r1 << " (table value 5.43e-4), slope "
       << slope;
    criterion(9, "perturbation harness", pass, os.str());
}

}  // namespace

int main() {
    const Tolerances tol;
    const auto pl = run_pipeline(golden::example_f(), tol);
    const auto rep = detail::report_from_pipeline(pl, tol);

    criterion1(pl);
    criterion2(pl);
    criterion3(pl, rep);
    criterion4(rep);
    criterion5(rep);
    criterion6();
    criterion7();
    criterion8();
    criterion9();

    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
