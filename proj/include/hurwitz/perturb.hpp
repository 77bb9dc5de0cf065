#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "hurwitz/eig_oracle.hpp"
#include "hurwitz/stability.hpp"

namespace hurwitz {

struct PerturbConfig {
    std::vector<double> eps_grid;  // ascending
    int samples_per_eps = 100;
    std::uint64_t seed = 0;
    enum class EntryKind { Real, Complex } entry_kind = EntryKind::Real;
};

struct SampleRecord {
    bool ok = false;
    std::string failure;  // set when a solver or structure failure excluded the sample
    bool f_unstable = false;
    bool h_escaped = false;  // some eigenvalue of H0 or H1 left the open right half-plane
    double r_f_mean = 0.0, r_h0_mean = 0.0, r_h1_mean = 0.0;
    std::vector<double> r_f, r_h0, r_h1;  // relative eigenvalue errors, indexed like the references
};

struct EpsRecord {
    double eps = 0.0;
    int samples = 0;
    int failures = 0;
    int count_f_unstable = 0;
    int count_h_escaped = 0;
    // categories of the relaxed-equivalence experiment:
    // (i) F~ unstable while all H eigenvalues stay in C+, (ii) the converse, (iii) both events
    int cat_i = 0, cat_ii = 0, cat_iii = 0;
    std::vector<double> mean_r_f, mean_r_h0, mean_r_h1;
    double mean_r_f_all = 0.0, mean_r_h0_all = 0.0, mean_r_h1_all = 0.0;
    std::vector<SampleRecord> per_sample;
};

struct PerturbResult {
    PerturbConfig config;
    std::vector<Complex> f_eigs_ref;  // ascending real part, ties by descending imaginary part
    std::vector<double> h0_eigs_ref;  // descending
    std::vector<double> h1_eigs_ref;  // descending
    std::vector<EpsRecord> per_eps;
    std::string notes;
};

namespace detail {

// splitmix64: deterministic stream generator independent of the standard
// library's distribution internals, so results are bit-stable per (seed,
// eps index, sample index).
class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) : state_(mix(mix(mix(seed) ^ a) ^ b)) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in (-1, 1)
    double uniform_symmetric() { return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0; }

  private:
    static std::uint64_t mix(std::uint64_t x) {
        x = (x ^ (x >> 33)) * 0xff51afd7ed558ccdull;
        x = (x ^ (x >> 33)) * 0xc4ceb9fe1a85ec53ull;
        return x ^ (x >> 33);
    }
    std::uint64_t state_;
};

// Greedy nearest-distance assignment of perturbed values to reference values;
// returns |match - ref| / |ref| indexed like the reference list.
inline std::vector<double> greedy_relative_errors(const std::vector<Complex>& ref,
                                                  const std::vector<Complex>& pert) {
    struct Pair {
        double d;
        std::size_t a, b;
    };
    std::vector<Pair> pairs;
    pairs.reserve(ref.size() * pert.size());
    for (std::size_t a = 0; a < ref.size(); ++a) {
        for (std::size_t b = 0; b < pert.size(); ++b) {
            pairs.push_back({std::abs(ref[a] - pert[b]), a, b});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });
    std::vector<char> used_a(ref.size(), 0), used_b(pert.size(), 0);
    std::vector<double> out(ref.size(), 0.0);
    for (const Pair& pr : pairs) {
        if (used_a[pr.a] || used_b[pr.b]) continue;
        used_a[pr.a] = used_b[pr.b] = 1;
        out[pr.a] = pr.d / std::max(1e-300, std::abs(ref[pr.a]));
    }
    return out;
}

// Eigenvalues of a (generally non-Hermitian) matrix, sorted by descending
// real part.  The perturbed Hankel matrices and their references go through
// this same routine so that a zero perturbation yields exactly zero error.
inline std::vector<Complex> general_eigenvalues_descending(const ComplexMatrix& m) {
    std::vector<Complex> out;
    if (m.rows() == 0) return out;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
    if (es.info() != Eigen::Success) {
        throw SolverFailureError("complex eigensolver failed on a Hankel matrix");
    }
    out.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return out;
}

inline int worker_count(int samples) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("HANKEL_HURWITZ_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) hw = std::min(hw, cap);
    }
    return std::max(1, std::min(hw, samples));
}

}  // namespace detail

/**
 * Structured coefficient perturbation: the coefficient of z^i receives
 * eps * dP_i whose column k is nonzero only when cdeg F[k] >= i, entries
 * uniform in (-1,1).  The sparsity pattern never raises a column degree, so
 * column degrees and hcdc nonsingularity survive generically.
 */
inline MatrixPolynomial sample_perturbation(const MatrixPolynomial& f, const std::vector<int>& cdeg, double eps,
                                            detail::Stream& rng,
                                            PerturbConfig::EntryKind kind = PerturbConfig::EntryKind::Real) {
    const int p = f.size();
    const int n = f.degree();
    std::vector<ComplexMatrix> cs = f.coefficients();
    for (int power = n; power >= 0; --power) {
        ComplexMatrix& target = cs[static_cast<std::size_t>(n - power)];
        for (int c = 0; c < p; ++c) {
            if (cdeg[static_cast<std::size_t>(c)] < power) continue;
            for (int r = 0; r < p; ++r) {
                const double re = rng.uniform_symmetric();
                const double im = kind == PerturbConfig::EntryKind::Complex ? rng.uniform_symmetric() : 0.0;
                target(r, c) += eps * Complex(re, im);
            }
        }
    }
    return MatrixPolynomial(std::move(cs));
}

/**
 * Perturbation-robustness experiment around a column reduced F: for each eps
 * and sample, perturb, test Hurwitz stability by the eigenvalue oracle, test
 * whether the (generally non-Hermitian) Hankel eigenvalues stay in the open
 * right half-plane, and record nearest-match relative eigenvalue errors.
 * Deterministic for a fixed (seed, grid, samples) regardless of thread count.
 */
inline PerturbResult run_experiment(const MatrixPolynomial& f, const PerturbConfig& config,
                                    const Tolerances& tol = {}) {
    PerturbResult result;
    result.config = config;
    result.notes =
        "eigenvalue matching: greedy nearest-distance; F reference order: ascending real part "
        "(ties by descending imaginary part); H reference order: descending; perturbation entries: " +
        std::string(config.entry_kind == PerturbConfig::EntryKind::Real ? "real" : "complex") +
        " uniform(-1,1)";

    const ColumnProfile prof = column_profile(f, tol.zero_tol);
    const Pipeline ref = run_pipeline(f, tol);
    const SpectrumReport ref_spec = finite_spectrum(f, tol.axis_tol);

    result.f_eigs_ref = ref_spec.finite_eigs;
    std::sort(result.f_eigs_ref.begin(), result.f_eigs_ref.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() > b.imag();
    });
    const std::vector<Complex> h0_ref_c = detail::general_eigenvalues_descending(ref.hankel.h0);
    const std::vector<Complex> h1_ref_c = detail::general_eigenvalues_descending(ref.hankel.h1);
    for (const Complex& z : h0_ref_c) result.h0_eigs_ref.push_back(z.real());
    for (const Complex& z : h1_ref_c) result.h1_eigs_ref.push_back(z.real());

    auto run_sample = [&](std::size_t eps_idx, int sample_idx) -> SampleRecord {
        SampleRecord rec;
        detail::Stream rng(config.seed, eps_idx, static_cast<std::uint64_t>(sample_idx));
        try {
            const MatrixPolynomial pert =
                sample_perturbation(f, prof.cdeg, config.eps_grid[eps_idx], rng, config.entry_kind);

            const SpectrumReport spec = finite_spectrum(pert, tol.axis_tol);
            rec.f_unstable = !spec.hurwitz_stable();

            const Pipeline pl = run_pipeline(pert, tol);  // Hermitian requirement relaxed here
            const std::vector<Complex> e0 = detail::general_eigenvalues_descending(pl.hankel.h0);
            const std::vector<Complex> e1 = detail::general_eigenvalues_descending(pl.hankel.h1);
            rec.h_escaped = false;
            for (const Complex& z : e0) rec.h_escaped = rec.h_escaped || z.real() <= 0.0;
            for (const Complex& z : e1) rec.h_escaped = rec.h_escaped || z.real() <= 0.0;

            if (spec.finite_eigs.size() != result.f_eigs_ref.size()) {
                throw NotRegularError("perturbation changed the finite eigenvalue count");
            }
            rec.r_f = detail::greedy_relative_errors(result.f_eigs_ref, spec.finite_eigs);
            rec.r_h0 = detail::greedy_relative_errors(h0_ref_c, e0);
            rec.r_h1 = detail::greedy_relative_errors(h1_ref_c, e1);
            auto mean = [](const std::vector<double>& v) {
                if (v.empty()) return 0.0;
                double s = 0.0;
                for (double x : v) s += x;
                return s / static_cast<double>(v.size());
            };
            rec.r_f_mean = mean(rec.r_f);
            rec.r_h0_mean = mean(rec.r_h0);
            rec.r_h1_mean = mean(rec.r_h1);
            rec.ok = true;
        } catch (const Error& e) {
            rec.ok = false;
            rec.failure = e.what();
        }
        return rec;
    };

    const int total = static_cast<int>(config.eps_grid.size()) * config.samples_per_eps;
    std::vector<SampleRecord> flat(static_cast<std::size_t>(total));
    std::atomic<int> cursor{0};
    const int workers = detail::worker_count(total);
    auto worker = [&]() {
        for (;;) {
            const int k = cursor.fetch_add(1);
            if (k >= total) break;
            const std::size_t eps_idx = static_cast<std::size_t>(k) / static_cast<std::size_t>(config.samples_per_eps);
            const int sample_idx = k % config.samples_per_eps;
            flat[static_cast<std::size_t>(k)] = run_sample(eps_idx, sample_idx);
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t eps_idx = 0; eps_idx < config.eps_grid.size(); ++eps_idx) {
        EpsRecord er;
        er.eps = config.eps_grid[eps_idx];
        er.samples = config.samples_per_eps;
        er.mean_r_f.assign(result.f_eigs_ref.size(), 0.0);
        er.mean_r_h0.assign(result.h0_eigs_ref.size(), 0.0);
        er.mean_r_h1.assign(result.h1_eigs_ref.size(), 0.0);
        int ok_count = 0;
        for (int sidx = 0; sidx < config.samples_per_eps; ++sidx) {
            const SampleRecord& rec =
                flat[eps_idx * static_cast<std::size_t>(config.samples_per_eps) + static_cast<std::size_t>(sidx)];
            er.per_sample.push_back(rec);
            if (!rec.ok) {
                ++er.failures;
                continue;
            }
            ++ok_count;
            er.count_f_unstable += rec.f_unstable ? 1 : 0;
            er.count_h_escaped += rec.h_escaped ? 1 : 0;
            er.cat_i += (rec.f_unstable && !rec.h_escaped) ? 1 : 0;
            er.cat_ii += (!rec.f_unstable && rec.h_escaped) ? 1 : 0;
            er.cat_iii += (rec.f_unstable && rec.h_escaped) ? 1 : 0;
            for (std::size_t k = 0; k < rec.r_f.size(); ++k) er.mean_r_f[k] += rec.r_f[k];
            for (std::size_t k = 0; k < rec.r_h0.size(); ++k) er.mean_r_h0[k] += rec.r_h0[k];
            for (std::size_t k = 0; k < rec.r_h1.size(); ++k) er.mean_r_h1[k] += rec.r_h1[k];
            er.mean_r_f_all += rec.r_f_mean;
            er.mean_r_h0_all += rec.r_h0_mean;
            er.mean_r_h1_all += rec.r_h1_mean;
        }
        if (ok_count > 0) {
            const double inv = 1.0 / static_cast<double>(ok_count);
            for (double& v : er.mean_r_f) v *= inv;
            for (double& v : er.mean_r_h0) v *= inv;
            for (double& v : er.mean_r_h1) v *= inv;
            er.mean_r_f_all *= inv;
            er.mean_r_h0_all *= inv;
            er.mean_r_h1_all *= inv;
        }
        result.per_eps.push_back(std::move(er));
    }
    return result;
}

}  // namespace hurwitz
