#include "agd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "agd/diagnostics.hpp"
#include "agd/discrete.hpp"
#include "agd/divergence.hpp"
#include "agd/kernels.hpp"
#include "agd/numeric.hpp"
#include "agd/stochastic.hpp"
#include "agd/targets.hpp"
#include "agd/update.hpp"

namespace agd {

namespace {

std::vector<TransformConfig> admissible_grid() {
    std::vector<TransformConfig> out;
    for (double eta : {0.1, 0.5, 1.0}) {
        TransformConfig c;
        c.family = TransformFamily::Exponential;
        c.alpha = AlphaParam{1.0};
        c.eta0 = eta;
        out.push_back(c);
    }
    for (double alpha : {-1.0, 0.0, 0.5, 2.0}) {
        for (double eta : {0.5, 1.0}) {
            for (double kappa_mag : {0.0, 0.5}) {
                TransformConfig c;
                c.family = TransformFamily::Power;
                c.alpha = AlphaParam{alpha};
                c.eta0 = eta;
                c.kappa = alpha > 1.0 ? kappa_mag : -kappa_mag;
                out.push_back(c);
            }
        }
    }
    return out;
}

// Integrated importance-sampling route for the power update at
// (alpha=0, eta=1, kappa=0) on a unit-row-mass discrete problem:
// new lambda_j propto lambda_j sum_i k_ji p_i / (mu k)_i.
std::vector<double> pmc_exact_route(const DiscreteProblem& problem,
                                    std::span<const double> weights) {
    const auto log_mix = problem.log_mixture_on_grid(weights);
    std::vector<double> out(problem.atom_count(), 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < problem.atom_count(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < problem.grid_count(); ++i) {
            s += problem.kernel_at(j, i) *
                 std::exp(problem.log_mass_at(i) - log_mix[i]);
        }
        out[j] = weights[j] * s;
        total += out[j];
    }
    for (double& v : out) v /= total;
    return out;
}

// Sample-based importance-sampling route:
// new lambda_j propto lambda_j (1/M) sum_m k_j(Y_m) p(Y_m) / (mu k(Y_m))^2.
std::vector<double> pmc_sample_route(std::span<const double> weights,
                                     std::span<const double> logk,
                                     std::span<const double> log_mix,
                                     std::span<const double> log_p,
                                     std::size_t m) {
    const std::size_t j_count = weights.size();
    std::vector<double> out(j_count, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < j_count; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            s += std::exp(logk[j * m + i] + log_p[i] - 2.0 * log_mix[i]);
        }
        out[j] = weights[j] * s / static_cast<double>(m);
        total += out[j];
    }
    for (double& v : out) v /= total;
    return out;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct TvSetup {
    ParticleMixture mix;
    GaussianKernel kernel;
    std::shared_ptr<TargetModel> target;
    std::vector<double> exact_step;
    TransformConfig config;
};

// Fixed 5-atom, d=2 mixture against the bimodal toy target; the exact step
// is computed on a fine quadrature grid mapped onto a DiscreteProblem
// (kernel entries and masses both carry the cell area, so density ratios are
// unchanged and sums approximate integrals).
TvSetup make_tv_setup() {
    std::vector<double> atoms{-2.0, -1.5, 0.0, 0.5, 1.5,
                              2.0,  -0.5, 1.0, 2.5, -2.5};
    // atoms above are x-coords then y-coords interleaved per atom:
    atoms = {-2.0, 2.0, -1.5, -0.5, 0.0, 1.0, 0.5, 2.5, 1.5, -2.5};
    std::vector<double> weights{0.3, 0.25, 0.2, 0.15, 0.1};
    TvSetup setup{ParticleMixture(atoms, weights, 2), GaussianKernel{1.0},
                  toy_gaussian_mixture(2), {}, {}};
    setup.config.family = TransformFamily::Power;
    setup.config.alpha = AlphaParam{0.5};
    setup.config.eta0 = 1.0;
    setup.config.kappa = 0.0;

    const double lo = -9.0;
    const double hi = 9.0;
    const std::size_t n_side = 250;
    const double step = (hi - lo) / static_cast<double>(n_side - 1);
    const double cell = step * step;
    const std::size_t grid_count = n_side * n_side;
    const std::size_t j_count = setup.mix.atom_count();
    std::vector<double> kernel_matrix(j_count * grid_count);
    std::vector<double> masses(grid_count);
    std::vector<double> point(2);
    for (std::size_t gy = 0; gy < n_side; ++gy) {
        for (std::size_t gx = 0; gx < n_side; ++gx) {
            const std::size_t i = gy * n_side + gx;
            point[0] = lo + static_cast<double>(gx) * step;
            point[1] = lo + static_cast<double>(gy) * step;
            masses[i] = std::exp(setup.target->log_density_unnormalized(point)) *
                        cell;
            for (std::size_t j = 0; j < j_count; ++j) {
                kernel_matrix[j * grid_count + i] =
                    std::exp(kernel_log_density(setup.mix.atom(j), point,
                                                setup.kernel)) *
                    cell;
            }
        }
    }
    DiscreteProblem problem(std::move(kernel_matrix), std::move(masses),
                            j_count, grid_count);
    setup.exact_step =
        exact_one_step(problem, setup.mix.weights(), setup.config, 1.0);
    return setup;
}

double tv_one_seed(const TvSetup& setup, std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    const auto samples = sample_mixture(setup.mix, setup.kernel, m, rng);
    const auto est = estimate_gradient(setup.mix, setup.kernel, *setup.target,
                                       samples, m, setup.config.alpha);
    const auto stochastic =
        update_weights(setup.mix.weights(), est, setup.config, 1.0);
    return tv_distance(stochastic, setup.exact_step);
}

}  // namespace

OracleReport run_oracle_suite(std::uint64_t seed) {
    OracleReport report;
    const auto configs = admissible_grid();

    // --- objective lower bound -------------------------------------------
    {
        PropertyResult r;
        r.name = "psi_lower_bound";
        Rng rng(derive_seed(seed, 101));
        double worst = -1e300;
        for (int inst = 0; inst < 40; ++inst) {
            const auto problem = random_problem(rng);
            const auto w = random_simplex(rng, problem.atom_count());
            for (double a : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
                const double psi = psi_exact(problem, w, AlphaParam{a});
                const double bound =
                    f_alpha_tilde(problem.total_mass(), AlphaParam{a});
                worst = std::max(worst, bound - psi);
                ++r.instances;
            }
        }
        r.worst = worst;
        r.pass = worst <= 1e-12;
        report.results.push_back(r);
    }

    // --- per-step decrease -------------------------------------------------
    {
        PropertyResult r;
        r.name = "one_step_decrease";
        Rng rng(derive_seed(seed, 102));
        double worst = -1e300;
        for (int inst = 0; inst < 10; ++inst) {
            const auto problem = random_problem(rng);
            const auto w0 = random_simplex(rng, problem.atom_count());
            for (const auto& config : configs) {
                const auto trace = run_exact(problem, w0, config, 20);
                for (std::size_t n = 0; n + 1 < trace.psi.size(); ++n) {
                    worst = std::max(worst, trace.psi[n + 1] - trace.psi[n]);
                    ++r.instances;
                }
            }
        }
        r.worst = worst;
        r.pass = worst <= 1e-10;
        report.results.push_back(r);
    }

    // --- variance decrease bound -------------------------------------------
    {
        PropertyResult r;
        r.name = "variance_decrease_bound";
        Rng rng(derive_seed(seed, 103));
        double worst = -1e300;
        for (int inst = 0; inst < 10; ++inst) {
            const auto problem = random_problem(rng);
            const auto w0 = random_simplex(rng, problem.atom_count());
            for (const auto& config : configs) {
                const auto trace = run_exact(problem, w0, config, 20);
                double lo = 1e300;
                double hi = -1e300;
                for (const auto& g : trace.gradients) {
                    for (double v : g) {
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                }
                padded_range(config, lo, hi);
                for (std::size_t n = 0; n < trace.gradients.size(); ++n) {
                    const auto constants = monotonicity_constants(
                        config, lo, hi, trace.etas[n]);
                    const double decrease = trace.psi[n] - trace.psi[n + 1];
                    const double var = gradient_variance(trace.weights[n],
                                                         trace.gradients[n]);
                    worst = std::max(worst,
                                     0.5 * constants.c * var - decrease);
                    ++r.instances;
                }
            }
        }
        r.worst = worst;
        r.pass = worst <= 1e-8;
        report.results.push_back(r);
    }

    // --- first variation ----------------------------------------------------
    {
        PropertyResult r;
        r.name = "first_variation";
        Rng rng(derive_seed(seed, 104));
        double worst = 0.0;
        for (int inst = 0; inst < 10; ++inst) {
            const auto problem = random_problem(rng);
            const auto w = random_simplex(rng, problem.atom_count());
            for (double a : {0.0, 0.5, 1.0, 2.0}) {
                worst = std::max(worst, first_variation_check(
                                            problem, w, AlphaParam{a}, 1e-5));
                ++r.instances;
            }
        }
        r.worst = worst;
        r.pass = worst <= 1e-4;
        report.results.push_back(r);
    }

    // --- importance-update equivalence (exact route) ------------------------
    {
        PropertyResult r;
        r.name = "pmc_equivalence_exact";
        Rng rng(derive_seed(seed, 105));
        TransformConfig config;
        config.family = TransformFamily::Power;
        config.alpha = AlphaParam{0.0};
        config.eta0 = 1.0;
        double worst = 0.0;
        for (int inst = 0; inst < 20; ++inst) {
            const auto problem = random_problem(rng);
            const auto w = random_simplex(rng, problem.atom_count());
            const auto via_transform = exact_one_step(problem, w, config, 1.0);
            const auto via_pmc = pmc_exact_route(problem, w);
            for (std::size_t j = 0; j < w.size(); ++j) {
                worst = std::max(worst,
                                 std::fabs(via_transform[j] - via_pmc[j]));
            }
            ++r.instances;
        }
        r.worst = worst;
        r.pass = worst <= 1e-12;
        report.results.push_back(r);
    }

    // --- importance-update equivalence (sampled route) -----------------------
    {
        PropertyResult r;
        r.name = "pmc_equivalence_sampled";
        Rng rng(derive_seed(seed, 106));
        TransformConfig config;
        config.family = TransformFamily::Power;
        config.alpha = AlphaParam{0.0};
        config.eta0 = 1.0;
        const auto target = toy_gaussian_mixture(2);
        double worst = 0.0;
        for (int inst = 0; inst < 20; ++inst) {
            const std::size_t j_count = 3 + static_cast<std::size_t>(
                                                rng.uniform01() * 4);
            std::vector<double> atoms(j_count * 2);
            for (double& v : atoms) v = 3.0 * rng.normal();
            const auto w = random_simplex(rng, j_count);
            ParticleMixture mix(atoms, w, 2);
            GaussianKernel kernel{1.0};
            const std::size_t m = 50;
            const auto samples = sample_mixture(mix, kernel, m, rng);
            const auto est = estimate_gradient(mix, kernel, *target, samples,
                                               m, config.alpha);
            const auto via_transform = update_weights(w, est, config, 1.0);

            std::vector<double> logk;
            kernel_log_matrix(mix, kernel, samples, m, logk);
            const auto logw = log_weights_of(w);
            std::vector<double> log_mix;
            log_mixture_from_matrix(logw, logk, m, log_mix);
            std::vector<double> log_p(m);
            for (std::size_t i = 0; i < m; ++i) {
                log_p[i] = target->log_density_unnormalized(
                    std::span<const double>(samples.data() + i * 2, 2));
            }
            const auto via_pmc =
                pmc_sample_route(w, logk, log_mix, log_p, m);
            for (std::size_t j = 0; j < w.size(); ++j) {
                worst = std::max(worst,
                                 std::fabs(via_transform[j] - via_pmc[j]));
            }
            ++r.instances;
        }
        r.worst = worst;
        r.pass = worst <= 1e-12;
        report.results.push_back(r);
    }

    // --- softmax shift invariance -------------------------------------------
    {
        PropertyResult r;
        r.name = "exponential_shift_invariance";
        Rng rng(derive_seed(seed, 107));
        TransformConfig config;
        config.family = TransformFamily::Exponential;
        config.alpha = AlphaParam{1.0};
        config.eta0 = 0.7;
        double worst = 0.0;
        for (int inst = 0; inst < 500; ++inst) {
            const std::size_t j_count =
                2 + static_cast<std::size_t>(rng.uniform01() * 7);
            const auto w = random_simplex(rng, j_count);
            std::vector<double> b(j_count);
            for (double& v : b) v = 10.0 * rng.normal();
            const double shift = 20.0 * rng.normal();
            auto shifted = b;
            for (double& v : shifted) v += shift;
            const auto u1 = apply_transform_update(w, b, config, 0.7);
            const auto u2 = apply_transform_update(w, shifted, config, 0.7);
            for (std::size_t j = 0; j < j_count; ++j) {
                worst = std::max(worst, std::fabs(u1[j] - u2[j]));
            }
            ++r.instances;
        }
        r.worst = worst;
        r.pass = worst <= 1e-14;
        report.results.push_back(r);
    }

    // --- stochastic-to-exact TV shrinkage ------------------------------------
    {
        PropertyResult r;
        r.name = "tv_convergence";
        const auto setup = make_tv_setup();
        std::vector<double> tv_small;
        std::vector<double> tv_large;
        const int seeds = 30;
        for (int s = 0; s < seeds; ++s) {
            tv_small.push_back(
                tv_one_seed(setup, 100, derive_seed(seed, 108, s)));
            tv_large.push_back(
                tv_one_seed(setup, 10000, derive_seed(seed, 109, s)));
        }
        const double med_small = median_of(tv_small);
        const double med_large = median_of(tv_large);
        r.instances = static_cast<std::size_t>(seeds);
        r.worst = med_large / med_small;
        r.pass = med_large <= 0.2 * med_small && med_large <= 0.02;
        std::ostringstream note;
        note << "median tv M=1e2: " << med_small << ", M=1e4: " << med_large;
        r.note = note.str();
        report.results.push_back(r);
    }

    // --- admissibility validators --------------------------------------------
    {
        PropertyResult r;
        r.name = "admissibility_validators";
        std::size_t checked = 0;
        bool ok = true;
        auto expect = [&](bool cond) {
            ok = ok && cond;
            ++checked;
        };
        TransformConfig c;
        c.family = TransformFamily::Power;
        c.alpha = AlphaParam{0.5};
        c.eta0 = 1.0;
        c.kappa = 0.0;
        expect(validate_monotonicity(c).ok());
        c.kappa = 0.1;  // seeded violation: (alpha-1)*kappa < 0
        expect(validate_monotonicity(c).verdict == Admissibility::Violation);
        c.kappa = 0.0;
        c.family = TransformFamily::Exponential;
        c.alpha = AlphaParam{1.0};
        c.eta0 = 1.5;
        expect(validate_monotonicity(c).verdict == Admissibility::Violation);
        c.eta0 = 1.0;
        expect(validate_monotonicity(c).ok());
        expect(validate_convergence(c, 1.0).verdict ==
               Admissibility::Violation);  // table row needs eta < 1
        c.eta0 = 0.9;
        expect(validate_convergence(c, 1.0).ok());
        c.alpha = AlphaParam{0.5};
        c.eta0 = 0.6;
        expect(validate_convergence(c, 1.0).ok());  // 0.6 < 1/(0.5*1+1)
        c.eta0 = 0.7;
        expect(validate_convergence(c, 1.0).verdict ==
               Admissibility::Violation);
        c.family = TransformFamily::Power;
        c.alpha = AlphaParam{2.0};
        c.eta0 = 1.0;
        c.kappa = 0.0;
        expect(validate_convergence(c, 1.0).verdict ==
               Admissibility::Violation);  // alpha>1 needs kappa>0
        c.kappa = 0.5;
        expect(validate_convergence(c, 1.0).ok());
        r.instances = checked;
        r.worst = ok ? 0.0 : 1.0;
        r.pass = ok;
        report.results.push_back(r);
    }

    return report;
}

std::string render_report(const OracleReport& report) {
    std::ostringstream out;
    for (const auto& r : report.results) {
        out << (r.pass ? "PASS" : "FAIL") << ' ' << r.name
            << " instances=" << r.instances << " worst=" << r.worst;
        if (!r.note.empty()) out << " (" << r.note << ')';
        out << '\n';
    }
    return out.str();
}

}  // namespace agd
