// Timing comparison of the serial reference kernels against the OpenMP
// versions: log-kernel matrix fill, per-point mixture density, gradient
// estimation, and the exact-world gradient. Prints one line per kernel and
// size with both times and the speedup.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "agd/discrete.hpp"
#include "agd/kernels.hpp"
#include "agd/stochastic.hpp"
#include "agd/targets.hpp"

using namespace agd;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    using clock = std::chrono::steady_clock;
    fn();  // warm up
    const auto start = clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto stop = clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() /
           reps;
}

void report(const char* name, std::size_t work, double serial_ms,
            double parallel_ms) {
    std::printf("%-28s n=%-9zu serial %8.3f ms   parallel %8.3f ms   x%.2f\n",
                name, work, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
    Rng rng(42);
    const std::size_t d = 8;

    for (std::size_t j_count : {100ul, 400ul}) {
        for (std::size_t m : {1000ul, 10000ul}) {
            std::vector<double> atoms(j_count * d);
            for (double& v : atoms) v = 2.0 * rng.normal();
            auto weights = random_simplex(rng, j_count);
            ParticleMixture mix(atoms, weights, d);
            GaussianKernel kernel{0.8};
            auto samples = sample_mixture(mix, kernel, m, rng);

            std::vector<double> logk;
            const double t_ser = time_ms(
                [&] { kernel_log_matrix_serial(mix, kernel, samples, m, logk); },
                3);
            const double t_par = time_ms(
                [&] { kernel_log_matrix_parallel(mix, kernel, samples, m, logk); },
                3);
            report("kernel_log_matrix", j_count * m, t_ser, t_par);

            const auto logw = log_weights_of(weights);
            std::vector<double> log_mix;
            const double t_ser2 = time_ms(
                [&] {
                    log_mixture_from_matrix_serial(logw, logk, m, log_mix);
                },
                3);
            const double t_par2 = time_ms(
                [&] {
                    log_mixture_from_matrix_parallel(logw, logk, m, log_mix);
                },
                3);
            report("log_mixture_from_matrix", j_count * m, t_ser2, t_par2);

            const auto target = toy_gaussian_mixture(d);
            const double t_ser3 = time_ms(
                [&] {
                    estimate_gradient_serial(mix, kernel, *target, samples, m,
                                             AlphaParam{0.5});
                },
                3);
            const double t_par3 = time_ms(
                [&] {
                    estimate_gradient(mix, kernel, *target, samples, m,
                                      AlphaParam{0.5});
                },
                3);
            report("estimate_gradient", j_count * m, t_ser3, t_par3);
        }
    }

    {
        Rng prng(7);
        RandomProblemParams params;
        params.min_atoms = params.max_atoms = 64;
        params.min_grid = params.max_grid = 4000;
        const auto problem = random_problem(prng, params);
        const auto w = random_simplex(prng, problem.atom_count());
        const double t_ser = time_ms(
            [&] { exact_gradient_serial(problem, w, AlphaParam{0.5}); }, 5);
        const double t_par = time_ms(
            [&] { exact_gradient(problem, w, AlphaParam{0.5}); }, 5);
        report("exact_gradient", problem.atom_count() * problem.grid_count(),
               t_ser, t_par);
    }
    return 0;
}
