// Timing comparison between the serial reference kernels and the
// OpenMP-parallel paths: layer assembly, field evaluation, Sommerfeld
// operator evaluation and the dense LU.
#include "hsbem/halfspace.hpp"
#include "hsbem/linalg.hpp"
#include "hsbem/potentials.hpp"
#include "hsbem/sommerfeld.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <omp.h>
#include <random>

using namespace hsbem;

namespace {

double seconds(const std::function<void()>& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, double work_units)
{
    std::printf("%-28s %9.3f s %9.3f s   speedup %5.2fx   %8.1f Munits/s\n", name, serial,
                parallel, serial / parallel, work_units / parallel / 1e6);
}

} // namespace

int main()
{
    std::printf("threads: %d\n\n", omp_get_max_threads());
    const double k = 5.0;

    // layer assembly on a circle
    {
        const Mesh circle = discretize_circle({0.0, 2.0}, 1.0, 600);
        const Collocation c = collocation_of(circle);
        ComplexMatrix A;
        const double ts = seconds([&] {
            A = assemble_layer_serial(LayerKind::Hypersingular, c, circle, k, {}, 0);
        });
        ComplexMatrix B;
        const double tp = seconds([&] {
            B = assemble_layer(LayerKind::Hypersingular, c, circle, k, {}, 0);
        });
        double diff = 0.0;
        for (std::size_t i = 0; i < A.a.size(); ++i)
            diff = std::max(diff, std::abs(A.a[i] - B.a[i]));
        report("assemble N (600x600)", ts, tp, 600.0 * 600.0);
        std::printf("  max |serial - parallel| = %.3g\n", diff);
    }

    // field evaluation
    {
        const Mesh circle = discretize_circle({0.0, 2.0}, 1.0, 400);
        std::vector<Complex> sigma(circle.size(), Complex(1.0, 0.5));
        std::vector<Vec2> pts;
        for (int i = 0; i < 4000; ++i)
            pts.push_back({-6.0 + 12.0 * i / 3999.0, 5.0});
        std::vector<Complex> u1, u2;
        const double ts = seconds(
            [&] { u1 = eval_layer_serial(LayerKind::Single, circle, sigma, pts, k); });
        const double tp = seconds([&] { u2 = eval_layer(LayerKind::Single, circle, sigma, pts, k); });
        double diff = 0.0;
        for (std::size_t i = 0; i < u1.size(); ++i)
            diff = std::max(diff, std::abs(u1[i] - u2[i]));
        report("eval S (400 panels x 4k)", ts, tp, 400.0 * 4000.0);
        std::printf("  max |serial - parallel| = %.3g\n", diff);
    }

    // Sommerfeld operator
    {
        const SommerfeldRule rule = build_rule(15.0, 2.0, 40.0);
        std::vector<Complex> xi(rule.size(), Complex(0.3, -0.1));
        std::vector<Vec2> pts;
        for (int i = 0; i < 3000; ++i)
            pts.push_back({-5.0 + 10.0 * i / 2999.0, 0.5});
        std::vector<Complex> u1, u2;
        const double ts = seconds([&] { u1 = eval_F(rule, xi, pts, k, false); });
        const double tp = seconds([&] { u2 = eval_F(rule, xi, pts, k, true); });
        double diff = 0.0;
        for (std::size_t i = 0; i < u1.size(); ++i)
            diff = std::max(diff, std::abs(u1[i] - u2[i]));
        report("eval F (1201 nodes x 3k)", ts, tp, (double)rule.size() * 3000.0);
        std::printf("  max |serial - parallel| = %.3g\n", diff);
    }

    // dense LU
    {
        const int n = 1500;
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        ComplexMatrix A(n, n);
        for (auto& v : A.a)
            v = Complex(dist(rng), dist(rng));
        for (int i = 0; i < n; ++i)
            A(i, i) += Complex(8.0, 0.0);
        ComplexMatrix A2 = A;
        LuFactors f1, f2;
        const double ts = seconds([&] { f1 = lu_factor_serial(std::move(A)); });
        const double tp = seconds([&] { f2 = lu_factor(std::move(A2), true); });
        const double flops = 8.0 / 3.0 * n * (double)n * n;
        std::printf("%-28s %9.3f s %9.3f s   speedup %5.2fx   %8.2f GF/s serial, %.2f GF/s parallel\n",
                    "LU factor (1500)", ts, tp, ts / tp, flops / ts / 1e9, flops / tp / 1e9);
        double diff = 0.0;
        for (std::size_t i = 0; i < f1.lu.a.size(); ++i)
            diff = std::max(diff, std::abs(f1.lu.a[i] - f2.lu.a[i]));
        std::printf("  max |serial - parallel| = %.3g\n", diff);
    }
    return 0;
}
