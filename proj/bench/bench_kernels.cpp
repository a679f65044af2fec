// Timing harness comparing the serial reference kernels against their
// OpenMP-parallel counterparts.
//
// Usage: bench_kernels [--quick]
#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>

#include "mincw/alpha.hpp"
#include "mincw/search.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mincw;

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-34s serial %8.3fs   parallel %8.3fs   speedup %.2fx\n", name, serial,
                parallel, parallel > 0 ? serial / parallel : 0.0);
}

LinearCode random_code(int q, int k, int n, std::mt19937& rng) {
    auto geom = Geometry::get(q, k);
    std::vector<uint32_t> idx(geom->num_points());
    for (uint32_t i = 0; i < geom->num_points(); ++i) idx[i] = i;
    while (true) {
        std::shuffle(idx.begin(), idx.end(), rng);
        BitVec mask(geom->num_points());
        for (int i = 0; i < n; ++i) mask.set(idx[size_t(i)]);
        if (geom->section_rank(mask, k) == k) return code_from_points(Field::get(q), k, mask);
    }
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; parallel kernels run serially\n");
#endif

    {
        // count_minimal over a batch of medium codes
        std::mt19937 rng(1);
        std::vector<LinearCode> codes;
        int reps = quick ? 40 : 400;
        for (int i = 0; i < reps; ++i) codes.push_back(random_code(4, 4, 60, rng));
        uint64_t acc1 = 0, acc2 = 0;
        double t0 = now();
        for (const auto& c : codes) acc1 += count_minimal_serial(c);
        double t1 = now();
        for (const auto& c : codes) acc2 += count_minimal(c);
        double t2 = now();
        if (acc1 != acc2) {
            std::printf("count_minimal mismatch!\n");
            return 1;
        }
        report("count_minimal [60,4]_4 batch", t1 - t0, t2 - t1);
    }

    {
        // count_support_minimal at codimension 2
        std::mt19937 rng(2);
        std::vector<LinearCode> codes;
        int reps = quick ? 4 : 20;
        for (int i = 0; i < reps; ++i) codes.push_back(random_code(3, 5, 40, rng));
        uint64_t acc1 = 0, acc2 = 0;
        double t0 = now();
        for (const auto& c : codes) acc1 += count_support_minimal_serial(c, 2);
        double t1 = now();
        for (const auto& c : codes) acc2 += count_support_minimal(c, 2);
        double t2 = now();
        if (acc1 != acc2) {
            std::printf("count_support_minimal mismatch!\n");
            return 1;
        }
        report("count_support_minimal l=2 [40,5]_3", t1 - t0, t2 - t1);
    }

    {
        // brute-subset search engine
        int n = quick ? 9 : 10;
        double t0 = now();
        auto serial = search::m_value(2, 4, n, search::Mode::minimize, search::Engine::subset,
                                      {}, 1);
        double t1 = now();
        auto par = search::m_value(2, 4, n, search::Mode::minimize, search::Engine::subset);
        double t2 = now();
        if (serial.value != par.value) {
            std::printf("subset engine mismatch!\n");
            return 1;
        }
        // a larger ambient space for measurable times
        int n5 = quick ? 8 : 9;
        double t3 = now();
        auto s5 = search::m_value(2, 5, n5, search::Mode::minimize, search::Engine::subset, {}, 1);
        double t4 = now();
        auto p5 = search::m_value(2, 5, n5, search::Mode::minimize, search::Engine::subset);
        double t5 = now();
        if (s5.value != p5.value) {
            std::printf("subset engine mismatch!\n");
            return 1;
        }
        report("subset engine m_2(.,4)", t1 - t0, t2 - t1);
        report("subset engine m_2(.,5)", t4 - t3, t5 - t4);
    }

    {
        // canonical augmentation at two partition depths
        search::SearchGuards serial_g;
        serial_g.partition_depth = 64;  // no parallel phase
        search::SearchGuards par_g;
        int n = quick ? 10 : 12;
        double t0 = now();
        auto a = search::m_value(2, 5, n, search::Mode::minimize, search::Engine::canonical,
                                 serial_g, 1);
        double t1 = now();
        auto b = search::m_value(2, 5, n, search::Mode::minimize, search::Engine::canonical,
                                 par_g);
        double t2 = now();
        if (a.value != b.value) {
            std::printf("canonical engine mismatch!\n");
            return 1;
        }
        report("canonical engine m_2(.,5)", t1 - t0, t2 - t1);
    }

    {
        // alpha brute force
        alpha::AlphaGuards g;
        g.max_subspaces = 100;
        int r = quick ? 2 : 3;
        double t0 = now();
        auto a = alpha::alpha_brute(4, 4, r, 1, g, 1);
        double t1 = now();
        auto b = alpha::alpha_brute(4, 4, r, 1, g);
        double t2 = now();
        if (a.value != b.value) {
            std::printf("alpha mismatch!\n");
            return 1;
        }
        report("alpha_brute alpha_4(4,r)", t1 - t0, t2 - t1);
    }

    std::printf("done\n");
    return 0;
}
