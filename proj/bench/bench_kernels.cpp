// Serial reference kernels against their OpenMP versions on fixed inputs.
// Usage: bench_kernels [repeats]

#include "twodd/enumerate.hpp"
#include "twodd/factors.hpp"
#include "twodd/permset.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace twodd;

namespace {

double seconds(const std::function<void()>& fn, int repeats) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) {
        fn();
    }
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / repeats;
}

void row(const std::string& name, double serial, double parallel, bool agree) {
    std::printf("%-28s %12.6f %12.6f %8.2fx  %s\n", name.c_str(), serial, parallel, serial / parallel,
                agree ? "agree" : "MISMATCH");
}

PermSet random_even_set(int n, std::size_t k, std::mt19937_64& rng) {
    std::vector<Perm> v;
    while (v.size() < k) {
        Perm p = unrank(n, rng() % factorial(n));
        if (parity(p) == 0) {
            v.push_back(p);
        }
    }
    return PermSet(n, std::move(v));
}

} // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::stoi(argv[1]) : 3;
    std::mt19937_64 rng(12345);
    std::printf("threads %d, repeats %d\n", omp_get_max_threads(), repeats);
    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial s", "parallel s", "speedup");

    const PermSet p = random_even_set(8, 6, rng);
    PermSet a(8), b(8);
    row("excluded_set n=8", seconds([&] { a = reference::excluded_set(p); }, repeats),
        seconds([&] { b = excluded_set(p); }, repeats), a == b);
    row("residue n=8", seconds([&] { a = reference::residue(p); }, repeats),
        seconds([&] { b = residue(p); }, repeats), a == b);

    FamilySpec spec;
    spec.ac_count = 16;
    spec.saturated_only = true;
    const Digraph g = random_member(spec, rng);
    int i1 = 0, i2 = 0;
    row("graph_index m=16", seconds([&] { i1 = reference::graph_index(g); }, repeats),
        seconds([&] { i2 = graph_index(g); }, repeats), i1 == i2);
    std::optional<Factor> w1, w2;
    row("hamiltonian_witness m=16", seconds([&] { w1 = reference::hamiltonian_witness(g); }, repeats),
        seconds([&] { w2 = hamiltonian_witness(g); }, repeats),
        w1.has_value() == w2.has_value() && (!w1 || w1->selection == w2->selection));
    ParityFamily f1{}, f2{};
    row("classify_parity_family m=16", seconds([&] { f1 = reference::classify_parity_family(g); }, repeats),
        seconds([&] { f2 = classify_parity_family(g); }, repeats), f1 == f2);

    FamilySpec open_spec;
    open_spec.ac_count = 16;
    open_spec.saturated_only = true;
    Digraph h = random_member(open_spec, rng);
    const std::vector<int> cut = {0, 1, 2, 3, 4};
    h = split(h, cut).graph;
    if (is_open(h)) {
        RouteSet r1, r2;
        row("open_routes m=16 n=5", seconds([&] { r1 = reference::open_routes(h, route_labeling(h)); }, repeats),
            seconds([&] { r2 = open_routes(h); }, repeats), r1.routes == r2.routes);
    }

    FamilySpec fam;
    fam.ac_count = 4;
    fam.saturated_only = true;
    fam.clean = false;
    GenerateOptions one;
    one.jobs = 1;
    std::size_t n1 = 0, n2 = 0;
    row("generate full m=4", seconds([&] { n1 = generate(fam, one).size(); }, 1),
        seconds([&] { n2 = generate(fam).size(); }, 1), n1 == n2);
    return 0;
}
