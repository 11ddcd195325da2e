// lazy walk matrices, discriminants, reversibility, powers, spectra

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "qff/graph.hpp"
#include "qff/markov.hpp"
#include "qff/vec.hpp"

using namespace qff;

namespace {

std::vector<double> basis(int n, int i) {
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    return v;
}

}  // namespace

TEST_CASE("lazy walk on a single edge") {
    TransitionMatrix P = lazy_walk(gen_complete(2));
    CHECK(P.entry(0, 0) == doctest::Approx(0.5));
    CHECK(P.entry(1, 0) == doctest::Approx(0.5));
    CHECK(P.entry(0, 1) == doctest::Approx(0.5));
    CHECK(P.entry(1, 1) == doctest::Approx(0.5));
    CHECK(is_column_stochastic(P));
}

TEST_CASE("lazy walk on the triangle") {
    TransitionMatrix P = lazy_walk(gen_complete(3));
    for (int v = 0; v < 3; ++v) {
        CHECK(P.entry(v, v) == doctest::Approx(0.5));
        for (int u = 0; u < 3; ++u)
            if (u != v) CHECK(P.entry(u, v) == doctest::Approx(0.25));
    }
}

TEST_CASE("lazy walk respects the declared bound, not the actual degree") {
    // dumbbell declares d+1; a node of degree 3 keeps holding probability
    Graph g = gen_dumbbell(8, 3, 1, 5);
    TransitionMatrix P = lazy_walk(g);
    CHECK(is_column_stochastic(P));
    CHECK(P.entry(2, 2) == doctest::Approx(1.0 - 3.0 / 8.0));
    CHECK(P.entry(0, 0) == doctest::Approx(1.0 - 4.0 / 8.0));
}

TEST_CASE("lazy walk on an edgeless graph is the identity") {
    TransitionMatrix P = lazy_walk(gen_edgeless(4));
    for (int v = 0; v < 4; ++v) CHECK(P.entry(v, v) == doctest::Approx(1.0));
    CHECK(is_column_stochastic(P));
}

TEST_CASE("discriminant of a lazy walk equals the walk itself") {
    for (const Graph& g : {gen_cycle(6), gen_dumbbell(4, 3, 1, 2), gen_complete(5)}) {
        TransitionMatrix P = lazy_walk(g);
        Discriminant D = discriminant(P);
        CHECK(is_symmetric(D));
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) CHECK(D.entry(i, j) == doctest::Approx(P.entry(i, j)));
    }
}

TEST_CASE("discriminant takes geometric means of asymmetric entries") {
    SparseMatrix P;
    P.n = 2;
    P.cols = {{{0, 0.2}, {1, 0.8}}, {{0, 0.5}, {1, 0.5}}};
    Discriminant D = discriminant(P);
    CHECK(D.entry(1, 0) == doctest::Approx(std::sqrt(0.8 * 0.5)));
    CHECK(D.entry(0, 1) == doctest::Approx(std::sqrt(0.8 * 0.5)));
    CHECK(D.entry(0, 0) == doctest::Approx(0.2));
}

TEST_CASE("sparse entry lookup") {
    TransitionMatrix P = lazy_walk(gen_cycle(5));
    CHECK(P.entry(0, 2) == 0.0);
    CHECK(P.entry(1, 2) == doctest::Approx(0.25));
    std::vector<double> x = P.apply(basis(5, 0));
    CHECK(x[0] == doctest::Approx(0.5));
    CHECK(x[1] == doctest::Approx(0.25));
    CHECK(x[4] == doctest::Approx(0.25));
    CHECK(x[2] == 0.0);
}

TEST_CASE("symmetric lazy chains are reversible with uniform pi") {
    ReversibilityReport r = is_reversible(lazy_walk(gen_cycle(8)));
    CHECK(r.converged);
    CHECK(r.reversible);
    double total = 0;
    for (double x : r.pi) {
        CHECK(x == doctest::Approx(1.0 / 8).epsilon(1e-8));
        total += x;
    }
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("directed cycle is not reversible") {
    // deterministic rotation: stationary but detailed balance fails
    SparseMatrix P;
    P.n = 3;
    P.cols = {{{1, 1.0}}, {{2, 1.0}}, {{0, 1.0}}};
    CHECK(is_column_stochastic(P));
    ReversibilityReport r = is_reversible(P);
    CHECK(r.converged);
    CHECK_FALSE(r.reversible);
}

TEST_CASE("norm of one lazy step from a triangle corner") {
    Discriminant D = discriminant(lazy_walk(gen_complete(3)));
    std::vector<double> x = exact_power_apply(D, 1, basis(3, 0));
    CHECK(norm2(x) == doctest::Approx(std::sqrt(3.0 / 8.0)));
}

TEST_CASE("power apply matches repeated multiplication") {
    Discriminant D = discriminant(lazy_walk(gen_cycle(6)));
    std::vector<double> v = basis(6, 2);
    std::vector<double> manual = D.apply(D.apply(D.apply(v)));
    std::vector<double> fast = exact_power_apply(D, 3, v);
    for (int i = 0; i < 6; ++i) CHECK(fast[i] == doctest::Approx(manual[i]));
    std::vector<double> same = exact_power_apply(D, 0, v);
    CHECK(same == v);
}

TEST_CASE("chebyshev recursion on the discriminant") {
    Discriminant D = discriminant(lazy_walk(gen_dumbbell(4, 2, 1, 7)));
    std::vector<double> v(8, 0.0);
    v[3] = 0.6;
    v[5] = 0.8;

    std::vector<double> t0 = chebyshev_apply(D, 0, v);
    CHECK(t0 == v);

    std::vector<double> t1 = chebyshev_apply(D, 1, v);
    std::vector<double> dv = D.apply(v);
    for (int i = 0; i < 8; ++i) CHECK(t1[i] == doctest::Approx(dv[i]));

    // T_2 = 2 D^2 - I
    std::vector<double> t2 = chebyshev_apply(D, 2, v);
    std::vector<double> d2 = D.apply(dv);
    for (int i = 0; i < 8; ++i) CHECK(t2[i] == doctest::Approx(2 * d2[i] - v[i]));
}

TEST_CASE("triangle spectrum") {
    SpectralData sd = spectral_decomp(discriminant(lazy_walk(gen_complete(3))));
    REQUIRE(sd.eigenvalues.size() == 3);
    CHECK(sd.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(sd.eigenvalues[1] == doctest::Approx(0.25));
    CHECK(sd.eigenvalues[2] == doctest::Approx(0.25));
}

TEST_CASE("spectral decomposition reconstructs the operator") {
    Graph g = gen_dumbbell(4, 3, 1, 13);
    Discriminant D = discriminant(lazy_walk(g));
    SpectralData sd = spectral_decomp(D);

    // descending order
    for (std::size_t k = 1; k < sd.eigenvalues.size(); ++k)
        CHECK(sd.eigenvalues[k - 1] >= sd.eigenvalues[k] - 1e-12);

    // orthonormal vectors
    for (std::size_t a = 0; a < sd.vectors.size(); ++a)
        for (std::size_t b = a; b < sd.vectors.size(); ++b) {
            double want = (a == b) ? 1.0 : 0.0;
            CHECK(dot(sd.vectors[a], sd.vectors[b]) == doctest::Approx(want).epsilon(1e-9));
        }

    // D v = sum_k lambda_k <u_k, v> u_k
    std::vector<double> v = basis(g.n, 1);
    std::vector<double> direct = D.apply(v);
    std::vector<double> recon(g.n, 0.0);
    for (std::size_t k = 0; k < sd.vectors.size(); ++k)
        axpy(recon, sd.eigenvalues[k] * dot(sd.vectors[k], v), sd.vectors[k]);
    for (int i = 0; i < g.n; ++i) CHECK(recon[i] == doctest::Approx(direct[i]).epsilon(1e-9));
}

TEST_CASE("spectral decomposition refuses big matrices") {
    CHECK_THROWS_AS(spectral_decomp(lazy_walk(gen_edgeless(513))), std::invalid_argument);
}

TEST_CASE("matrix json has coordinate triples") {
    auto j = nlohmann::json::parse(matrix_to_json(lazy_walk(gen_complete(2))));
    CHECK(j["n"] == 2);
    CHECK(j["entries"].size() == 4);
    bool saw = false;
    for (const auto& e : j["entries"])
        if (e[0] == 1 && e[1] == 0) {
            CHECK(double(e[2]) == doctest::Approx(0.5));
            saw = true;
        }
    CHECK(saw);
}
