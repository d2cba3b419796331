#include <catch2/catch_amalgamated.hpp>

#include <k3lat/intlat.hpp>

#include <random>

using namespace k3lat;

TEST_CASE("standard lattices") {
    auto u = make_standard(StdLattice::U);
    CHECK(u->rank() == 2);
    CHECK(u->det() == -1);

    auto e8 = make_standard(StdLattice::E8neg);
    CHECK(e8->rank() == 8);
    CHECK(e8->det() == 1);
    auto se = e8->signature();
    CHECK(se.pos == 0);
    CHECK(se.neg == 8);

    auto k3 = make_standard(StdLattice::K3);
    CHECK(k3->rank() == 22);
    CHECK(k3->det() == -1);
    auto sk = k3->signature();
    CHECK(sk.pos == 3);
    CHECK(sk.neg == 19);

    auto mukai = make_standard(StdLattice::Mukai);
    CHECK(mukai->rank() == 24);
    CHECK(mukai->det() == 1);
    auto sm = mukai->signature();
    CHECK(sm.pos == 4);
    CHECK(sm.neg == 20);

    auto h7 = make_hilbert(7);
    CHECK(h7->rank() == 23);
    CHECK(abs_int(h7->det()) == 12);
    CHECK(h7->gram(22, 22) == 2 - 2 * 7);

    CHECK_THROWS_AS(make_hilbert(1), std::invalid_argument);
}

TEST_CASE("direct sums") {
    auto u = make_standard(StdLattice::U);
    auto uu = direct_sum(*u, *u);
    CHECK(uu->rank() == 4);
    auto s = uu->signature();
    CHECK(s.pos == 2);
    CHECK(s.neg == 2);

    IntMat d12(1, 1);
    d12(0, 0) = -12;
    auto h7like = direct_sum(*make_standard(StdLattice::K3), *make_lattice("<-12>", d12));
    CHECK(h7like->gram == make_hilbert(7)->gram);

    auto e8 = make_standard(StdLattice::E8neg);
    auto ee = direct_sum(*e8, *e8);
    CHECK(ee->det() == 1);
    auto se = ee->signature();
    CHECK(se.pos == 0);
    CHECK(se.neg == 16);
}

TEST_CASE("smith normal form examples") {
    auto f = smith(IntMat::from_rows({{2, 0}, {0, 3}}));
    CHECK(f.diagonal() == std::vector<Int>{1, 6});

    auto fu = smith(hyperbolic_gram());
    CHECK(fu.diagonal() == std::vector<Int>{1, 1});

    auto fh = smith(make_hilbert(3)->gram);
    auto d = fh.diagonal();
    REQUIRE(d.size() == 23);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK(d[i] == 1);
    CHECK(d.back() == 4);
}

TEST_CASE("snf round trip on random matrices") {
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<int> dim(1, 12), entry(-20, 20);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t r = static_cast<std::size_t>(dim(rng));
        std::size_t c = static_cast<std::size_t>(dim(rng));
        IntMat m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
        auto f = smith(m);
        REQUIRE(f.p * m * f.q == f.s);
        CHECK(abs_int(det_bareiss(f.p)) == 1);
        CHECK(abs_int(det_bareiss(f.q)) == 1);
        auto d = f.diagonal();
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            CHECK(d[i] >= 0);
            if (d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
        }
    }
}

TEST_CASE("discriminant groups") {
    auto mukai = make_standard(StdLattice::Mukai);
    CHECK(discriminant_group(*mukai).trivial());

    for (int n : {2, 3, 7, 11, 12}) {
        auto d = discriminant_group(*make_hilbert(n));
        REQUIRE(d.orders.size() == 1);
        CHECK(d.orders[0] == 2 * n - 2);
        CHECK(d.order() == abs_int(make_hilbert(n)->det()));
    }

    auto d7 = discriminant_group(*make_hilbert(7));
    // q(generator) = -1/12 mod 2Z
    CHECK(congruent_mod_2z(d7.q_values[0], Rat(-1, 12)));
    // Canonical generator is the coset of the last dual-basis vector.
    RatVec gen = d7.lift.col(0);
    for (std::size_t i = 0; i < 22; ++i) CHECK(gen[i] == 0);
    CHECK(abs(gen[22]) == Rat(1, 12));

    IntMat sing(2, 2);
    sing(0, 0) = 0;
    CHECK_THROWS_AS(discriminant_group(*make_lattice("sing", sing)), std::domain_error);
}

TEST_CASE("discriminant order matches determinant") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> entry(-4, 4);
    int produced = 0;
    while (produced < 50) {
        std::size_t n = 1 + (rng() % 5);
        IntMat g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                int v = entry(rng);
                if (i == j) v *= 2;
                g(i, j) = v;
                g(j, i) = v;
            }
        Int det = det_bareiss(g);
        if (det == 0) continue;
        ++produced;
        auto d = discriminant_group(*make_lattice("rnd", g));
        CHECK(d.order() == abs_int(det));
    }
}

TEST_CASE("residual form is well defined on cosets") {
    auto h5 = make_hilbert(5);
    auto d = discriminant_group(*h5);
    RatVec gen = d.lift.col(0);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        RatVec shifted = gen;
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += entry(rng);
        Rat q = dot(shifted, to_rat(h5->gram).mul_vec(shifted));
        CHECK(congruent_mod_2z(q, d.q_values[0]));
        CHECK(d.class_of(shifted) == d.class_of(gen));
    }
}

TEST_CASE("q scales quadratically") {
    auto d = discriminant_group(*make_hilbert(9));
    RatVec gen = d.lift.col(0);
    auto g = to_rat(make_hilbert(9)->gram);
    for (int a = 0; a < 16; ++a) {
        RatVec ag(gen.size());
        for (std::size_t i = 0; i < gen.size(); ++i) ag[i] = a * gen[i];
        Rat qa = dot(ag, g.mul_vec(ag));
        CHECK(congruent_mod_2z(qa, Rat(a) * Rat(a) * d.q_values[0]));
    }
}

TEST_CASE("isometry checks") {
    auto u = make_standard(StdLattice::U);
    CHECK(is_isometry(*u, IntMat::identity(2)));
    CHECK(is_isometry(*u, -IntMat::identity(2)));
    CHECK(is_isometry(*u, IntMat::from_rows({{0, 1}, {1, 0}})));
    CHECK_FALSE(is_isometry(*u, IntMat::from_rows({{1, 1}, {0, 1}})));
    CHECK_THROWS_AS(is_isometry(*u, IntMat::identity(3)), std::invalid_argument);
}

TEST_CASE("signed permutation isometries are closed under composition and inverse") {
    // U^4: block permutations, within-block swaps, and block sign flips.
    auto u = make_standard(StdLattice::U);
    auto l = direct_sum(*direct_sum(*u, *u), *direct_sum(*u, *u));
    std::mt19937 rng(31337);
    auto random_iso = [&]() {
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        IntMat m(8, 8);
        for (int b = 0; b < 4; ++b) {
            bool swap = rng() & 1u;
            int s = (rng() & 1u) ? 1 : -1;
            int src = 2 * b, dst = 2 * perm[static_cast<std::size_t>(b)];
            m(static_cast<std::size_t>(dst + (swap ? 1 : 0)), static_cast<std::size_t>(src)) = s;
            m(static_cast<std::size_t>(dst + (swap ? 0 : 1)), static_cast<std::size_t>(src + 1)) = s;
        }
        return make_isometry(l, m);
    };
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_iso();
        auto b = random_iso();
        CHECK(is_isometry(*l, (a * b).matrix));
        CHECK(is_isometry(*l, a.inverse().matrix));
        CHECK((a * a.inverse()).matrix == IntMat::identity(8));
    }
}

TEST_CASE("lattice vectors and pairing") {
    auto u = make_standard(StdLattice::U);
    auto e = make_vec(u, {1, 0});
    auto f = make_vec(u, {0, 1});
    CHECK(pairing(e, f) == 1);
    CHECK(norm(e) == 0);
    CHECK(make_vec(u, {2, 4}).is_primitive() == false);
    CHECK(make_vec(u, {2, 3}).is_primitive());

    // Bilinearity and symmetry on random triples.
    auto h = make_hilbert(4);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-5, 5);
    auto rnd = [&]() {
        IntVec v(23);
        for (auto& x : v) x = entry(rng);
        return make_vec(h, v);
    };
    for (int trial = 0; trial < 30; ++trial) {
        auto x = rnd(), y = rnd(), z = rnd();
        CHECK(pairing(x, y) == pairing(y, x));
        IntVec sum(23);
        for (std::size_t i = 0; i < 23; ++i) sum[i] = y.coords[i] + z.coords[i];
        CHECK(pairing(x, make_vec(h, sum)) == pairing(x, y) + pairing(x, z));
        CHECK(norm(x) % 2 == 0);
    }
}

TEST_CASE("constructors reject odd or asymmetric grams") {
    IntMat odd(1, 1);
    odd(0, 0) = 3;
    CHECK_THROWS_AS(make_lattice("odd", odd), std::invalid_argument);
    IntMat asym = IntMat::from_rows({{0, 1}, {2, 0}});
    CHECK_THROWS_AS(make_lattice("asym", asym), std::invalid_argument);
}

TEST_CASE("kernel and hnf utilities") {
    IntMat a = IntMat::from_rows({{1, 2, 3}, {2, 4, 6}});
    auto k = kernel_basis(a);
    CHECK(k.cols() == 2);
    for (std::size_t j = 0; j < k.cols(); ++j) {
        auto v = k.col(j);
        CHECK(a.mul_vec(v) == IntVec(2));
    }

    IntMat b = IntMat::from_rows({{2, 0}, {0, 3}, {2, 3}});
    auto h = hnf_rows(b);
    CHECK(h.rows() == 2);
    CHECK(hnf_contains(h, {2, 3}));
    CHECK(hnf_contains(h, {4, 0}));
    CHECK_FALSE(hnf_contains(h, {1, 0}));
}
