#include <catch2/catch_amalgamated.hpp>

#include <k3lat/monodromy.hpp>

#include <random>

using namespace k3lat;

namespace {

LatVec random_vector_of_norm(LatticePtr lat, const Int& target, std::mt19937& rng, int span = 2) {
    std::uniform_int_distribution<int> entry(-span, span);
    std::uniform_int_distribution<std::size_t> pos(0, lat->rank() - 1);
    std::uniform_int_distribution<int> count(1, 4);
    for (int attempt = 0; attempt < 200000; ++attempt) {
        IntVec v(lat->rank());
        int k = count(rng);
        for (int i = 0; i < k; ++i) v[pos(rng)] = entry(rng);
        auto lv = make_vec(lat, v);
        if (norm(lv) == target) return lv;
    }
    throw std::runtime_error("random_vector_of_norm: no vector found");
}

}  // namespace

TEST_CASE("reflection basics") {
    auto h = make_hilbert(4);
    std::mt19937 rng(404);

    auto u_neg = random_vector_of_norm(h, -2, rng);
    auto r_neg = reflection(u_neg);
    CHECK(r_neg.matrix.mul_vec(u_neg.coords) == [&] {
        IntVec m(u_neg.coords.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = -u_neg.coords[i];
        return m;
    }());
    CHECK(r_neg.matrix * r_neg.matrix == IntMat::identity(23));

    auto u_pos = random_vector_of_norm(h, 2, rng);
    auto r_pos = reflection(u_pos);
    CHECK(r_pos.matrix.mul_vec(u_pos.coords) == u_pos.coords);
    // x orthogonal to u is negated.
    auto x = random_vector_of_norm(h, -2, rng);
    while (pairing(x, u_pos) != 0) x = random_vector_of_norm(h, -2, rng);
    IntVec negx(23);
    for (std::size_t i = 0; i < 23; ++i) negx[i] = -x.coords[i];
    CHECK(r_pos.matrix.mul_vec(x.coords) == negx);

    auto zero = make_vec(h, IntVec(23));
    CHECK_THROWS_AS(reflection(zero), std::invalid_argument);
}

TEST_CASE("orientation character values") {
    auto oh = oriented_hilbert(5);
    CHECK(orientation_character(oh, IntMat::identity(23)) == 1);
    CHECK(orientation_character(oh, -IntMat::identity(23)) == -1);

    auto om = oriented_mukai_vector();
    CHECK(orientation_character(om, IntMat::identity(24)) == 1);
    CHECK(orientation_character(om, -IntMat::identity(24)) == 1);

    auto os = oriented_standard_mukai();
    CHECK(orientation_character(os, -IntMat::identity(24)) == 1);
}

TEST_CASE("orientation character is multiplicative") {
    auto oh = oriented_hilbert(3);
    std::mt19937 rng(55);
    auto random_iso = [&]() {
        IntMat m = IntMat::identity(23);
        for (int k = 0; k < 3; ++k) {
            Int target = (rng() & 1u) ? 2 : -2;
            m = m * reflection(random_vector_of_norm(oh.lattice, target, rng)).matrix;
        }
        if (rng() & 1u) m = -m;
        return m;
    };
    for (int t = 0; t < 12; ++t) {
        auto a = random_iso(), b = random_iso();
        CHECK(orientation_character(oh, a * b) ==
              orientation_character(oh, a) * orientation_character(oh, b));
    }
}

TEST_CASE("reflections have orientation +1") {
    auto oh = oriented_hilbert(7);
    std::mt19937 rng(77);
    for (int t = 0; t < 10; ++t) {
        Int target = (t % 2 == 0) ? 2 : -2;
        auto r = reflection(random_vector_of_norm(oh.lattice, target, rng));
        CHECK(orientation_character(oh, r.matrix) == 1);
    }
}

namespace {

/// The degree-2 / degree-4 reflection of the worked genus-2 example:
/// w0 = 2h + delta, f(x) = (-4/(w0,w0)) x + ((x,w0)/2) w0.
IntMat example_reflection(int deg) {
    auto h7 = make_hilbert(7);
    IntVec hvec(23);
    hvec[0] = 1;
    hvec[1] = (deg == 2) ? 1 : 2;  // e + f has square 2, e + 2f has square 4
    IntVec w0(23);
    for (std::size_t i = 0; i < 23; ++i) w0[i] = 2 * hvec[i];
    w0[22] += 1;
    auto w0v = make_vec(h7, w0);
    Int ww = norm(w0v);
    IntVec gw = h7->gram.mul_vec(w0);
    IntMat f(23, 23);
    Int scale = -4 / ww;
    for (std::size_t i = 0; i < 23; ++i) {
        f(i, i) = scale;
        for (std::size_t j = 0; j < 23; ++j) {
            Int num = gw[j] * w0[i];
            if (num % 2 != 0) throw std::logic_error("example_reflection: odd pairing");
            f(i, j) += num / 2;
        }
    }
    return f;
}

}  // namespace

TEST_CASE("worked example on Hilb(7)") {
    auto h7 = make_hilbert(7);
    auto oh7 = oriented_hilbert(7);

    SECTION("degree 2") {
        IntVec hvec(23);
        hvec[0] = 1;
        hvec[1] = 1;
        IntVec w0(23);
        for (std::size_t i = 0; i < 23; ++i) w0[i] = 2 * hvec[i];
        w0[22] += 1;
        CHECK(norm(make_vec(h7, w0)) == -4);

        IntMat f = example_reflection(2);
        REQUIRE(is_isometry(*h7, f));
        // f(delta) = -12h - 5 delta
        IntVec delta(23);
        delta[22] = 1;
        IntVec fd = f.mul_vec(delta);
        IntVec expect(23);
        for (std::size_t i = 0; i < 23; ++i) expect[i] = -12 * hvec[i];
        expect[22] -= 5;
        CHECK(fd == expect);

        CHECK(orientation_character(oh7, f) == 1);
        auto res = residual_action(*h7, f);
        CHECK(res.modulus == 12);
        CHECK(res.multiplier == (-5 % 12 + 12) % 12);

        auto wm = in_w(oh7, f);
        CHECK_FALSE(wm.in_w);
        CHECK_THROWS_AS(ext_to_mukai(7, f), std::domain_error);
    }

    SECTION("degree 4") {
        IntMat f = example_reflection(4);
        REQUIRE(is_isometry(*h7, f));
        CHECK(orientation_character(oh7, f) == 1);
        auto res = residual_action(*h7, f);
        CHECK(res.modulus == 12);
        CHECK(res.multiplier == (-7 % 12 + 12) % 12);
        CHECK_FALSE(in_w(oh7, f).in_w);
    }
}

TEST_CASE("residual action basics") {
    auto h7 = make_hilbert(7);
    CHECK(residual_action(*h7, IntMat::identity(23)).multiplier == 1);
    auto rm = residual_action(*h7, -IntMat::identity(23));
    CHECK(rm.multiplier == 11);  // -1 mod 12
}

TEST_CASE("residual action is multiplicative and lands in the residual group") {
    auto h7 = make_hilbert(7);
    std::mt19937 rng(712);
    auto units = residual_orthogonal_group(7);
    auto random_iso = [&]() {
        IntMat m = IntMat::identity(23);
        for (int k = 0; k < 2; ++k) {
            Int target = (rng() & 1u) ? 2 : -2;
            m = m * reflection(random_vector_of_norm(h7, target, rng)).matrix;
        }
        return m;
    };
    IntMat fdeg2 = example_reflection(2);
    for (int t = 0; t < 8; ++t) {
        IntMat a = random_iso();
        IntMat b = (t % 2 == 0) ? fdeg2 : random_iso();
        auto ra = residual_action(*h7, a), rb = residual_action(*h7, b);
        auto rab = residual_action(*h7, a * b);
        CHECK(rab.multiplier == (ra.multiplier * rb.multiplier) % 12);
        for (auto r : {ra, rb, rab}) {
            CHECK((r.multiplier * r.multiplier) % (2 * 12) == 1);
            CHECK(std::find(units.begin(), units.end(), to_int64(r.multiplier)) != units.end());
        }
    }
}

TEST_CASE("residual orthogonal groups") {
    CHECK(residual_orthogonal_group(7) == std::vector<std::int64_t>{1, 5, 7, 11});
    CHECK(residual_orthogonal_group(2) == std::vector<std::int64_t>{1});
    CHECK(residual_orthogonal_group(6).size() == 2);
    for (std::int64_t n = 2; n <= 3000; ++n) {
        auto g = residual_orthogonal_group(n);
        std::size_t expect = std::size_t(1) << euler_rho(n - 1);
        if (g.size() != expect) {
            CAPTURE(n);
            REQUIRE(g.size() == expect);
        }
    }
}

TEST_CASE("w_index values") {
    for (std::int64_t n = 2; n <= 6; ++n) CHECK(w_index(n) == 1);
    CHECK(w_index(7) == 2);
    CHECK(w_index(31) == 4);
    CHECK(w_index(211) == 8);
    for (std::int64_t n = 3; n <= 2000; ++n)
        CHECK(w_index(n) == (std::int64_t(1) << (euler_rho(n - 1) - 1)));
}

TEST_CASE("membership in W") {
    auto oh = oriented_hilbert(7);
    std::mt19937 rng(1007);

    // Reflections and their products lie in W.
    IntMat prod = IntMat::identity(23);
    for (int k = 0; k < 6; ++k) {
        Int target = (rng() & 1u) ? 2 : -2;
        prod = prod * reflection(random_vector_of_norm(oh.lattice, target, rng)).matrix;
        auto wm = in_w(oh, prod);
        CHECK(wm.in_w);
        REQUIRE(wm.mukai_extension.has_value());
    }

    // Composition of members stays in W.
    IntMat a = reflection(random_vector_of_norm(oh.lattice, -2, rng)).matrix;
    CHECK(in_w(oh, a * prod).in_w);

    CHECK_FALSE(in_w(oh, -IntMat::identity(23)).in_w);
}

TEST_CASE("extension to the Mukai lattice") {
    auto mukai = mukai_vector_lattice();

    CHECK(ext_to_mukai(3, IntMat::identity(23)) == IntMat::identity(24));

    // rho_delta on Hilb(2): delta has square -2; residual -1 = +1 mod 2.
    auto h2 = make_hilbert(2);
    IntVec delta(23);
    delta[22] = 1;
    auto r = reflection(make_vec(h2, delta));
    IntMat ext = ext_to_mukai(2, r.matrix);
    CHECK(is_isometry(*mukai, ext));
    IntVec w = hilbert_complement_generator(2);
    CHECK(ext.mul_vec(w) == w);
    // Restriction agrees with r on the embedded basis.
    IntMat b = hilbert_embedding(2);
    CHECK(ext * b == b * r.matrix);
}

TEST_CASE("mu restricts mukai isometries fixing w") {
    int n = 5;
    auto mukai = mukai_vector_lattice();
    CHECK(mu(n, IntMat::identity(24)) == IntMat::identity(23));

    // Extended reflection in u inside w-perp restricts to the reflection.
    auto h = make_hilbert(n);
    std::mt19937 rng(272);
    auto u = random_vector_of_norm(h, -2, rng);
    auto r_h = reflection(u);
    IntMat b = hilbert_embedding(n);
    auto u_mukai = make_vec(mukai, b.mul_vec(u.coords));
    CHECK(norm(u_mukai) == -2);
    auto r_m = reflection(u_mukai);
    IntVec w = hilbert_complement_generator(n);
    CHECK(r_m.matrix.mul_vec(w) == w);
    CHECK(mu(n, r_m.matrix) == r_h.matrix);
}

TEST_CASE("ext composed with mu is the identity on the diagram") {
    // ext(mu(h)) = eta~(h) * h for isometries fixing w.
    int n = 4;
    auto om = oriented_mukai_vector();
    auto h = make_hilbert(n);
    IntMat b = hilbert_embedding(n);
    std::mt19937 rng(41);
    IntMat gt = IntMat::identity(24);
    for (int k = 0; k < 3; ++k) {
        auto u = random_vector_of_norm(h, -2, rng);
        gt = gt * reflection(make_vec(om.lattice, b.mul_vec(u.coords))).matrix;
    }
    IntVec w = hilbert_complement_generator(n);
    REQUIRE(gt.mul_vec(w) == w);
    IntMat restricted = mu(n, gt);
    IntMat back = ext_to_mukai(n, restricted);
    int eta = orientation_character(om, gt);
    IntMat expect = gt;
    if (eta < 0) expect = -expect;
    CHECK(back == expect);
}

TEST_CASE("mu is injective for n >= 3 on a generating sample") {
    // Nontrivial extended reflections never restrict to the identity.
    int n = 6;
    auto h = make_hilbert(n);
    IntMat b = hilbert_embedding(n);
    auto mukai = mukai_vector_lattice();
    std::mt19937 rng(606);
    for (int t = 0; t < 6; ++t) {
        auto u = random_vector_of_norm(h, -2, rng);
        auto gt = reflection(make_vec(mukai, b.mul_vec(u.coords)));
        CHECK(mu(n, gt.matrix) != IntMat::identity(23));
    }
}

TEST_CASE("pell fundamental solutions") {
    CHECK(pell_fundamental(2) == std::pair<Int, Int>{3, 2});
    CHECK(pell_fundamental(3) == std::pair<Int, Int>{2, 1});
    CHECK(pell_fundamental(5) == std::pair<Int, Int>{9, 4});
    CHECK(pell_fundamental(61).first == Int("1766319049"));
}

TEST_CASE("trace criterion") {
    CHECK(trace_criterion(3, 0));
    CHECK(trace_criterion(3, 4));    // perfect square
    CHECK(trace_criterion(5, 9));    // perfect square
    CHECK(trace_criterion(3, 2));    // 3 + 2 sqrt(2): traces alternate 6, 34 = -2, +2 mod 8

    // Exhaustive cross-check against direct unit enumeration for small cases.
    for (std::int64_t n = 2; n <= 6; ++n)
        for (std::int64_t m = 2; m <= 20; ++m) {
            if (is_perfect_square(Int(m))) continue;
            Int modulus = 4 * Int(n) - 4;
            auto [b1, a1] = pell_fundamental(m);
            bool all_ok = true;
            Int b = 1, a = 0;
            for (int k = 0; k < 2000; ++k) {
                Int t = (2 * b) % modulus;
                if (t < 0) t += modulus;
                if (t != 2 % modulus && t != (modulus - 2) % modulus) all_ok = false;
                Int bn = (b * b1 + (m % modulus) * a * a1) % modulus;
                Int an = (b * a1 + a * b1) % modulus;
                b = bn;
                a = an;
            }
            CHECK(trace_criterion(n, m) == all_ok);
        }
}
