#include "doctest.h"
#include "oracles.hpp"
#include "ukepler/jordan.hpp"

using namespace ukepler;

namespace {

Element<double> pauli(int k) {
  auto e = Element<double>::zero(AlgebraDescriptor::hermitian(2));
  switch (k) {
    case 1:
      e.at(0, 1) = {1, 0};
      e.at(1, 0) = {1, 0};
      break;
    case 2:
      e.at(0, 1) = {0, -1};
      e.at(1, 0) = {0, 1};
      break;
    default:
      e.at(0, 0) = {1, 0};
      e.at(1, 1) = {-1, 0};
  }
  return e;
}

Element<double> diag2(double a, double b) {
  auto e = Element<double>::zero(AlgebraDescriptor::hermitian(2));
  e.at(0, 0) = {a, 0};
  e.at(1, 1) = {b, 0};
  return e;
}

Element<double> gamma3_basis(int mu) {
  auto e = Element<double>::zero(AlgebraDescriptor::gamma3());
  if (mu == 0)
    e.g0 = 1.0;
  else
    e.gv[mu - 1] = 1.0;
  return e;
}

}  // namespace

TEST_SUITE_BEGIN("jordan");

TEST_CASE("jordan product of an anticommuting pair vanishes") {
  const auto prod = jmul(pauli(1), pauli(3));  // sigma_x sigma_z
  CHECK(fro_norm(prod) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("identity element is neutral") {
  for (auto desc : {AlgebraDescriptor::hermitian(3), AlgebraDescriptor::gamma3()}) {
    auto rng = oracle::rng_for(11, desc.n);
    const auto e = Element<double>::identity(desc);
    for (int t = 0; t < 20; ++t) {
      const auto u = sample_hermitian(desc, rng);
      CHECK(fro_norm(jmul(e, u) - u) < 1e-14 * (1.0 + fro_norm(u)));
    }
  }
}

TEST_CASE("spin factor products follow e_i e_j = delta_ij e_0") {
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const auto prod = jmul(gamma3_basis(i), gamma3_basis(j));
      const auto expect =
          i == j ? gamma3_basis(0) : Element<double>::zero(AlgebraDescriptor::gamma3());
      CHECK(fro_norm(prod - expect) == doctest::Approx(0.0));
    }
}

TEST_CASE("commutator of sigma_x and sigma_y is 2i sigma_z") {
  // reference by direct dense 2x2 arithmetic
  const auto dense = oracle::comm(oracle::to_dense(pauli(1)), oracle::to_dense(pauli(2)), 2);
  const auto lib = commutator(pauli(1), pauli(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const oracle::cd want = dense[static_cast<size_t>(i) * 2 + j];
      CHECK(lib(i, j).re == doctest::Approx(want.real()));
      CHECK(lib(i, j).im == doctest::Approx(want.imag()));
    }
  // and that reference is 2i sigma_z
  CHECK(dense[0] == oracle::cd(0, 2));
  CHECK(dense[3] == oracle::cd(0, -2));
}

TEST_CASE("commutator properties") {
  const auto desc = AlgebraDescriptor::hermitian(3);
  auto rng = oracle::rng_for(12, 0);
  for (int t = 0; t < 50; ++t) {
    const auto u = sample_hermitian(desc, rng);
    const auto v = sample_hermitian(desc, rng);
    CHECK(fro_norm(commutator(u, u)) == doctest::Approx(0.0));
    const auto c = commutator(u, v);
    Cxd tr{};
    for (int i = 0; i < 3; ++i) tr += c(i, i);
    CHECK(std::abs(tr.re) < 1e-13);
    CHECK(std::abs(tr.im) < 1e-13);
    // i[u,v] is hermitian
    CHECK(hermiticity_residual(icomm(u, v)) < 1e-14);
  }
}

TEST_CASE("commutator is unsupported on the spin factor") {
  const auto u = gamma3_basis(1);
  CHECK_THROWS_AS((void)matmul(u, u), Error);
  try {
    (void)commutator(u, u);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported);
  }
}

TEST_CASE("inner product normalization and values") {
  const auto h2 = AlgebraDescriptor::hermitian(2);
  CHECK(inner(Element<double>::identity(h2), Element<double>::identity(h2)) ==
        doctest::Approx(1.0));
  const auto g3 = AlgebraDescriptor::gamma3();
  CHECK(inner(Element<double>::identity(g3), Element<double>::identity(g3)) ==
        doctest::Approx(1.0));

  // <u|u> = tr(u^2)/n by dense arithmetic
  const auto u = diag2(1.0, 0.0);
  const auto dense_sq = oracle::mul(oracle::to_dense(u), oracle::to_dense(u), 2);
  const double expect = oracle::trace(dense_sq, 2).real() / 2.0;
  CHECK(expect == doctest::Approx(0.5));
  CHECK(inner(u, u) == doctest::Approx(expect));

  // gamma3 standard basis is orthonormal
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(inner(gamma3_basis(a), gamma3_basis(b)) == doctest::Approx(a == b ? 1.0 : 0.0));
}

TEST_CASE("triple product with the identity reduces to L_u") {
  for (auto desc : {AlgebraDescriptor::hermitian(3), AlgebraDescriptor::gamma3()}) {
    auto rng = oracle::rng_for(13, desc.n);
    const auto e = Element<double>::identity(desc);
    for (int t = 0; t < 25; ++t) {
      const auto u = sample_hermitian(desc, rng);
      const auto w = sample_hermitian(desc, rng);
      CHECK(fro_norm(smap(u, e, w) - jmul(u, w)) < 1e-13 * (1 + fro_norm(u) * fro_norm(w)));
      CHECK(fro_norm(smap(e, u, w) - jmul(u, w)) < 1e-13 * (1 + fro_norm(u) * fro_norm(w)));
      CHECK(fro_norm(smap(e, e, w) - w) < 1e-14 * (1 + fro_norm(w)));
    }
  }
}

TEST_CASE("structure algebra commutator identity") {
  const auto desc = AlgebraDescriptor::hermitian(3);
  auto rng = oracle::rng_for(14, 0);
  for (int t = 0; t < 100; ++t) {
    const auto u = sample_hermitian(desc, rng);
    const auto v = sample_hermitian(desc, rng);
    const auto z = sample_hermitian(desc, rng);
    const auto w = sample_hermitian(desc, rng);
    const auto r = sample_hermitian(desc, rng);
    const auto lhs = smap(u, v, smap(z, w, r)) - smap(z, w, smap(u, v, r));
    const auto rhs = smap(smap(u, v, z), w, r) - smap(z, smap(v, u, w), r);
    CHECK(fro_norm(lhs - rhs) < 1e-12 * (1.0 + fro_norm(lhs) + fro_norm(rhs)));
  }
}

TEST_CASE("orthonormal basis") {
  for (int n : {2, 3, 4}) {
    const auto desc = AlgebraDescriptor::hermitian(n);
    const auto basis = onb(desc);
    REQUIRE(static_cast<int>(basis.size()) == n * n);

    // Gram matrix is the identity
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = 0; b < basis.size(); ++b)
        CHECK(std::abs(inner(basis[a], basis[b]) - (a == b ? 1.0 : 0.0)) < 1e-13);

    // sum of squares: n^2 e
    auto sq = Element<double>::zero(desc);
    for (const auto& ea : basis) sq = sq + jmul(ea, ea);
    CHECK(fro_norm(sq - static_cast<double>(n * n) * Element<double>::identity(desc)) < 1e-12);

    // reconstruction of a random element
    auto rng = oracle::rng_for(15, static_cast<uint64_t>(n));
    const auto u = sample_hermitian(desc, rng);
    auto rebuilt = Element<double>::zero(desc);
    for (const auto& ea : basis) rebuilt = rebuilt + inner(ea, u) * ea;
    CHECK(fro_norm(rebuilt - u) < 1e-13 * (1.0 + fro_norm(u)));
  }
  CHECK(onb(AlgebraDescriptor::gamma3()).size() == 4);
}

TEST_CASE("spin factor to H2 isomorphism") {
  const auto g3 = AlgebraDescriptor::gamma3();
  // identity maps to identity
  CHECK(fro_norm(gamma3_to_h2(Element<double>::identity(g3)) -
                 Element<double>::identity(AlgebraDescriptor::hermitian(2))) ==
        doctest::Approx(0.0));

  auto rng = oracle::rng_for(16, 0);
  double worst_inner = 0.0, worst_hom = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto u = sample_hermitian(g3, rng);
    const auto v = sample_hermitian(g3, rng);
    // isometry
    worst_inner =
        std::max(worst_inner, std::abs(inner(u, v) - inner(gamma3_to_h2(u), gamma3_to_h2(v))));
    // homomorphism, both sides through dense arithmetic
    const auto lhs = oracle::to_dense(gamma3_to_h2(jmul(u, v)));
    const auto rhs =
        oracle::jordan(oracle::to_dense(gamma3_to_h2(u)), oracle::to_dense(gamma3_to_h2(v)), 2);
    worst_hom = std::max(worst_hom, oracle::max_abs_diff(lhs, rhs));
    // round trip
    CHECK(fro_norm(h2_to_gamma3(gamma3_to_h2(u)) - u) < 1e-14 * (1.0 + fro_norm(u)));
  }
  CHECK(worst_inner < 1e-14);
  CHECK(worst_hom < 1e-13);

  // trace commutes with the map
  const auto w = sample_hermitian(g3, rng);
  CHECK(trace(w) == doctest::Approx(trace(gamma3_to_h2(w))).epsilon(1e-14));
}

TEST_CASE("jordan identity and self-adjointness") {
  for (auto desc : {AlgebraDescriptor::hermitian(2), AlgebraDescriptor::hermitian(4),
                    AlgebraDescriptor::gamma3()}) {
    auto rng = oracle::rng_for(
        17, static_cast<uint64_t>(desc.n + (desc.tag == AlgebraTag::Gamma3 ? 100 : 0)));
    for (int t = 0; t < 1000; ++t) {
      const auto u = sample_hermitian(desc, rng);
      const auto w = sample_hermitian(desc, rng);
      const auto v = sample_hermitian(desc, rng);
      const auto u2 = jmul(u, u);
      const auto lhs = jmul(u, jmul(u2, w));
      const auto rhs = jmul(u2, jmul(u, w));
      CHECK(fro_norm(lhs - rhs) < 1e-12 * (1.0 + fro_norm(lhs) + fro_norm(rhs)));
      CHECK(std::abs(inner(jmul(u, v), w) - inner(v, jmul(u, w))) <
            1e-13 * (1.0 + fro_norm(u) * fro_norm(v) * fro_norm(w)));
    }
  }
}

TEST_CASE("triple product outer-slot symmetry holds numerically") {
  const auto desc = AlgebraDescriptor::hermitian(3);
  auto rng = oracle::rng_for(18, 0);
  for (int t = 0; t < 200; ++t) {
    const auto u = sample_hermitian(desc, rng);
    const auto v = sample_hermitian(desc, rng);
    const auto w = sample_hermitian(desc, rng);
    const auto lhs = smap(u, v, w);
    CHECK(fro_norm(lhs - smap(w, v, u)) < 1e-12 * (1.0 + fro_norm(lhs)));
  }
}

TEST_CASE("traces of the identity") {
  CHECK(trace(Element<double>::identity(AlgebraDescriptor::hermitian(5))) ==
        doctest::Approx(5.0));
  CHECK(trace(Element<double>::identity(AlgebraDescriptor::gamma3())) == doctest::Approx(2.0));
}

TEST_CASE("results of arithmetic stay hermitian") {
  const auto desc = AlgebraDescriptor::hermitian(4);
  auto rng = oracle::rng_for(19, 0);
  for (int t = 0; t < 100; ++t) {
    const auto u = sample_hermitian(desc, rng);
    const auto v = sample_hermitian(desc, rng);
    CHECK(hermiticity_residual(jmul(u, v)) < 1e-14 * (1.0 + fro_norm(u) * fro_norm(v)));
    CHECK(hermiticity_residual(smap(u, v, u)) < 1e-13 * (1.0 + fro_norm(u) * fro_norm(v)));
  }
}

TEST_CASE("mismatched algebra tags are rejected") {
  const auto a = Element<double>::identity(AlgebraDescriptor::hermitian(2));
  const auto b = Element<double>::identity(AlgebraDescriptor::gamma3());
  const auto c = Element<double>::identity(AlgebraDescriptor::hermitian(3));
  CHECK_THROWS_AS((void)jmul(a, b), Error);
  CHECK_THROWS_AS((void)inner(a, c), Error);
  try {
    (void)jmul(a, c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::usage);
  }
}

TEST_SUITE_END();
