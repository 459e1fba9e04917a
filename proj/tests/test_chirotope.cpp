#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "tln/chirotope.hpp"

using namespace tln;
using testsupport::Q;
using testsupport::fixture;
using testsupport::Gen;

TEST_CASE("basis table sizes") {
  for (int n = 1; n <= 5; ++n)
    CHECK(BasisTable::get(n).size() == static_cast<std::size_t>(testsupport::binomial(2 * n + 1, n + 1)));
  CHECK(BasisTable::get(3).size() == 35);
  CHECK(BasisTable::get(4).size() == 126);
  const auto& t = BasisTable::get(3);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto e = t.elements(i);
    CHECK(std::is_sorted(e.begin(), e.end()));
    CHECK(t.rank(e) == i);
  }
}

TEST_CASE("element names") {
  CHECK(element_name(e_elem(0), 3) == "e1");
  CHECK(element_name(h_elem(2), 3) == "h3");
  CHECK(element_name(inf_elem(3), 3) == "e_inf");
  CHECK(parse_element("h2", 3) == h_elem(1));
  CHECK(parse_element("e_inf", 3) == 6);
}

TEST_CASE("base signs match cofactor determinants") {
  Gen gen(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(gen.uniform(2, 4));
    const Network net = gen.competitive(n);
    const Chirotope chi = Chirotope::of(net);
    const GroundSet ground(net);
    for (std::size_t b = 0; b < chi.basis_count(); ++b) {
      const auto ids = chi.bases().elements(b);
      const Rational expected = testsupport::oracle_det(net, ids);
      CHECK(to_int(chi.base(b)) == testsupport::sgn(expected));
      CHECK(ground.det(ids) == expected);
    }
  }
}

TEST_CASE("chirotope is alternating on ordered tuples") {
  Gen gen(22);
  const Network net = gen.competitive(3);
  const Chirotope chi = Chirotope::of(net);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> ids(7);
    for (int i = 0; i < 7; ++i) ids[i] = i;
    std::shuffle(ids.begin(), ids.end(), gen.engine());
    ids.resize(4);
    if (gen.coin()) ids[3] = ids[0];  // repeated element
    CHECK(to_int(chi(ids)) == testsupport::sgn(testsupport::oracle_det(net, ids)));
  }
}

TEST_CASE("s-determinants for sigma = 23") {
  const Network net = read_network(fixture("example2_6.json"));
  const Subset s23 = 0b110;
  // The displayed matrices: rows e1, h2, h3 followed by e2, e3 or h1.
  const std::vector<int> a{e_elem(0), h_elem(1), h_elem(2)};
  auto with_last = [&](int id) {
    auto v = a;
    v.push_back(id);
    return v;
  };
  CHECK(a_sigma(s23, 3) == a);
  CHECK(s_determinant(net, s23, 1).value == Q(466, 10000));
  CHECK(s_determinant(net, s23, 2).value == Q(4, 100));
  CHECK(s_determinant(net, s23, 1).value == testsupport::oracle_det(net, with_last(e_elem(1))));
  CHECK(s_determinant(net, s23, 2).value == testsupport::oracle_det(net, with_last(e_elem(2))));
  const Rational s1 = s_determinant(net, s23, 0).value;
  CHECK(s1 == testsupport::oracle_det(net, with_last(h_elem(0))));
  CHECK(s1 == Q(-18987, 1000000));
  CHECK(to_decimal(s1, 3) == "-0.019");  // the printed value is this, rounded
  const Chirotope chi = Chirotope::of(net);
  CHECK(s_sign(chi, s23, 1) == Sign::Pos);
  CHECK(s_sign(chi, s23, 2) == Sign::Pos);
  CHECK(s_sign(chi, s23, 0) == Sign::Neg);
}

TEST_CASE("cocircuit signs are the signs of x^sigma against every hyperplane") {
  Gen gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = static_cast<int>(gen.uniform(2, 4));
    const Network net = gen.competitive(n);
    const Chirotope chi = Chirotope::of(net);
    if (!chi.simplicial()) continue;
    for (Subset sigma = 0; sigma < (Subset{1} << n); ++sigma) {
      const auto x = testsupport::region_equilibrium(net, sigma);
      REQUIRE(x);
      const Cocircuit c = cocircuit(chi, sigma);
      for (int i = 0; i < n; ++i) {
        Rational h = net.input(i) - (*x)[i];
        for (int j = 0; j < n; ++j) h += net.w(i, j) * (*x)[j];
        CHECK(to_int(c.at_E(i)) == testsupport::sgn((*x)[i]));
        CHECK(to_int(c.at_H(i)) == testsupport::sgn(h));
      }
    }
  }
}

TEST_CASE("degenerate vertex is rejected") {
  // 1 - W12 W21 = 0 makes the full-support system singular.
  const Network net(Matrix{{0, -2}, {Q(-1, 2), 0}}, {1, 1});
  CHECK_THROWS_AS(cocircuit(Chirotope::of(net), 0b11), DegenerateError);
  CHECK_FALSE(Chirotope::of(net).simplicial());
}

TEST_CASE("sign table round trip and flips") {
  const Network net = read_network(fixture("example2_6.json"));
  const Chirotope chi = Chirotope::of(net);
  CHECK(chi.simplicial());
  const Chirotope copy = Chirotope::from_signs(3, chi.signs());
  CHECK(copy == chi);
  const Chirotope f = chi.flipped(4);
  CHECK(f.base(4) == -chi.base(4));
  CHECK(f.key() != chi.key());
  CHECK(f.flipped(4) == chi);
  CHECK(chi.key().size() == 35);
}

TEST_CASE("large entries take the big-integer path with the same signs") {
  Gen gen(24);
  for (int trial = 0; trial < 10; ++trial) {
    Network net = gen.competitive(3);
    // Denominators near 2^61 push the scaled rows past the fast-path bound.
    const Rational tiny(1, Integer("2305843009213693951"));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) net.w(i, j) -= tiny * (i + 2 * j + 1);
    const Chirotope chi = Chirotope::of(net);
    for (std::size_t b = 0; b < chi.basis_count(); ++b)
      CHECK(to_int(chi.base(b)) == testsupport::sgn(testsupport::oracle_det(net, chi.bases().elements(b))));
  }
}

TEST_CASE("axis report covers inputs and pair determinants") {
  const AxisReport rep = axis_signs(read_network(fixture("example2_6.json")));
  bool found = false;
  for (const auto& e : rep.entries)
    if (e.quantity == "s^{12}_2") {
      found = true;
      CHECK(e.value == Q(815, 10000));
    }
  CHECK(found);
}
