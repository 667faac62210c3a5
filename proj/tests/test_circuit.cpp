#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "spl/circuit_io.hpp"
#include "spl/validate.hpp"
#include "test_util.hpp"

using namespace spl;
using namespace spltest;

TEST_CASE("hand-built hierarchy circuit validates and evaluates") {
  Circuit c = hierarchyPairCircuit();
  StructureFlags f = validateStructure(c);
  CHECK(f.smooth);
  CHECK(f.decomposable);
  CHECK(f.deterministic);
  CHECK(f.deterministicExact);

  ParameterVector none;
  CHECK(evaluate(c, none, Assignment::fromBits({1, 0, 1})) == doctest::Approx(1.0));
  CHECK(evaluate(c, none, Assignment::fromBits({1, 0, 0})) == 0.0);
  CHECK(evaluate(c, none, Assignment::fromBits({0, 0, 0})) == doctest::Approx(1.0));
  CHECK(evaluate(c, none, Assignment::fromBits({1, 1, 0})) == 0.0);
  CHECK(supportCount(c, none) == 5);
}

TEST_CASE("single Bernoulli input is trivially smooth, decomposable, deterministic") {
  CircuitBuilder b(1);
  UnitId root = b.bernoulli(0);
  Circuit c = std::move(b).finish(root);
  StructureFlags f = validateStructure(c);
  CHECK(f.smooth);
  CHECK(f.decomposable);
  CHECK(f.deterministic);
}

TEST_CASE("sum over two copies of the same indicator is not deterministic") {
  CircuitBuilder b(1);
  UnitId i1 = b.indicator(0, true);
  UnitId i2 = b.indicator(0, true);
  UnitId root = b.sum({i1, i2});
  Circuit c = std::move(b).finish(root);
  StructureFlags f = validateStructure(c);
  CHECK(f.smooth);
  CHECK_FALSE(f.deterministic);
}

TEST_CASE("factorized Bernoulli product evaluates to the probability product") {
  Circuit q = mixtureOfFactorized({0, 1, 2}, 3, 1);
  ParameterVector p = {0.9, 0.9, 0.1};
  CHECK(evaluate(q, p, Assignment::fromBits({1, 1, 1})) == doctest::Approx(0.081));
  CHECK(evaluate(q, p, Assignment::fromBits({0, 0, 0})) == doctest::Approx(0.1 * 0.1 * 0.9));
}

TEST_CASE("evaluate demands a full assignment over the scope") {
  Circuit q = mixtureOfFactorized({0, 1, 2}, 3, 1);
  ParameterVector p = {0.5, 0.5, 0.5};
  Assignment a(3);
  a.set(0, true);
  a.set(1, false);
  CHECK_THROWS_AS(evaluate(q, p, a), Error);
  ParameterVector wrong = {0.5};
  CHECK_THROWS_AS(evaluate(q, wrong, Assignment::fromBits({1, 1, 1})), Error);
}

TEST_CASE("exact zeros survive log-space evaluation") {
  Circuit c = hierarchyPairCircuit();
  ParameterVector none;
  EvalWorkspace ws;
  CHECK(evaluateLog(c, none, Assignment::fromBits({1, 1, 0}), ws) == kLogZero);
  CHECK(evaluate(c, none, Assignment::fromBits({1, 1, 0})) == 0.0);
}

TEST_CASE("support counting rejects oversized scopes") {
  std::vector<VarId> vars(26);
  for (VarId v = 0; v < 26; ++v) vars[v] = v;
  Circuit q = mixtureOfFactorized(vars, 26, 1);
  ParameterVector p(q.numSlots(), 0.5);
  CHECK_THROWS_AS(supportCount(q, p), Error);
}

TEST_CASE("backward on a single Bernoulli input") {
  CircuitBuilder b(1);
  UnitId root = b.bernoulli(0);
  Circuit c = std::move(b).finish(root);
  ParameterVector p = {0.3};
  EvalWorkspace ws;
  auto g1 = backward(c, p, Assignment::fromBits({1}), ws);
  CHECK(g1[0] == doctest::Approx(1.0));
  auto g0 = backward(c, p, Assignment::fromBits({0}), ws);
  CHECK(g0[0] == doctest::Approx(-1.0));
}

TEST_CASE("backward through a weighted sum returns child values") {
  CircuitBuilder b(2);
  UnitId h1 = b.bernoulli(0);
  UnitId h2 = b.bernoulli(1);
  UnitId g1 = b.sum({b.indicator(1, false), b.indicator(1, true)});
  UnitId g0 = b.sum({b.indicator(0, false), b.indicator(0, true)});
  UnitId c1 = b.product({h1, g1});
  UnitId c2 = b.product({g0, h2});
  UnitId root = b.sumSlots({c1, c2});
  Circuit c = std::move(b).finish(root);
  // slots: lambda0, lambda1, w1, w2
  ParameterVector p = {0.8, 0.25, 0.6, 0.4};
  Assignment a = Assignment::fromBits({1, 0});
  EvalWorkspace ws;
  auto grad = backward(c, p, a, ws);
  // d/dw1 = h1(a) = 0.8, d/dw2 = h2(a) = 0.75
  CHECK(grad[2] == doctest::Approx(0.8));
  CHECK(grad[3] == doctest::Approx(0.75));
}

TEST_CASE("gradients match central finite differences on random structured circuits") {
  Rng rng(20240811);
  for (int iter = 0; iter < 100; ++iter) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(11));  // up to 12 vars
    std::vector<VarId> vars(n);
    for (VarId v = 0; v < n; ++v) vars[v] = v;
    rng.shuffle(vars);
    Vtree vt = rng.coin() ? Vtree::rightLinear(vars) : Vtree::balanced(vars);
    int k = 1 + static_cast<int>(rng.below(3));
    Circuit c = vtreePc(vt, n, k);
    ParameterVector p = randomParams(c, rng);
    std::vector<uint8_t> bits(n);
    for (auto& x : bits) x = rng.coin() ? 1 : 0;
    Assignment a = Assignment::fromBits(bits);

    EvalWorkspace ws;
    auto grad = backward(c, p, a, ws);
    const double h = 1e-5;
    size_t stride = std::max<size_t>(1, c.numSlots() / 16);
    for (size_t s = 0; s < c.numSlots(); s += stride) {
      ParameterVector lo = p, hi = p;
      lo[s] -= h;
      hi[s] += h;
      double fd = (evaluate(c, hi, a) - evaluate(c, lo, a)) / (2 * h);
      CHECK(relErr(grad[s], fd) <= 1e-4);
    }
  }
}

TEST_CASE("normalization: simplex sums and Bernoulli inputs integrate to one") {
  Rng rng(7);
  for (int iter = 0; iter < 30; ++iter) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(9));
    std::vector<VarId> vars(n);
    for (VarId v = 0; v < n; ++v) vars[v] = v;
    Vtree vt = rng.coin() ? Vtree::rightLinear(vars) : Vtree::balanced(vars);
    Circuit c = vtreePc(vt, n, 1 + static_cast<int>(rng.below(3)));
    ParameterVector p = randomParams(c, rng, /*simplexSums=*/true);
    CHECK(bruteTotalMass(c, p) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("log-space forward agrees with an independent linear evaluator") {
  Rng rng(99);
  for (int iter = 0; iter < 40; ++iter) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(7));
    std::vector<VarId> vars(n);
    for (VarId v = 0; v < n; ++v) vars[v] = v;
    Circuit c = vtreePc(Vtree::balanced(vars), n, 2);
    ParameterVector p = randomParams(c, rng);
    for (uint64_t m = 0; m < (uint64_t(1) << n); ++m) {
      auto bits = bitsOf(m, vars, n);
      double expect = evalRec(c, c.root(), p, bits);
      double got = evaluate(c, p, Assignment::fromBits(bits));
      CHECK(relErr(expect, got) <= 1e-10);
    }
  }
}

TEST_CASE("validator determinism verdict matches a brute-force oracle") {
  Rng rng(3);
  for (int iter = 0; iter < 25; ++iter) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(7));
    std::vector<VarId> vars(n);
    for (VarId v = 0; v < n; ++v) vars[v] = v;
    Circuit c = vtreePc(Vtree::rightLinear(vars), n, 1 + static_cast<int>(rng.below(2)));
    ParameterVector p(c.numSlots(), 0.5);
    for (const auto& g : c.weightGroups())
      for (int32_t s : g) p[static_cast<size_t>(s)] = 1.0;

    bool brute = true;
    for (uint64_t m = 0; m < (uint64_t(1) << n) && brute; ++m) {
      auto vals = evalAllUnits(c, p, bitsOf(m, vars, n));
      for (UnitId id = 0; id < c.numUnits() && brute; ++id) {
        const Unit& u = c.unit(id);
        if (u.kind != UnitKind::Sum) continue;
        int nonzero = 0;
        for (UnitId ch : u.children)
          if (vals[ch] > 0.0) ++nonzero;
        if (nonzero > 1) brute = false;
      }
    }
    CHECK(checkDeterminismExact(c) == brute);
  }
}

TEST_CASE("serialization round-trips structure and support") {
  Circuit c = hierarchyPairCircuit();
  std::string text = circuitToString(c);
  Circuit back = circuitFromString(text);
  CHECK(back.numUnits() == c.numUnits());
  CHECK(back.numVars() == c.numVars());
  ParameterVector none;
  CHECK(supportCount(back, none) == 5);
  for (uint64_t m = 0; m < 8; ++m) {
    auto bits = bitsOf(m, {0, 1, 2}, 3);
    CHECK(evaluate(back, none, Assignment::fromBits(bits)) ==
          evaluate(c, none, Assignment::fromBits(bits)));
  }
  CHECK(circuitToString(back) == text);
}

TEST_CASE("serialization keeps Bernoulli slots in unit-id order") {
  Circuit q = mixtureOfFactorized({0, 1, 2}, 3, 2);
  Circuit back = circuitFromString(circuitToString(q));
  CHECK(back.numSlots() == 6);  // lambda slots survive, mixture weights become fixed ones
  ParameterVector p = {0.9, 0.9, 0.1, 0.2, 0.3, 0.4};
  CHECK(evaluate(back, p, Assignment::fromBits({1, 1, 1})) ==
        doctest::Approx(0.9 * 0.9 * 0.1 + 0.2 * 0.3 * 0.4));
}

TEST_CASE("loader rejects malformed input") {
  CHECK_THROWS_AS(circuitFromString("bogus v1 1 1\nB 0 0\nR 0\n"), Error);
  CHECK_THROWS_AS(circuitFromString("spl-circuit v1 1 1\nB 0 0\n"), Error);  // no root
  CHECK_THROWS_AS(circuitFromString("spl-circuit v1 1 2\nB 0 0\nR 0\n"), Error);  // undefined unit
  // self-referential sum
  CHECK_THROWS_AS(circuitFromString("spl-circuit v1 1 1\nS 0 1 0\nR 0\n"), Error);
  // two-node cycle
  CHECK_THROWS_AS(
      circuitFromString("spl-circuit v1 1 2\nS 0 1 1\nS 1 1 0\nR 0\n"), Error);
}

TEST_CASE("maximize fills free variables and respects fixed ones") {
  Circuit q = mixtureOfFactorized({0, 1, 2}, 3, 1);
  ParameterVector p = {0.9, 0.2, 0.6};
  Assignment a(3);  // all free
  MaxResult r = maximize(q, p, a);
  CHECK(r.assignment.value(0));
  CHECK_FALSE(r.assignment.value(1));
  CHECK(r.assignment.value(2));
  CHECK(std::exp(r.logValue) == doctest::Approx(0.9 * 0.8 * 0.6));

  a.set(0, false);
  MaxResult r2 = maximize(q, p, a);
  CHECK_FALSE(r2.assignment.value(0));
  CHECK(std::exp(r2.logValue) == doctest::Approx(0.1 * 0.8 * 0.6));
}

TEST_CASE("maximize breaks exact ties toward the lexicographically smallest state") {
  Circuit c = hierarchyPairCircuit();
  ParameterVector none;
  Assignment a(3);
  MaxResult r = maximize(c, none, a);  // all five models have value 1
  CHECK(r.assignment.bits() == std::vector<uint8_t>{0, 0, 0});
}

TEST_CASE("parameterizeSums assigns softmax groups to every wide sum") {
  Circuit c = hierarchyPairCircuit();
  CHECK(c.numSlots() == 0);
  Circuit pc = parameterizeSums(c);
  CHECK(pc.numSlots() > 0);
  CHECK(!pc.weightGroups().empty());
  ParameterVector p = uniformParams(pc);
  checkParams(pc, p, /*requireSimplex=*/true);
  CHECK(supportCount(pc, p) == 5);
}
