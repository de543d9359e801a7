#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <utility>

#include "rieszterm/parse.hpp"
#include "rieszterm/witness.hpp"

using namespace rieszterm;

namespace {

RealOperation op_of(const char* src, Signature sig = Signature::Extended) {
  return term_operation(parse(src, sig));
}

WitnessConfig config(Rational p, WitnessMode mode, std::size_t count, std::uint64_t seed = 1) {
  WitnessConfig cfg;
  cfg.p = std::move(p);
  cfg.mode = mode;
  cfg.count = count;
  cfg.seed = seed;
  return cfg;
}

// The stage-n bound the search must beat, recomputed independently.
Rational stage_bound(const WitnessConfig& cfg, std::size_t n, const std::vector<Rational>& v) {
  Int pa = num(cfg.p), pb = den(cfg.p);
  Rational r = detail::pow2_upper(Int(static_cast<unsigned long>(n)) * pb, pa);
  Rational b(0);
  if (cfg.mode == WitnessMode::Finite)
    b = detail::pow2_upper(Int(static_cast<unsigned long>(n + 1)) * pb, pa);
  for (std::size_t j = 0; j < v.size() && j < n; ++j) b += r * rat_abs(v[j]);
  return b;
}

}  // namespace

TEST_CASE("dyadic upper bounds on fractional powers of two", "[witness]") {
  CHECK(detail::pow2_upper(Int(3), Int(1)) == Rational(8));
  CHECK(detail::pow2_upper(Int(0), Int(5)) == Rational(1));

  Rational r = detail::pow2_upper(Int(1), Int(2));  // >= sqrt(2)
  CHECK(r * r >= Rational(2));
  CHECK(r < Rational(3, 2));

  Rational s = detail::pow2_upper(Int(10), Int(3));  // >= 2^(10/3) ~ 10.08
  CHECK(s * s * s >= Rational(1024));
  CHECK(s < Rational(11));
}

TEST_CASE("rational power enclosures", "[witness]") {
  Interval e = detail::pow_enclosure(Rational(3), 3, 2);  // 3^(3/2) = sqrt(27)
  CHECK(e.lo <= e.hi);
  CHECK(e.lo * e.lo <= Rational(27));
  CHECK(e.hi * e.hi >= Rational(27));
  CHECK(e.width() <= pow2(-60));

  Interval d = detail::pow_enclosure(Rational(4), 1, 2);  // exact boundary case
  CHECK(d.contains(Rational(2)));

  Interval t = detail::pow_enclosure_tight(Rational(5), Rational(3, 2));
  CHECK(t.lo > 0);
  CHECK(t.hi <= Rational(3, 2) * t.lo);
  CHECK(t.lo * t.lo <= Rational(125));
  CHECK(t.hi * t.hi >= Rational(125));

  CHECK(detail::pow_enclosure_tight(Rational(0), Rational(3, 2)) ==
        Interval(Rational(0), Rational(0)));
  // Integer p degenerates to the exact value.
  Interval x = detail::pow_enclosure_tight(Rational(7, 2), Rational(2));
  CHECK(x == Interval(Rational(49, 4), Rational(49, 4)));
}

TEST_CASE("stage searches find squaring violations", "[witness]") {
  RealOperation sq = op_of("sq(x0)");
  for (Rational p : {Rational(1), Rational(2)}) {
    for (WitnessMode mode : {WitnessMode::Arbitrary, WitnessMode::Finite}) {
      WitnessConfig cfg = config(p, mode, 0);
      for (std::size_t n : {std::size_t(0), std::size_t(3), std::size_t(12), std::size_t(25)}) {
        auto hit = find_violation(sq, n, cfg);
        REQUIRE(hit);
        CHECK(hit->value == sq(hit->point));
        CHECK(rat_abs(hit->value) > stage_bound(cfg, n, hit->point));
      }
    }
  }
}

TEST_CASE("linearly bounded operations stop violating once all inputs are charged",
          "[witness]") {
  // Stage n charges only coordinates j < n, so an operation certified with
  // k = 0 and every lambda <= 1 admits no violation once n >= arity (then
  // every input carries weight r_n >= 1 >= lambda_j).
  WitnessConfig cfg = config(Rational(1), WitnessMode::Arbitrary, 0);
  for (const char* src : {"x0", "trunc(x0)"}) {
    RealOperation op = op_of(src, Signature::Base);
    for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(5), std::size_t(20)}) {
      CHECK_FALSE(find_violation(op, n, cfg));
    }
  }
  RealOperation meet = op_of("meet(x0, x1)", Signature::Base);
  for (std::size_t n : {std::size_t(2), std::size_t(5), std::size_t(20)}) {
    CHECK_FALSE(find_violation(meet, n, cfg));
  }
  // Below arity the free coordinate is uncharged: (0, -1) defeats stage 1.
  auto early = find_violation(meet, 1, cfg);
  REQUIRE(early);
  CHECK(early->point[0] == Rational(0));
  CHECK(rat_abs(early->value) > 0);
  // Stage 0 carries no charge at all, so any nonzero operation violates it.
  CHECK(find_violation(op_of("x0", Signature::Base), 0, cfg));
}

TEST_CASE("witness assembly for squaring", "[witness]") {
  RealOperation sq = op_of("sq(x0)");
  for (long pe : {1L, 2L}) {
    WitnessConfig cfg = config(Rational(pe), WitnessMode::Arbitrary, 25);
    ViolationWitness w = build_witness(sq, cfg);
    REQUIRE(w.count() == 25);
    CHECK(w.arity == 1);
    for (std::size_t n = 0; n < w.count(); ++n) {
      // mu(A_n) = 1/|tau|^p exactly, so each image term is exactly 1.
      CHECK(w.weights[n] == Rational(1) / pow_int(rat_abs(w.taus[n]), pe));
      CHECK(pow_int(rat_abs(w.taus[n]), pe) * w.weights[n] == Rational(1));
      CHECK(w.taus[n] == sq(w.points[n]));
    }
  }
}

TEST_CASE("finite-mode weights embed into a finite measure", "[witness]") {
  RealOperation sq = op_of("sq(x0)");
  WitnessConfig cfg = config(Rational(1), WitnessMode::Finite, 20);
  ViolationWitness w = build_witness(sq, cfg);
  Rational total(0);
  for (std::size_t n = 0; n < w.count(); ++n) {
    CHECK(w.weights[n] < pow2(-static_cast<long>(n + 1)));
    total += w.weights[n];
  }
  CHECK(total < Rational(1));
}

TEST_CASE("closed operations of arity zero", "[witness]") {
  RealOperation unit = op_of("one", Signature::Unital);
  CHECK(unit.arity == 0);
  WitnessConfig cfg = config(Rational(1), WitnessMode::Arbitrary, 3);
  ViolationWitness w = build_witness(unit, cfg);
  REQUIRE(w.count() == 3);
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK(w.points[n].empty());
    CHECK(w.taus[n] == Rational(1));
    CHECK(w.weights[n] == Rational(1));
  }
  WitnessReport rep = verify_witness(w);
  CHECK(rep.image_sum == Interval(Rational(3), Rational(3)));
  CHECK(rep.diverges);
  CHECK(rep.sources.empty());
}

TEST_CASE("inconclusive searches throw instead of fabricating witnesses", "[witness]") {
  WitnessConfig cfg = config(Rational(1), WitnessMode::Arbitrary, 5);
  cfg.search.probe_budget = 64;  // keep the exhaustion fast
  cfg.search.ladder_size = 16;
  CHECK_THROWS_AS(build_witness(op_of("trunc(x0)", Signature::Base), cfg), WitnessError);
}

TEST_CASE("witness verification report", "[witness]") {
  RealOperation sq = op_of("sq(x0)");
  ViolationWitness w = build_witness(sq, config(Rational(1), WitnessMode::Arbitrary, 60));
  WitnessReport rep = verify_witness(w);
  CHECK(rep.threshold == Rational(30));
  CHECK(rep.image_sum == Interval(Rational(60), Rational(60)));
  REQUIRE(rep.sources.size() == 1);
  CHECK(rep.sources[0].within);
  CHECK(rep.sources[0].sum.hi <= rep.sources[0].bound);
  CHECK(rep.diverges);

  // An unreachable explicit threshold flips the verdict, not the sums.
  WitnessReport high = verify_witness(w, Rational(61));
  CHECK_FALSE(high.diverges);
  CHECK(high.image_sum == rep.image_sum);

  // The empty witness proves nothing.
  ViolationWitness empty;
  empty.p = Rational(1);
  WitnessReport none = verify_witness(empty);
  CHECK(none.image_sum == Interval(Rational(0), Rational(0)));
  CHECK_FALSE(none.diverges);
}

TEST_CASE("fractional exponents use enclosures end to end", "[witness]") {
  RealOperation sq = op_of("sq(x0)");
  WitnessConfig cfg = config(Rational(3, 2), WitnessMode::Arbitrary, 8);
  ViolationWitness w = build_witness(sq, cfg);
  REQUIRE(w.count() == 8);
  WitnessReport rep = verify_witness(w);
  // Image terms are in [4/5, 1] by construction; the provable enclosure still
  // clears the default N/2 threshold (each term's lower bound is >= 8/15).
  CHECK(rep.image_sum.lo >= Rational(64, 15));
  CHECK(rep.image_sum.hi <= Rational(12));
  REQUIRE(rep.sources.size() == 1);
  CHECK(rep.sources[0].within);
  CHECK(rep.diverges);
}

TEST_CASE("witness files round-trip for integer p", "[witness]") {
  RealOperation sq = op_of("sq(x0)");
  ViolationWitness w = build_witness(sq, config(Rational(2), WitnessMode::Finite, 10));
  ViolationWitness back = read_witness(write_witness(w));
  CHECK(back.p == w.p);
  CHECK(back.mode == w.mode);
  CHECK(back.arity == w.arity);
  CHECK(back.points == w.points);
  CHECK(back.weights == w.weights);
  CHECK(rat_abs(back.taus[3]) == rat_abs(w.taus[3]));  // tau recovered up to sign
  CHECK(verify_witness(back).diverges == verify_witness(w).diverges);
}

TEST_CASE("malformed witness files are rejected", "[witness]") {
  CHECK_THROWS_AS(read_witness(""), MalformedWitnessFile);
  CHECK_THROWS_AS(read_witness("p=1 N=1\n"), MalformedWitnessFile);
  CHECK_THROWS_AS(read_witness("p=1 mode=X N=1\n"), MalformedWitnessFile);
  CHECK_THROWS_AS(read_witness("p=1 mode=A N=1\nval 0 0 3\n"), MalformedWitnessFile);
  CHECK_THROWS_AS(read_witness("p=1 mode=A N=1\natom 0 weight 0\nval 0 0 3\n"),
                  MalformedWitnessFile);
  CHECK_THROWS_AS(read_witness("p=1 mode=A N=1\natom 5 weight 1/9\n"), MalformedWitnessFile);
  CHECK_THROWS_AS(read_witness("p=1 mode=A N=1\natom 0 weight 1/9\nbogus\n"),
                  MalformedWitnessFile);
  // 1/weight must be an exact p-th power so tau can be recovered.
  CHECK_THROWS_AS(read_witness("p=2 mode=A N=1\natom 0 weight 1/3\nval 0 0 2\n"),
                  MalformedWitnessFile);
  CHECK_NOTHROW(read_witness("p=2 mode=A N=1\natom 0 weight 1/9\nval 0 0 2\n"));
  // Fractional p cannot be re-verified from a file.
  RealOperation sq = op_of("sq(x0)");
  ViolationWitness w = build_witness(sq, config(Rational(3, 2), WitnessMode::Arbitrary, 2));
  CHECK_THROWS_AS(read_witness(write_witness(w)), MalformedWitnessFile);
}

TEST_CASE("unrestricted dyadic atom model", "[witness]") {
  auto atoms = partitionable_atoms({Rational(3, 4)});
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].depth == -1);
  CHECK(atoms[1].depth == -2);
  CHECK(atoms[0].weight + atoms[1].weight == Rational(3, 4));

  auto one_atom = partitionable_atoms({Rational(1)});
  REQUIRE(one_atom.size() == 1);
  CHECK(one_atom[0].depth == 0);

  CHECK_THROWS_AS(partitionable_atoms({Rational(1, 3)}), NonDyadicWeight);

  // Multi-row lists: atoms are disjoint and rows sum back exactly.
  std::vector<Rational> rows{Rational(11, 4), Rational(0), Rational(1, 1024), Rational(6)};
  auto all = partitionable_atoms(rows);
  std::set<std::pair<std::size_t, long>> labels;
  std::vector<Rational> sums(rows.size(), Rational(0));
  for (const ModelAtom& a : all) {
    CHECK(labels.insert({a.row, a.depth}).second);
    CHECK(a.weight == pow2(a.depth));
    sums[a.row] += a.weight;
  }
  CHECK(sums == rows);
}

TEST_CASE("depth-restricted dyadic atom model", "[witness]") {
  auto atoms = conditionally_partitionable_atoms({Rational(3, 2)});
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].depth == 0);
  CHECK(atoms[1].depth == 1);
  CHECK(atoms[0].weight == Rational(1));
  CHECK(atoms[1].weight == Rational(1, 2));

  // Row n may only use depths m >= n.
  CHECK_NOTHROW(conditionally_partitionable_atoms({Rational(0), Rational(3, 4)}));
  CHECK_THROWS_AS(conditionally_partitionable_atoms({Rational(0), Rational(1)}), WeightTooLarge);
  CHECK_THROWS_AS(conditionally_partitionable_atoms({Rational(0), Rational(3, 2)}),
                  WeightTooLarge);
  CHECK_THROWS_AS(conditionally_partitionable_atoms({Rational(1, 3)}), NonDyadicWeight);

  CHECK(conditional_model_row_weight(0) == Rational(2));
  CHECK(conditional_model_row_weight(3) == Rational(1, 4));
  CHECK(conditional_model_total_prefix(20) == Rational(4) - pow2(-18));
  CHECK(conditional_model_total_prefix(1) == Rational(2));
  CHECK(conditional_model_normalizer() == Rational(1, 4));
}
