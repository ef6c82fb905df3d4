// Copyright 2026 The antsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <antsel/errors.hpp>
#include <antsel/heuristics.hpp>
#include <antsel/ising.hpp>

#include <doctest.h>

#include "oracles.hpp"

#include <cmath>
#include <set>

using namespace antsel;

namespace {

std::vector<BitVector> all_bits(int k) {
  std::vector<BitVector> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << k); ++code) {
    BitVector b(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) b[i] = static_cast<std::uint8_t>((code >> i) & 1U);
    out.push_back(b);
  }
  return out;
}

SpinVector to_spins(const BitVector& b) {
  SpinVector s(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) s[i] = b[i] ? 1 : -1;
  return s;
}

double spin_value(const SpinForm& f, const SpinVector& s) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < f.quadratic.rows(); ++i) {
    v += f.linear(i) * s[i];
    for (Eigen::Index j = 0; j < f.quadratic.cols(); ++j) v += f.quadratic(i, j) * s[i] * s[j];
  }
  return v;
}

double quad(const RMatrix& m, const SpinVector& s) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v += m(i, j) * s[i] * s[j];
  }
  return v;
}

SpinVector flipped(SpinVector s) {
  for (auto& x : s) x = static_cast<std::int8_t>(-x);
  return s;
}

}  // namespace

TEST_SUITE("ising") {
  TEST_CASE("bit encoding round-trips and rejects bad blocks") {
    const SystemDims d(2, 3, 3);
    Rng rng(1);
    for (int t = 0; t < 1000; ++t) {
      const auto cfg = random_configuration(d, rng);
      const auto bits = encode_bits(cfg, d);
      CHECK(decode_bits(bits, d) == cfg);
      CHECK(decode_spins(encode_spins(cfg, d), d) == cfg);
    }
    const SystemDims d2(1, 1, 2);
    const BitVector two_hot{1, 1, 1, 0};
    CHECK_FALSE(decode_bits(two_hot, d2).has_value());
    const BitVector empty_block{0, 0, 1, 0};
    CHECK_FALSE(is_feasible(empty_block, d2));
    const BitVector short_bits{1, 0};
    CHECK_THROWS_AS(decode_bits(short_bits, d2), StructuralError);
  }

  TEST_CASE("objective matrix: structure and exactness on feasible vectors") {
    const SystemDims unit_dims(2, 2, 2);
    CMatrix g(4, 4);
    Rng phase(3);
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = std::polar(1.0, phase.uniform(0.0, 6.0));
    const auto unit = build_objective(FullChannel(unit_dims, g));
    for (const auto& cfg : oracle::all_configurations(unit_dims)) {
      CHECK(unit.value(encode_bits(cfg, unit_dims)) == doctest::Approx(4.0));
    }

    Rng rng(5);
    const auto single = sample_channel(SystemDims(1, 1, 2), rng);
    const auto q1 = build_objective(single);
    for (const auto& cfg : oracle::all_configurations(single.dims())) {
      CHECK(q1.value(encode_bits(cfg, single.dims())) ==
            doctest::Approx(std::norm(single.g()(cfg.rx_states[0], cfg.tx_states[0]))).epsilon(1e-14));
    }

    for (const SystemDims d : {SystemDims(1, 1, 2), SystemDims(2, 2, 2), SystemDims(2, 3, 2), SystemDims(3, 3, 3)}) {
      const auto ch = sample_channel(d, rng);
      const auto obj = build_objective(ch);
      CHECK(obj.q.isApprox(obj.q.transpose(), 0.0));
      CHECK(obj.q.topLeftCorner(d.tx_cols(), d.tx_cols()).isZero(0.0));
      CHECK(obj.q.bottomRightCorner(d.rx_rows(), d.rx_rows()).isZero(0.0));
      for (const auto& cfg : oracle::all_configurations(d)) {
        const double want = oracle::snr(ch, cfg);
        CHECK(std::abs(obj.value(encode_bits(cfg, d)) - want) <= 1e-12 * want);
      }
    }
  }

  TEST_CASE("constraint form: structure, value and exhaustive separation") {
    const auto c1 = build_constraint(SystemDims(1, 1, 2));
    RMatrix want = RMatrix::Zero(4, 4);
    want.topLeftCorner(2, 2).setOnes();
    want.bottomRightCorner(2, 2).setOnes();
    CHECK(c1.r == want);

    const SystemDims d(2, 2, 2);
    const auto con = build_constraint(d);
    int feasible = 0;
    double min_infeasible = 1e9;
    for (const auto& b : all_bits(8)) {
      const double p = con.penalty(b);
      CHECK(p == std::round(p));
      if (is_feasible(b, d)) {
        ++feasible;
        CHECK(p == -4.0);
      } else {
        CHECK(p > -4.0);
        min_infeasible = std::min(min_infeasible, p);
      }
    }
    CHECK(feasible == 16);
    CHECK(min_infeasible - (-4.0) >= 1.0);
  }

  TEST_CASE("spin transform preserves the binary form up to a constant") {
    Rng rng(7);
    const SystemDims d(1, 1, 2);
    const auto con = build_constraint(d);
    const auto ch = sample_channel(d, rng);
    const auto obj = build_objective(ch);
    const RVector minus_two = RVector::Constant(4, -2.0);
    const auto con_spin = binary_to_spin(con.r, minus_two);
    const auto obj_spin = binary_to_spin(obj.q, RVector::Zero(4));
    std::set<long long> con_offsets;
    double obj_offset = std::nan("");
    for (const auto& b : all_bits(4)) {
      const auto s = to_spins(b);
      con_offsets.insert(std::llround(1e9 * (con.penalty(b) - spin_value(con_spin, s))));
      const double off = obj.value(b) - spin_value(obj_spin, s);
      if (std::isnan(obj_offset)) obj_offset = off;
      CHECK(off == doctest::Approx(obj_offset).epsilon(1e-12));
    }
    CHECK(con_offsets.size() == 1);
    CHECK(con_spin.quadratic.isApprox(0.25 * con.r));
  }

  TEST_CASE("auxiliary spin bordering reproduces the linear term") {
    Rng rng(9);
    const SystemDims d(1, 1, 2);
    const auto obj = build_objective(sample_channel(d, rng));
    const auto form = binary_to_spin(obj.q, RVector::Constant(4, 0.3));
    const RMatrix c = border_with_auxiliary(form);
    CHECK(c.rows() == 5);
    for (const auto& b : all_bits(4)) {
      SpinVector s0{1};
      for (auto v : to_spins(b)) s0.push_back(v);
      CHECK(quad(c, s0) == doctest::Approx(spin_value(form, to_spins(b))).epsilon(1e-12));
    }
  }

  TEST_CASE("to_ising: shape, normalisation, lambda extremes") {
    Rng rng(11);
    const SystemDims d(2, 2, 2);
    const auto ch = sample_channel(d, rng);
    const auto obj = build_objective(ch);
    const auto con = build_constraint(d);
    for (double lambda : {0.0, 0.3, 0.8, 1.0}) {
      const auto ip = to_ising(obj, con, lambda);
      CHECK(ip.size() == 9);
      CHECK(ip.j.isApprox(ip.j.transpose()));
      CHECK(ip.j.diagonal().isZero(0.0));
      CHECK(ip.j.cwiseAbs().maxCoeff() <= 1.0 + 1e-15);
    }
    const auto parts = ising_parts(obj, con);
    CHECK(to_ising(obj, con, 0.0).j == parts.objective);
    CHECK(to_ising(obj, con, 1.0).j == -parts.constraint);
    CHECK(parts.objective.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    CHECK_THROWS_AS(to_ising(obj, con, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(to_ising(obj, con, -0.1), std::invalid_argument);

    // lambda = 1 on (1,1,2): the maximiser is feasible.
    const SystemDims d1(1, 1, 2);
    const auto ch1 = sample_channel(d1, rng);
    const auto best = brute_force_spins(to_ising(build_objective(ch1), build_constraint(d1), 1.0));
    CHECK(decode_spins(best.spins, d1).has_value());
  }

  TEST_CASE("zeroDiag and normalisation do not move the maximiser") {
    Rng rng(13);
    const SystemDims d(1, 1, 2);
    for (int t = 0; t < 20; ++t) {
      const auto obj = build_objective(sample_channel(d, rng));
      const RMatrix raw = border_with_auxiliary(binary_to_spin(obj.q, RVector::Zero(4)));
      const auto a = oracle::enumerate<int>(raw, -1, 1, true);
      const auto b = oracle::enumerate<int>(normalize_couplings(raw), -1, 1, true);
      CHECK(a.first == b.first);
      SpinVector s(a.first.begin(), a.first.end());
      RMatrix nodiag = raw;
      nodiag.diagonal().setZero();
      CHECK(quad(raw, s) - quad(nodiag, s) == doctest::Approx(raw.trace()));
    }
  }

  TEST_CASE("global flip invariance") {
    Rng rng(15);
    const SystemDims d(2, 2, 2);
    const auto ip = to_ising(build_objective(sample_channel(d, rng)), build_constraint(d), 0.7);
    for (int t = 0; t < 200; ++t) {
      SpinVector s(9);
      for (auto& x : s) x = rng.uniform_int(2) ? 1 : -1;
      CHECK(ip.energy(s) == doctest::Approx(ip.energy(flipped(s))).epsilon(1e-14));
      CHECK(decode_spins(s, d) == decode_spins(flipped(s), d));
    }
    const Configuration cfg{{1, 0}, {0, 1}};
    auto s = encode_spins(cfg, d);
    CHECK(decode_spins(flipped(s), d) == cfg);
  }

  TEST_CASE("decode_spins validation") {
    const SystemDims d(1, 1, 2);
    const SpinVector short_s{1, 1, -1};
    CHECK_THROWS_AS(decode_spins(short_s, d), StructuralError);
    const SpinVector zero{1, 0, 1, 1, -1};
    CHECK_THROWS_AS(decode_spins(zero, d), StructuralError);
    const SpinVector two_hot{1, 1, 1, 1, -1};
    CHECK_FALSE(decode_spins(two_hot, d).has_value());
  }

  TEST_CASE("spin maximiser decodes to the SNR optimum") {
    Rng rng(17);
    for (const SystemDims d : {SystemDims(1, 1, 2), SystemDims(2, 2, 2)}) {
      int hits = 0;
      for (int t = 0; t < 20; ++t) {
        const auto ch = sample_channel(d, rng);
        const auto best = brute_force_spins(to_ising(build_objective(ch), build_constraint(d), 0.8));
        const auto cfg = decode_spins(best.spins, d);
        if (cfg && *cfg == es_select(ch, ObjectiveKind::kSnr, 0.0).config) ++hits;
      }
      CHECK(hits == 20);
    }
  }

  TEST_CASE("brute-force spins: examples, oracle and cap") {
    const auto z = brute_force_spins(RMatrix::Zero(1, 1));
    CHECK(z.spins == SpinVector{-1});
    CHECK(z.energy == 0.0);
    RMatrix ferro = RMatrix::Zero(2, 2);
    ferro(0, 1) = ferro(1, 0) = 1.0;
    const auto f = brute_force_spins(ferro);
    CHECK(f.spins == SpinVector{-1, -1});
    CHECK(f.energy == doctest::Approx(2.0));

    Rng rng(19);
    for (int t = 0; t < 10; ++t) {
      RMatrix j(10, 10);
      for (Eigen::Index i = 0; i < j.size(); ++i) j(i) = rng.normal(0.0, 1.0);
      j = 0.5 * (j + j.transpose()).eval();
      j.diagonal().setZero();
      const auto got = brute_force_spins(j);
      const auto want = oracle::enumerate<int>(j, -1, 1, true);
      CHECK(got.energy == doctest::Approx(want.second).epsilon(1e-12));
      CHECK(std::vector<int>(got.spins.begin(), got.spins.end()) == want.first);
    }
    CHECK_THROWS_AS(brute_force_spins(RMatrix::Zero(25, 25)), RefusalError);
  }

  TEST_CASE("brute-force QUBO: examples, oracle and cap") {
    const auto z = brute_force_qubo(QuboProblem{RMatrix::Zero(3, 3)});
    CHECK(z.bits == BitVector{0, 0, 0});
    CHECK(z.value == 0.0);
    const auto id = brute_force_qubo(QuboProblem{RMatrix::Identity(4, 4), Sense::kMaximize});
    CHECK(id.bits == BitVector{1, 1, 1, 1});

    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
      RMatrix w(8, 8);
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.normal(0.0, 1.0);
      for (Sense sense : {Sense::kMaximize, Sense::kMinimize}) {
        const auto got = brute_force_qubo(QuboProblem{w, sense});
        const auto want = oracle::enumerate<int>(w, 0, 1, sense == Sense::kMaximize);
        CHECK(got.value == doctest::Approx(want.second).epsilon(1e-12));
        CHECK(std::vector<int>(got.bits.begin(), got.bits.end()) == want.first);
      }
    }
    CHECK_THROWS_AS(brute_force_qubo(QuboProblem{RMatrix::Zero(25, 25)}), RefusalError);
  }

  TEST_CASE("QUBO construction and its optimisation sense") {
    const SystemDims d(2, 2, 2);
    Rng rng(23);
    const auto ch = sample_channel(d, rng);
    const auto obj = build_objective(ch);
    const auto con = build_constraint(d);
    const RMatrix xi = con.r - 2.0 * RMatrix::Identity(8, 8);
    CHECK(max_abs_entry(xi) == 1.0);
    const auto q1 = build_qubo(obj, con, 1.0);
    CHECK(q1.w == xi);
    CHECK(q1.sense == Sense::kMinimize);
    CHECK(decode_bits(brute_force_qubo(q1).bits, d).has_value());
    CHECK(build_qubo(obj, con, 0.0).w.isApprox(-obj.q / obj.q.cwiseAbs().maxCoeff()));
    CHECK_THROWS_AS(build_qubo(obj, con, 2.0), std::invalid_argument);

    // Minimising recovers the SNR optimum; maximising the same matrix does not.
    const SystemDims d1(1, 1, 2);
    int min_hits = 0, max_hits = 0;
    for (int t = 0; t < 50; ++t) {
      const auto c = sample_channel(d1, rng);
      QuboProblem q = build_qubo(build_objective(c), build_constraint(d1), 0.9);
      const auto es = es_select(c, ObjectiveKind::kSnr, 0.0).config;
      if (decode_bits(brute_force_qubo(q).bits, d1) == es) ++min_hits;
      q.sense = Sense::kMaximize;
      if (decode_bits(brute_force_qubo(q).bits, d1) == es) ++max_hits;
    }
    CHECK(min_hits == 50);
    CHECK(max_hits == 0);
  }

  TEST_CASE("QUBO text format") {
    CHECK(serialize_qubo(QuboProblem{RMatrix::Zero(1, 1)}) == "qubo 1 0\n");
    RMatrix w = RMatrix::Zero(2, 2);
    w(0, 1) = w(1, 0) = 0.5;
    CHECK(serialize_qubo(QuboProblem{w}) == "qubo 2 1\n0 1 1.0\n");
    RMatrix w2 = RMatrix::Zero(2, 2);
    w2(0, 0) = -0.25;
    w2(1, 1) = 3e-20;
    CHECK(serialize_qubo(QuboProblem{w2}) == "qubo 2 2\n0 0 -0.25\n1 1 3e-20\n");

    Rng rng(25);
    const SystemDims d(2, 2, 2);
    const auto qubo = build_qubo(build_objective(sample_channel(d, rng)), build_constraint(d), 0.8);
    const std::string text = serialize_qubo(qubo);
    CHECK(text == serialize_qubo(qubo));
    const auto back = parse_qubo(text);
    CHECK(back.w == qubo.w);
    CHECK(back.sense == Sense::kMinimize);
    for (int t = 0; t < 100; ++t) {
      BitVector b(8);
      for (auto& x : b) x = static_cast<std::uint8_t>(rng.uniform_int(2));
      CHECK(back.value(b) == qubo.value(b));
    }
  }

  TEST_CASE("QUBO parser rejects malformed text") {
    CHECK_THROWS_AS(parse_qubo("qubit 1 0\n"), StructuralError);
    CHECK_THROWS_AS(parse_qubo("qubo 2 1\n1 0 1.0\n"), StructuralError);
    CHECK_THROWS_AS(parse_qubo("qubo 2 2\n0 1 1.0\n"), StructuralError);
    CHECK_THROWS_AS(parse_qubo("qubo 2 1\n0 1 x\n"), StructuralError);
    CHECK_THROWS_AS(parse_qubo("qubo 2 1\n0 5 1.0\n"), StructuralError);
    CHECK_THROWS_AS(parse_qubo("qubo 2 0\n0 1 1.0\n"), StructuralError);
    CHECK_THROWS_AS(serialize_qubo(QuboProblem{RMatrix::Constant(1, 1, INFINITY)}), NumericError);
  }
}
