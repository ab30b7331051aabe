#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "polarot/autgroup.hpp"
#include "polarot/channel.hpp"
#include "polarot/otproto.hpp"
#include "polarot/polar.hpp"
#include "polarot/wire.hpp"

using namespace ot;

namespace {

// n = 16 top-bit-swap session used throughout: pairs {9,10} <-> {5,6}
SessionConfig swap_config() {
  SessionConfig cfg;
  cfg.m = 4;
  cfg.snr = 40.0;  // clean enough that decodes are exact
  cfg.sigma = Perm{0, 1, 3, 2};
  cfg.good = {9, 10};
  cfg.key_bits = 2;
  return cfg;
}

}  // namespace

TEST_CASE("bob setup is deterministic in the seed") {
  const SessionConfig cfg = swap_config();
  const BobSetup a = bob_setup(cfg, 0, 123);
  const BobSetup b = bob_setup(cfg, 0, 123);
  CHECK(a.k_power == b.k_power);
  CHECK(a.s_swap == b.s_swap);
  CHECK(a.pi_mask == b.pi_mask);
  CHECK(a.seed[0] == b.seed[0]);
  CHECK(a.seed[1] == b.seed[1]);
  CHECK(a.f.to_bytes() == b.f.to_bytes());

  const BobSetup c = bob_setup(cfg, 0, 124);
  const bool same = a.k_power == c.k_power && a.s_swap == c.s_swap &&
                    a.seed[0] == c.seed[0] && a.seed[1] == c.seed[1];
  CHECK_FALSE(same);
}

TEST_CASE("published matrix is the masked transform") {
  const SessionConfig cfg = swap_config();
  const BitMatrix t = build_transform(cfg.m);

  for (int choice : {0, 1})
    for (int s_swap : {0, 1})
      for (std::uint64_t k : {0ull, 1ull}) {
        const BobSetup st = bob_setup_explicit(cfg, choice, k, s_swap, 99);
        // F = P1^T * T_used with P1 = perm_matrix(pi_mask) and T_used either
        // the plain transform (c = 0) or its automorphism image (c = 1)
        const BitMatrix p1t = perm_matrix(st.pi_mask).transpose();
        const BitMatrix t_used =
            st.c_bit ? perm_matrix(st.pi_aut).multiply(t) : t;
        const BitMatrix expect = p1t.multiply(t_used);
        CHECK(st.f.to_bytes() == expect.to_bytes());
        CHECK(st.c_bit == static_cast<std::uint8_t>(choice ^ s_swap));
        CHECK(st.k_power == k);
        // masking permutation is the k-th power of the automorphism
        CHECK(st.pi_mask == perm_power(st.pi_aut, k));
      }
}

TEST_CASE("announced slots follow the order coin") {
  const SessionConfig cfg = swap_config();
  const BobSetup plain = bob_setup_explicit(cfg, 0, 1, 0, 5);
  CHECK(plain.announced[0] == plain.good);
  CHECK(plain.announced[1] == plain.bad);
  const BobSetup flipped = bob_setup_explicit(cfg, 0, 1, 1, 5);
  CHECK(flipped.announced[0] == flipped.bad);
  CHECK(flipped.announced[1] == flipped.good);
  // hash seeds ride with the set identity, not with the slot
  CHECK(plain.seed[0] == flipped.seed[1]);
  CHECK(plain.seed[1] == flipped.seed[0]);
}

TEST_CASE("setup validation") {
  SessionConfig cfg = swap_config();

  SUBCASE("identity relabeling leaves nothing to pair") {
    cfg.sigma = Perm{0, 1, 2, 3};
    CHECK_THROWS_WITH_AS(bob_setup(cfg, 0, 1),
                         doctest::Contains("selection incompatible"), std::exception);
  }

  SUBCASE("bad choice bit") {
    CHECK_THROWS_AS(bob_setup(cfg, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(bob_setup(cfg, -1, 1), std::invalid_argument);
  }

  SUBCASE("empty selection") {
    cfg.good.clear();
    CHECK_THROWS_AS(bob_setup(cfg, 0, 1), std::invalid_argument);
  }

  SUBCASE("key longer than the announced set") {
    cfg.key_bits = 3;
    CHECK_THROWS_WITH_AS(bob_setup(cfg, 0, 1),
                         doctest::Contains("key length exceeds"), std::exception);
  }
}

TEST_CASE("per-set truncation keeps the strongest entries") {
  SessionConfig cfg = swap_config();
  cfg.snr = 1.04401332;  // operating point where the profile separates 9 and 10
  cfg.set_size = 1;
  cfg.key_bits = 1;
  // index 10 dominates index 9 in the reliability profile, so the kept pair
  // is (10, 6)
  const BobSetup st = bob_setup(cfg, 0, 7);
  CHECK(st.good == std::vector<std::size_t>{10});
  CHECK(st.bad == std::vector<std::size_t>{6});
}

TEST_CASE("truncation that breaks the pairing is refused") {
  SessionConfig cfg;
  cfg.m = 6;
  cfg.snr = 0.3;
  cfg.sigma = Perm{0, 1, 5, 4, 3, 2};
  cfg.good = {42, 49, 50};
  cfg.set_size = 2;
  cfg.key_bits = 1;
  CHECK_THROWS_WITH_AS(bob_setup(cfg, 0, 7),
                       doctest::Contains("truncated sets break automorphism invariance"),
                       std::exception);
}

TEST_CASE("sender frame structure") {
  const SessionConfig cfg = swap_config();
  const std::size_t n = std::size_t{1} << cfg.m;
  const BobSetup st = bob_setup(cfg, 0, 21);
  const AliceState al = alice_begin(cfg, st.f, st.announced, 31);

  // the frame is random only on the announced union
  std::vector<std::size_t> unionv = st.good;
  unionv.insert(unionv.end(), st.bad.begin(), st.bad.end());
  std::sort(unionv.begin(), unionv.end());
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_union = std::binary_search(unionv.begin(), unionv.end(), i);
    if (!in_union) CHECK(al.u[i] == 0);
  }

  // symbols are the BPSK image of u * F
  const BitVec x = vec_mat(al.u, al.f);
  REQUIRE(al.symbols.size() == n);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(al.symbols[i] == (x[i] ? -1.0 : 1.0));
}

TEST_CASE("sender validation") {
  const SessionConfig cfg = swap_config();
  const BobSetup st = bob_setup(cfg, 0, 21);

  SUBCASE("transform size must match the config") {
    BitMatrix wrong(8, 8);
    CHECK_THROWS_WITH_AS(alice_begin(cfg, wrong, st.announced, 1),
                         doctest::Contains("transform size mismatch"), std::exception);
  }

  SUBCASE("announced sets must have equal size") {
    auto sets = st.announced;
    sets[1].pop_back();
    CHECK_THROWS_WITH_AS(alice_begin(cfg, st.f, sets, 1),
                         doctest::Contains("differ in size"), std::exception);
  }

  SUBCASE("sets must not overlap") {
    auto sets = st.announced;
    sets[1] = sets[0];
    CHECK_THROWS_WITH_AS(alice_begin(cfg, st.f, sets, 1),
                         doctest::Contains("overlapping sets"), std::exception);
  }

  SUBCASE("set indices must be in range") {
    auto sets = st.announced;
    sets[1] = {16, 17};
    CHECK_THROWS_WITH_AS(alice_begin(cfg, st.f, sets, 1),
                         doctest::Contains("index out of range"), std::exception);
  }

  SUBCASE("message lengths must match key_bits") {
    const AliceState al = alice_begin(cfg, st.f, st.announced, 1);
    CHECK_THROWS_AS(alice_finish(al, cfg, BitVec{1}, BitVec{0, 1}, st.seed),
                    std::invalid_argument);
  }
}

TEST_CASE("receiver validation") {
  const SessionConfig cfg = swap_config();
  const BobSetup st = bob_setup(cfg, 0, 21);
  const AliceState al = alice_begin(cfg, st.f, st.announced, 31);
  const auto cts = alice_finish(al, cfg, BitVec{1, 0}, BitVec{0, 1}, st.seed);

  CHECK_THROWS_WITH_AS(bob_receive(cfg, st, 0, {1.0, -1.0}, cts, 21),
                       doctest::Contains("symbol count mismatch"), std::exception);
  auto bad_cts = cts;
  bad_cts[0].pop_back();
  CHECK_THROWS_WITH_AS(bob_receive(cfg, st, 0, al.symbols, bad_cts, 21),
                       doctest::Contains("ciphertext length mismatch"), std::exception);
}

TEST_CASE("clean in-process session recovers the chosen message") {
  const SessionConfig cfg = swap_config();
  const BitVec m0 = {1, 0};
  const BitVec m1 = {0, 1};
  for (int choice : {0, 1})
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const SessionOutcome out = run_session(cfg, choice, m0, m1, 1000 + seed, seed);
      CHECK(out.bob_message == (choice ? m1 : m0));
    }
}

TEST_CASE("recorded transcript has the full frame sequence") {
  SessionConfig cfg = swap_config();
  cfg.record_transcript = true;
  const SessionOutcome out = run_session(cfg, 1, {1, 1}, {0, 1}, 44, 45);
  REQUIRE(out.transcript.size() == 8);
  const char* order[] = {"hello",       "hello",      "public_transform", "index_sets",
                         "channel_frame", "hash_seeds", "ciphertexts",      "close"};
  for (std::size_t i = 0; i < 8; ++i) {
    const Frame f = decode_frame(out.transcript[i]);
    CHECK(msg_type_name(f.type) == order[i]);
  }

  // byte-identical reruns
  const SessionOutcome again = run_session(cfg, 1, {1, 1}, {0, 1}, 44, 45);
  CHECK(again.transcript == out.transcript);
}

TEST_CASE("transcripts with flipped coin and choice mirror each other") {
  const SessionConfig cfg = swap_config();

  SUBCASE("equal messages: everything matches up to the slot swap") {
    const SymmetryReport r = verify_transcript_symmetry(cfg, {1, 0}, {1, 0}, 7, 9);
    CHECK(r.ok);
    CHECK(r.hello_equal);
    CHECK(r.f_equal);
    CHECK(r.sets_swapped);
    CHECK(r.symbols_equal);
    CHECK(r.seeds_swapped);
    CHECK(r.close_equal);
    CHECK(r.ciphertexts_swapped);
  }

  SUBCASE("different messages: only the ciphertext slots differ") {
    const SymmetryReport r = verify_transcript_symmetry(cfg, {1, 0}, {0, 1}, 7, 9);
    CHECK(r.ok);
    CHECK_FALSE(r.ciphertexts_swapped);
  }
}

TEST_CASE("tcp session between two threads") {
  const SessionConfig base = swap_config();
  SessionConfig cfg = base;
  cfg.record_transcript = true;

  TcpListener listener(0);
  AliceResult alice_out;
  std::string alice_error;
  std::thread alice([&] {
    try {
      TcpStream peer = listener.accept();
      alice_out = run_alice(peer, cfg, {1, 0}, {0, 1}, 71);
    } catch (const std::exception& e) {
      alice_error = e.what();
    }
  });
  TcpStream to_alice = TcpStream::connect("127.0.0.1", listener.port());
  const BobResult bob_out = run_bob(to_alice, cfg, 1, 72);
  alice.join();

  CHECK(alice_error.empty());
  CHECK(bob_out.message == BitVec{0, 1});
  CHECK(alice_out.transcript == bob_out.transcript);
  REQUIRE(alice_out.transcript.size() == 8);

  // the tcp transcript matches the in-process run bit for bit
  const SessionOutcome local = run_session(cfg, 1, {1, 0}, {0, 1}, 71, 72);
  CHECK(local.transcript == bob_out.transcript);
}

TEST_CASE("sender rejects malformed openings") {
  const SessionConfig cfg = swap_config();

  SUBCASE("wrong protocol version") {
    TcpListener listener(0);
    std::string error;
    std::thread alice([&] {
      TcpStream peer = listener.accept();
      try {
        run_alice(peer, cfg, {1, 0}, {0, 1}, 3);
      } catch (const ProtocolError& e) {
        error = e.what();
      }
    });
    TcpStream fake = TcpStream::connect("127.0.0.1", listener.port());
    fake.write_line(R"({"v":9,"type":"hello","role":"bob","n":16})");
    alice.join();
    CHECK(error.find("version mismatch") != std::string::npos);
  }

  SUBCASE("out-of-order frame") {
    TcpListener listener(0);
    std::string error;
    std::thread alice([&] {
      TcpStream peer = listener.accept();
      try {
        run_alice(peer, cfg, {1, 0}, {0, 1}, 3);
      } catch (const ProtocolError& e) {
        error = e.what();
      }
    });
    TcpStream fake = TcpStream::connect("127.0.0.1", listener.port());
    fake.write_line(encode_frame(MsgType::close, {}));
    alice.join();
    CHECK(error.find("protocol order violation") != std::string::npos);
  }
}
