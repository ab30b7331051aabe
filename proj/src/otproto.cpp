#include "polarot/otproto.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "polarot/autgroup.hpp"
#include "polarot/channel.hpp"
#include "polarot/construct.hpp"
#include "polarot/polar.hpp"
#include "polarot/privacy.hpp"
#include "polarot/scdec.hpp"

namespace ot {

namespace {

// Receiver substreams of the session seed.
constexpr std::uint64_t kSubK = 0;
constexpr std::uint64_t kSubSwap = 1;
constexpr std::uint64_t kSubSeedGood = 2;
constexpr std::uint64_t kSubSeedBad = 3;
constexpr std::uint64_t kSubNoise = 4;
// Sender substream.
constexpr std::uint64_t kSubFrame = 0;

std::size_t frame_length(const SessionConfig& cfg) {
  if (cfg.m == 0 || cfg.m > 16) throw std::invalid_argument("m must be in 1..16");
  return std::size_t{1} << cfg.m;
}

// Keep the `keep` highest-MI entries (ties toward the smaller index),
// returned ascending.
std::vector<std::size_t> truncate_by_mi(const std::vector<std::size_t>& set,
                                        const std::vector<double>& mi, std::size_t keep) {
  std::vector<std::size_t> order = set;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (mi[a] != mi[b]) return mi[a] > mi[b];
    return a < b;
  });
  order.resize(keep);
  std::sort(order.begin(), order.end());
  return order;
}

BitVec substream_bits(std::uint64_t master, std::uint64_t sub, std::size_t count) {
  const CounterRng rng(substream_seed(master, sub));
  BitVec out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = rng.bit_at(i);
  return out;
}

nlohmann::json hello_body(const char* role, std::size_t n) {
  return {{"role", role}, {"n", n}};
}

nlohmann::json transform_body(const BitMatrix& f) { return {{"f", matrix_to_json(f)}}; }

nlohmann::json index_array(const std::vector<std::size_t>& set) {
  auto arr = nlohmann::json::array();
  for (std::size_t i : set) arr.push_back(i + 1);  // wire indices are 1-based
  return arr;
}

nlohmann::json sets_body(const std::vector<std::size_t>& j0, const std::vector<std::size_t>& j1) {
  return {{"j0", index_array(j0)}, {"j1", index_array(j1)}};
}

nlohmann::json symbols_body(const std::vector<double>& symbols) {
  return {{"symbols", symbols}};
}

nlohmann::json seeds_body(const BitVec& s0, const BitVec& s1) {
  return {{"s0", bits_to_json(s0)}, {"s1", bits_to_json(s1)}};
}

nlohmann::json cipher_body(const BitVec& c0, const BitVec& c1) {
  return {{"c0", bits_to_json(c0)}, {"c1", bits_to_json(c1)}};
}

std::vector<std::size_t> set_from_wire(const nlohmann::json& arr, std::size_t n) {
  if (!arr.is_array()) throw ProtocolError("malformed frame: index set is not an array");
  std::vector<std::size_t> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_unsigned()) throw ProtocolError("malformed frame: bad index");
    const std::size_t idx = v.get<std::size_t>();
    if (idx < 1 || idx > n) throw ProtocolError("malformed frame: index out of range");
    out.push_back(idx - 1);
  }
  return out;
}

BitVec free_union_mask(std::size_t n, const std::array<std::vector<std::size_t>, 2>& sets) {
  BitVec frozen(n, 1);
  for (const auto& s : sets)
    for (std::size_t i : s) frozen[i] = 0;
  return frozen;
}

BitVec bits_at(const BitVec& u, const std::vector<std::size_t>& set) {
  BitVec out(set.size());
  for (std::size_t j = 0; j < set.size(); ++j) out[j] = u[set[j]];
  return out;
}

}  // namespace

BobSetup bob_setup_explicit(const SessionConfig& cfg, int choice, std::uint64_t k_power,
                            int s_swap, std::uint64_t bob_seed) {
  const std::size_t n = frame_length(cfg);
  if (choice != 0 && choice != 1) throw std::invalid_argument("choice must be 0 or 1");
  if (cfg.sigma.size() != cfg.m || !is_permutation(cfg.sigma))
    throw std::invalid_argument("sigma must be a permutation of the bit positions");
  if (cfg.good.empty()) throw std::invalid_argument("empty selection");

  BobSetup st;
  st.pi_aut = induced_index_perm(cfg.sigma, cfg.m);

  BitVec in_good(n, 0);
  for (std::size_t g : cfg.good) {
    if (g >= n) throw std::invalid_argument("selection index out of range");
    in_good[g] = 1;
  }
  std::vector<std::size_t> good(cfg.good);
  std::sort(good.begin(), good.end());
  good.erase(std::unique(good.begin(), good.end()), good.end());
  std::vector<std::size_t> bad;
  for (std::size_t g : good) {
    const std::size_t b = st.pi_aut[g];
    if (b == g || st.pi_aut[b] != g || in_good[b])
      throw std::invalid_argument("selection incompatible with automorphism structure");
    bad.push_back(b);
  }
  std::sort(bad.begin(), bad.end());

  if (cfg.set_size > 0 && cfg.set_size < good.size()) {
    const auto mi = ga_profile(cfg.m, cfg.snr);
    good = truncate_by_mi(good, mi, cfg.set_size);
    bad = truncate_by_mi(bad, mi, cfg.set_size);
    BitVec kept(n, 0);
    for (std::size_t i : good) kept[i] = 1;
    for (std::size_t i : bad) kept[i] = 1;
    for (std::size_t i : good)
      if (!kept[st.pi_aut[i]])
        throw std::invalid_argument("truncated sets break automorphism invariance");
    for (std::size_t i : bad)
      if (!kept[st.pi_aut[i]])
        throw std::invalid_argument("truncated sets break automorphism invariance");
  }
  if (cfg.key_bits > good.size())
    throw std::invalid_argument("key length exceeds announced set size");
  st.good = std::move(good);
  st.bad = std::move(bad);

  st.k_power = k_power;
  st.s_swap = static_cast<std::uint8_t>(s_swap & 1);
  st.c_bit = static_cast<std::uint8_t>((choice ^ st.s_swap) & 1);
  st.pi_mask = perm_power(st.pi_aut, st.k_power);

  // F = P^T T_c: row i is row pi_mask(i) of T_c, and the alternative
  // transform's rows are the plain transform's rows pulled back through the
  // automorphism.
  const BitMatrix t = build_transform(cfg.m);
  const Perm inv_aut = inverse(st.pi_aut);
  st.f = BitMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t src = st.pi_mask[i];
    if (st.c_bit) src = inv_aut[src];
    st.f.assign_row(i, t, src);
  }

  const std::size_t slen = toeplitz_seed_bits(st.good.size(), cfg.key_bits);
  BitVec seed_good = substream_bits(bob_seed, kSubSeedGood, slen);
  BitVec seed_bad = substream_bits(bob_seed, kSubSeedBad, slen);
  if (st.s_swap) {
    st.announced = {st.bad, st.good};
    st.seed = {std::move(seed_bad), std::move(seed_good)};
  } else {
    st.announced = {st.good, st.bad};
    st.seed = {std::move(seed_good), std::move(seed_bad)};
  }
  return st;
}

BobSetup bob_setup(const SessionConfig& cfg, int choice, std::uint64_t bob_seed) {
  const std::size_t n = frame_length(cfg);
  const std::uint64_t k = CounterRng(substream_seed(bob_seed, kSubK)).at(0) & (n - 1);
  const int s_swap = CounterRng(substream_seed(bob_seed, kSubSwap)).bit_at(0);
  return bob_setup_explicit(cfg, choice, k, s_swap, bob_seed);
}

AliceState alice_begin(const SessionConfig& cfg, const BitMatrix& f,
                       const std::array<std::vector<std::size_t>, 2>& sets,
                       std::uint64_t alice_seed) {
  const std::size_t n = frame_length(cfg);
  if (f.rows() != n || f.cols() != n) throw ProtocolError("transform size mismatch");
  if (sets[0].size() != sets[1].size()) throw ProtocolError("announced sets differ in size");
  if (cfg.key_bits > sets[0].size())
    throw ProtocolError("key length exceeds announced set size");

  AliceState st;
  st.f = f;
  BitVec seen(n, 0);
  for (int b = 0; b < 2; ++b) {
    st.sets[b] = sets[b];
    std::sort(st.sets[b].begin(), st.sets[b].end());
    for (std::size_t i : st.sets[b]) {
      if (i >= n) throw ProtocolError("malformed frame: index out of range");
      if (seen[i]) throw ProtocolError("overlapping sets");
      seen[i] = 1;
    }
  }

  std::vector<std::size_t> joint;
  for (std::size_t i = 0; i < n; ++i)
    if (seen[i]) joint.push_back(i);
  const CounterRng rng(substream_seed(alice_seed, kSubFrame));
  st.u.assign(n, 0);
  for (std::size_t j = 0; j < joint.size(); ++j) st.u[joint[j]] = rng.bit_at(j);

  st.symbols = bpsk_modulate(vec_mat(st.u, st.f));
  return st;
}

std::array<BitVec, 2> alice_finish(const AliceState& st, const SessionConfig& cfg,
                                   const BitVec& m0, const BitVec& m1,
                                   const std::array<BitVec, 2>& seeds) {
  if (m0.size() != cfg.key_bits || m1.size() != cfg.key_bits)
    throw std::invalid_argument("message length mismatch");
  std::array<BitVec, 2> out;
  for (int b = 0; b < 2; ++b) {
    const BitVec key = toeplitz_hash(seeds[b], bits_at(st.u, st.sets[b]), cfg.key_bits);
    out[b] = xor_bits(b == 0 ? m0 : m1, key);
  }
  return out;
}

BobDecodeResult bob_receive(const SessionConfig& cfg, const BobSetup& setup, int choice,
                            const std::vector<double>& symbols,
                            const std::array<BitVec, 2>& ciphertexts, std::uint64_t bob_seed) {
  const std::size_t n = frame_length(cfg);
  if (choice != 0 && choice != 1) throw std::invalid_argument("choice must be 0 or 1");
  if (symbols.size() != n) throw std::invalid_argument("symbol count mismatch");
  if (ciphertexts[0].size() != cfg.key_bits || ciphertexts[1].size() != cfg.key_bits)
    throw std::invalid_argument("ciphertext length mismatch");

  const CounterRng noise(substream_seed(bob_seed, kSubNoise));
  const auto y = awgn_transmit(symbols, cfg.snr, noise);
  const auto aligned = gather_by(setup.pi_mask, y);
  const auto llr = llr_from_observation(aligned, cfg.snr);

  const BitVec frozen = free_union_mask(n, setup.announced);
  const BitVec zeros(n, 0);
  BobDecodeResult res;
  if (setup.c_bit) {
    // Alternative transform: the decoder runs in the automorphism-relabeled
    // domain, where the free-set mask is invariant, then maps back.
    const BitVec frozen_v = gather_by(setup.pi_aut, frozen);
    const ScResult dec = sc_decode(llr, frozen_v, zeros);
    res.u_hat = scatter_by(setup.pi_aut, dec.u);
  } else {
    res.u_hat = sc_decode(llr, frozen, zeros).u;
  }

  res.key = toeplitz_hash(setup.seed[choice], bits_at(res.u_hat, setup.announced[choice]),
                          cfg.key_bits);
  res.message = xor_bits(ciphertexts[choice], res.key);
  return res;
}

namespace {

SessionOutcome run_session_core(const SessionConfig& cfg, int choice, const BitVec& m0,
                                const BitVec& m1, std::uint64_t alice_seed,
                                std::uint64_t bob_seed, BobSetup setup) {
  const std::size_t n = frame_length(cfg);
  AliceState st = alice_begin(cfg, setup.f, setup.announced, alice_seed);
  const auto cts = alice_finish(st, cfg, m0, m1, setup.seed);
  const auto dec = bob_receive(cfg, setup, choice, st.symbols, cts, bob_seed);

  SessionOutcome out;
  out.alice_u = std::move(st.u);
  out.ciphertexts = cts;
  out.bob_message = dec.message;
  out.bob_u_hat = dec.u_hat;
  if (cfg.record_transcript) {
    out.transcript.push_back(encode_frame(MsgType::hello, hello_body("alice", n)));
    out.transcript.push_back(encode_frame(MsgType::hello, hello_body("bob", n)));
    out.transcript.push_back(encode_frame(MsgType::public_transform, transform_body(setup.f)));
    out.transcript.push_back(
        encode_frame(MsgType::index_sets, sets_body(setup.announced[0], setup.announced[1])));
    out.transcript.push_back(encode_frame(MsgType::channel_frame, symbols_body(st.symbols)));
    out.transcript.push_back(
        encode_frame(MsgType::hash_seeds, seeds_body(setup.seed[0], setup.seed[1])));
    out.transcript.push_back(encode_frame(MsgType::ciphertexts, cipher_body(cts[0], cts[1])));
    out.transcript.push_back(encode_frame(MsgType::close, nlohmann::json::object()));
  }
  out.setup = std::move(setup);
  return out;
}

}  // namespace

SessionOutcome run_session(const SessionConfig& cfg, int choice, const BitVec& m0,
                           const BitVec& m1, std::uint64_t alice_seed, std::uint64_t bob_seed) {
  return run_session_core(cfg, choice, m0, m1, alice_seed, bob_seed,
                          bob_setup(cfg, choice, bob_seed));
}

SymmetryReport verify_transcript_symmetry(const SessionConfig& cfg, const BitVec& m0,
                                          const BitVec& m1, std::uint64_t alice_seed,
                                          std::uint64_t bob_seed) {
  SessionConfig rec = cfg;
  rec.record_transcript = true;

  const BobSetup s0 = bob_setup(rec, 0, bob_seed);
  const BobSetup s1 = bob_setup_explicit(rec, 1, s0.k_power, s0.s_swap ^ 1, bob_seed);
  const auto run0 = run_session_core(rec, 0, m0, m1, alice_seed, bob_seed, s0);
  const auto run1 = run_session_core(rec, 1, m0, m1, alice_seed, bob_seed, s1);
  const auto& t0 = run0.transcript;
  const auto& t1 = run1.transcript;

  SymmetryReport rep;
  rep.hello_equal = t0[0] == t1[0] && t0[1] == t1[1];
  rep.f_equal = t0[2] == t1[2];
  rep.sets_swapped =
      encode_frame(MsgType::index_sets,
                   sets_body(run0.setup.announced[1], run0.setup.announced[0])) == t1[3];
  rep.symbols_equal = t0[4] == t1[4];
  rep.seeds_swapped =
      encode_frame(MsgType::hash_seeds, seeds_body(run0.setup.seed[1], run0.setup.seed[0])) ==
      t1[5];
  rep.ciphertexts_swapped =
      encode_frame(MsgType::ciphertexts, cipher_body(run0.ciphertexts[1], run0.ciphertexts[0])) ==
      t1[6];
  rep.close_equal = t0[7] == t1[7];
  rep.ok = rep.hello_equal && rep.f_equal && rep.sets_swapped && rep.symbols_equal &&
           rep.seeds_swapped && rep.close_equal;
  return rep;
}

namespace {

void send_frame(TcpStream& peer, std::vector<std::string>* transcript, MsgType type,
                nlohmann::json body) {
  std::string line = encode_frame(type, std::move(body));
  peer.write_line(line);
  if (transcript) transcript->push_back(std::move(line));
}

Frame expect_frame(TcpStream& peer, std::vector<std::string>* transcript, MsgType want) {
  const std::string line = peer.read_line();
  Frame f = decode_frame(line);
  if (f.type != want)
    throw ProtocolError(std::string("protocol order violation: expected ") +
                        std::string(msg_type_name(want)) + ", got " +
                        std::string(msg_type_name(f.type)));
  if (transcript) transcript->push_back(line);
  return f;
}

void check_hello(const nlohmann::json& body, const char* want_role, std::size_t n) {
  if (!body.contains("role") || !body["role"].is_string() || !body.contains("n") ||
      !body["n"].is_number_unsigned())
    throw ProtocolError("malformed frame: bad hello");
  if (body["role"].get<std::string>() != want_role)
    throw ProtocolError("role mismatch: peer is not " + std::string(want_role));
  if (body["n"].get<std::size_t>() != n)
    throw ProtocolError("configuration mismatch: peer frame length " + body["n"].dump() +
                        ", local " + std::to_string(n));
}

BitVec bits_field(const nlohmann::json& body, const char* key) {
  if (!body.contains(key)) throw ProtocolError("malformed frame: missing field");
  return bits_from_json(body[key]);
}

}  // namespace

AliceResult run_alice(TcpStream& peer, const SessionConfig& cfg, const BitVec& m0,
                      const BitVec& m1, std::uint64_t seed) {
  const std::size_t n = frame_length(cfg);
  AliceResult res;
  auto* tr = cfg.record_transcript ? &res.transcript : nullptr;

  send_frame(peer, tr, MsgType::hello, hello_body("alice", n));
  check_hello(expect_frame(peer, tr, MsgType::hello).body, "bob", n);

  const Frame ft = expect_frame(peer, tr, MsgType::public_transform);
  if (!ft.body.contains("f")) throw ProtocolError("malformed frame: missing field");
  const BitMatrix f = matrix_from_json(ft.body["f"]);

  const Frame sets = expect_frame(peer, tr, MsgType::index_sets);
  if (!sets.body.contains("j0") || !sets.body.contains("j1"))
    throw ProtocolError("malformed frame: missing field");
  const std::array<std::vector<std::size_t>, 2> announced = {
      set_from_wire(sets.body["j0"], n), set_from_wire(sets.body["j1"], n)};

  AliceState st = alice_begin(cfg, f, announced, seed);
  send_frame(peer, tr, MsgType::channel_frame, symbols_body(st.symbols));

  const Frame seeds = expect_frame(peer, tr, MsgType::hash_seeds);
  const std::array<BitVec, 2> hs = {bits_field(seeds.body, "s0"), bits_field(seeds.body, "s1")};
  const std::size_t want_seed = toeplitz_seed_bits(st.sets[0].size(), cfg.key_bits);
  if (hs[0].size() != want_seed || hs[1].size() != want_seed)
    throw ProtocolError("seed length mismatch");

  res.ciphertexts = alice_finish(st, cfg, m0, m1, hs);
  send_frame(peer, tr, MsgType::ciphertexts, cipher_body(res.ciphertexts[0], res.ciphertexts[1]));
  send_frame(peer, tr, MsgType::close, nlohmann::json::object());
  res.u = std::move(st.u);
  return res;
}

BobResult run_bob(TcpStream& peer, const SessionConfig& cfg, int choice, std::uint64_t seed) {
  const std::size_t n = frame_length(cfg);
  const BobSetup setup = bob_setup(cfg, choice, seed);
  BobResult res;
  auto* tr = cfg.record_transcript ? &res.transcript : nullptr;

  check_hello(expect_frame(peer, tr, MsgType::hello).body, "alice", n);
  send_frame(peer, tr, MsgType::hello, hello_body("bob", n));
  send_frame(peer, tr, MsgType::public_transform, transform_body(setup.f));
  send_frame(peer, tr, MsgType::index_sets, sets_body(setup.announced[0], setup.announced[1]));

  const Frame frame = expect_frame(peer, tr, MsgType::channel_frame);
  if (!frame.body.contains("symbols") || !frame.body["symbols"].is_array())
    throw ProtocolError("malformed frame: missing field");
  std::vector<double> symbols;
  symbols.reserve(frame.body["symbols"].size());
  for (const auto& v : frame.body["symbols"]) {
    if (!v.is_number()) throw ProtocolError("malformed frame: bad symbol");
    symbols.push_back(v.get<double>());
  }
  if (symbols.size() != n) throw ProtocolError("malformed frame: symbol count mismatch");

  send_frame(peer, tr, MsgType::hash_seeds, seeds_body(setup.seed[0], setup.seed[1]));

  const Frame ct = expect_frame(peer, tr, MsgType::ciphertexts);
  const std::array<BitVec, 2> cts = {bits_field(ct.body, "c0"), bits_field(ct.body, "c1")};
  if (cts[0].size() != cfg.key_bits || cts[1].size() != cfg.key_bits)
    throw ProtocolError("ciphertext length mismatch");
  expect_frame(peer, tr, MsgType::close);

  BobDecodeResult dec = bob_receive(cfg, setup, choice, symbols, cts, seed);
  res.message = std::move(dec.message);
  res.u_hat = std::move(dec.u_hat);
  return res;
}

}  // namespace ot
