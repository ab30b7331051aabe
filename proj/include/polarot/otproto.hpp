#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polarot/bitmat.hpp"
#include "polarot/perm.hpp"
#include "polarot/wire.hpp"

namespace ot {

// Public parameters of one oblivious-transfer session. Both sides must agree
// on everything here; `good` lists the reliable-side indices of the selection
// (its automorphism partners form the unreliable side).
struct SessionConfig {
  unsigned m = 4;
  double snr = 1.0;
  Perm sigma;                     // automorphism as a relabeling of bit positions
  std::vector<std::size_t> good;  // reliable-side selection, 0-based ascending
  std::size_t set_size = 0;       // announced entries per set (0 keeps the whole set)
  std::size_t key_bits = 0;       // message length in bits
  bool record_transcript = false;
};

// Everything the receiver commits to before the first payload message.
struct BobSetup {
  Perm pi_aut;                    // index permutation induced by sigma
  Perm pi_mask;                   // pi_aut^k_power, the public masking permutation
  std::vector<std::size_t> good;  // kept reliable entries, ascending
  std::vector<std::size_t> bad;   // kept partner entries, ascending
  std::uint64_t k_power = 0;      // exponent of the masking automorphism
  std::uint8_t s_swap = 0;        // announced-order coin
  std::uint8_t c_bit = 0;         // choice XOR s_swap: which transform variant is used
  BitMatrix f;                    // published encoding matrix
  std::array<std::vector<std::size_t>, 2> announced;  // slot 0 / slot 1, ascending
  std::array<BitVec, 2> seed;     // Toeplitz seeds, slot order
};

// Samples the masking exponent and order coin from the seed's substreams.
BobSetup bob_setup(const SessionConfig& cfg, int choice, std::uint64_t bob_seed);

// Same construction with the exponent and coin pinned by the caller; hash
// seeds still come from the seed's substreams.
BobSetup bob_setup_explicit(const SessionConfig& cfg, int choice, std::uint64_t k_power,
                            int s_swap, std::uint64_t bob_seed);

// Sender state between the frame transmission and the ciphertexts.
struct AliceState {
  BitVec u;                                          // frame input, random on the set union
  std::array<std::vector<std::size_t>, 2> sets;      // announced sets, ascending
  BitMatrix f;
  std::vector<double> symbols;                       // BPSK of u * F
};

AliceState alice_begin(const SessionConfig& cfg, const BitMatrix& f,
                       const std::array<std::vector<std::size_t>, 2>& sets,
                       std::uint64_t alice_seed);

// Hashes the frame bits of each announced set into a one-time pad.
std::array<BitVec, 2> alice_finish(const AliceState& st, const SessionConfig& cfg,
                                   const BitVec& m0, const BitVec& m1,
                                   const std::array<BitVec, 2>& seeds);

struct BobDecodeResult {
  BitVec u_hat;    // full decoded frame
  BitVec key;      // hash over the chosen announced set
  BitVec message;  // recovered plaintext
};

// Adds channel noise locally, aligns the observations with the masking
// permutation, decodes, and unmasks the chosen ciphertext.
BobDecodeResult bob_receive(const SessionConfig& cfg, const BobSetup& setup, int choice,
                            const std::vector<double>& symbols,
                            const std::array<BitVec, 2>& ciphertexts, std::uint64_t bob_seed);

struct SessionOutcome {
  BitVec alice_u;
  std::array<BitVec, 2> ciphertexts;
  BitVec bob_message;
  BitVec bob_u_hat;
  BobSetup setup;
  std::vector<std::string> transcript;  // filled when cfg.record_transcript
};

// Runs both roles in-process.
SessionOutcome run_session(const SessionConfig& cfg, int choice, const BitVec& m0,
                           const BitVec& m1, std::uint64_t alice_seed, std::uint64_t bob_seed);

// Pairs the (choice=0, coin) run against the (choice=1, flipped coin) run with
// otherwise identical randomness and reports which frames match exactly and
// which match after swapping the two announced slots.
struct SymmetryReport {
  bool hello_equal = false;
  bool f_equal = false;
  bool sets_swapped = false;
  bool symbols_equal = false;
  bool seeds_swapped = false;
  bool ciphertexts_swapped = false;
  bool close_equal = false;
  // Everything except the ciphertext slot swap (which also needs m0 == m1).
  bool ok = false;
};

SymmetryReport verify_transcript_symmetry(const SessionConfig& cfg, const BitVec& m0,
                                          const BitVec& m1, std::uint64_t alice_seed,
                                          std::uint64_t bob_seed);

struct AliceResult {
  BitVec u;
  std::array<BitVec, 2> ciphertexts;
  std::vector<std::string> transcript;
};

struct BobResult {
  BitVec message;
  BitVec u_hat;
  std::vector<std::string> transcript;
};

// Drive one role over an established connection (either side may have
// listened or connected; the sender always speaks first).
AliceResult run_alice(TcpStream& peer, const SessionConfig& cfg, const BitVec& m0,
                      const BitVec& m1, std::uint64_t seed);
BobResult run_bob(TcpStream& peer, const SessionConfig& cfg, int choice, std::uint64_t seed);

}  // namespace ot
