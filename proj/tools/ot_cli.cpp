#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarot/autgroup.hpp"
#include "polarot/channel.hpp"
#include "polarot/construct.hpp"
#include "polarot/optimize.hpp"
#include "polarot/otproto.hpp"
#include "polarot/perm.hpp"
#include "polarot/privacy.hpp"
#include "polarot/reliability.hpp"
#include "polarot/version.hpp"
#include "polarot/wire.hpp"

namespace {

int g_log_level = 0;  // 0 quiet, 1 info, 2 debug

void log_info(const std::string& msg) {
  if (g_log_level >= 1) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (g_log_level >= 2) std::cerr << "[debug] " << msg << "\n";
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// Shortest round-trip decimal form (what the JSON serializer emits).
std::string dstr(double v) { return nlohmann::json(v).dump(); }

unsigned m_from_n(std::size_t n) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::runtime_error("n must be a power of two >= 2");
  unsigned m = 0;
  while ((std::size_t{1} << m) < n) ++m;
  if (m > 16) throw std::runtime_error("n too large (max 65536)");
  return m;
}

double resolve_snr(bool has_snr, double snr, bool has_db, double snr_db, double fallback) {
  if (has_snr) return snr;
  if (has_db) return ot::snr_from_db(snr_db);
  if (fallback > 0.0) return fallback;
  throw std::runtime_error("one of --snr / --snr-db is required");
}

ot::Perm parse_sigma(const std::string& text, unsigned m) {
  ot::Perm sigma;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) sigma.push_back(std::stoul(tok));
  if (sigma.size() != m || !ot::is_permutation(sigma))
    throw std::runtime_error("sigma must list each bit position 0.." + std::to_string(m - 1) +
                             " exactly once");
  return sigma;
}

nlohmann::json indices_1based(const std::vector<std::size_t>& v) {
  auto arr = nlohmann::json::array();
  for (const std::size_t i : v) arr.push_back(i + 1);
  return arr;
}

std::vector<std::size_t> indices_from_1based(const nlohmann::json& arr, std::size_t n,
                                             const char* what) {
  if (!arr.is_array()) throw std::runtime_error(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& v : arr) {
    if (!v.is_number_unsigned()) throw std::runtime_error(std::string(what) + ": bad index");
    const std::size_t idx = v.get<std::size_t>();
    if (idx < 1 || idx > n) throw std::runtime_error(std::string(what) + ": index out of range");
    out.push_back(idx - 1);
  }
  return out;
}

nlohmann::json bits_array(const ot::BitVec& bits) {
  auto arr = nlohmann::json::array();
  for (const auto b : bits) arr.push_back(static_cast<int>(b));
  return arr;
}

ot::BitVec bits_from_array(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array()) throw std::runtime_error(std::string(what) + " must be an array of bits");
  ot::BitVec out;
  for (const auto& v : arr) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1))
      throw std::runtime_error(std::string(what) + " must contain only 0/1");
    out.push_back(static_cast<std::uint8_t>(v.get<int>()));
  }
  return out;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error(path + ": not valid JSON");
  return j;
}

void emit(const nlohmann::json& doc, const std::string& output) {
  const std::string text = doc.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write " + output);
    out << text;
  }
}

struct SelectionFile {
  unsigned m = 0;
  std::size_t n = 0;
  double snr = 0.0;
  ot::Perm sigma;
  std::vector<std::size_t> good;
  std::vector<std::size_t> bad;
  nlohmann::json raw;
};

SelectionFile load_selection(const std::string& path) {
  SelectionFile sel;
  sel.raw = load_json_file(path);
  const auto& j = sel.raw;
  if (!j.contains("n") || !j["n"].is_number_unsigned())
    throw std::runtime_error(path + ": missing n");
  sel.n = j["n"].get<std::size_t>();
  sel.m = m_from_n(sel.n);
  if (j.contains("snr") && j["snr"].is_number()) sel.snr = j["snr"].get<double>();
  if (!j.contains("sigma")) throw std::runtime_error(path + ": missing sigma");
  sel.sigma.clear();
  for (const auto& v : j["sigma"]) sel.sigma.push_back(v.get<std::size_t>());
  if (sel.sigma.size() != sel.m || !ot::is_permutation(sel.sigma))
    throw std::runtime_error(path + ": sigma is not a bit permutation");
  if (!j.contains("good")) throw std::runtime_error(path + ": missing good set");
  sel.good = indices_from_1based(j["good"], sel.n, "good");
  if (j.contains("bad")) {
    sel.bad = indices_from_1based(j["bad"], sel.n, "bad");
  } else {
    const ot::Perm pi = ot::induced_index_perm(sel.sigma, sel.m);
    for (const std::size_t g : sel.good) sel.bad.push_back(pi[g]);
    std::sort(sel.bad.begin(), sel.bad.end());
  }
  return sel;
}

nlohmann::json provenance(const nlohmann::json& effective) {
  return {{"tool", "ot"},
          {"version", std::string(ot::kVersion)},
          {"config_hash", hex64(fnv1a64(effective.dump()))}};
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::size_t n = 16;
  double snr = 0.0, snr_db = 0.0;
  bool has_snr = false, has_db = false;
  double gamma = -1.0;
  std::string output;
};

int cmd_construct(const ConstructArgs& a) {
  const unsigned m = m_from_n(a.n);
  const double snr = resolve_snr(a.has_snr, a.snr, a.has_db, a.snr_db, 0.0);
  log_info("constructing profile for n=" + std::to_string(a.n) + " snr=" + dstr(snr));
  const auto mi = ot::ga_profile(m, snr);
  const auto z = ot::z_profile(m, snr);
  const double gamma = a.gamma >= 0.0 ? a.gamma : ot::default_gamma(a.n);

  nlohmann::json eff = {{"cmd", "construct"}, {"n", a.n}, {"snr", snr}, {"gamma", gamma}};
  nlohmann::json doc = provenance(eff);
  doc["n"] = a.n;
  doc["snr"] = snr;
  doc["i0"] = ot::i0_from_snr(snr);
  doc["gamma"] = gamma;
  doc["mi"] = mi;
  doc["z"] = z;
  doc["order"] = indices_1based(ot::reliability_order(mi));
  doc["good"] = indices_1based(ot::good_set(mi, gamma));
  doc["bad"] = indices_1based(ot::bad_set(mi, gamma));
  emit(doc, a.output);
  return 0;
}

struct AutArgs {
  std::size_t n = 16;
  std::string sigma;
  std::string output;
};

int cmd_aut(const AutArgs& a) {
  const unsigned m = m_from_n(a.n);
  const ot::Perm sigma = parse_sigma(a.sigma, m);
  const ot::Perm pi = ot::induced_index_perm(sigma, m);

  nlohmann::json eff = {{"cmd", "aut"}, {"n", a.n}, {"sigma", sigma}};
  nlohmann::json doc = provenance(eff);
  doc["n"] = a.n;
  doc["sigma"] = sigma;
  doc["pi"] = indices_1based(pi);
  doc["cycles"] = ot::cycle_string(pi);
  doc["order"] = ot::perm_order(pi);
  bool involution = true;
  for (std::size_t b = 0; b < m; ++b)
    if (sigma[sigma[b]] != b) involution = false;
  doc["involution"] = involution;
  emit(doc, a.output);
  return 0;
}

struct OptimizeArgs {
  std::size_t n = 16;
  double snr = 0.0, snr_db = 0.0;
  bool has_snr = false, has_db = false;
  std::size_t k = 2;
  std::string space = "involutions";
  std::uint64_t seed = 0;
  std::size_t samples = 2000;
  std::string output;
};

int cmd_optimize(const OptimizeArgs& a) {
  const unsigned m = m_from_n(a.n);
  const double snr = resolve_snr(a.has_snr, a.snr, a.has_db, a.snr_db, 0.0);
  const ot::SigmaSpace space =
      a.space == "all" ? ot::SigmaSpace::all : ot::SigmaSpace::involutions;
  log_info("searching sigma space '" + a.space + "' for n=" + std::to_string(a.n) +
           " k=" + std::to_string(a.k));
  const auto mi = ot::ga_profile(m, snr);
  const auto best = ot::outer_search(mi, m, a.k, space, a.seed, a.samples);

  nlohmann::json eff = {{"cmd", "optimize"}, {"n", a.n},       {"snr", snr},
                        {"k", a.k},          {"space", a.space}, {"seed", a.seed},
                        {"samples", a.samples}};
  nlohmann::json doc = provenance(eff);
  doc["n"] = a.n;
  doc["snr"] = snr;
  doc["k"] = a.k;
  doc["space"] = a.space;
  doc["seed"] = a.seed;
  doc["sigma"] = best.sigma;
  doc["cycles"] = ot::cycle_string(best.pi);
  doc["good"] = indices_1based(best.selection.good);
  doc["bad"] = indices_1based(best.selection.bad);
  doc["score"] = best.selection.score;
  doc["rate"] = best.selection.rate;
  emit(doc, a.output);
  return 0;
}

struct RateArgs {
  std::string selection;
  double snr = 0.0, snr_db = 0.0;
  bool has_snr = false, has_db = false;
  double gamma = -1.0;
  double eps_sw = 1e-3;
  double dispersion = 0.0;
  double beta = 0.0;
  double c_eps = 0.0;
  std::string output;
};

int cmd_rate(const RateArgs& a) {
  const SelectionFile sel = load_selection(a.selection);
  const double snr = resolve_snr(a.has_snr, a.snr, a.has_db, a.snr_db, sel.snr);
  const double gamma = a.gamma >= 0.0 ? a.gamma : ot::default_gamma(sel.n);
  const auto mi = ot::ga_profile(sel.m, snr);
  const ot::Perm pi = ot::induced_index_perm(sel.sigma, sel.m);

  const double score = ot::selection_score(mi, sel.good, pi);
  nlohmann::json eff = {{"cmd", "rate"},     {"n", sel.n},          {"snr", snr},
                        {"good", sel.good},  {"gamma", gamma},      {"eps_sw", a.eps_sw},
                        {"beta", a.beta},    {"c_eps", a.c_eps},    {"dispersion", a.dispersion}};
  nlohmann::json doc = provenance(eff);
  doc["n"] = sel.n;
  doc["snr"] = snr;
  doc["good"] = indices_1based(sel.good);
  doc["bad"] = indices_1based(sel.bad);
  doc["score"] = score;
  doc["rate"] = score / static_cast<double>(sel.n);
  doc["leakage"] = ot::leakage_bound(mi, sel.good, pi, gamma);
  doc["swc"] = ot::swc_length(mi, sel.good, a.dispersion, a.eps_sw, sel.n);
  doc["ell_net"] = ot::ell_net(mi, sel.good, pi, a.beta, a.c_eps);
  emit(doc, a.output);
  return 0;
}

struct SimulateArgs {
  std::string selection;
  double snr = 0.0, snr_db = 0.0;
  bool has_snr = false, has_db = false;
  std::size_t trials = 10000;
  double delta = 1e-6;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string output;
};

int cmd_simulate(const SimulateArgs& a) {
  const SelectionFile sel = load_selection(a.selection);
  const double snr = resolve_snr(a.has_snr, a.snr, a.has_db, a.snr_db, sel.snr);
  const unsigned threads =
      a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  log_info("simulating " + std::to_string(a.trials) + " trials on n=" + std::to_string(sel.n) +
           " with " + std::to_string(threads) + " threads");

  const auto res =
      ot::mc_hash_input_error(sel.m, snr, sel.good, sel.bad, a.trials, a.seed, threads);
  const double bound = ot::cp_upper(res.block_errors, res.trials, a.delta);
  const double ub = ot::union_bound_prefix(ot::z_profile(sel.m, snr), sel.good, sel.bad);

  nlohmann::json eff = {{"cmd", "simulate"}, {"n", sel.n},     {"snr", snr},
                        {"good", sel.good},  {"bad", sel.bad}, {"trials", a.trials},
                        {"delta", a.delta},  {"seed", a.seed}};
  std::ostringstream os;
  os << "# ot " << ot::kVersion << " seed=" << a.seed << " config="
     << hex64(fnv1a64(eff.dump())) << "\n";
  os << "trials,errors,p_hat,cp_upper,union_bound\n";
  os << res.trials << "," << res.block_errors << "," << dstr(res.p_hat()) << "," << dstr(bound)
     << "," << dstr(ub) << "\n";
  if (a.output.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(a.output);
    if (!out) throw std::runtime_error("cannot write " + a.output);
    out << os.str();
  }
  return 0;
}

struct CpArgs {
  std::uint64_t k = 0;
  std::uint64_t m = 1;
  double delta = 1e-6;
};

int cmd_cp_bound(const CpArgs& a) {
  std::cout << dstr(ot::cp_upper(a.k, a.m, a.delta)) << "\n";
  return 0;
}

struct RunArgs {
  std::string role;
  std::string connect_to;
  std::string listen_on;
  std::string config;
  std::string messages_file;
  int choice = -1;
  std::uint64_t seed = 0;
  std::uint64_t alice_seed = 0;
  bool has_alice_seed = false;
  double snr = 0.0, snr_db = 0.0;
  bool has_snr = false, has_db = false;
  long long key_bits = -1;
  long long set_size = -1;
  std::string transcript_file;
  std::string port_file;
};

std::pair<std::string, std::uint16_t> split_hostport(const std::string& text) {
  const auto pos = text.rfind(':');
  if (pos == std::string::npos) throw std::runtime_error("expected HOST:PORT, got " + text);
  const std::string host = pos == 0 ? std::string("127.0.0.1") : text.substr(0, pos);
  const unsigned long port = std::stoul(text.substr(pos + 1));
  if (port > 65535) throw std::runtime_error("port out of range");
  return {host, static_cast<std::uint16_t>(port)};
}

ot::TcpStream connect_with_retry(const std::string& host, std::uint16_t port) {
  for (int attempt = 0;; ++attempt) {
    try {
      return ot::TcpStream::connect(host, port);
    } catch (const std::exception& e) {
      if (attempt >= 50) throw;
      log_debug(std::string("connect retry: ") + e.what());
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  }
}

void write_transcript(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& line : lines) out << line << "\n";
}

int cmd_run(const RunArgs& a) {
  const SelectionFile sel = load_selection(a.config);
  const auto& raw = sel.raw;

  ot::SessionConfig cfg;
  cfg.m = sel.m;
  cfg.snr = resolve_snr(a.has_snr, a.snr, a.has_db, a.snr_db, sel.snr);
  cfg.sigma = sel.sigma;
  cfg.good = sel.good;
  if (a.set_size >= 0)
    cfg.set_size = static_cast<std::size_t>(a.set_size);
  else if (raw.contains("set_size"))
    cfg.set_size = raw["set_size"].get<std::size_t>();
  const std::size_t kept = cfg.set_size > 0 && cfg.set_size < cfg.good.size()
                               ? cfg.set_size
                               : cfg.good.size();
  if (a.key_bits >= 0)
    cfg.key_bits = static_cast<std::size_t>(a.key_bits);
  else if (raw.contains("key_bits"))
    cfg.key_bits = raw["key_bits"].get<std::size_t>();
  else
    cfg.key_bits = kept;
  cfg.record_transcript = !a.transcript_file.empty();

  nlohmann::json eff = {{"cmd", "run"},          {"role", a.role},
                        {"n", sel.n},            {"snr", cfg.snr},
                        {"good", cfg.good},      {"sigma", cfg.sigma},
                        {"set_size", cfg.set_size}, {"key_bits", cfg.key_bits}};

  if (a.role == "loopback") {
    if (a.choice < 0) throw std::runtime_error("--choice is required for the receiver");
    if (a.messages_file.empty()) throw std::runtime_error("--messages is required for the sender");
    if (!a.has_alice_seed) throw std::runtime_error("--alice-seed is required for loopback");
    const auto mj = load_json_file(a.messages_file);
    const ot::BitVec m0 = bits_from_array(mj.at("m0"), "m0");
    const ot::BitVec m1 = bits_from_array(mj.at("m1"), "m1");
    if (m0.size() != cfg.key_bits || m1.size() != cfg.key_bits)
      throw std::runtime_error("messages must be key_bits long");
    const auto out = ot::run_session(cfg, a.choice, m0, m1, a.alice_seed, a.seed);
    if (!a.transcript_file.empty()) write_transcript(a.transcript_file, out.transcript);
    nlohmann::json doc = provenance(eff);
    doc["role"] = "loopback";
    doc["choice"] = a.choice;
    doc["seed"] = a.seed;
    doc["alice_seed"] = a.alice_seed;
    doc["message"] = bits_array(out.bob_message);
    doc["recovered"] = out.bob_message == (a.choice ? m1 : m0);
    emit(doc, "");
    return 0;
  }

  // Establish the connection for either network role.
  ot::TcpStream peer;
  if (!a.listen_on.empty()) {
    const auto [host, port] = split_hostport(a.listen_on);
    (void)host;
    ot::TcpListener listener(port);
    log_info("listening on port " + std::to_string(listener.port()));
    if (!a.port_file.empty()) {
      std::ofstream pf(a.port_file);
      if (!pf) throw std::runtime_error("cannot write " + a.port_file);
      pf << listener.port() << "\n";
    }
    peer = listener.accept();
  } else {
    const auto [host, port] = split_hostport(a.connect_to);
    log_info("connecting to " + host + ":" + std::to_string(port));
    peer = connect_with_retry(host, port);
  }

  if (a.role == "alice") {
    if (a.messages_file.empty()) throw std::runtime_error("--messages is required for the sender");
    const auto mj = load_json_file(a.messages_file);
    const ot::BitVec m0 = bits_from_array(mj.at("m0"), "m0");
    const ot::BitVec m1 = bits_from_array(mj.at("m1"), "m1");
    if (m0.size() != cfg.key_bits || m1.size() != cfg.key_bits)
      throw std::runtime_error("messages must be key_bits long");
    const auto res = ot::run_alice(peer, cfg, m0, m1, a.seed);
    if (!a.transcript_file.empty()) write_transcript(a.transcript_file, res.transcript);
    nlohmann::json doc = provenance(eff);
    doc["role"] = "alice";
    doc["seed"] = a.seed;
    doc["ciphertexts"] = {bits_array(res.ciphertexts[0]), bits_array(res.ciphertexts[1])};
    emit(doc, "");
    return 0;
  }

  // receiver
  if (a.choice < 0) throw std::runtime_error("--choice is required for the receiver");
  const auto res = ot::run_bob(peer, cfg, a.choice, a.seed);
  if (!a.transcript_file.empty()) write_transcript(a.transcript_file, res.transcript);
  nlohmann::json doc = provenance(eff);
  doc["role"] = "bob";
  doc["seed"] = a.seed;
  doc["choice"] = a.choice;
  doc["message"] = bits_array(res.message);
  emit(doc, "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar-code oblivious transfer toolkit"};
  app.set_version_flag("--version", std::string(ot::kVersion));
  app.require_subcommand(1);

  std::string log_level = "quiet";
  if (const char* env = std::getenv("OT_LOG")) log_level = env;
  app.add_option("--log-level", log_level, "quiet, info or debug")
      ->check(CLI::IsMember({"quiet", "info", "debug"}));

  ConstructArgs ca;
  auto* c = app.add_subcommand("construct", "synthetic-channel profile for a code length");
  c->add_option("--n", ca.n, "code length (power of two)")->required();
  auto* c_snr = c->add_option("--snr", ca.snr, "channel snr (linear)");
  auto* c_db = c->add_option("--snr-db", ca.snr_db, "channel snr in dB");
  c_snr->excludes(c_db);
  c_db->excludes(c_snr);
  c->add_option("--gamma", ca.gamma, "polarization threshold (default: length-based)");
  c->add_option("--output", ca.output, "write JSON here instead of stdout");

  AutArgs aa;
  auto* au = app.add_subcommand("aut", "inspect the automorphism induced by a bit relabeling");
  au->add_option("--n", aa.n, "code length (power of two)")->required();
  au->add_option("--sigma", aa.sigma, "bit relabeling as comma list, e.g. 1,0,2,3")->required();
  au->add_option("--output", aa.output, "write JSON here instead of stdout");

  OptimizeArgs oa;
  auto* op = app.add_subcommand("optimize", "search for the best automorphism and selection");
  op->add_option("--n", oa.n, "code length (power of two)")->required();
  auto* o_snr = op->add_option("--snr", oa.snr, "channel snr (linear)");
  auto* o_db = op->add_option("--snr-db", oa.snr_db, "channel snr in dB");
  o_snr->excludes(o_db);
  o_db->excludes(o_snr);
  op->add_option("--k", oa.k, "selection pairs to keep")->required();
  op->add_option("--space", oa.space, "sigma space: all or involutions")
      ->check(CLI::IsMember({"all", "involutions"}));
  op->add_option("--seed", oa.seed, "seed for the sampled search");
  op->add_option("--samples", oa.samples, "sampled sigmas when the space is too large");
  op->add_option("--output", oa.output, "write JSON here instead of stdout");

  RateArgs ra;
  auto* rt = app.add_subcommand("rate", "privacy figures for a selection");
  rt->add_option("--selection", ra.selection, "selection JSON (optimize output)")->required();
  auto* r_snr = rt->add_option("--snr", ra.snr, "override snr (linear)");
  auto* r_db = rt->add_option("--snr-db", ra.snr_db, "override snr in dB");
  r_snr->excludes(r_db);
  r_db->excludes(r_snr);
  rt->add_option("--gamma", ra.gamma, "polarization threshold (default: length-based)");
  rt->add_option("--eps-sw", ra.eps_sw, "wiretap smoothing parameter");
  rt->add_option("--dispersion", ra.dispersion, "channel dispersion V");
  rt->add_option("--beta", ra.beta, "finite-length penalty");
  rt->add_option("--c-eps", ra.c_eps, "smoothing + privacy-amplification cost");
  rt->add_option("--output", ra.output, "write JSON here instead of stdout");

  SimulateArgs sa;
  auto* si = app.add_subcommand("simulate", "Monte-Carlo hash-input error rate for a selection");
  si->add_option("--selection", sa.selection, "selection JSON (optimize output)")->required();
  auto* s_snr = si->add_option("--snr", sa.snr, "override snr (linear)");
  auto* s_db = si->add_option("--snr-db", sa.snr_db, "override snr in dB");
  s_snr->excludes(s_db);
  s_db->excludes(s_snr);
  si->add_option("--trials", sa.trials, "Monte-Carlo trials")->required();
  si->add_option("--delta", sa.delta, "confidence parameter for the exact upper bound");
  si->add_option("--seed", sa.seed, "trial seed")->required();
  si->add_option("--threads", sa.threads, "worker threads (0 = all cores)");
  si->add_option("--output", sa.output, "write CSV here instead of stdout");

  CpArgs cpa;
  auto* cp = app.add_subcommand("cp-bound", "exact binomial upper confidence limit");
  cp->add_option("--k", cpa.k, "observed errors")->required();
  cp->add_option("--m", cpa.m, "number of trials")->required();
  cp->add_option("--delta", cpa.delta, "confidence parameter")->required();

  RunArgs run;
  auto* ot_cmd = app.add_subcommand("ot", "oblivious transfer sessions");
  ot_cmd->require_subcommand(1);
  auto* rn = ot_cmd->add_subcommand("run", "run one session");
  rn->add_option("--role", run.role, "alice, bob or loopback")
      ->required()
      ->check(CLI::IsMember({"alice", "bob", "loopback"}));
  auto* rn_conn = rn->add_option("--connect", run.connect_to, "peer address HOST:PORT");
  auto* rn_listen = rn->add_option("--listen", run.listen_on, "bind address HOST:PORT (port 0 = ephemeral)");
  rn_conn->excludes(rn_listen);
  rn_listen->excludes(rn_conn);
  rn->add_option("--config", run.config, "session config JSON (optimize output works)")
      ->required();
  rn->add_option("--choice", run.choice, "receiver choice bit")->check(CLI::Range(0, 1));
  rn->add_option("--messages", run.messages_file, "sender messages JSON {\"m0\":[..],\"m1\":[..]}");
  rn->add_option("--seed", run.seed, "session seed for this role")->required();
  auto* rn_aseed = rn->add_option("--alice-seed", run.alice_seed, "sender seed (loopback only)");
  auto* r_snr2 = rn->add_option("--snr", run.snr, "override snr (linear)");
  auto* r_db2 = rn->add_option("--snr-db", run.snr_db, "override snr in dB");
  r_snr2->excludes(r_db2);
  r_db2->excludes(r_snr2);
  rn->add_option("--key-bits", run.key_bits, "message length (default: announced set size)");
  rn->add_option("--set-size", run.set_size, "announced entries per set (0 keeps all)");
  rn->add_option("--transcript", run.transcript_file, "record the frame transcript here");
  rn->add_option("--port-file", run.port_file, "write the bound port here (listen mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (log_level == "info")
    g_log_level = 1;
  else if (log_level == "debug")
    g_log_level = 2;

  ca.has_snr = c_snr->count() > 0;
  ca.has_db = c_db->count() > 0;
  oa.has_snr = o_snr->count() > 0;
  oa.has_db = o_db->count() > 0;
  ra.has_snr = r_snr->count() > 0;
  ra.has_db = r_db->count() > 0;
  sa.has_snr = s_snr->count() > 0;
  sa.has_db = s_db->count() > 0;
  run.has_snr = r_snr2->count() > 0;
  run.has_db = r_db2->count() > 0;
  run.has_alice_seed = rn_aseed->count() > 0;

  try {
    if (*c) return cmd_construct(ca);
    if (*au) return cmd_aut(aa);
    if (*op) return cmd_optimize(oa);
    if (*rt) return cmd_rate(ra);
    if (*si) return cmd_simulate(sa);
    if (*cp) return cmd_cp_bound(cpa);
    if (*rn) {
      if (run.role != "loopback" && run.connect_to.empty() && run.listen_on.empty())
        throw std::runtime_error("network roles need --connect or --listen");
      return cmd_run(run);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
