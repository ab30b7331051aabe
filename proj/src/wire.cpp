#include "polarot/wire.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <array>
#include <cstring>
#include <utility>

namespace ot {

namespace {

constexpr std::string_view kB64Alphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

constexpr std::size_t kMaxLine = std::size_t{64} << 20;

int b64_value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

}  // namespace

std::string base64_encode(const std::uint8_t* data, std::size_t len) {
  std::string out;
  out.reserve((len + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= len; i += 3) {
    const std::uint32_t v = (std::uint32_t{data[i]} << 16) | (std::uint32_t{data[i + 1]} << 8) |
                            data[i + 2];
    out += kB64Alphabet[(v >> 18) & 63];
    out += kB64Alphabet[(v >> 12) & 63];
    out += kB64Alphabet[(v >> 6) & 63];
    out += kB64Alphabet[v & 63];
  }
  const std::size_t rem = len - i;
  if (rem == 1) {
    const std::uint32_t v = std::uint32_t{data[i]} << 16;
    out += kB64Alphabet[(v >> 18) & 63];
    out += kB64Alphabet[(v >> 12) & 63];
    out += "==";
  } else if (rem == 2) {
    const std::uint32_t v = (std::uint32_t{data[i]} << 16) | (std::uint32_t{data[i + 1]} << 8);
    out += kB64Alphabet[(v >> 18) & 63];
    out += kB64Alphabet[(v >> 12) & 63];
    out += kB64Alphabet[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::string base64_encode(const std::vector<std::uint8_t>& data) {
  return base64_encode(data.data(), data.size());
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw ProtocolError("malformed frame: bad base64 length");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::array<int, 4> q{};
    int pads = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=') {
        // padding is only legal in the final one or two slots
        if (i + 4 != text.size() || k < 2) throw ProtocolError("malformed frame: bad base64");
        q[k] = 0;
        ++pads;
      } else {
        if (pads > 0) throw ProtocolError("malformed frame: bad base64");
        q[k] = b64_value(c);
        if (q[k] < 0) throw ProtocolError("malformed frame: bad base64");
      }
    }
    const std::uint32_t v = (std::uint32_t(q[0]) << 18) | (std::uint32_t(q[1]) << 12) |
                            (std::uint32_t(q[2]) << 6) | std::uint32_t(q[3]);
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    if (pads < 2) out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    if (pads < 1) out.push_back(static_cast<std::uint8_t>(v & 0xff));
  }
  return out;
}

std::string_view msg_type_name(MsgType t) {
  switch (t) {
    case MsgType::hello: return "hello";
    case MsgType::public_transform: return "public_transform";
    case MsgType::index_sets: return "index_sets";
    case MsgType::channel_frame: return "channel_frame";
    case MsgType::hash_seeds: return "hash_seeds";
    case MsgType::ciphertexts: return "ciphertexts";
    case MsgType::close: return "close";
  }
  throw std::logic_error("unreachable message type");
}

MsgType msg_type_from_name(std::string_view name) {
  for (MsgType t : {MsgType::hello, MsgType::public_transform, MsgType::index_sets,
                    MsgType::channel_frame, MsgType::hash_seeds, MsgType::ciphertexts,
                    MsgType::close}) {
    if (msg_type_name(t) == name) return t;
  }
  throw ProtocolError("malformed frame: unknown message type '" + std::string(name) + "'");
}

nlohmann::json bits_to_json(const BitVec& bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  return {{"n", bits.size()}, {"b64", base64_encode(bytes)}};
}

BitVec bits_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("b64") ||
      !j["n"].is_number_unsigned() || !j["b64"].is_string())
    throw ProtocolError("malformed frame: bad bit vector");
  const std::size_t n = j["n"].get<std::size_t>();
  const auto bytes = base64_decode(j["b64"].get<std::string>());
  if (bytes.size() != (n + 7) / 8) throw ProtocolError("malformed frame: bit vector size mismatch");
  BitVec bits(n, 0);
  for (std::size_t i = 0; i < n; ++i) bits[i] = (bytes[i / 8] >> (i % 8)) & 1u;
  return bits;
}

nlohmann::json matrix_to_json(const BitMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"b64", base64_encode(m.to_bytes())}};
}

BitMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("b64") ||
      !j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned() || !j["b64"].is_string())
    throw ProtocolError("malformed frame: bad matrix");
  const std::size_t rows = j["rows"].get<std::size_t>();
  const std::size_t cols = j["cols"].get<std::size_t>();
  const auto bytes = base64_decode(j["b64"].get<std::string>());
  if (bytes.size() != rows * ((cols + 7) / 8))
    throw ProtocolError("malformed frame: matrix size mismatch");
  return BitMatrix::from_bytes(rows, cols, bytes);
}

std::string encode_frame(MsgType type, nlohmann::json body) {
  body["v"] = 1;
  body["type"] = msg_type_name(type);
  return body.dump();
}

Frame decode_frame(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ProtocolError("malformed frame: not a JSON object");
  if (!j.contains("v") || !j["v"].is_number_integer())
    throw ProtocolError("malformed frame: missing version");
  if (j["v"].get<int>() != 1)
    throw ProtocolError("version mismatch: peer speaks v" + j["v"].dump());
  if (!j.contains("type") || !j["type"].is_string())
    throw ProtocolError("malformed frame: missing type");
  Frame f;
  f.type = msg_type_from_name(j["type"].get<std::string>());
  j.erase("v");
  j.erase("type");
  f.body = std::move(j);
  return f;
}

TcpStream::~TcpStream() { close(); }

TcpStream::TcpStream(TcpStream&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), buf_(std::move(other.buf_)) {}

TcpStream& TcpStream::operator=(TcpStream&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = std::exchange(other.fd_, -1);
    buf_ = std::move(other.buf_);
  }
  return *this;
}

void TcpStream::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
  buf_.clear();
}

TcpStream TcpStream::connect(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0)
    throw std::runtime_error("cannot resolve " + host + ": " + gai_strerror(rc));
  int fd = -1;
  std::string err = "connection failed";
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    err = std::string("cannot connect to ") + host + ":" + service + ": " + std::strerror(errno);
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw std::runtime_error(err);
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return TcpStream(fd);
}

void TcpStream::write_line(const std::string& line) {
  if (fd_ < 0) throw ProtocolError("connection closed");
  std::string out = line;
  out += '\n';
  std::size_t sent = 0;
  while (sent < out.size()) {
    const ssize_t rc = ::send(fd_, out.data() + sent, out.size() - sent, MSG_NOSIGNAL);
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("send failed: ") + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(rc);
  }
}

std::string TcpStream::read_line() {
  if (fd_ < 0) throw ProtocolError("connection closed");
  for (;;) {
    const auto pos = buf_.find('\n');
    if (pos != std::string::npos) {
      std::string line = buf_.substr(0, pos);
      buf_.erase(0, pos + 1);
      return line;
    }
    if (buf_.size() > kMaxLine) throw ProtocolError("malformed frame: line too long");
    char chunk[4096];
    const ssize_t rc = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("recv failed: ") + std::strerror(errno));
    }
    if (rc == 0) {
      if (buf_.empty()) throw ProtocolError("connection closed");
      throw ProtocolError("malformed frame: stream truncated mid-line");
    }
    buf_.append(chunk, static_cast<std::size_t>(rc));
  }
}

TcpListener::TcpListener(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw std::runtime_error(std::string("cannot open socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    const std::string err = std::strerror(errno);
    ::close(fd_);
    fd_ = -1;
    throw std::runtime_error("cannot bind port " + std::to_string(port) + ": " + err);
  }
  if (::listen(fd_, 8) != 0) {
    const std::string err = std::strerror(errno);
    ::close(fd_);
    fd_ = -1;
    throw std::runtime_error("cannot listen: " + err);
  }
  socklen_t len = sizeof(addr);
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) == 0)
    port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() { close(); }

TcpListener::TcpListener(TcpListener&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), port_(std::exchange(other.port_, 0)) {}

TcpListener& TcpListener::operator=(TcpListener&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = std::exchange(other.fd_, -1);
    port_ = std::exchange(other.port_, 0);
  }
  return *this;
}

void TcpListener::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

TcpStream TcpListener::accept() {
  if (fd_ < 0) throw std::runtime_error("listener closed");
  for (;;) {
    const int cfd = ::accept(fd_, nullptr, nullptr);
    if (cfd >= 0) {
      int one = 1;
      ::setsockopt(cfd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      return TcpStream(cfd);
    }
    if (errno == EINTR) continue;
    throw std::runtime_error(std::string("accept failed: ") + std::strerror(errno));
  }
}

}  // namespace ot
