#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "polarot/bitmat.hpp"

namespace ot {

// Anything wrong with the peer's bytes: bad base64, bad JSON, wrong version,
// unknown or out-of-order message, truncated stream.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string base64_encode(const std::uint8_t* data, std::size_t len);
std::string base64_encode(const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> base64_decode(std::string_view text);

enum class MsgType {
  hello,
  public_transform,
  index_sets,
  channel_frame,
  hash_seeds,
  ciphertexts,
  close,
};

std::string_view msg_type_name(MsgType t);
MsgType msg_type_from_name(std::string_view name);

// Bit vectors and matrices travel as base64 of their row-major packed bytes.
nlohmann::json bits_to_json(const BitVec& bits);
BitVec bits_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const BitMatrix& m);
BitMatrix matrix_from_json(const nlohmann::json& j);

struct Frame {
  MsgType type;
  nlohmann::json body;
};

// One message per line: compact JSON carrying {"v", "type", ...body}.
// encode_frame returns the line without its terminating newline.
std::string encode_frame(MsgType type, nlohmann::json body);
Frame decode_frame(std::string_view line);

class TcpStream {
 public:
  TcpStream() = default;
  explicit TcpStream(int fd) : fd_(fd) {}
  ~TcpStream();

  TcpStream(TcpStream&& other) noexcept;
  TcpStream& operator=(TcpStream&& other) noexcept;
  TcpStream(const TcpStream&) = delete;
  TcpStream& operator=(const TcpStream&) = delete;

  static TcpStream connect(const std::string& host, std::uint16_t port);

  void write_line(const std::string& line);  // appends the newline
  std::string read_line();                   // strips the newline

  bool valid() const { return fd_ >= 0; }
  void close();

 private:
  int fd_ = -1;
  std::string buf_;
};

class TcpListener {
 public:
  explicit TcpListener(std::uint16_t port);  // port 0 binds an ephemeral port
  ~TcpListener();

  TcpListener(TcpListener&& other) noexcept;
  TcpListener& operator=(TcpListener&& other) noexcept;
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  TcpStream accept();
  void close();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace ot
