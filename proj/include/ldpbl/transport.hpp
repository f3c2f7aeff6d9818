// Wire format and delivery carriers.
//
// Every message is one envelope per line, serialized as compact JSON with
// lexicographically ordered keys so identical records always produce
// identical bytes. 64-bit identifiers (sender, oracle seeds, ten-digit
// values) travel as decimal strings to stay exact in JSON tooling that
// reads numbers as doubles. Sparse report values travel as the bare sign
// and randomizer tag; the receiver recomputes the magnitude from the shared
// parameters, so no floating-point report data crosses the wire.
//
// Wire fields, per kind:
//   common          version:int, day:"YYYY-MM-DD", kind:string, sender:string(u64)
//   PREFIX_ANNOUNCE payload.prefix:int
//   GO_LIST         payload.prefixes:[int], payload.family:{channels:int,
//                   rounds:[{a:int, b:int}]}
//   SPARSE_REPORT   payload.{t,k,prefix,r,sign}:int, payload.randomizer:string
//   OLH_REPORT      payload.{prefix,g,w}:int, payload.seed:string(u64)
//   HH_PUBLISH      payload.entries:[{value:string(u64), estimate:number}]
#pragma once

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ldpbl/channels.hpp"
#include "ldpbl/date.hpp"
#include "ldpbl/phone.hpp"
#include "ldpbl/randomizers.hpp"
#include "ldpbl/server.hpp"

namespace ldpbl {

inline constexpr uint8_t kWireVersion = 1;

struct MalformedMessage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VersionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MsgKind : uint8_t {
  kPrefixAnnounce = 0,
  kGoList = 1,
  kSparseReport = 2,
  kOlhReport = 3,
  kHhPublish = 4,
};

struct PrefixAnnounce {
  uint16_t prefix = 0;

  friend bool operator==(const PrefixAnnounce&, const PrefixAnnounce&) = default;
};

struct GoListMsg {
  std::vector<uint32_t> prefixes;
  HashFamily family;

  friend bool operator==(const GoListMsg&, const GoListMsg&) = default;
};

struct HhPublish {
  struct Entry {
    uint64_t value = 0;
    double estimate = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;

  friend bool operator==(const HhPublish&, const HhPublish&) = default;
};

using Payload = std::variant<PrefixAnnounce, GoListMsg, SparseReport, OlhReport, HhPublish>;

struct Envelope {
  uint8_t version = kWireVersion;
  Date day{};
  uint64_t sender = 0;
  Payload payload;

  MsgKind kind() const { return static_cast<MsgKind>(payload.index()); }

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

namespace wire_detail {

using nlohmann::json;

inline const char* kind_name(MsgKind k) {
  switch (k) {
    case MsgKind::kPrefixAnnounce: return "PREFIX_ANNOUNCE";
    case MsgKind::kGoList: return "GO_LIST";
    case MsgKind::kSparseReport: return "SPARSE_REPORT";
    case MsgKind::kOlhReport: return "OLH_REPORT";
    case MsgKind::kHhPublish: return "HH_PUBLISH";
  }
  throw MalformedMessage("unknown message kind");
}

inline std::string u64_str(uint64_t v) { return std::to_string(v); }

inline uint64_t parse_u64(const json& j, const char* field) {
  if (!j.is_string()) throw MalformedMessage(std::string(field) + " must be a string");
  const std::string& s = j.get_ref<const std::string&>();
  uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw MalformedMessage(std::string(field) + " is not a decimal u64");
  return out;
}

inline const json& member(const json& j, const char* field) {
  const auto it = j.find(field);
  if (it == j.end()) throw MalformedMessage(std::string("missing field ") + field);
  return *it;
}

template <typename T>
T integer(const json& j, const char* field, int64_t lo, int64_t hi) {
  const json& f = member(j, field);
  if (!f.is_number_integer()) throw MalformedMessage(std::string(field) + " must be an integer");
  const int64_t v = f.get<int64_t>();
  if (v < lo || v > hi) throw MalformedMessage(std::string(field) + " out of range");
  return static_cast<T>(v);
}

inline json payload_json(const PrefixAnnounce& p) {
  return json{{"prefix", p.prefix}};
}

inline json payload_json(const GoListMsg& p) {
  json rounds = json::array();
  for (const auto& r : p.family.rounds) rounds.push_back(json{{"a", r.a}, {"b", r.b}});
  return json{{"family", json{{"channels", p.family.channels}, {"rounds", std::move(rounds)}}},
              {"prefixes", p.prefixes}};
}

inline json payload_json(const SparseReport& p) {
  return json{{"k", p.k},         {"prefix", p.prefix},
              {"r", p.r},         {"randomizer", to_string(p.kind)},
              {"sign", p.sign},   {"t", p.t}};
}

inline json payload_json(const OlhReport& p) {
  return json{{"g", p.g}, {"prefix", p.prefix}, {"seed", u64_str(p.seed)}, {"w", p.w}};
}

inline json payload_json(const HhPublish& p) {
  json entries = json::array();
  for (const auto& e : p.entries)
    entries.push_back(json{{"estimate", e.estimate}, {"value", u64_str(e.value)}});
  return json{{"entries", std::move(entries)}};
}

inline RandomizerKind parse_kind_tag(const json& j) {
  const json& f = member(j, "randomizer");
  if (!f.is_string()) throw MalformedMessage("randomizer must be a string");
  const std::string& s = f.get_ref<const std::string&>();
  if (s == "basic") return RandomizerKind::kBasic;
  if (s == "extended") return RandomizerKind::kExtended;
  if (s == "noiseless") return RandomizerKind::kNoiseless;
  throw MalformedMessage("unknown randomizer tag");
}

inline Payload parse_payload(const std::string& kind, const json& j) {
  if (!j.is_object()) throw MalformedMessage("payload must be an object");
  if (kind == "PREFIX_ANNOUNCE") {
    PrefixAnnounce p;
    p.prefix = integer<uint16_t>(j, "prefix", 0, kPrefixSpace - 1);
    return p;
  }
  if (kind == "GO_LIST") {
    GoListMsg p;
    const json& fam = member(j, "family");
    p.family.channels = integer<uint32_t>(fam, "channels", 1, 4096);
    const json& rounds = member(fam, "rounds");
    if (!rounds.is_array()) throw MalformedMessage("rounds must be an array");
    for (const json& r : rounds) {
      HashFamily::Round round;
      round.a = integer<uint32_t>(r, "a", 1, HashFamily::kPrime - 1);
      round.b = integer<uint32_t>(r, "b", 0, HashFamily::kPrime - 1);
      p.family.rounds.push_back(round);
    }
    const json& prefixes = member(j, "prefixes");
    if (!prefixes.is_array()) throw MalformedMessage("prefixes must be an array");
    for (const json& pref : prefixes) {
      if (!pref.is_number_integer()) throw MalformedMessage("prefix must be an integer");
      const int64_t v = pref.get<int64_t>();
      if (v < 0 || v >= kPrefixSpace) throw MalformedMessage("prefix out of range");
      p.prefixes.push_back(static_cast<uint32_t>(v));
    }
    return p;
  }
  if (kind == "SPARSE_REPORT") {
    SparseReport p;
    p.t = integer<uint16_t>(j, "t", 1, 65535);
    p.k = integer<uint16_t>(j, "k", 1, 65535);
    p.prefix = integer<uint16_t>(j, "prefix", 0, kPrefixSpace - 1);
    p.r = integer<uint8_t>(j, "r", 1, kCodeLen);
    p.sign = integer<int8_t>(j, "sign", -1, 1);
    p.kind = parse_kind_tag(j);
    return p;
  }
  if (kind == "OLH_REPORT") {
    OlhReport p;
    p.prefix = integer<uint16_t>(j, "prefix", 0, kPrefixSpace - 1);
    p.g = integer<uint16_t>(j, "g", 2, 65535);
    p.w = integer<uint16_t>(j, "w", 0, 65534);
    p.seed = parse_u64(member(j, "seed"), "seed");
    if (p.w >= p.g) throw MalformedMessage("w out of range");
    return p;
  }
  if (kind == "HH_PUBLISH") {
    HhPublish p;
    const json& entries = member(j, "entries");
    if (!entries.is_array()) throw MalformedMessage("entries must be an array");
    for (const json& e : entries) {
      HhPublish::Entry entry;
      entry.value = parse_u64(member(e, "value"), "value");
      const json& est = member(e, "estimate");
      if (!est.is_number()) throw MalformedMessage("estimate must be a number");
      entry.estimate = est.get<double>();
      p.entries.push_back(entry);
    }
    return p;
  }
  throw MalformedMessage("unknown message kind");
}

}  // namespace wire_detail

inline std::string encode_envelope(const Envelope& e) {
  using wire_detail::json;
  json payload = std::visit([](const auto& p) { return wire_detail::payload_json(p); },
                            e.payload);
  const json doc{{"day", to_string(e.day)},
                 {"kind", wire_detail::kind_name(e.kind())},
                 {"payload", std::move(payload)},
                 {"sender", wire_detail::u64_str(e.sender)},
                 {"version", e.version}};
  return doc.dump() + "\n";
}

inline Envelope decode_envelope(std::string_view bytes) {
  using wire_detail::json;
  std::string_view body = bytes;
  if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
  if (body.find('\n') != std::string_view::npos)
    throw MalformedMessage("envelope must be a single line");
  const json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw MalformedMessage("invalid JSON envelope");

  const int64_t version =
      wire_detail::integer<int64_t>(doc, "version", 0, 255);
  if (version != kWireVersion) throw VersionMismatch("unsupported envelope version");

  const json& kind = wire_detail::member(doc, "kind");
  const json& day = wire_detail::member(doc, "day");
  if (!kind.is_string() || !day.is_string()) throw MalformedMessage("bad envelope header");
  const auto parsed_day = parse_date(day.get_ref<const std::string&>());
  if (!parsed_day) throw MalformedMessage("bad day field");

  Envelope e;
  e.version = static_cast<uint8_t>(version);
  e.day = *parsed_day;
  e.sender = wire_detail::parse_u64(wire_detail::member(doc, "sender"), "sender");
  e.payload = wire_detail::parse_payload(kind.get_ref<const std::string&>(),
                                         wire_detail::member(doc, "payload"));
  return e;
}

// Feeds a decoded message into the server's matching stage.
inline void apply_envelope(Server& server, const Envelope& e) {
  switch (e.kind()) {
    case MsgKind::kPrefixAnnounce:
      server.announce_prefix(std::get<PrefixAnnounce>(e.payload).prefix);
      break;
    case MsgKind::kSparseReport:
      server.ingest(std::get<SparseReport>(e.payload));
      break;
    case MsgKind::kOlhReport:
      server.ingest(std::get<OlhReport>(e.payload));
      break;
    case MsgKind::kGoList:
    case MsgKind::kHhPublish:
      throw std::logic_error("server-originated message applied to server");
  }
}

// In-process carrier: a FIFO byte queue of whole lines.
class Loopback {
 public:
  void send(std::string line) { queue_.push_back(std::move(line)); }

  std::optional<std::string> receive() {
    if (queue_.empty()) return std::nullopt;
    std::string line = std::move(queue_.front());
    queue_.pop_front();
    return line;
  }

  std::vector<std::string> drain() {
    std::vector<std::string> out(queue_.begin(), queue_.end());
    queue_.clear();
    return out;
  }

  size_t size() const { return queue_.size(); }

 private:
  std::deque<std::string> queue_;
};

// Optional stream-socket carrier bound to the IPv4 loopback interface.
class SocketListener {
 public:
  SocketListener() {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "socket");
    const int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 ||
        ::listen(fd_, 16) < 0) {
      const int err = errno;
      ::close(fd_);
      fd_ = -1;
      throw std::system_error(err, std::generic_category(), "bind/listen");
    }
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
  }

  SocketListener(const SocketListener&) = delete;
  SocketListener& operator=(const SocketListener&) = delete;
  ~SocketListener() {
    if (fd_ >= 0) ::close(fd_);
  }

  uint16_t port() const { return port_; }

  // Accepts one connection and reads lines until the peer closes.
  std::vector<std::string> accept_and_read() {
    const int conn = ::accept(fd_, nullptr, nullptr);
    if (conn < 0) throw std::system_error(errno, std::generic_category(), "accept");
    std::string buffer;
    char chunk[4096];
    for (;;) {
      const ssize_t got = ::read(conn, chunk, sizeof chunk);
      if (got < 0) {
        const int err = errno;
        ::close(conn);
        throw std::system_error(err, std::generic_category(), "read");
      }
      if (got == 0) break;
      buffer.append(chunk, static_cast<size_t>(got));
    }
    ::close(conn);
    std::vector<std::string> lines;
    size_t start = 0;
    while (start < buffer.size()) {
      const size_t end = buffer.find('\n', start);
      if (end == std::string::npos) {
        lines.push_back(buffer.substr(start));
        break;
      }
      lines.push_back(buffer.substr(start, end - start));
      start = end + 1;
    }
    return lines;
  }

 private:
  int fd_ = -1;
  uint16_t port_ = 0;
};

class SocketSender {
 public:
  explicit SocketSender(uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "socket");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
      const int err = errno;
      ::close(fd_);
      fd_ = -1;
      throw std::system_error(err, std::generic_category(), "connect");
    }
  }

  SocketSender(const SocketSender&) = delete;
  SocketSender& operator=(const SocketSender&) = delete;
  ~SocketSender() { close(); }

  void send(std::string_view line) {
    size_t done = 0;
    while (done < line.size()) {
      const ssize_t put = ::write(fd_, line.data() + done, line.size() - done);
      if (put < 0) throw std::system_error(errno, std::generic_category(), "write");
      done += static_cast<size_t>(put);
    }
  }

  void close() {
    if (fd_ >= 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }

 private:
  int fd_ = -1;
};

}  // namespace ldpbl
