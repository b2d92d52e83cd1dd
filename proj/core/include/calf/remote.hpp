// remote.hpp -- black-box membership oracles over pipes and TCP.
//
// Wire protocol, newline-delimited UTF-8, strict request/response:
//   oracle -> learner on connect:  calf-oracle 1 <bit|rational>
//                                  alphabet: a b ...
//   learner -> oracle:             Q <word>        (e.g. "Q a b a", "Q eps")
//   oracle -> learner:             1 | 0           (bit mode)
//                                  p | p/q         (rational mode)
//   learner -> oracle on shutdown: BYE
//
// One session means one in-flight request; callers serialize access. A
// timeout is an error, never a guessed answer.

#pragma once

#include <chrono>
#include <iosfwd>
#include <memory>
#include <string>

#include "calf/oracle.hpp"
#include "calf/wfa.hpp"

namespace calf {

enum class OracleMode { bit, rational };

std::string oracle_mode_name(OracleMode m);

class RemoteSession {
public:
    static constexpr std::chrono::milliseconds default_timeout{10000};

    // Spawns `command` via the shell with the protocol on its stdin/stdout.
    static std::unique_ptr<RemoteSession> spawn(const std::string& command,
                                                std::chrono::milliseconds timeout =
                                                    default_timeout);
    static std::unique_ptr<RemoteSession> connect(const std::string& host, int port,
                                                  std::chrono::milliseconds timeout =
                                                      default_timeout);

    ~RemoteSession();
    RemoteSession(const RemoteSession&) = delete;
    RemoteSession& operator=(const RemoteSession&) = delete;

    OracleMode mode() const { return mode_; }
    const Alphabet& alphabet() const { return alphabet_; }
    std::uint64_t wire_queries() const { return wire_queries_; }

    // Sends "Q <word>" and returns the raw reply line.
    std::string ask(const std::string& serialized_word);
    void bye();

private:
    RemoteSession() = default;
    void handshake();
    void send_line(const std::string& line);
    std::string read_line();

    int read_fd_ = -1;
    int write_fd_ = -1;
    long child_pid_ = -1;
    std::chrono::milliseconds timeout_ = default_timeout;
    OracleMode mode_ = OracleMode::bit;
    Alphabet alphabet_;
    std::string buffer_;
    std::uint64_t wire_queries_ = 0;
    bool said_bye_ = false;
};

// Checks the announced alphabet against an expected one; throws SetupError
// on any difference.
void verify_alphabet(const RemoteSession& session, const Alphabet& expected);

class RemoteMembership final : public MembershipOracle {
public:
    explicit RemoteMembership(RemoteSession& session);
    bool query(const Word& w) override;
    const Alphabet& alphabet() const override { return session_->alphabet(); }

private:
    RemoteSession* session_;
};

class RemoteWeight final : public WeightOracle {
public:
    explicit RemoteWeight(RemoteSession& session);
    Rational query(const Word& w) override;
    const Alphabet& alphabet() const override { return session_->alphabet(); }

private:
    RemoteSession* session_;
};

// Oracle side of the protocol: answers queries for the given machine until
// BYE or end of input. Used by the `serve` tool and by tests.
void serve(const Dfa& d, std::istream& in, std::ostream& out);
void serve(const Wfa& w, std::istream& in, std::ostream& out);

// Listens on the port, accepts a single connection, serves it, returns.
void serve_tcp_once(const Dfa& d, int port);
void serve_tcp_once(const Wfa& w, int port);

}  // namespace calf
