#include "calf/remote.hpp"

#include <arpa/inet.h>
#include <csignal>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

namespace calf {

namespace {

void ignore_sigpipe() {
    static bool done = false;
    if (!done) {
        std::signal(SIGPIPE, SIG_IGN);
        done = true;
    }
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

[[noreturn]] void throw_errno(const std::string& what) {
    throw TransportError(what + ": " + std::strerror(errno));
}

}  // namespace

std::string oracle_mode_name(OracleMode m) {
    return m == OracleMode::bit ? "bit" : "rational";
}

std::unique_ptr<RemoteSession> RemoteSession::spawn(const std::string& command,
                                                    std::chrono::milliseconds timeout) {
    ignore_sigpipe();
    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
        throw_errno("pipe");
    pid_t pid = fork();
    if (pid < 0)
        throw_errno("fork");
    if (pid == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);

    auto session = std::unique_ptr<RemoteSession>(new RemoteSession());
    session->read_fd_ = from_child[0];
    session->write_fd_ = to_child[1];
    session->child_pid_ = pid;
    session->timeout_ = timeout;
    session->handshake();
    return session;
}

std::unique_ptr<RemoteSession> RemoteSession::connect(const std::string& host, int port,
                                                      std::chrono::milliseconds timeout) {
    ignore_sigpipe();
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* results = nullptr;
    int rc = getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &results);
    if (rc != 0)
        throw SetupError("cannot resolve " + host + ": " + gai_strerror(rc));
    int fd = -1;
    for (addrinfo* ai = results; ai != nullptr; ai = ai->ai_next) {
        fd = socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0)
            continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0)
            break;
        close(fd);
        fd = -1;
    }
    freeaddrinfo(results);
    if (fd < 0)
        throw SetupError("cannot connect to " + host + ":" + std::to_string(port));

    auto session = std::unique_ptr<RemoteSession>(new RemoteSession());
    session->read_fd_ = fd;
    session->write_fd_ = fd;
    session->timeout_ = timeout;
    session->handshake();
    return session;
}

RemoteSession::~RemoteSession() {
    try {
        bye();
    } catch (...) {
    }
    if (read_fd_ >= 0)
        close(read_fd_);
    if (write_fd_ >= 0 && write_fd_ != read_fd_)
        close(write_fd_);
    if (child_pid_ > 0) {
        // BYE plus stdin EOF makes a well-behaved oracle exit promptly;
        // terminate anything that lingers.
        pid_t pid = static_cast<pid_t>(child_pid_);
        int status = 0;
        bool reaped = false;
        for (int attempt = 0; attempt < 50 && !reaped; ++attempt) {
            if (waitpid(pid, &status, WNOHANG) == pid)
                reaped = true;
            else
                poll(nullptr, 0, 10);
        }
        if (!reaped) {
            kill(pid, SIGTERM);
            waitpid(pid, &status, 0);
        }
    }
}

void RemoteSession::send_line(const std::string& line) {
    std::string framed = line + "\n";
    std::size_t off = 0;
    while (off < framed.size()) {
        ssize_t n = write(write_fd_, framed.data() + off, framed.size() - off);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw_errno("write to oracle");
        }
        off += static_cast<std::size_t>(n);
    }
}

std::string RemoteSession::read_line() {
    for (;;) {
        auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            return line;
        }
        pollfd pfd{read_fd_, POLLIN, 0};
        int rc = poll(&pfd, 1, static_cast<int>(timeout_.count()));
        if (rc < 0) {
            if (errno == EINTR)
                continue;
            throw_errno("poll");
        }
        if (rc == 0)
            throw TransportError("oracle reply timed out after " +
                                 std::to_string(timeout_.count()) + " ms");
        char chunk[4096];
        ssize_t n = read(read_fd_, chunk, sizeof chunk);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw_errno("read from oracle");
        }
        if (n == 0) {
            // Peer hung up. For a spawned process this usually means it
            // died; give it a moment to be reapable and report its status.
            if (child_pid_ > 0) {
                int status = 0;
                for (int attempt = 0; attempt < 200; ++attempt) {
                    pid_t done = waitpid(static_cast<pid_t>(child_pid_), &status, WNOHANG);
                    if (done == child_pid_) {
                        child_pid_ = -1;
                        if (WIFEXITED(status))
                            throw SetupError("oracle process exited with status " +
                                             std::to_string(WEXITSTATUS(status)) +
                                             " before replying");
                        throw SetupError("oracle process terminated by signal before replying");
                    }
                    if (done < 0)
                        break;
                    poll(nullptr, 0, 10);
                }
            }
            throw TransportError("oracle closed the connection");
        }
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

void RemoteSession::handshake() {
    std::string banner;
    try {
        banner = read_line();
    } catch (const TransportError& e) {
        throw SetupError(std::string("no banner from oracle: ") + e.what());
    }
    auto toks = split_tokens(banner);
    if (toks.size() != 3 || toks[0] != "calf-oracle" || toks[1] != "1")
        throw SetupError("unexpected banner '" + banner + "'");
    if (toks[2] == "bit")
        mode_ = OracleMode::bit;
    else if (toks[2] == "rational")
        mode_ = OracleMode::rational;
    else
        throw SetupError("unknown oracle mode '" + toks[2] + "'");

    std::string alpha_line = read_line();
    auto atoks = split_tokens(alpha_line);
    if (atoks.empty() || atoks[0] != "alphabet:")
        throw SetupError("expected 'alphabet:' line, got '" + alpha_line + "'");
    atoks.erase(atoks.begin());
    try {
        alphabet_ = Alphabet(atoks);
    } catch (const InputError& e) {
        throw SetupError(std::string("bad announced alphabet: ") + e.what());
    }
}

std::string RemoteSession::ask(const std::string& serialized_word) {
    send_line("Q " + serialized_word);
    ++wire_queries_;
    return read_line();
}

void RemoteSession::bye() {
    if (said_bye_ || write_fd_ < 0)
        return;
    said_bye_ = true;
    send_line("BYE");
}

void verify_alphabet(const RemoteSession& session, const Alphabet& expected) {
    if (session.alphabet() != expected) {
        std::string got;
        for (const auto& t : session.alphabet().tokens())
            got += (got.empty() ? "" : " ") + t;
        std::string want;
        for (const auto& t : expected.tokens())
            want += (want.empty() ? "" : " ") + t;
        throw SetupError("oracle announced alphabet '" + got + "' but '" + want +
                         "' was configured");
    }
}

RemoteMembership::RemoteMembership(RemoteSession& session) : session_(&session) {
    if (session.mode() != OracleMode::bit)
        throw SetupError("oracle speaks rational mode, bit mode needed");
}

bool RemoteMembership::query(const Word& w) {
    std::string reply = session_->ask(format_word(session_->alphabet(), w));
    if (reply == "1")
        return true;
    if (reply == "0")
        return false;
    throw TransportError("malformed bit reply '" + reply + "'");
}

RemoteWeight::RemoteWeight(RemoteSession& session) : session_(&session) {
    if (session.mode() != OracleMode::rational)
        throw SetupError("oracle speaks bit mode, rational mode needed");
}

Rational RemoteWeight::query(const Word& w) {
    std::string reply = session_->ask(format_word(session_->alphabet(), w));
    auto toks = split_tokens(reply);
    if (toks.size() != 1)
        throw TransportError("malformed rational reply '" + reply + "'");
    try {
        return parse_rational(toks[0]);
    } catch (const InputError&) {
        throw TransportError("malformed rational reply '" + reply + "'");
    }
}

namespace {

template <typename Machine, typename Answer>
void serve_loop(const Machine& machine, OracleMode mode, std::istream& in, std::ostream& out,
                Answer&& answer) {
    out << "calf-oracle 1 " << oracle_mode_name(mode) << '\n';
    out << "alphabet:";
    for (const std::string& t : machine.alphabet.tokens())
        out << ' ' << t;
    out << '\n' << std::flush;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto toks = split_tokens(line);
        if (toks.empty())
            continue;
        if (toks[0] == "BYE")
            return;
        if (toks[0] != "Q")
            throw TransportError("unknown command '" + line + "'");
        std::string rest = line.substr(line.find('Q') + 1);
        Word w = parse_word(machine.alphabet, rest);
        out << answer(w) << '\n' << std::flush;
    }
}

}  // namespace

void serve(const Dfa& d, std::istream& in, std::ostream& out) {
    serve_loop(d, OracleMode::bit, in, out,
               [&](const Word& w) { return eval(d, w) ? "1" : "0"; });
}

void serve(const Wfa& w, std::istream& in, std::ostream& out) {
    serve_loop(w, OracleMode::rational, in, out,
               [&](const Word& word) { return format_rational(eval(w, word)); });
}

namespace {

class FdStreambuf : public std::streambuf {
public:
    explicit FdStreambuf(int fd) : fd_(fd) {}

protected:
    int underflow() override {
        ssize_t n = read(fd_, in_, sizeof in_);
        if (n <= 0)
            return traits_type::eof();
        setg(in_, in_, in_ + n);
        return traits_type::to_int_type(*gptr());
    }
    int overflow(int c) override {
        if (c != traits_type::eof()) {
            char ch = static_cast<char>(c);
            if (write(fd_, &ch, 1) != 1)
                return traits_type::eof();
        }
        return c;
    }
    std::streamsize xsputn(const char* s, std::streamsize n) override {
        std::streamsize off = 0;
        while (off < n) {
            ssize_t w = write(fd_, s + off, static_cast<std::size_t>(n - off));
            if (w <= 0)
                return off;
            off += w;
        }
        return off;
    }

private:
    int fd_;
    char in_[4096];
};

template <typename Machine>
void serve_tcp_impl(const Machine& machine, int port) {
    ignore_sigpipe();
    int listener = socket(AF_INET, SOCK_STREAM, 0);
    if (listener < 0)
        throw_errno("socket");
    int yes = 1;
    setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    if (bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
        close(listener);
        throw_errno("bind");
    }
    if (listen(listener, 1) != 0) {
        close(listener);
        throw_errno("listen");
    }
    int conn = accept(listener, nullptr, nullptr);
    close(listener);
    if (conn < 0)
        throw_errno("accept");
    {
        FdStreambuf buf_in(conn), buf_out(conn);
        std::istream in(&buf_in);
        std::ostream out(&buf_out);
        serve(machine, in, out);
    }
    close(conn);
}

}  // namespace

void serve_tcp_once(const Dfa& d, int port) {
    serve_tcp_impl(d, port);
}

void serve_tcp_once(const Wfa& w, int port) {
    serve_tcp_impl(w, port);
}

}  // namespace calf
