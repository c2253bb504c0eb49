#include "gestrec/control.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <mutex>

namespace gestrec {

std::string encode_control(int class_idx, int n) {
    if (n < 1) throw ArgumentError("encode_control: class count must be >= 1");
    if (class_idx < 1 || class_idx > n)
        throw ArgumentError("encode_control: class index out of range");
    std::string out;
    for (int i = 1; i <= n; ++i) {
        if (i > 1) out.push_back(',');
        out.push_back(i == class_idx ? '1' : '0');
    }
    out.push_back('\n');
    return out;
}

int decode_control(const std::string& message) {
    std::string line = message;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    if (line.empty()) throw ProtocolError("empty message");

    int one_idx = 0, idx = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        std::string tok = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        ++idx;
        long v;
        try {
            std::size_t used = 0;
            v = std::stol(tok, &used);
            if (used != tok.size() || tok.empty()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ProtocolError("token '" + tok + "' is not an integer");
        }
        if (v == 1) {
            if (one_idx != 0) throw ProtocolError("not one-hot");
            one_idx = idx;
        } else if (v != 0) {
            throw ProtocolError("not one-hot");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (one_idx == 0) throw ProtocolError("not one-hot");
    return one_idx;
}

namespace {

struct Fd {
    int fd = -1;
    ~Fd() {
        if (fd >= 0) ::close(fd);
    }
};

void set_timeout(int fd, double seconds) {
    timeval tv;
    tv.tv_sec = static_cast<long>(seconds);
    tv.tv_usec = static_cast<long>((seconds - tv.tv_sec) * 1e6);
    setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
}

// Reads one newline-terminated line; empty string on orderly shutdown.
std::string read_line(int fd) {
    std::string line;
    char c;
    for (;;) {
        ssize_t n = ::recv(fd, &c, 1, 0);
        if (n == 0) return line;
        if (n < 0) throw TransportError(std::string("recv: ") + std::strerror(errno));
        line.push_back(c);
        if (c == '\n') return line;
    }
}

std::mutex log_mutex;

} // namespace

std::string send_control(const std::string& host, int port, int class_idx, int n,
                         double timeout_seconds) {
    std::string payload = encode_control(class_idx, n); // validate before any I/O

    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    std::string port_str = std::to_string(port);
    int rc = ::getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res);
    if (rc != 0) throw TransportError("resolve " + host + ": " + gai_strerror(rc));

    Fd sock;
    std::string connect_err = "no addresses";
    for (addrinfo* ai = res; ai; ai = ai->ai_next) {
        sock.fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (sock.fd < 0) continue;
        set_timeout(sock.fd, timeout_seconds);
        if (::connect(sock.fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        connect_err = std::strerror(errno);
        ::close(sock.fd);
        sock.fd = -1;
    }
    ::freeaddrinfo(res);
    if (sock.fd < 0) throw TransportError("connect " + host + ":" + port_str + ": " + connect_err);

    if (::send(sock.fd, payload.data(), payload.size(), 0) != static_cast<ssize_t>(payload.size()))
        throw TransportError(std::string("send: ") + std::strerror(errno));

    std::string reply = read_line(sock.fd);
    if (reply.empty()) throw TransportError("server closed without replying");
    while (!reply.empty() && (reply.back() == '\n' || reply.back() == '\r')) reply.pop_back();
    return reply;
}

RobotServer::RobotServer(int port, GestureTable table) : port_(port), table_(std::move(table)) {
    if (table_.empty()) throw ArgumentError("RobotServer: gesture table is empty");
}

RobotServer::~RobotServer() { stop(); }

void RobotServer::start() {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw TransportError(std::string("socket: ") + std::strerror(errno));
    int on = 1;
    setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &on, sizeof(on));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(static_cast<std::uint16_t>(port_));
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        std::string err = std::strerror(errno);
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw TransportError("bind port " + std::to_string(port_) + ": " + err);
    }
    if (port_ == 0) {
        socklen_t len = sizeof(addr);
        ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
        port_ = ntohs(addr.sin_port);
    }
    if (::listen(listen_fd_, 8) < 0) {
        std::string err = std::strerror(errno);
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw TransportError("listen: " + err);
    }

    running_ = true;
    accept_thread_ = std::thread([this] { accept_loop(); });
}

void RobotServer::stop() {
    if (!running_.exchange(false)) return;
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    listen_fd_ = -1;
    if (accept_thread_.joinable()) accept_thread_.join();
    for (auto& t : workers_)
        if (t.joinable()) t.join();
    workers_.clear();
}

void RobotServer::run() {
    if (accept_thread_.joinable()) accept_thread_.join();
}

void RobotServer::accept_loop() {
    while (running_) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (!running_) break;
            continue;
        }
        workers_.emplace_back([this, fd] { handle_connection(fd); });
    }
}

void RobotServer::handle_connection(int fd) {
    Fd guard{fd};
    try {
        for (;;) {
            std::string line = read_line(fd);
            if (line.empty()) break; // peer closed
            std::string reply;
            try {
                int idx = decode_control(line);
                if (idx > static_cast<int>(table_.size()))
                    throw ProtocolError("index " + std::to_string(idx) + " beyond gesture table");
                const std::string& name = table_[idx - 1];
                {
                    std::lock_guard<std::mutex> lock(log_mutex);
                    std::fprintf(stderr, "PERFORM %s\n", name.c_str());
                }
                reply = "ACK " + name + "\n";
            } catch (const ProtocolError& e) {
                reply = std::string("ERR ") + e.what() + "\n";
            }
            if (::send(fd, reply.data(), reply.size(), 0) != static_cast<ssize_t>(reply.size()))
                break;
        }
    } catch (const TransportError&) {
        // connection dropped; nothing to do
    }
}

} // namespace gestrec
