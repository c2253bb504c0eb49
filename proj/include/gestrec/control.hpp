#pragma once
#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "gestrec/errors.hpp"

namespace gestrec {

// Ordered robot gesture names, index-aligned with database class labels.
using GestureTable = std::vector<std::string>;

// class_idx is 1-based; yields e.g. "0,0,1,0,0,0\n" for class 3 of 6.
std::string encode_control(int class_idx, int n);

// Parses a one-hot line and returns the 1-based index of the single 1.
int decode_control(const std::string& message);

// Connects, sends one encoded vector, returns the single reply line
// (without the newline). timeout covers connect and the reply read.
std::string send_control(const std::string& host, int port, int class_idx, int n,
                         double timeout_seconds = 5.0);

// Mock robot: accepts connections, answers every received line with
// "ACK <gesture>" or "ERR <reason>" and logs the performed gesture.
class RobotServer {
public:
    RobotServer(int port, GestureTable table);
    ~RobotServer();

    RobotServer(const RobotServer&) = delete;
    RobotServer& operator=(const RobotServer&) = delete;

    void start();
    void stop();
    // Blocks until stop(); convenience for the CLI server mode.
    void run();

    int port() const { return port_; } // actual port once started (0 binds ephemeral)

private:
    void accept_loop();
    void handle_connection(int fd);

    int port_;
    GestureTable table_;
    int listen_fd_ = -1;
    std::atomic<bool> running_{false};
    std::thread accept_thread_;
    std::vector<std::thread> workers_;
};

} // namespace gestrec
