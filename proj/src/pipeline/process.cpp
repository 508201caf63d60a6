// Copyright 2026 The GSC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Child-process transport and the matching server loop (POSIX).

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "common/error.hpp"
#include "pipeline/adapter.hpp"

namespace gsc::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

[[noreturn]] void SysFail(ErrorCode code, const std::string& what) {
  Fail(code, what + ": " + std::strerror(errno));
}

// Waits until `fd` is ready for `events` or the deadline passes.
bool WaitFd(int fd, short events, Clock::time_point deadline) {
  while (true) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) return false;
    pollfd p{fd, events, 0};
    int r = ::poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 1 << 30)));
    if (r > 0) return true;
    if (r < 0 && errno != EINTR) SysFail(ErrorCode::kIo, "poll");
  }
}

class ProcessTransport : public Transport {
 public:
  explicit ProcessTransport(const std::vector<std::string>& argv) : name_(argv.at(0)) {
    int sv[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0) {
      SysFail(ErrorCode::kAdapter, "socketpair");
    }
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    pid_ = ::fork();
    if (pid_ < 0) SysFail(ErrorCode::kAdapter, "fork");
    if (pid_ == 0) {
      ::dup2(sv[1], STDIN_FILENO);
      ::dup2(sv[1], STDOUT_FILENO);
      ::execvp(args[0], args.data());
      _exit(127);
    }
    ::close(sv[1]);
    fd_ = sv[0];
  }

  ~ProcessTransport() override { Close(); }

  Bytes RoundTrip(const Bytes& request) override {
    if (fd_ < 0) Fail(ErrorCode::kAdapter, "adapter " + name_ + " is closed");
    const auto deadline = Clock::now() + std::chrono::milliseconds(AdapterTimeoutMs());
    std::size_t sent = 0;
    while (sent < request.size()) {
      if (!WaitFd(fd_, POLLOUT, deadline)) TimedOut();
      ssize_t n = ::send(fd_, request.data() + sent, request.size() - sent, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        Died("write");
      }
      sent += static_cast<std::size_t>(n);
    }
    return ReadFrame([&](std::uint8_t* buf, std::size_t len) {
      std::size_t got = 0;
      while (got < len) {
        if (!WaitFd(fd_, POLLIN, deadline)) TimedOut();
        ssize_t n = ::recv(fd_, buf + got, len - got, 0);
        if (n == 0) Died("read");
        if (n < 0) {
          if (errno == EINTR || errno == EAGAIN) continue;
          Died("read");
        }
        got += static_cast<std::size_t>(n);
      }
    });
  }

  void Close() override {
    if (fd_ >= 0) {
      ::close(fd_);
      fd_ = -1;
    }
    if (pid_ > 0) {
      // Give the child a moment to exit on its own after EOF.
      for (int i = 0; i < 200; ++i) {
        if (::waitpid(pid_, nullptr, WNOHANG) != 0) {
          pid_ = -1;
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
      pid_ = -1;
    }
  }

 private:
  [[noreturn]] void TimedOut() {
    Kill();
    Fail(ErrorCode::kTimeout, "adapter " + name_ + " did not answer within " +
                                  std::to_string(AdapterTimeoutMs()) + " ms");
  }

  [[noreturn]] void Died(const char* during) {
    int status = 0;
    std::string detail = "connection lost";
    if (fd_ >= 0) {
      ::close(fd_);
      fd_ = -1;
    }
    if (pid_ > 0 && ::waitpid(pid_, &status, 0) == pid_) {
      pid_ = -1;
      if (WIFEXITED(status)) detail = "exited with status " + std::to_string(WEXITSTATUS(status));
      if (WIFSIGNALED(status)) detail = "killed by signal " + std::to_string(WTERMSIG(status));
    }
    Fail(ErrorCode::kAdapter, "adapter " + name_ + " " + detail + " during " + during);
  }

  void Kill() {
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
      pid_ = -1;
    }
    if (fd_ >= 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }

  std::string name_;
  pid_t pid_ = -1;
  int fd_ = -1;
};

struct EndOfInput {};

bool ReadExact(int fd, std::uint8_t* buf, std::size_t len, bool eof_ok) {
  std::size_t got = 0;
  while (got < len) {
    ssize_t n = ::read(fd, buf + got, len - got);
    if (n == 0) {
      if (eof_ok && got == 0) return false;
      Fail(ErrorCode::kProtocol, "adapter protocol: input ended inside a frame");
    }
    if (n < 0) {
      if (errno == EINTR) continue;
      SysFail(ErrorCode::kIo, "read");
    }
    got += static_cast<std::size_t>(n);
  }
  return true;
}

void WriteAll(int fd, const Bytes& data) {
  std::size_t put = 0;
  while (put < data.size()) {
    ssize_t n = ::write(fd, data.data() + put, data.size() - put);
    if (n < 0) {
      if (errno == EINTR) continue;
      SysFail(ErrorCode::kIo, "write");
    }
    put += static_cast<std::size_t>(n);
  }
}

}  // namespace

int AdapterTimeoutMs() {
  if (const char* env = std::getenv("GSC_ADAPTER_TIMEOUT_MS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 1L << 30));
  }
  return 60000;
}

std::unique_ptr<Transport> SpawnProcessTransport(const std::vector<std::string>& argv) {
  if (argv.empty()) Fail(ErrorCode::kInvalidArgument, "empty adapter command");
  return std::make_unique<ProcessTransport>(argv);
}

int ServeStream(AdapterServer& server, int in_fd, int out_fd) {
  std::signal(SIGPIPE, SIG_IGN);
  while (true) {
    Bytes frame;
    try {
      bool first = true;
      frame = ReadFrame([&](std::uint8_t* buf, std::size_t len) {
        if (!ReadExact(in_fd, buf, len, first)) throw EndOfInput{};
        first = false;
      });
    } catch (const EndOfInput&) {
      return 0;
    } catch (const Error& e) {
      Message err;
      err.header = {{"op", "error"}, {"request_id", 0}, {"code", ErrorCodeName(e.code())},
                    {"message", e.what()}};
      try {
        WriteAll(out_fd, EncodeMessage(err));
      } catch (const Error&) {
        // The peer is gone; nothing left to report to.
      }
      return 2;
    }
    Bytes reply = server.HandleFrame(frame);
    try {
      WriteAll(out_fd, reply);
    } catch (const Error&) {
      return 1;
    }
    Message m = DecodeMessage(reply);
    if (m.header["op"] == "shutdown") return 0;
  }
}

}  // namespace gsc::pipeline
