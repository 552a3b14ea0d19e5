// Copyright 2026 The hanpivot Authors
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

#ifndef HANPIVOT_SUBPROCESS_HPP_
#define HANPIVOT_SUBPROCESS_HPP_

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <string>
#include <vector>

#include "hanpivot/errors.hpp"
#include "hanpivot/io.hpp"

namespace hanpivot {

/// Child-process translator: one sentence per UTF-8 line on stdin, one
/// translation per line on stdout, order preserving, EOF terminates.
/// The command runs under `/bin/sh -c`.
struct AdapterSpec {
  std::string command;
  double timeout_seconds = 30.0;
};

namespace detail {

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (::pipe(fds) != 0) throw IoError("pipe() failed");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fds[0] >= 0) ::close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) ::close(fds[1]);
    fds[1] = -1;
  }
};

inline void set_nonblocking(int fd) {
  const int flags = ::fcntl(fd, F_GETFL, 0);
  ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

}  // namespace detail

/// Feeds `lines` to the adapter and returns exactly lines.size() output
/// lines. Writing and reading are interleaved through poll() so a child
/// that translates as it reads cannot deadlock on full pipe buffers.
inline std::vector<std::string> run_line_adapter(const AdapterSpec& spec,
                                                 const std::vector<std::string>& lines) {
  using clock = std::chrono::steady_clock;

  // A child that stops reading early (e.g. head -n1) must surface as a
  // line-count mismatch, not kill us with SIGPIPE.
  ::signal(SIGPIPE, SIG_IGN);

  detail::Pipe to_child;
  detail::Pipe from_child;

  const pid_t pid = ::fork();
  if (pid < 0) throw IoError("fork() failed");
  if (pid == 0) {
    ::dup2(to_child.fds[0], STDIN_FILENO);
    ::dup2(from_child.fds[1], STDOUT_FILENO);
    ::close(to_child.fds[0]);
    ::close(to_child.fds[1]);
    ::close(from_child.fds[0]);
    ::close(from_child.fds[1]);
    ::execl("/bin/sh", "sh", "-c", spec.command.c_str(), nullptr);
    ::_exit(127);
  }

  to_child.close_read();
  from_child.close_write();
  detail::set_nonblocking(to_child.fds[1]);
  detail::set_nonblocking(from_child.fds[0]);

  std::string input;
  for (const std::string& line : lines) {
    input += line;
    input += '\n';
  }
  std::size_t written = 0;
  bool stdin_open = true;
  if (input.empty()) {
    to_child.close_write();
    stdin_open = false;
  }

  std::string output;
  const auto deadline =
      clock::now() + std::chrono::duration_cast<clock::duration>(
                         std::chrono::duration<double>(spec.timeout_seconds));

  auto kill_child = [&]() {
    ::kill(pid, SIGKILL);
    int status = 0;
    ::waitpid(pid, &status, 0);
  };

  bool stdout_open = true;
  while (stdout_open || stdin_open) {
    struct pollfd fds[2];
    nfds_t nfds = 0;
    int read_slot = -1, write_slot = -1;
    if (stdout_open) {
      read_slot = static_cast<int>(nfds);
      fds[nfds++] = {from_child.fds[0], POLLIN, 0};
    }
    if (stdin_open) {
      write_slot = static_cast<int>(nfds);
      fds[nfds++] = {to_child.fds[1], POLLOUT, 0};
    }

    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - clock::now());
    if (remaining.count() <= 0) {
      kill_child();
      throw AdapterError(ErrorKind::adapter_timeout,
                         "AdapterTimeout: no completion within " +
                             std::to_string(spec.timeout_seconds) + "s");
    }
    const int rc = ::poll(fds, nfds, static_cast<int>(remaining.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      kill_child();
      throw IoError("poll() failed");
    }
    if (rc == 0) continue;  // re-check the deadline

    if (write_slot >= 0 && (fds[write_slot].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (fds[write_slot].revents & (POLLERR | POLLHUP)) {
        to_child.close_write();  // child closed stdin; it may still finish
        stdin_open = false;
      } else {
        const ssize_t n = ::write(to_child.fds[1], input.data() + written,
                                  std::min<std::size_t>(input.size() - written, 65536));
        if (n < 0) {
          if (errno != EAGAIN && errno != EINTR) {
            to_child.close_write();
            stdin_open = false;
          }
        } else {
          written += static_cast<std::size_t>(n);
          if (written == input.size()) {
            to_child.close_write();
            stdin_open = false;
          }
        }
      }
    }

    if (read_slot >= 0 && (fds[read_slot].revents & (POLLIN | POLLERR | POLLHUP))) {
      char buf[65536];
      const ssize_t n = ::read(from_child.fds[0], buf, sizeof(buf));
      if (n > 0) {
        output.append(buf, static_cast<std::size_t>(n));
      } else if (n == 0) {
        stdout_open = false;
      } else if (errno != EAGAIN && errno != EINTR) {
        stdout_open = false;
      }
    }
  }

  int status = 0;
  ::waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    throw AdapterError(ErrorKind::adapter_exit,
                       "AdapterNonzeroExit: adapter exited with status " +
                           std::to_string(code));
  }

  std::vector<std::string> out_lines = split_lines(output);
  if (out_lines.size() != lines.size())
    throw AdapterError(ErrorKind::adapter_mismatch,
                       "AdapterLineCountMismatch: sent " + std::to_string(lines.size()) +
                           " lines, received " + std::to_string(out_lines.size()));
  return out_lines;
}

}  // namespace hanpivot

#endif  // HANPIVOT_SUBPROCESS_HPP_
