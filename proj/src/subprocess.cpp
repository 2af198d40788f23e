#include "veriscale/subprocess.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <mutex>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "veriscale/errors.hpp"

namespace veriscale {

namespace {

std::vector<char*> argv_of(std::vector<std::string>& command) {
  std::vector<char*> argv;
  argv.reserve(command.size() + 1);
  for (auto& part : command) argv.push_back(part.data());
  argv.push_back(nullptr);
  return argv;
}

int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

LineProcess::LineProcess(std::vector<std::string> command) : command_(std::move(command)) {
  if (command_.empty()) throw ClientError("empty command line");
}

LineProcess::~LineProcess() { kill_now(); }

bool LineProcess::running() const { return pid_ > 0; }

void LineProcess::start() {
  // A child may die between our liveness check and the write; without this
  // the resulting SIGPIPE would kill the whole process instead of surfacing
  // as a ClientError from write_line.
  static std::once_flag sigpipe_once;
  std::call_once(sigpipe_once, [] { signal(SIGPIPE, SIG_IGN); });
  kill_now();
  buffer_.clear();
  int in_pipe[2];   // parent -> child
  int out_pipe[2];  // child -> parent
  if (pipe(in_pipe) != 0) throw ClientError("pipe() failed: " + std::string(strerror(errno)));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw ClientError("pipe() failed: " + std::string(strerror(errno)));
  }
  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw ClientError("fork() failed: " + std::string(strerror(errno)));
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    std::vector<std::string> command = command_;
    execvp(command[0].c_str(), argv_of(command).data());
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  // Non-blocking reads let the poll loop own the deadline.
  fcntl(from_child_, F_SETFL, O_NONBLOCK);
  pid_ = pid;
}

void LineProcess::kill_now() {
  if (pid_ > 0) {
    kill(pid_, SIGKILL);
    int status = 0;
    waitpid(pid_, &status, 0);
    pid_ = -1;
  }
  if (to_child_ >= 0) {
    close(to_child_);
    to_child_ = -1;
  }
  if (from_child_ >= 0) {
    close(from_child_);
    from_child_ = -1;
  }
  buffer_.clear();
}

void LineProcess::write_line(const std::string& line) {
  if (pid_ <= 0) throw ClientError("process not running");
  std::string payload = line;
  payload.push_back('\n');
  size_t off = 0;
  while (off < payload.size()) {
    ssize_t n = write(to_child_, payload.data() + off, payload.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      kill_now();
      throw ClientError("write to child failed: " + std::string(strerror(errno)));
    }
    off += static_cast<size_t>(n);
  }
}

std::optional<std::string> LineProcess::read_line(int timeout_ms) {
  if (pid_ <= 0) throw ClientError("process not running");
  int64_t deadline = now_ms() + timeout_ms;
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    int64_t remain = deadline - now_ms();
    if (remain <= 0) return std::nullopt;
    pollfd pfd{from_child_, POLLIN, 0};
    int rc = poll(&pfd, 1, static_cast<int>(remain));
    if (rc < 0) {
      if (errno == EINTR) continue;
      kill_now();
      throw ClientError("poll failed: " + std::string(strerror(errno)));
    }
    if (rc == 0) return std::nullopt;
    char chunk[4096];
    ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n > 0) {
      buffer_.append(chunk, static_cast<size_t>(n));
      continue;
    }
    if (n == 0) {
      // EOF with no newline: treat any residue as a final line.
      if (!buffer_.empty()) {
        std::string line = std::move(buffer_);
        buffer_.clear();
        return line;
      }
      kill_now();
      throw ClientError("child closed stdout");
    }
    if (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR) continue;
    kill_now();
    throw ClientError("read from child failed: " + std::string(strerror(errno)));
  }
}

std::optional<std::string> LineProcess::exchange(const std::string& line, int timeout_ms) {
  if (!running()) start();
  write_line(line);
  auto reply = read_line(timeout_ms);
  if (!reply) kill_now();  // poisoned stream — restart on next use
  return reply;
}

std::string run_capture(const std::vector<std::string>& command, const std::string& input,
                        int timeout_ms) {
  // One request line in, one reply line out — the shape every line-JSON
  // helper in this codebase speaks.
  LineProcess proc(command);
  proc.start();
  proc.write_line((!input.empty() && input.back() == '\n')
                      ? input.substr(0, input.size() - 1)
                      : input);
  auto reply = proc.read_line(timeout_ms);
  proc.kill_now();
  if (!reply) throw ClientError("subprocess timed out");
  return *reply;
}

}  // namespace veriscale
