#pragma once

#include <optional>
#include <string>
#include <vector>

#include <sys/types.h>

namespace veriscale {

// A child process spoken to over stdin/stdout pipes, one line at a time.
// Lines are written with a trailing '\n'; reads block until a full line,
// EOF, or the deadline. Used for line-oriented JSON protocols.
class LineProcess {
 public:
  explicit LineProcess(std::vector<std::string> command);
  ~LineProcess();

  LineProcess(const LineProcess&) = delete;
  LineProcess& operator=(const LineProcess&) = delete;

  void start();                 // throws ClientError if spawn fails
  [[nodiscard]] bool running() const;
  void write_line(const std::string& line);
  // nullopt = timeout elapsed with no complete line.
  std::optional<std::string> read_line(int timeout_ms);
  void kill_now();              // SIGKILL + reap; safe to call repeatedly

  // One request/response exchange; respawns a dead child first.
  // nullopt = timeout (the child is killed so the next call restarts clean).
  std::optional<std::string> exchange(const std::string& line, int timeout_ms);

 private:
  std::vector<std::string> command_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// Runs `command`, feeding it `input` on stdin, and returns captured stdout.
// Throws ClientError on spawn failure or non-zero exit.
std::string run_capture(const std::vector<std::string>& command, const std::string& input,
                        int timeout_ms = 120000);

}  // namespace veriscale
