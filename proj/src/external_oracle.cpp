#include "monoxp/external_oracle.hpp"

#include "monoxp/errors.hpp"

#include <cerrno>
#include <charconv>
#include <chrono>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <mutex>
#include <spawn.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

extern char **environ;

namespace monoxp {

namespace {

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { std::signal(SIGPIPE, SIG_IGN); });
}

std::string errno_text() { return std::strerror(errno); }

} // namespace

std::string format_request(const Point &x) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out.push_back(',');
    const auto res = std::to_chars(buf, buf + sizeof(buf), x[i]);
    out.append(buf, res.ptr);
  }
  out.push_back('\n');
  return out;
}

std::vector<std::string> ExternalProcessOracle::shell(const std::string &command) {
  return {"/bin/sh", "-c", command};
}

ExternalProcessOracle::ExternalProcessOracle(FeatureSpace space, ClassOrder classes,
                                             std::vector<std::string> argv)
    : ClassifierBase(std::move(space), std::move(classes)), argv_(std::move(argv)) {
  if (argv_.empty()) throw SpecError("external classifier needs a command");
  ignore_sigpipe();

  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw OracleError("pipe: " + errno_text());
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw OracleError("pipe: " + errno_text());
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);

  std::vector<char *> args;
  args.reserve(argv_.size() + 1);
  for (auto &a : argv_) args.push_back(a.data());
  args.push_back(nullptr);

  const int rc = ::posix_spawnp(&pid_, args[0], &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  if (rc != 0) {
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    pid_ = -1;
    throw OracleError("cannot launch '" + argv_.front() + "': " + std::strerror(rc));
  }
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

ExternalProcessOracle::~ExternalProcessOracle() { shutdown(); }

void ExternalProcessOracle::shutdown() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ <= 0) return;
  // Closing stdin asks a well-behaved server to exit; give it a moment.
  int status = 0;
  for (int attempt = 0; attempt < 50; ++attempt) {
    if (::waitpid(pid_, &status, WNOHANG) != 0) {
      pid_ = -1;
      return;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  ::kill(pid_, SIGKILL);
  ::waitpid(pid_, &status, 0);
  pid_ = -1;
}

void ExternalProcessOracle::fail(const std::string &what) {
  broken_ = true;
  throw OracleError("external classifier '" + argv_.back() + "': " + what);
}

void ExternalProcessOracle::write_all(const std::string &data) {
  std::size_t done = 0;
  while (done < data.size()) {
    const auto n = ::write(to_child_, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail(errno == EPIPE ? "process exited mid-dialogue" : "write failed: " + errno_text());
    }
    done += static_cast<std::size_t>(n);
  }
}

std::string ExternalProcessOracle::read_line() {
  for (;;) {
    if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
      auto line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    char chunk[4096];
    const auto n = ::read(from_child_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("read failed: " + errno_text());
    }
    if (n == 0) {
      fail(buffer_.empty() ? "process exited mid-dialogue"
                           : "unterminated response '" + buffer_ + "'");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

ClassRank ExternalProcessOracle::classify(const Point &x) {
  if (broken_) throw OracleError("external classifier is unusable after an earlier failure");
  space_.validate(x);
  write_all(format_request(x));
  const auto reply = read_line();
  const auto rank = classes_.rank_of(reply);
  if (!rank) fail("unknown label '" + reply + "'");
  return *rank;
}

} // namespace monoxp
