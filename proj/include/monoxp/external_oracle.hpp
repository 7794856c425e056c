#pragma once

#include "monoxp/classifiers.hpp"

#include <string>
#include <sys/types.h>
#include <vector>

namespace monoxp {

/// Classifier living in a child process, queried over its stdin/stdout.
///
/// Wire protocol (UTF-8, one exchange per line):
///   request   v1,v2,...,vN\n     decimal numbers, '.' as decimal separator
///   response  LABEL\n            one of the declared class labels
///
/// The feature space and class order come from the caller (the sidecar
/// spec), never from the process. Any malformed reply, unknown label or
/// premature exit raises OracleError and poisons the instance.
///
/// Writing to a dead child must not kill the host, so constructing one of
/// these sets SIGPIPE to SIG_IGN process-wide.
class ExternalProcessOracle final : public ClassifierBase {
public:
  ExternalProcessOracle(FeatureSpace space, ClassOrder classes, std::vector<std::string> argv);
  ~ExternalProcessOracle() override;

  ExternalProcessOracle(const ExternalProcessOracle &) = delete;
  ExternalProcessOracle &operator=(const ExternalProcessOracle &) = delete;

  ClassRank classify(const Point &x) override;

  /// argv for running `command` through /bin/sh -c.
  static std::vector<std::string> shell(const std::string &command);

  [[nodiscard]] pid_t pid() const { return pid_; }

private:
  void write_all(const std::string &data);
  std::string read_line();
  [[noreturn]] void fail(const std::string &what);
  void shutdown();

  std::vector<std::string> argv_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  bool broken_ = false;
};

/// Encodes one request line (including the trailing newline).
std::string format_request(const Point &x);

} // namespace monoxp
