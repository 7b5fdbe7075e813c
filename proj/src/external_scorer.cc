//
// Copyright 2026 The Bodega Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <fcntl.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <thread>

#include "bodega/errors.h"
#include "bodega/scoring.h"
#include "json.hpp"

namespace bodega {

namespace {

void WriteAll(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t written = ::write(fd, data.data(), data.size());
    if (written < 0) {
      if (errno == EINTR) continue;
      throw ScorerError(std::string("cannot write to scorer process: ") +
                        std::strerror(errno));
    }
    data.remove_prefix(static_cast<size_t>(written));
  }
}

}  // namespace

ExternalSemanticScorer::ExternalSemanticScorer(const std::string& command) {
  // A dead child must surface as EPIPE, not kill the harness.
  ::signal(SIGPIPE, SIG_IGN);
  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) {
    throw ScorerError("pipe failed");
  }
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw ScorerError("pipe failed");
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
      ::close(fd);
    }
    throw ScorerError("fork failed");
  }
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  pid_ = pid;
  to_child_ = to_child[1];
  from_child_ = from_child[0];
}

ExternalSemanticScorer::~ExternalSemanticScorer() { Shutdown(); }

void ExternalSemanticScorer::Shutdown() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ <= 0) return;
  // Closing stdin asks the child to exit; give it a moment before killing.
  for (int attempt = 0; attempt < 200; ++attempt) {
    if (::waitpid(pid_, nullptr, WNOHANG) == pid_) {
      pid_ = -1;
      return;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  ::kill(pid_, SIGKILL);
  ::waitpid(pid_, nullptr, 0);
  pid_ = -1;
}

double ExternalSemanticScorer::RawScore(std::string_view a,
                                        std::string_view b) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (broken_) throw ScorerError("scorer process is no longer usable");
  try {
    const nlohmann::json request = {{"a", std::string(a)},
                                    {"b", std::string(b)}};
    WriteAll(to_child_,
             request.dump(-1, ' ', false,
                          nlohmann::json::error_handler_t::replace) +
                 "\n");
    size_t newline;
    while ((newline = buffer_.find('\n')) == std::string::npos) {
      char chunk[4096];
      const ssize_t got = ::read(from_child_, chunk, sizeof chunk);
      if (got < 0 && errno == EINTR) continue;
      if (got <= 0) throw ScorerError("scorer process exited");
      buffer_.append(chunk, static_cast<size_t>(got));
    }
    const std::string line = buffer_.substr(0, newline);
    buffer_.erase(0, newline + 1);
    const nlohmann::json response = nlohmann::json::parse(line, nullptr, false);
    if (response.is_discarded() || !response.is_object() ||
        !response.contains("score") || !response["score"].is_number()) {
      throw ScorerError("malformed scorer response: " + line);
    }
    const double score = response["score"].get<double>();
    if (!std::isfinite(score)) {
      throw ScorerError("non-finite scorer response: " + line);
    }
    return score;
  } catch (const ScorerError&) {
    broken_ = true;
    throw;
  }
}

double ExternalSemanticScorer::Score(std::string_view a, std::string_view b) {
  return std::clamp(RawScore(a, b), 0.0, 1.0);
}

}  // namespace bodega
