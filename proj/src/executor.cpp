// Copyright 2026 The semiforge Authors.
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

#include "semiforge/executor.hpp"

#include <fcntl.h>
#include <poll.h>
#include <sched.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <utility>
#include <vector>

#include "semiforge/error.hpp"

namespace semiforge::exec {
namespace fs = std::filesystem;
namespace {

constexpr std::string_view kCallShim =
#include "semiforge/assets/call_shim.inc"
    ;

std::string replace_all(std::string text, std::string_view from,
                        std::string_view to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

std::string resolve_interpreter(const std::string& name) {
  if (name.empty()) throw Error(ErrorKind::kInterpreterMissing, "empty path");
  if (name.find('/') != std::string::npos) {
    if (::access(name.c_str(), X_OK) == 0) return name;
    throw Error(ErrorKind::kInterpreterMissing, name);
  }
  const char* path_env = std::getenv("PATH");
  std::stringstream dirs(path_env ? path_env : "/usr/bin:/bin");
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    const std::string candidate = dir + "/" + name;
    if (::access(candidate.c_str(), X_OK) == 0) return candidate;
  }
  throw Error(ErrorKind::kInterpreterMissing, name);
}

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Fd& operator=(Fd&& other) noexcept {
    if (this != &other) {
      reset();
      fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
  }
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

class TempDir {
 public:
  explicit TempDir(const fs::path& root) {
    std::string templ = (root / "semiforge-XXXXXX").string();
    if (::mkdtemp(templ.data()) == nullptr) {
      throw Error(ErrorKind::kSandboxSetupFailure,
                  "mkdtemp in " + root.string() + ": " + std::strerror(errno));
    }
    path_ = templ;
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void set_nonblocking(int fd) {
  ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK);
}

}  // namespace

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kOk: return "Ok";
    case Status::kRuntimeError: return "RuntimeError";
    case Status::kTimeout: return "Timeout";
    case Status::kOutputOverflow: return "OutputOverflow";
  }
  return "Unknown";
}

Json to_json(const Invocation& invocation) {
  if (const auto* in = std::get_if<StdinInput>(&invocation)) {
    return {{"mode", "stdin"}, {"stdin", in->text}};
  }
  const auto& call = std::get<CallInput>(invocation);
  return {{"mode", "call"},
          {"function_name", call.function_name},
          {"args", call.args_literal}};
}

Invocation invocation_from_json(const Json& json) {
  const auto mode = json.at("mode").get<std::string>();
  if (mode == "stdin") return StdinInput{json.at("stdin").get<std::string>()};
  if (mode == "call") {
    return CallInput{json.at("function_name").get<std::string>(),
                     json.at("args").get<std::string>()};
  }
  throw Error(ErrorKind::kInvalidArgs, "unknown invocation mode " + mode);
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto head = [](unsigned char c) { return std::isalpha(c) || c == '_'; };
  if (!head(static_cast<unsigned char>(text[0]))) return false;
  for (unsigned char c : text) {
    if (!(std::isalnum(c) || c == '_')) return false;
  }
  return true;
}

std::string python_string_literal(std::string_view text) {
  std::string out = "\"";
  for (unsigned char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          char buf[5];
          std::snprintf(buf, sizeof(buf), "\\x%02x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
  return out;
}

std::string_view call_shim_template() { return kCallShim; }

std::string render_call_shim(std::string_view user_code,
                             std::string_view function_name,
                             std::string_view args_literal) {
  std::string out(kCallShim);
  // Values are substituted as string literals, so placeholder text inside
  // user code can never be re-expanded.
  out = replace_all(std::move(out), "{{function_name}}",
                    python_string_literal(function_name));
  out = replace_all(std::move(out), "{{args_literal}}",
                    python_string_literal(args_literal));
  out = replace_all(std::move(out), "{{user_code}}",
                    python_string_literal(user_code));
  return out;
}

std::string normalize_output(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  lines.push_back(std::move(current));
  for (auto& line : lines) {
    std::size_t end = line.size();
    while (end > 0 && std::isspace(static_cast<unsigned char>(line[end - 1]))) --end;
    line.resize(end);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

bool outputs_match(std::string_view actual, std::string_view expected) {
  return normalize_output(actual) == normalize_output(expected);
}

Executor::Executor(ExecutorOptions options)
    : interpreter_path_(resolve_interpreter(options.interpreter)),
      scratch_root_(options.scratch_root.empty() ? fs::temp_directory_path()
                                                 : options.scratch_root) {}

ExecutionResult Executor::execute(std::string_view code,
                                  const Invocation& invocation,
                                  const ResourceLimits& limits) const {
  if (::access(interpreter_path_.c_str(), X_OK) != 0) {
    throw Error(ErrorKind::kInterpreterMissing, interpreter_path_);
  }
  std::error_code ec;
  fs::create_directories(scratch_root_, ec);
  TempDir dir(scratch_root_);

  std::string script;
  std::string stdin_text;
  if (const auto* in = std::get_if<StdinInput>(&invocation)) {
    script = std::string(code);
    stdin_text = in->text;
  } else {
    const auto& call = std::get<CallInput>(invocation);
    script = render_call_shim(code, call.function_name, call.args_literal);
  }
  try {
    write_file(dir.path() / "main.py", script);
  } catch (const Error& e) {
    throw Error(ErrorKind::kSandboxSetupFailure, e.what());
  }

  int in_pair[2];
  int out_pipe[2];
  int err_pipe[2];
  int exec_pipe[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, in_pair) != 0) {
    throw Error(ErrorKind::kSandboxSetupFailure, "socketpair failed");
  }
  Fd stdin_parent(in_pair[0]);
  Fd stdin_child(in_pair[1]);
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    throw Error(ErrorKind::kSandboxSetupFailure, "pipe failed");
  }
  Fd out_read(out_pipe[0]);
  Fd out_write(out_pipe[1]);
  if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
    throw Error(ErrorKind::kSandboxSetupFailure, "pipe failed");
  }
  Fd err_read(err_pipe[0]);
  Fd err_write(err_pipe[1]);
  if (::pipe2(exec_pipe, O_CLOEXEC) != 0) {
    throw Error(ErrorKind::kSandboxSetupFailure, "pipe failed");
  }
  Fd exec_read(exec_pipe[0]);
  Fd exec_write(exec_pipe[1]);

  // Everything the child touches is prepared before fork(): the parent may be
  // multi-threaded, so the child only makes async-signal-safe calls.
  const std::string workdir = dir.path().string();
  const std::string home_env = "HOME=" + workdir;
  const std::string tmp_env = "TMPDIR=" + workdir;
  std::vector<std::string> env_store = {
      "PATH=/usr/local/bin:/usr/bin:/bin", home_env, tmp_env,
      "PYTHONHASHSEED=0", "PYTHONDONTWRITEBYTECODE=1", "PYTHONIOENCODING=utf-8",
      "LANG=C.UTF-8"};
  std::vector<char*> envp;
  for (auto& e : env_store) envp.push_back(e.data());
  envp.push_back(nullptr);
  std::string interp = interpreter_path_;
  std::string script_name = "main.py";
  char* argv[] = {interp.data(), script_name.data(), nullptr};
  const rlim_t mem = static_cast<rlim_t>(limits.memory_cap);

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) {
    throw Error(ErrorKind::kSandboxSetupFailure, "fork failed");
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::unshare(CLONE_NEWNET);  // fails without privileges; that is fine
    struct rlimit as_limit{mem, mem};
    ::setrlimit(RLIMIT_AS, &as_limit);
    struct rlimit core_limit{0, 0};
    ::setrlimit(RLIMIT_CORE, &core_limit);
    if (::chdir(workdir.c_str()) != 0) {
      int err = errno;
      (void)!::write(exec_write.get(), &err, sizeof(err));
      ::_exit(127);
    }
    ::dup2(stdin_child.get(), 0);
    ::dup2(out_write.get(), 1);
    ::dup2(err_write.get(), 2);
    ::execve(interp.c_str(), argv, envp.data());
    int err = errno;
    (void)!::write(exec_write.get(), &err, sizeof(err));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  stdin_child.reset();
  out_write.reset();
  err_write.reset();
  exec_write.reset();

  int child_errno = 0;
  const bool exec_failed =
      ::read(exec_read.get(), &child_errno, sizeof(child_errno)) ==
      static_cast<ssize_t>(sizeof(child_errno));
  if (exec_failed) {
    int status;
    ::waitpid(pid, &status, 0);
    throw Error(ErrorKind::kSandboxSetupFailure,
                std::string("child setup failed: ") + std::strerror(child_errno));
  }

  set_nonblocking(stdin_parent.get());
  set_nonblocking(out_read.get());
  set_nonblocking(err_read.get());
  if (stdin_text.empty()) ::shutdown(stdin_parent.get(), SHUT_WR);

  ExecutionResult result;
  std::size_t written = 0;
  bool stdin_open = !stdin_text.empty();
  bool out_open = true;
  bool err_open = true;
  bool timed_out = false;
  bool overflow = false;
  bool reaped = false;
  int wait_status = 0;
  const auto deadline = start + limits.wall_timeout;
  char buffer[65536];

  while (out_open || err_open || !reaped) {
    if (!reaped) {
      const pid_t r = ::waitpid(pid, &wait_status, WNOHANG);
      if (r == pid) {
        reaped = true;
        // Stragglers in the group could keep the pipes open forever.
        ::kill(-pid, SIGKILL);
      }
    }
    const auto now = std::chrono::steady_clock::now();
    if (!reaped && now >= deadline) {
      timed_out = true;
      break;
    }
    if (reaped && !out_open && !err_open) break;

    std::vector<pollfd> fds;
    if (stdin_open) fds.push_back({stdin_parent.get(), POLLOUT, 0});
    if (out_open) fds.push_back({out_read.get(), POLLIN, 0});
    if (err_open) fds.push_back({err_read.get(), POLLIN, 0});
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
    int wait_ms = static_cast<int>(std::clamp<long long>(remaining.count(), 0, 20));
    if (fds.empty()) {
      ::usleep(static_cast<useconds_t>(std::max(wait_ms, 1)) * 1000);
      continue;
    }
    if (::poll(fds.data(), fds.size(), wait_ms) < 0 && errno != EINTR) break;

    for (const auto& p : fds) {
      if (p.revents == 0) continue;
      if (p.fd == stdin_parent.get()) {
        const ssize_t n = ::send(p.fd, stdin_text.data() + written,
                                 stdin_text.size() - written, MSG_NOSIGNAL);
        if (n > 0) written += static_cast<std::size_t>(n);
        if ((n < 0 && errno != EAGAIN) || written == stdin_text.size()) {
          ::shutdown(p.fd, SHUT_WR);
          stdin_open = false;
        }
        continue;
      }
      const bool is_out = p.fd == out_read.get();
      const ssize_t n = ::read(p.fd, buffer, sizeof(buffer));
      if (n > 0) {
        std::string& sink = is_out ? result.stdout_text : result.stderr_text;
        const std::size_t room =
            limits.output_cap > sink.size() ? limits.output_cap - sink.size() : 0;
        sink.append(buffer, std::min<std::size_t>(room, static_cast<std::size_t>(n)));
        if (is_out && static_cast<std::size_t>(n) > room) overflow = true;
      } else if (n == 0 || (errno != EAGAIN && errno != EINTR)) {
        (is_out ? out_open : err_open) = false;
      }
    }
    if (overflow) break;
  }

  if (!reaped) {
    ::kill(-pid, SIGKILL);
    ::waitpid(pid, &wait_status, 0);
  }
  result.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (timed_out) {
    result.status = Status::kTimeout;
  } else if (overflow) {
    result.status = Status::kOutputOverflow;
  } else if (WIFEXITED(wait_status) && WEXITSTATUS(wait_status) == 0) {
    result.status = Status::kOk;
  } else {
    result.status = Status::kRuntimeError;
  }
  return result;
}

}  // namespace semiforge::exec
