#pragma once

// Golden-file cases for the CLI. Each case <name> has
//   <name>.args  one argument per line
//   <name>.out   expected stdout, byte for byte
//   <name>.code  expected exit code (0 when absent)
//   <name>.env   optional KEY=VALUE lines added to the environment
// WEYLMOD_* variables of the calling environment are dropped.

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

extern char** environ;

namespace weylmod::testing {

struct Captured {
  int code = -1;
  std::string out;
};

inline std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::vector<std::string> lines;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs `exe args...` with stderr discarded, returning exit code and stdout.
inline Captured run_captured(const std::string& exe, const std::vector<std::string>& args,
                             const std::vector<std::string>& extra_env = {}) {
  std::vector<std::string> env;
  for (char** e = environ; *e; ++e)
    if (std::string(*e).rfind("WEYLMOD_", 0) != 0) env.emplace_back(*e);
  env.insert(env.end(), extra_env.begin(), extra_env.end());

  std::vector<char*> argv{const_cast<char*>(exe.c_str())};
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);
  std::vector<char*> envp;
  for (auto& e : env) envp.push_back(e.data());
  envp.push_back(nullptr);

  int fds[2];
  if (pipe(fds) != 0) return {};
  posix_spawn_file_actions_t fa;
  posix_spawn_file_actions_init(&fa);
  posix_spawn_file_actions_adddup2(&fa, fds[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&fa, fds[0]);
  posix_spawn_file_actions_addopen(&fa, STDERR_FILENO, "/dev/null", O_WRONLY, 0);
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, exe.c_str(), &fa, nullptr, argv.data(), envp.data());
  posix_spawn_file_actions_destroy(&fa);
  close(fds[1]);
  Captured c;
  if (rc != 0) {
    close(fds[0]);
    return c;
  }
  char buf[4096];
  for (ssize_t n; (n = read(fds[0], buf, sizeof buf)) > 0;) c.out.append(buf, static_cast<std::size_t>(n));
  close(fds[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

inline std::vector<std::string> golden_cases(const std::filesystem::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".args") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

/// Returns "" when the case matches, otherwise a description of the mismatch.
/// With update = true the expected files are rewritten instead.
inline std::string check_golden(const std::string& exe, const std::filesystem::path& dir, const std::string& name,
                                bool update = false) {
  const auto base = dir / name;
  std::vector<std::string> env;
  if (std::filesystem::exists(base.string() + ".env")) env = read_lines(base.string() + ".env");
  const Captured got = run_captured(exe, read_lines(base.string() + ".args"), env);
  const auto code_path = base.string() + ".code";
  if (update) {
    std::ofstream(base.string() + ".out", std::ios::binary) << got.out;
    if (got.code != 0) {
      std::ofstream(code_path) << got.code << "\n";
    } else {
      std::filesystem::remove(code_path);
    }
    return "";
  }
  int want_code = 0;
  if (std::filesystem::exists(code_path)) want_code = std::stoi(read_file(code_path));
  const std::string want = read_file(base.string() + ".out");
  if (got.code != want_code)
    return name + ": exit code " + std::to_string(got.code) + ", expected " + std::to_string(want_code);
  if (got.out != want) return name + ": output differs\n--- expected\n" + want + "--- got\n" + got.out;
  return "";
}

}  // namespace weylmod::testing
