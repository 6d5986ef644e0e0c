#ifndef RICLAG_PROC_SUPPORT_HPP
#define RICLAG_PROC_SUPPORT_HPP

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

namespace riclag::testing {

struct RunResult {
    int exit_code = -1;
    std::string out;  // stdout only
};

// Runs `cmd` through the shell, capturing stdout; stderr is dropped so
// diagnostics do not pollute byte-comparisons.
inline RunResult run_command(const std::string& cmd) {
    std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace riclag::testing

#endif
