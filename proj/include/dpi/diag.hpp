#pragma once

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpi {

struct SourcePos {
  int line = 0;
  int col = 0;
  bool valid() const { return line > 0; }
  std::string str() const {
    if (!valid()) return "<builtin>";
    return std::to_string(line) + ":" + std::to_string(col);
  }
};

// Non-fatal findings (type errors, recursion, DPI well-formedness, ...).
struct Diagnostic {
  std::string kind;  // e.g. "TypeDiagnostic", "RecursionDiagnostic"
  std::string message;
  SourcePos pos;
  std::string str() const {
    return kind + (pos.valid() ? " at " + pos.str() : "") + ": " + message;
  }
};

// Fatal analysis errors carry a stable kind so the CLI can map exit codes
// and tests can match on the failure class.
struct AnalysisError : std::runtime_error {
  std::string kind;
  AnalysisError(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

inline AnalysisError syntax_error(SourcePos p, const std::string& msg) {
  return AnalysisError("SyntaxError", p.str() + ": " + msg);
}

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };

LogLevel log_level();
void set_log_level(LogLevel lv);
void log_msg(LogLevel lv, const std::string& msg);

#define DPI_LOG(lv, expr)                              \
  do {                                                 \
    if ((lv) >= ::dpi::log_level()) {                  \
      std::ostringstream os__;                         \
      os__ << expr;                                    \
      ::dpi::log_msg((lv), os__.str());                \
    }                                                  \
  } while (0)

#define DPI_WARN(expr) DPI_LOG(::dpi::LogLevel::Warn, expr)
#define DPI_INFO(expr) DPI_LOG(::dpi::LogLevel::Info, expr)
#define DPI_DEBUG(expr) DPI_LOG(::dpi::LogLevel::Debug, expr)

// Internal invariant check; failures are bugs, not user errors.
#define DPI_CHECK(cond, msg)                                              \
  do {                                                                    \
    if (!(cond)) {                                                        \
      std::ostringstream os__;                                            \
      os__ << "internal check failed at " << __FILE__ << ":" << __LINE__  \
           << ": " << msg;                                                \
      throw ::dpi::AnalysisError("InternalError", os__.str());            \
    }                                                                     \
  } while (0)

}  // namespace dpi
