#pragma once

#include <cstdio>
#include <string>

namespace fsi::log
{

enum class Level
{
  debug = 0,
  info = 1,
  warn = 2,
  error = 3,
  off = 4
};

inline Level & threshold()
{
  static Level lvl = Level::warn;
  return lvl;
}

inline void set_level(Level lvl) { threshold() = lvl; }

inline Level level_from_string(const std::string & s)
{
  if (s == "debug")
    return Level::debug;
  if (s == "info")
    return Level::info;
  if (s == "warn")
    return Level::warn;
  if (s == "error")
    return Level::error;
  return Level::off;
}

template <typename... Args>
void emit(Level lvl, const char * tag, const char * fmt, Args... args)
{
  if (lvl < threshold())
    return;
  std::fprintf(stderr, "[%s] ", tag);
  std::fprintf(stderr, fmt, args...);
  std::fprintf(stderr, "\n");
}

template <typename... Args>
void debug(const char * fmt, Args... args)
{
  emit(Level::debug, "debug", fmt, args...);
}

template <typename... Args>
void info(const char * fmt, Args... args)
{
  emit(Level::info, "info", fmt, args...);
}

template <typename... Args>
void warn(const char * fmt, Args... args)
{
  emit(Level::warn, "warn", fmt, args...);
}

template <typename... Args>
void error(const char * fmt, Args... args)
{
  emit(Level::error, "error", fmt, args...);
}

} // namespace fsi::log
