#pragma once

#include <stdexcept>
#include <string>

namespace arena {

enum class Errc {
  validation,
  parse,
  invalid_routing,
  invalid_player,
  instance_too_large,
  no_equilibrium,
  non_convergence,
  malformed_pair,
  construction_failed,
  generation_failed,
  io,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::validation: return "validation";
    case Errc::parse: return "parse";
    case Errc::invalid_routing: return "invalid-routing";
    case Errc::invalid_player: return "invalid-player-index";
    case Errc::instance_too_large: return "instance-too-large";
    case Errc::no_equilibrium: return "no-equilibrium";
    case Errc::non_convergence: return "non-convergence";
    case Errc::malformed_pair: return "malformed-pair";
    case Errc::construction_failed: return "construction-failed";
    case Errc::generation_failed: return "generation-failed";
    case Errc::io: return "io";
  }
  return "unknown";
}

// Every failure the library reports carries one of the codes above; the CLI
// maps them onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace arena
