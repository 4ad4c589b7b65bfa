#ifndef RUINKIT_COMMANDS_HPP
#define RUINKIT_COMMANDS_HPP

#include <ostream>

#include "ruinkit/config.hpp"

namespace ruinkit {

/// Batch entry points behind the CLI subcommands. Each writes its table to
/// `out` and diagnostics to `err`, returning a process exit code (0 iff all
/// requested columns were produced).
int cmd_approx(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_exact(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_perturbed(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_moments(const KeyValues& kv, std::ostream& out, std::ostream& err);
int cmd_jt(const KeyValues& kv, std::ostream& out, std::ostream& err);
int cmd_check(const KeyValues& kv, std::ostream& out, std::ostream& err);

} // namespace ruinkit

#endif
