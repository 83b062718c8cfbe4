#ifndef BOA_CLI_HPP
#define BOA_CLI_HPP

namespace boa {

/// Command-line front end (subcommands: run, sweep, plot). Returns the
/// process exit status: 0 iff the requested artifact was fully written.
int cli_main(int argc, const char* const* argv);

}  // namespace boa

#endif
