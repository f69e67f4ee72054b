#include <fstream>
#include <iostream>
#include <unistd.h>

#include <CLI11.hpp>

#include "rforms/session.hpp"

int main(int argc, char** argv)
{
  CLI::App app{"real forms, K\\G/B and parameter spaces"};
  std::string cmd_file;
  bool verbose = false;
  unsigned threads = 1;
  app.add_option("--cmd-file", cmd_file, "read commands from a file");
  app.add_flag("--verbose", verbose, "report timings");
  app.add_option("--threads", threads, "worker threads for enumeration")->check(CLI::Range(1u, 256u));
  CLI11_PARSE(app, argc, argv);

  rforms::Session session(std::cout, threads, verbose);
  if (!cmd_file.empty()) {
    std::ifstream in(cmd_file);
    if (!in) {
      std::cerr << "cannot open " << cmd_file << '\n';
      return 2;
    }
    return session.run(in);
  }
  if (!isatty(STDIN_FILENO))
    return session.run(std::cin);

  std::string line;
  std::size_t n = 0;
  for (;;) {
    std::cerr << "rforms> " << std::flush;
    if (!std::getline(std::cin, line))
      break;
    if (!session.execute(line, ++n))
      break;
    std::cout << std::flush;
  }
  return session.errors() ? 1 : 0;
}
