#include <cstdlib>
#include <iostream>
#include <iterator>
#include <unistd.h>

#include "lambek/cli.hpp"

extern char** environ;

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string input;
  bool wants_stdin = false;
  for (const auto& a : args) wants_stdin |= a == "-";
  if (wants_stdin) input.assign(std::istreambuf_iterator<char>(std::cin), {});

  std::map<std::string, std::string> env;
  for (char** e = environ; *e; ++e) {
    std::string kv(*e);
    auto eq = kv.find('=');
    if (eq != std::string::npos) env.emplace(kv.substr(0, eq), kv.substr(eq + 1));
  }
  auto r = lambek::cli::run(args, input, env);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
