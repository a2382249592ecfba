#pragma once

#include <map>
#include <string>
#include <vector>

namespace lambek::cli {

struct Outcome {
  int code = 0;  // 0 affirmative, 1 negative but sound, 2 usage or input error
  std::string out;
  std::string err;
};

/// Runs one command. `args` excludes the program name. A positional
/// argument of "-" is read from `stdin_text`. LAMBEK_GRAMMARS in `env` names
/// a directory searched for grammar files that are not found as given.
Outcome run(const std::vector<std::string>& args, const std::string& stdin_text = {},
            const std::map<std::string, std::string>& env = {});

}  // namespace lambek::cli
