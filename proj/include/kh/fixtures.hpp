#pragma once

// Named tangle diagrams used by tests, the acceptance run and the CLI.

#include <string>
#include <vector>

#include "kh/diagram.hpp"

namespace kh {

std::vector<std::string> fixture_names();
// Throws UnknownFixture.
TangleDiagram fixture(const std::string& name);

}  // namespace kh
