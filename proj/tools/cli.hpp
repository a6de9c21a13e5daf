#pragma once

namespace supcal::cli {

int run(int argc, char** argv);

}  // namespace supcal::cli
