#include <string>
#include <vector>

#include "techmap/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return techmap::cli::dispatch(std::move(args));
}
