#include <string>
#include <vector>

#include "seqadapt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return seqadapt::run_cli(args);
}
