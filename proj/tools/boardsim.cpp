#include "boardsim/cli.hpp"

int main(int argc, char** argv)
{
    return boardsim::cli::main(argc, argv);
}
