#include "cptsq/cli/commands.hpp"

int main(int argc, char** argv)
{
    return cptsq::cli::run(argc, argv);
}
