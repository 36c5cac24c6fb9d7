#include "odb/cli.hpp"

int main(int argc, char** argv)
{
    return odb::cli::run(argc, argv);
}
