#include "cocreate/cli.hpp"

int main(int argc, char** argv)
{
    return cocreate::cli::main(argc, argv);
}
