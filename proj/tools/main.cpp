#include "cli.hpp"

int main(int argc, char** argv)
{
    return endoscopy::cli::run(argc, argv);
}
