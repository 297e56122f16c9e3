#include <homrep/cli.hpp>

int main(int argc, char ** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return homrep::run_cli(args);
}
