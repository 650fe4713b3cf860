#include "tradenet/cli.hpp"

int main(int argc, char** argv) {
    return tradenet::run_cli(argc, argv);
}
