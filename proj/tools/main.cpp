#include "sentimin/cli.hpp"

int main(int argc, char** argv) {
    return sentimin::cli::run(argc, argv);
}
