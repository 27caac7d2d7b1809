#include <iostream>

#include "gpl/gpl.hpp"

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::cout << "gpl " << gpl::version() << "\n";
    return 0;
}
