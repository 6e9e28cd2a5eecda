// One line per acceptance criterion; exit status is the number of failures.
#include <cstring>
#include <iostream>

#include "elliptic/verify.hpp"

int main(int argc, char** argv) {
    const bool fast = argc > 1 && std::strcmp(argv[1], "--fast") == 0;
    return elliptic::run_acceptance(fast ? elliptic::VerifyMode::Fast : elliptic::VerifyMode::Full, std::cout);
}
