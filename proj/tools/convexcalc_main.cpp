#include <iostream>
#include <vector>

#include "convexcalc/task.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return convexcalc::run_task(args, std::cout, std::cerr);
}
