#include "cadbench/worker.hpp"

#include <iostream>

int main() {
    std::ios::sync_with_stdio(false);
    return cadbench::worker_serve(std::cin, std::cout);
}
