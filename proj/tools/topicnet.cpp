#include <iostream>

#include "topicnet/cli.hpp"

int main(int argc, char** argv) { return topicnet::cli::run(argc, argv, std::cout, std::cerr); }
