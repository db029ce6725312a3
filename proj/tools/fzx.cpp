#include <iostream>

#include "fzx/app.hpp"

int main(int argc, char** argv) { return fzx::app::cli_main(argc, argv, std::cout, std::cerr); }
