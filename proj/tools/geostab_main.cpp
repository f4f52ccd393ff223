// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return geostab::run_cli(argc, argv, std::cout, std::cerr);
}
