// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "gftlab/cli.hpp"

int main(int argc, char** argv) { return gftlab::dispatch(argc, argv, std::cout, std::cerr); }
