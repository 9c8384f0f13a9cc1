// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "lptest/harness/cli.hpp"

int main(int argc, char** argv) { return lptest::harness::run_cli(argc, argv, std::cout, std::cerr); }
