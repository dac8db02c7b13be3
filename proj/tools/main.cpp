// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "rescap/cli.hpp"

int main(int argc, char** argv) { return rescap::cli::run(argc, argv, std::cout, std::cerr); }
