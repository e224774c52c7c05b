// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cpse {

// Base of everything the library throws. The CLI maps InputError to exit
// code 1 and ComputeError to exit code 2.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Malformed or unusable input: bad files, bad flags, violated preconditions.
class InputError : public Error
{
public:
  using Error::Error;
};

// Numerical failure inside the pipeline.
class ComputeError : public Error
{
public:
  using Error::Error;
};

} // namespace cpse
