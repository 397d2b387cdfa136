// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace parentt {

/// A parameter combination that cannot be realized (no primes, widths exceed mu, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the pipeline simulator when an element would hold more samples than
/// its registers allow, or when a scheduled sample is not available on time.
class ScheduleViolation : public std::runtime_error {
 public:
  ScheduleViolation(std::string element, long long cycle, const std::string& what)
      : std::runtime_error("cycle " + std::to_string(cycle) + ", " + element + ": " + what),
        element_(std::move(element)),
        cycle_(cycle) {}

  const std::string& element() const { return element_; }
  long long cycle() const { return cycle_; }

 private:
  std::string element_;
  long long cycle_;
};

}  // namespace parentt
