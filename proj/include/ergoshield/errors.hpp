// Copyright 2026 The ErgoShield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ergoshield {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes or subsystem dimensions do not line up.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

class HermiticityError : public Error {
public:
    HermiticityError(const std::string& what, double deviation)
        : Error(what), deviation_(deviation) {}
    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

/// Time grid is unusable for the requested integration rule.
class GridError : public Error {
public:
    using Error::Error;
};

/// Bad or inconsistent configuration. `key()` names the offending entry
/// (for example "environment.type") when one is known.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// A density-matrix invariant drifted beyond tolerance during integration.
class NumericalFailure : public Error {
public:
    NumericalFailure(std::size_t step, std::string invariant, const std::string& what)
        : Error(what), step_(step), invariant_(std::move(invariant)) {}
    std::size_t step() const noexcept { return step_; }
    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::size_t step_;
    std::string invariant_;
};

}  // namespace ergoshield
