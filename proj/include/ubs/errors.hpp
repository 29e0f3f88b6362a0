/*
 * Copyright 2021 Budapest Quantum Computing Group
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ubs {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeError : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class ResourceError : public Error { public: using Error::Error; };
class ValidationError : public Error { public: using Error::Error; };
class LogBranchError : public Error { public: using Error::Error; };
class IntegrityError : public Error { public: using Error::Error; };
class UnsupportedPatternError : public Error { public: using Error::Error; };

/// Raised when a kernel matrix (K, G) becomes singular; carries the offending mode or -1.
class SingularKernelError : public Error {
public:
    SingularKernelError(const std::string &what, int mode)
        : Error(what), mode_(mode) {}
    int mode() const { return mode_; }

private:
    int mode_;
};

}  // namespace ubs
