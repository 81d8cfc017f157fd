// Copyright 2026 The InfoSync Authors.
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

#ifndef INFOSYNC_ERRORS_H_
#define INFOSYNC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace infosync {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define INFOSYNC_DEFINE_ERROR(Name, Base) \
  class Name : public Base {              \
   public:                                \
    using Base::Base;                     \
  }

// Model output or file content that cannot be turned into a domain value.
INFOSYNC_DEFINE_ERROR(ParseError, Error);
INFOSYNC_DEFINE_ERROR(NoTableFound, ParseError);
INFOSYNC_DEFINE_ERROR(MalformedRow, ParseError);
INFOSYNC_DEFINE_ERROR(NoGraphFound, ParseError);
INFOSYNC_DEFINE_ERROR(InvalidValue, ParseError);

INFOSYNC_DEFINE_ERROR(EmptyKey, Error);
INFOSYNC_DEFINE_ERROR(InvalidLanguage, Error);
INFOSYNC_DEFINE_ERROR(InvalidCategory, Error);
INFOSYNC_DEFINE_ERROR(LanguageConstraintViolation, Error);
INFOSYNC_DEFINE_ERROR(InstanceMismatch, Error);

// Gateway failures.
INFOSYNC_DEFINE_ERROR(GatewayError, Error);
INFOSYNC_DEFINE_ERROR(BackendUnavailable, GatewayError);
INFOSYNC_DEFINE_ERROR(RateLimited, GatewayError);
INFOSYNC_DEFINE_ERROR(ReplayMiss, GatewayError);
INFOSYNC_DEFINE_ERROR(InvalidRequest, GatewayError);

// Alignment and evaluation.
INFOSYNC_DEFINE_ERROR(UniverseMismatch, Error);
INFOSYNC_DEFINE_ERROR(EmptyVoteSet, Error);
INFOSYNC_DEFINE_ERROR(ComparisonFailed, Error);
INFOSYNC_DEFINE_ERROR(EnsembleMismatch, Error);

// Dataset loading and fetching.
INFOSYNC_DEFINE_ERROR(DatasetError, Error);
INFOSYNC_DEFINE_ERROR(MissingFile, DatasetError);
INFOSYNC_DEFINE_ERROR(PageNotFound, DatasetError);
INFOSYNC_DEFINE_ERROR(NoInfobox, DatasetError);
INFOSYNC_DEFINE_ERROR(NetworkError, DatasetError);

INFOSYNC_DEFINE_ERROR(ConfigError, Error);

#undef INFOSYNC_DEFINE_ERROR

}  // namespace infosync

#endif  // INFOSYNC_ERRORS_H_
