// Copyright 2026 The Fairlens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRLENS_FAIRLENS_H_
#define FAIRLENS_FAIRLENS_H_

// Umbrella header. Transport headers (stdio_channel.h, http_channel.h,
// endpoint.h) are not included here.

#include "fairlens/adapter.h"
#include "fairlens/aho_corasick.h"
#include "fairlens/conformance.h"
#include "fairlens/corpus.h"
#include "fairlens/csv.h"
#include "fairlens/disco.h"
#include "fairlens/error.h"
#include "fairlens/lexicon.h"
#include "fairlens/mlmprobe.h"
#include "fairlens/model.h"
#include "fairlens/perturb.h"
#include "fairlens/protocol.h"
#include "fairlens/report.h"
#include "fairlens/stats.h"
#include "fairlens/text.h"

#endif  // FAIRLENS_FAIRLENS_H_
