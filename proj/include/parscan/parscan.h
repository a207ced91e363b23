// Copyright 2026 The parscan Authors.
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

// Umbrella header for the parscan library.

#ifndef PARSCAN_PARSCAN_H_
#define PARSCAN_PARSCAN_H_

#include "parscan/base.h"
#include "parscan/clustering_io.h"
#include "parscan/graph.h"
#include "parscan/index.h"
#include "parscan/oracle.h"
#include "parscan/pipeline.h"
#include "parscan/quality.h"
#include "parscan/query.h"
#include "parscan/serialize.h"
#include "parscan/similarity.h"
#include "parscan/sketch.h"
#include "parscan/union_find.h"

#endif  // PARSCAN_PARSCAN_H_
